#pragma once

#include <gamecomonad/ef.hpp>
#include <gamecomonad/game.hpp>
#include <gamecomonad/hom.hpp>
#include <gamecomonad/structure.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gamecomonad {

/// [a_0, alpha_1, a_1, ..., alpha_j, a_j]: an origin followed by labelled
/// steps. Labels are symbol indices of binary symbols.
template <typename T>
struct Path {
    T origin;
    std::vector<std::pair<int, T>> steps;

    const T & last() const { return steps.empty() ? origin : steps.back().second; }
    std::size_t length() const noexcept { return steps.size(); }

    Path prefix(std::size_t j) const
    {
        return Path{origin, std::vector<std::pair<int, T>>(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(j))};
    }

    auto operator<=>(const Path &) const = default;
};

using ModalPath = Path<Elem>;

/// Rejects vocabularies with symbols of arity >= 3 and unpointed structures.
inline void require_modal(const Structure & a)
{
    if (a.vocabulary().max_arity() > 2)
        throw InvalidArgument("modal comonad needs symbols of arity at most 2");
    if (! a.point())
        throw InvalidArgument("modal comonad needs a pointed structure (missing 'start')");
}

inline std::string path_name(const Structure & a, const ModalPath & p)
{
    std::string out = "[" + a.name(p.origin);
    for (auto & [label, e] : p.steps)
        out += "," + a.vocabulary()[static_cast<std::size_t>(label)].name + "," + a.name(e);
    return out + "]";
}

/// Labelled successors of every element, ordered by (label, target).
inline std::vector<std::vector<std::pair<int, Elem>>> labelled_successors(const Structure & a)
{
    std::vector<std::vector<std::pair<int, Elem>>> succ(a.size());
    for (std::size_t s = 0; s < a.vocabulary().size(); ++s) {
        if (a.vocabulary()[s].arity != 2)
            continue;
        for (auto & t : a.tuples(s))
            succ[t[0]].emplace_back(static_cast<int>(s), t[1]);
    }
    for (auto & v : succ)
        std::sort(v.begin(), v.end());
    return succ;
}

/// Play tree of M_k(A, a): node 0 is [a]; node order is length-then-lex.
inline PlayTree modal_play_tree(const Structure & a, std::size_t k, std::size_t cap = default_play_cap)
{
    require_modal(a);
    if (k == 0)
        throw InvalidArgument("depth k must be at least 1");
    auto succ = labelled_successors(a);
    PlayTree tree;
    tree.virtual_root = false;
    tree.add(PlayTree::no_parent, PlayTree::no_label, *a.point(), "[" + a.name(*a.point()) + "]");
    for (std::size_t i = 0; i < tree.size(); ++i) {
        if (tree[i].depth == k)
            continue;
        for (auto [label, y] : succ[tree[i].elem]) {
            if (tree.size() >= cap)
                throw CapExceeded("unravelling exceeds " + std::to_string(cap) + " paths");
            std::string name = tree.names[i];
            name.pop_back();
            name += "," + a.vocabulary()[static_cast<std::size_t>(label)].name + "," + a.name(y) + "]";
            tree.add(i, label, y, std::move(name));
        }
    }
    return tree;
}

inline ModalPath tree_path(const PlayTree & tree, std::size_t node)
{
    auto elems = tree.branch(node);
    auto labels = tree.labels(node);
    ModalPath p{elems[0], {}};
    for (std::size_t i = 0; i < labels.size(); ++i)
        p.steps.emplace_back(labels[i], elems[i + 1]);
    return p;
}

/// All paths of M_k(A, a), in the order of modal_play_tree.
inline std::vector<ModalPath> modal_universe(const Structure & a, std::size_t k, std::size_t cap = default_play_cap)
{
    auto tree = modal_play_tree(a, k, cap);
    std::vector<ModalPath> paths;
    paths.reserve(tree.size());
    for (std::size_t i = 0; i < tree.size(); ++i)
        paths.push_back(tree_path(tree, i));
    return paths;
}

/// Structure of a modal play tree: binary R(s, t) iff t = s[R, a']; unary
/// symbols hold at a path iff they hold at its last element.
inline Structure tree_structure(const Structure & a, const PlayTree & tree)
{
    Structure result(a.vocabulary());
    for (auto & n : tree.names)
        result.add_element(n);
    for (std::size_t i = 1; i < tree.size(); ++i)
        result.add_tuple(static_cast<std::size_t>(tree[i].label), {static_cast<Elem>(tree[i].parent), static_cast<Elem>(i)});
    for (std::size_t s = 0; s < a.vocabulary().size(); ++s) {
        if (a.vocabulary()[s].arity != 1)
            continue;
        for (std::size_t i = 0; i < tree.size(); ++i)
            if (a.holds(s, {tree[i].elem}))
                result.add_tuple(s, {static_cast<Elem>(i)});
    }
    result.set_point(0);
    return result;
}

/// M_k(A, a): the unravelling of A from its point to depth k.
inline Structure unravel(const Structure & a, std::size_t k, std::size_t cap = default_play_cap)
{
    return tree_structure(a, modal_play_tree(a, k, cap));
}

template <typename T>
const T & modal_counit(const Path<T> & p)
{
    return p.last();
}

/// delta[a_0, alpha_1, ..., a_j] = [[a_0], alpha_1, [a_0, alpha_1, a_1], ...].
template <typename T>
Path<Path<T>> modal_comult(const Path<T> & p)
{
    Path<Path<T>> result{p.prefix(0), {}};
    for (std::size_t i = 1; i <= p.length(); ++i)
        result.steps.emplace_back(p.steps[i - 1].first, p.prefix(i));
    return result;
}

template <typename T, typename F>
auto modal_fmap(F && h, const Path<T> & p)
{
    using U = std::decay_t<decltype(h(p.origin))>;
    Path<U> result{h(p.origin), {}};
    for (auto & [label, x] : p.steps)
        result.steps.emplace_back(label, h(x));
    return result;
}

/// f*[a_0, alpha_1, ..., a_j] = [f[a_0], alpha_1, f[a_0, alpha_1, a_1], ...].
template <typename T, typename F>
auto modal_coextend(F && f, const Path<T> & p)
{
    using U = std::decay_t<decltype(f(p))>;
    Path<U> result{f(p.prefix(0)), {}};
    for (std::size_t i = 1; i <= p.length(); ++i)
        result.steps.emplace_back(p.steps[i - 1].first, f(p.prefix(i)));
    return result;
}

/// Branches agree on labels, and unary facts are preserved (sim) or
/// preserved and reflected (bisim) at every position.
inline WinningSet modal_winning_set(const Structure & a, const PlayTree & ta, const Structure & b, const PlayTree & tb,
    BranchRelation mode)
{
    return WinningSet{mode == BranchRelation::iso ? "modal-match" : "modal-sim", true,
        [&a, &ta, &b, &tb, mode](std::size_t s, std::size_t t) {
            if (ta[s].depth != tb[t].depth || ta.labels(s) != tb.labels(t))
                return false;
            auto xs = ta.branch(s), ys = tb.branch(t);
            for (std::size_t i = 0; i < xs.size(); ++i)
                for (std::size_t sym = 0; sym < a.vocabulary().size(); ++sym) {
                    if (a.vocabulary()[sym].arity != 1)
                        continue;
                    bool ra = a.holds(sym, {xs[i]}), rb = b.holds(sym, {ys[i]});
                    if (ra && ! rb)
                        return false;
                    if (mode == BranchRelation::iso && rb && ! ra)
                        return false;
                }
            return true;
        }};
}

struct ModalDecision {
    bool holds = false;
    /// Table on the paths of M_k(A, a) (simulation) when it holds.
    std::vector<Elem> table;
    GameResult game;
};

/// Depth-k simulation of (A, a) by (B, b): Spoiler moves along transitions in
/// A only, Duplicator matches the label in B, unary facts must be preserved.
inline ModalDecision decide_sim_k(const Structure & a, const Structure & b, std::size_t k,
    std::size_t position_cap = default_position_cap, std::size_t play_cap = default_play_cap)
{
    require_same_vocabulary(a, b);
    require_modal(a);
    require_modal(b);
    auto ta = modal_play_tree(a, k, play_cap);
    auto tb = modal_play_tree(b, k, play_cap);
    auto w = modal_winning_set(a, ta, b, tb, BranchRelation::hom);
    ModalDecision d;
    d.game = solve_tree_game(ta, tb, w, SpoilerMoves::a_only, position_cap);
    d.holds = d.game.duplicator_wins;
    if (d.holds) {
        d.table.assign(ta.size(), 0);
        d.table[0] = *b.point();
        for (auto & r : d.game.duplicator)
            d.table[r.move] = tb[r.response].elem;
    }
    return d;
}

/// Depth-k bisimulation game between (A, a) and (B, b).
inline ModalDecision decide_bisim_k(const Structure & a, const Structure & b, std::size_t k,
    std::size_t position_cap = default_position_cap, std::size_t play_cap = default_play_cap)
{
    require_same_vocabulary(a, b);
    require_modal(a);
    require_modal(b);
    auto ta = modal_play_tree(a, k, play_cap);
    auto tb = modal_play_tree(b, k, play_cap);
    auto w = modal_winning_set(a, ta, b, tb, BranchRelation::iso);
    ModalDecision d;
    d.game = solve_tree_game(ta, tb, w, SpoilerMoves::both, position_cap);
    d.holds = d.game.duplicator_wins;
    return d;
}

} // namespace gamecomonad
