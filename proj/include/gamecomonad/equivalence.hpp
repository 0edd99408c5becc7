#pragma once

#include <gamecomonad/ef.hpp>
#include <gamecomonad/game.hpp>
#include <gamecomonad/iso.hpp>
#include <gamecomonad/modal.hpp>
#include <gamecomonad/pebble.hpp>
#include <gamecomonad/theta.hpp>

#include <string>
#include <string_view>

namespace gamecomonad {

enum class Comonad { ef, pebble, modal };

inline Comonad parse_comonad(std::string_view s)
{
    if (s == "ef")
        return Comonad::ef;
    if (s == "pebble")
        return Comonad::pebble;
    if (s == "modal")
        return Comonad::modal;
    throw InvalidArgument("unknown game '" + std::string(s) + "' (expected ef, pebble or modal)");
}

inline std::string to_string(Comonad c)
{
    switch (c) {
    case Comonad::ef: return "ef";
    case Comonad::pebble: return "pebble";
    case Comonad::modal: return "modal";
    }
    return "?";
}

/// Resource budgets for the deciders. Exceeding one throws CapExceeded.
struct Caps {
    std::size_t plays = default_play_cap;
    std::size_t positions = default_position_cap;
    std::size_t strategies = default_strategy_cap;
    std::size_t families = default_family_cap;
};

/// Play tree of C_k A for the tree-shaped comonads.
inline PlayTree play_tree(const Structure & a, std::size_t k, Comonad c, std::size_t cap = default_play_cap)
{
    switch (c) {
    case Comonad::ef: return ef_play_tree(a, k, cap);
    case Comonad::modal: return modal_play_tree(a, k, cap);
    case Comonad::pebble: break;
    }
    throw InvalidArgument("the pebbling comonad has no finite play tree");
}

/// The built-in W for the back-and-forth game of a tree-shaped comonad.
inline WinningSet default_winning_set(const Structure & a, const PlayTree & ta, const Structure & b, const PlayTree & tb,
    Comonad c)
{
    if (c == Comonad::modal)
        return modal_winning_set(a, ta, b, tb, BranchRelation::iso);
    return branch_winning_set(a, ta, b, tb, BranchRelation::iso);
}

/// One-way existential decision: a coKleisli morphism C_k A -> B exists.
inline bool decide_exists(const Structure & a, const Structure & b, std::size_t k, Comonad c, const Caps & caps = {})
{
    switch (c) {
    case Comonad::ef: return decide_exist_ef(a, b, k, caps.positions, caps.plays).holds;
    case Comonad::pebble: return decide_exist_pebble(a, b, k, caps.families).holds;
    case Comonad::modal: return decide_sim_k(a, b, k, caps.positions, caps.plays).holds;
    }
    return false;
}

/// coKleisli morphisms exist in both directions (no relation between them required).
inline bool decide_both_ways(const Structure & a, const Structure & b, std::size_t k, Comonad c, const Caps & caps = {})
{
    require_same_vocabulary(a, b);
    return decide_exists(a, b, k, c, caps) && decide_exists(b, a, k, c, caps);
}

struct BackForthResult {
    bool holds = false;
    /// Tree-game strategies (EF and modal).
    GameResult game;
    /// Positional strategy (pebbling).
    StrategyFamily family;
};

/// Decides the back-and-forth C_k game with the built-in W.
inline BackForthResult solve_back_forth(const Structure & a, const Structure & b, std::size_t k, Comonad c,
    const Caps & caps = {})
{
    require_same_vocabulary(a, b);
    BackForthResult r;
    if (c == Comonad::pebble) {
        auto d = decide_pebble_back_forth(a, b, k, caps.families);
        r.holds = d.holds;
        r.family = std::move(d.family);
        return r;
    }
    auto ta = play_tree(a, k, c, caps.plays);
    auto tb = play_tree(b, k, c, caps.plays);
    auto w = default_winning_set(a, ta, b, tb, c);
    r.game = solve_tree_game(ta, tb, w, SpoilerMoves::both, caps.positions);
    r.holds = r.game.duplicator_wins;
    return r;
}

/// Back-and-forth game with a caller-supplied W over the two play trees.
inline GameResult solve_back_forth(const PlayTree & ta, const PlayTree & tb, const WinningSet & w)
{
    return solve_tree_game(ta, tb, w, SpoilerMoves::both);
}

/// Greatest fixpoint of Theta on S(A,B) for the built-in W.
inline ThetaResult theta_fixpoint(const Structure & a, const Structure & b, std::size_t k, Comonad c,
    const Caps & caps = {})
{
    require_same_vocabulary(a, b);
    if (c == Comonad::pebble)
        throw InvalidArgument("fixpoint characterization needs a finite C_k universe; use the game solver for pebbling");
    auto ta = play_tree(a, k, c, caps.plays);
    auto tb = play_tree(b, k, c, caps.plays);
    auto w_ab = default_winning_set(a, ta, b, tb, c);
    auto w_ba = default_winning_set(b, tb, a, ta, c);
    return theta_fixpoint(ta, tb, w_ab, w_ba, caps.strategies);
}

struct CoKleisliIso {
    bool holds = false;
    /// f : C_k A -> B and g : C_k B -> A, indexed by play-tree node.
    std::vector<Elem> forward, backward;
    TreeMap forward_nodes, backward_nodes;
};

/// Isomorphism in Kl(C_k): coKleisli homomorphisms f, g with g* f* = id and
/// f* g* = id.
inline CoKleisliIso decide_cokleisli_iso(const Structure & a, const Structure & b, std::size_t k, Comonad c,
    const Caps & caps = {})
{
    require_same_vocabulary(a, b);
    if (c == Comonad::pebble)
        throw InvalidArgument("coKleisli isomorphism search needs a finite C_k universe");
    auto ta = play_tree(a, k, c, caps.plays);
    auto tb = play_tree(b, k, c, caps.plays);

    std::function<bool(std::size_t, std::size_t)> local;
    if (c == Comonad::ef)
        // f and g are homomorphisms iff, along each branch, the index tuples
        // in R are the same on both sides. Only tuples through the newest
        // position need checking; older ones were checked at the ancestors.
        local = [&](std::size_t s, std::size_t t) {
            return branch_consistent(a, ta.branch(s), b, tb.branch(t), BranchRelation::relations, true);
        };
    else
        local = [&](std::size_t s, std::size_t t) {
            for (std::size_t sym = 0; sym < a.vocabulary().size(); ++sym)
                if (a.vocabulary()[sym].arity == 1 && a.holds(sym, {ta[s].elem}) != b.holds(sym, {tb[t].elem}))
                    return false;
            return true;
        };

    auto found = TreeIsoSearch(ta, tb, local, caps.positions).run();
    CoKleisliIso r;
    r.holds = found.holds;
    if (found.holds) {
        std::size_t skip = ta.virtual_root ? 1 : 0;
        for (std::size_t s = skip; s < ta.size(); ++s)
            r.forward.push_back(tb[found.forward[s]].elem);
        for (std::size_t t = skip; t < tb.size(); ++t)
            r.backward.push_back(ta[found.backward[t]].elem);
        r.forward_nodes = std::move(found.forward);
        r.backward_nodes = std::move(found.backward);
    }
    return r;
}

/// The coextension of a table given on the non-virtual nodes of `ta`, as a
/// node map into `tb`. Fails (returns nullopt) if some image is not a play of B.
inline std::optional<TreeMap> coextend_table(const PlayTree & ta, const PlayTree & tb, const std::vector<Elem> & table)
{
    std::size_t skip = ta.virtual_root ? 1 : 0;
    if (table.size() + skip != ta.size())
        return std::nullopt;
    TreeMap image(ta.size(), 0);
    if (! ta.virtual_root && tb[0].elem != table[0])
        return std::nullopt;
    for (std::size_t s = 1; s < ta.size(); ++s) {
        auto c = tb.child(image[ta[s].parent], ta[s].label, table[s - skip]);
        if (! c)
            return std::nullopt;
        image[s] = *c;
    }
    return image;
}

} // namespace gamecomonad
