#pragma once

#include <gamecomonad/game.hpp>
#include <gamecomonad/hom.hpp>
#include <gamecomonad/structure.hpp>

#include <optional>
#include <string>
#include <vector>

namespace gamecomonad {

/// A play of the EF game in one structure: a nonempty sequence of at most k
/// elements. It is an element of the universe of E_k A.
using EfPlay = std::vector<Elem>;

constexpr std::size_t default_play_cap = 1'000'000;

/// Dense indexing of A^{<=k} in length-then-lexicographic order.
class EfPlaySpace {
public:
    EfPlaySpace(std::size_t universe, std::size_t k, std::size_t cap = default_play_cap) : n_(universe), k_(k)
    {
        if (k == 0)
            throw InvalidArgument("round bound k must be at least 1");
        offsets_.push_back(0);
        std::size_t layer = 1;
        for (std::size_t len = 1; len <= k; ++len) {
            layer = n_ == 0 ? 0 : layer * n_;
            if (layer > cap || offsets_.back() + layer > cap)
                throw CapExceeded("E_k universe exceeds " + std::to_string(cap) + " plays");
            offsets_.push_back(offsets_.back() + layer);
        }
    }

    std::size_t size() const noexcept { return offsets_.back(); }
    std::size_t k() const noexcept { return k_; }
    std::size_t universe() const noexcept { return n_; }

    std::size_t index(const EfPlay & s) const
    {
        if (s.empty() || s.size() > k_)
            throw InvalidArgument("play length outside 1..k");
        std::size_t i = 0;
        for (auto e : s) {
            if (e >= n_)
                throw InvalidArgument("play entry outside universe");
            i = i * n_ + e;
        }
        return offsets_[s.size() - 1] + i;
    }

    EfPlay play(std::size_t index) const
    {
        std::size_t len = 1;
        while (index >= offsets_[len])
            ++len;
        std::size_t rest = index - offsets_[len - 1];
        EfPlay s(len);
        for (std::size_t i = len; i-- > 0;) {
            s[i] = static_cast<Elem>(rest % n_);
            rest /= n_;
        }
        return s;
    }

private:
    std::size_t n_, k_;
    std::vector<std::size_t> offsets_;
};

/// All nonempty sequences of length <= k, length first, then lexicographic.
inline std::vector<EfPlay> ef_universe(const Structure & a, std::size_t k, std::size_t cap = default_play_cap)
{
    EfPlaySpace space(a.size(), k, cap);
    std::vector<EfPlay> plays;
    plays.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i)
        plays.push_back(space.play(i));
    return plays;
}

/// "[a,b,c]" using the host's element names.
inline std::string play_name(const Structure & a, const EfPlay & s)
{
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i)
            out += ',';
        out += a.name(s[i]);
    }
    return out + "]";
}

/// True iff one sequence is a prefix of the other.
template <typename T>
bool prefix_comparable(const std::vector<T> & s, const std::vector<T> & t)
{
    auto n = std::min(s.size(), t.size());
    return std::equal(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n), t.begin());
}

template <typename T>
bool is_prefix(const std::vector<T> & s, const std::vector<T> & t)
{
    return s.size() <= t.size() && std::equal(s.begin(), s.end(), t.begin());
}

/// E_k A: plays of length <= k; an n-tuple of plays is in R iff the plays are
/// pairwise prefix-comparable and their last elements form a tuple of R^A.
/// Element i of the result is play i of ef_universe(a, k).
inline Structure ef_structure(const Structure & a, std::size_t k, std::size_t cap = default_play_cap)
{
    EfPlaySpace space(a.size(), k, cap);
    Structure result(a.vocabulary());
    for (std::size_t i = 0; i < space.size(); ++i)
        result.add_element(play_name(a, space.play(i)));

    // A pairwise-comparable tuple lies on one chain; enumerate it by its
    // longest member t and the positions of the others inside t.
    for (std::size_t idx = 0; idx < space.size(); ++idx) {
        auto t = space.play(idx);
        const std::size_t len = t.size();
        for (std::size_t sym = 0; sym < a.vocabulary().size(); ++sym) {
            const std::size_t m = a.vocabulary()[sym].arity;
            for (auto & r : a.tuples(sym)) {
                if (std::find(r.begin(), r.end(), t.back()) == r.end())
                    continue;
                std::vector<std::vector<std::size_t>> positions(m);
                bool possible = true;
                for (std::size_t c = 0; c < m && possible; ++c) {
                    for (std::size_t j = 0; j < len; ++j)
                        if (t[j] == r[c])
                            positions[c].push_back(j);
                    possible = ! positions[c].empty();
                }
                if (! possible)
                    continue;
                std::vector<std::size_t> pick(m, 0);
                while (true) {
                    std::size_t top = 0;
                    for (std::size_t c = 0; c < m; ++c)
                        top = std::max(top, positions[c][pick[c]]);
                    if (top == len - 1) {
                        Tuple tuple(m);
                        for (std::size_t c = 0; c < m; ++c) {
                            EfPlay prefix(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(positions[c][pick[c]] + 1));
                            tuple[c] = static_cast<Elem>(space.index(prefix));
                        }
                        result.add_tuple(sym, std::move(tuple));
                    }
                    std::size_t c = 0;
                    while (c < m && ++pick[c] == positions[c].size())
                        pick[c++] = 0;
                    if (c == m)
                        break;
                }
            }
        }
    }
    return result;
}

// Comonad operations on sequences. They are generic in the element type so
// that E_k(E_k A) and deeper iterates can be expressed directly.

/// Counit: the last element of a play.
template <typename T>
const T & counit(const std::vector<T> & s)
{
    if (s.empty())
        throw InvalidArgument("counit of an empty play");
    return s.back();
}

/// Comultiplication: the sequence of nonempty prefixes.
template <typename T>
std::vector<std::vector<T>> comult(const std::vector<T> & s)
{
    std::vector<std::vector<T>> result;
    result.reserve(s.size());
    for (std::size_t i = 1; i <= s.size(); ++i)
        result.emplace_back(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i));
    return result;
}

/// Functor action: apply `h` to every element of a play.
template <typename T, typename F>
auto fmap(F && h, const std::vector<T> & s)
{
    std::vector<std::decay_t<decltype(h(s.front()))>> result;
    result.reserve(s.size());
    for (auto & x : s)
        result.push_back(h(x));
    return result;
}

/// Coextension: f*[a_1..a_j] = [f[a_1], f[a_1,a_2], ..., f[a_1..a_j]].
template <typename T, typename F>
auto coextend(F && f, const std::vector<T> & s)
{
    std::vector<std::decay_t<decltype(f(s))>> result;
    result.reserve(s.size());
    std::vector<T> prefix;
    for (auto & x : s) {
        prefix.push_back(x);
        result.push_back(f(prefix));
    }
    return result;
}

/// A coKleisli map E_k A -> B given by its table on ef_universe(A, k).
struct EfCoKleisli {
    std::size_t k = 1;
    std::size_t source_size = 0;
    std::size_t target_size = 0;
    std::vector<Elem> table;

    EfPlaySpace space() const { return EfPlaySpace(source_size, k); }

    Elem operator()(const EfPlay & s) const { return table.at(space().index(s)); }

    bool operator==(const EfCoKleisli &) const = default;
};

/// The counit as a coKleisli map A -> A (the identity of Kl(E_k)).
inline EfCoKleisli ef_identity(std::size_t universe, std::size_t k)
{
    EfPlaySpace space(universe, k);
    EfCoKleisli f{k, universe, universe, {}};
    f.table.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i)
        f.table.push_back(space.play(i).back());
    return f;
}

inline EfPlay coextension(const EfCoKleisli & f, const EfPlay & s)
{
    auto space = f.space();
    return coextend([&](const EfPlay & p) { return f.table.at(space.index(p)); }, s);
}

/// Kl(E_k) composition: (g . f)(s) = g(f*(s)).
inline EfCoKleisli cokleisli_compose(const EfCoKleisli & g, const EfCoKleisli & f)
{
    if (f.k != g.k || f.target_size != g.source_size)
        throw InvalidArgument("coKleisli maps do not compose");
    EfPlaySpace fs(f.source_size, f.k);
    EfPlaySpace gs(g.source_size, g.k);
    if (f.table.size() != fs.size() || g.table.size() != gs.size())
        throw InvalidArgument("coKleisli table is not total");
    EfCoKleisli h{f.k, f.source_size, g.target_size, {}};
    h.table.reserve(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i)
        h.table.push_back(g.table[gs.index(coextension(f, fs.play(i)))]);
    return h;
}

/// True iff the table is a homomorphism E_k A -> B.
inline bool is_cokleisli_hom(const EfCoKleisli & f, const Structure & a, const Structure & b)
{
    if (f.source_size != a.size() || f.target_size != b.size())
        throw InvalidArgument("coKleisli map does not match the structures");
    return check_hom(f.table, ef_structure(a, f.k), b);
}

/// The play tree of E_k A with a virtual root. Node i + 1 is play i.
inline PlayTree ef_play_tree(const Structure & a, std::size_t k, std::size_t cap = default_play_cap)
{
    EfPlaySpace space(a.size(), k, cap);
    PlayTree tree;
    tree.virtual_root = true;
    tree.add(PlayTree::no_parent, PlayTree::no_label, 0, "[]");
    for (std::size_t i = 0; i < space.size(); ++i) {
        auto s = space.play(i);
        std::size_t parent = 0;
        if (s.size() > 1)
            parent = space.index(EfPlay(s.begin(), s.end() - 1)) + 1;
        tree.add(parent, PlayTree::no_label, s.back(), play_name(a, s));
    }
    return tree;
}

struct EfDecision {
    bool holds = false;
    /// Duplicator's strategy as a coKleisli map (when holds).
    std::optional<EfCoKleisli> strategy;
    /// Spoiler's strategy over the play trees of A and B (when it does not).
    std::vector<Spoil> spoiler;
};

/// Existential k-round EF game from A to B, decided by backward induction
/// with the partial-homomorphism winning condition.
inline EfDecision decide_exist_ef(const Structure & a, const Structure & b, std::size_t k,
    std::size_t position_cap = default_position_cap, std::size_t play_cap = default_play_cap)
{
    require_same_vocabulary(a, b);
    auto ta = ef_play_tree(a, k, play_cap);
    auto tb = ef_play_tree(b, k, play_cap);
    auto w = branch_winning_set(a, ta, b, tb, BranchRelation::hom);
    auto game = solve_tree_game(ta, tb, w, SpoilerMoves::a_only, position_cap);

    EfDecision d;
    d.holds = game.duplicator_wins;
    if (d.holds) {
        EfCoKleisli f{k, a.size(), b.size(), std::vector<Elem>(ta.size() - 1, 0)};
        for (auto & r : game.duplicator)
            f.table[r.move - 1] = tb[r.response].elem;
        d.strategy = std::move(f);
    }
    else
        d.spoiler = std::move(game.spoiler);
    return d;
}

} // namespace gamecomonad
