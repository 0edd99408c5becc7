#pragma once

#include <gamecomonad/ef.hpp>
#include <gamecomonad/hom.hpp>
#include <gamecomonad/structure.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gamecomonad {

/// One move of a pebble game: pebble `pebble` (1-based) placed on `elem`.
template <typename T>
struct Move {
    unsigned pebble;
    T elem;

    auto operator<=>(const Move &) const = default;
};

/// An element of P_k A: a nonempty sequence of moves.
using PebblePlay = std::vector<Move<Elem>>;

/// Dense indexing of the truncation of (k x A)^+ to plays of length <= n, in
/// length-then-lexicographic order with moves ordered by (pebble, element).
class PebblePlaySpace {
public:
    PebblePlaySpace(std::size_t universe, std::size_t k, std::size_t n, std::size_t cap = default_play_cap) :
        elems_(universe), k_(k), moves_(universe * k), n_(n)
    {
        if (k == 0)
            throw InvalidArgument("pebble count k must be at least 1");
        if (n == 0)
            throw InvalidArgument("truncation length must be at least 1");
        offsets_.push_back(0);
        std::size_t layer = 1;
        for (std::size_t len = 1; len <= n; ++len) {
            layer = moves_ == 0 ? 0 : layer * moves_;
            if (layer > cap || offsets_.back() + layer > cap)
                throw CapExceeded("truncated P_k universe exceeds " + std::to_string(cap) + " plays");
            offsets_.push_back(offsets_.back() + layer);
        }
    }

    std::size_t size() const noexcept { return offsets_.back(); }
    std::size_t k() const noexcept { return k_; }
    std::size_t truncation() const noexcept { return n_; }
    std::size_t universe() const noexcept { return elems_; }

    std::size_t index(const PebblePlay & s) const
    {
        if (s.empty() || s.size() > n_)
            throw CapExceeded("play length outside the truncation 1..n");
        std::size_t i = 0;
        for (auto & m : s) {
            if (m.pebble < 1 || m.pebble > k_ || m.elem >= elems_)
                throw InvalidArgument("move outside k x A");
            i = i * moves_ + (m.pebble - 1) * elems_ + m.elem;
        }
        return offsets_[s.size() - 1] + i;
    }

    PebblePlay play(std::size_t index) const
    {
        std::size_t len = 1;
        while (index >= offsets_[len])
            ++len;
        std::size_t rest = index - offsets_[len - 1];
        PebblePlay s(len);
        for (std::size_t i = len; i-- > 0;) {
            auto code = rest % moves_;
            rest /= moves_;
            s[i] = Move<Elem>{static_cast<unsigned>(code / elems_ + 1), static_cast<Elem>(code % elems_)};
        }
        return s;
    }

private:
    std::size_t elems_, k_, moves_, n_;
    std::vector<std::size_t> offsets_;
};

inline std::vector<PebblePlay> pebble_universe(const Structure & a, std::size_t k, std::size_t n,
    std::size_t cap = default_play_cap)
{
    PebblePlaySpace space(a.size(), k, n, cap);
    std::vector<PebblePlay> plays;
    plays.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i)
        plays.push_back(space.play(i));
    return plays;
}

inline std::string play_name(const Structure & a, const PebblePlay & s)
{
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i)
            out += ',';
        out += "(" + std::to_string(s[i].pebble) + "," + a.name(s[i].elem) + ")";
    }
    return out + "]";
}

/// For s a prefix of t: the pebble of the last move of s is not moved again
/// in the remainder of t.
template <typename T>
bool pebble_active_in(const std::vector<Move<T>> & s, const std::vector<Move<T>> & t)
{
    auto p = s.back().pebble;
    for (std::size_t i = s.size(); i < t.size(); ++i)
        if (t[i].pebble == p)
            return false;
    return true;
}

/// The relational condition of P_k on a tuple of plays, minus the base
/// relation on last elements: pairwise comparable, and for every comparable
/// pair the shorter play's last pebble stays in place.
template <typename T>
bool pebble_chain_condition(const std::vector<std::vector<Move<T>>> & plays)
{
    for (std::size_t i = 0; i < plays.size(); ++i)
        for (std::size_t j = 0; j < plays.size(); ++j) {
            if (i == j)
                continue;
            if (! prefix_comparable(plays[i], plays[j]))
                return false;
            if (is_prefix(plays[i], plays[j]) && ! pebble_active_in(plays[i], plays[j]))
                return false;
        }
    return true;
}

/// Truncated P_k A: the lifted tuples among plays of length <= n.
inline Structure pebble_structure(const Structure & a, std::size_t k, std::size_t n, std::size_t cap = default_play_cap)
{
    PebblePlaySpace space(a.size(), k, n, cap);
    Structure result(a.vocabulary());
    for (std::size_t i = 0; i < space.size(); ++i)
        result.add_element(play_name(a, space.play(i)));

    for (std::size_t idx = 0; idx < space.size(); ++idx) {
        auto t = space.play(idx);
        const std::size_t len = t.size();
        // Positions of t whose pebble is not moved again: the active placements.
        std::vector<char> active(len, 1);
        for (std::size_t j = 0; j < len; ++j)
            for (std::size_t l = j + 1; l < len; ++l)
                if (t[l].pebble == t[j].pebble)
                    active[j] = 0;
        for (std::size_t sym = 0; sym < a.vocabulary().size(); ++sym) {
            const std::size_t m = a.vocabulary()[sym].arity;
            for (auto & r : a.tuples(sym)) {
                std::vector<std::vector<std::size_t>> positions(m);
                bool possible = true;
                for (std::size_t c = 0; c < m && possible; ++c) {
                    for (std::size_t j = 0; j < len; ++j)
                        if (active[j] && t[j].elem == r[c])
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
                            PebblePlay prefix(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(positions[c][pick[c]] + 1));
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

template <typename T>
const T & pebble_counit(const std::vector<Move<T>> & s)
{
    if (s.empty())
        throw InvalidArgument("counit of an empty play");
    return s.back().elem;
}

/// delta[(p_1,a_1),...,(p_j,a_j)] = [(p_1, s_1), ..., (p_j, s_j)] with s_i the
/// prefix of length i.
template <typename T>
std::vector<Move<std::vector<Move<T>>>> pebble_comult(const std::vector<Move<T>> & s)
{
    std::vector<Move<std::vector<Move<T>>>> result;
    result.reserve(s.size());
    for (std::size_t i = 1; i <= s.size(); ++i)
        result.push_back({s[i - 1].pebble, std::vector<Move<T>>(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i))});
    return result;
}

template <typename T, typename F>
auto pebble_fmap(F && h, const std::vector<Move<T>> & s)
{
    using U = std::decay_t<decltype(h(s.front().elem))>;
    std::vector<Move<U>> result;
    result.reserve(s.size());
    for (auto & m : s)
        result.push_back(Move<U>{m.pebble, h(m.elem)});
    return result;
}

/// f*[(p_1,a_1),...,(p_j,a_j)] = [(p_1,b_1),...,(p_j,b_j)], b_i = f(prefix_i).
template <typename T, typename F>
auto pebble_coextend(F && f, const std::vector<Move<T>> & s)
{
    using U = std::decay_t<decltype(f(s))>;
    std::vector<Move<U>> result;
    result.reserve(s.size());
    std::vector<Move<T>> prefix;
    for (auto & m : s) {
        prefix.push_back(m);
        result.push_back(Move<U>{m.pebble, f(prefix)});
    }
    return result;
}

/// A coKleisli map on the truncation P_k A (length <= n) to B.
struct PebbleCoKleisli {
    std::size_t k = 1;
    std::size_t n = 1;
    std::size_t source_size = 0;
    std::size_t target_size = 0;
    std::vector<Elem> table;

    PebblePlaySpace space() const { return PebblePlaySpace(source_size, k, n); }

    bool operator==(const PebbleCoKleisli &) const = default;
};

inline PebbleCoKleisli pebble_identity(std::size_t universe, std::size_t k, std::size_t n)
{
    PebblePlaySpace space(universe, k, n);
    PebbleCoKleisli f{k, n, universe, universe, {}};
    for (std::size_t i = 0; i < space.size(); ++i)
        f.table.push_back(space.play(i).back().elem);
    return f;
}

inline PebblePlay pebble_coextension(const PebbleCoKleisli & f, const PebblePlay & s)
{
    auto space = f.space();
    return pebble_coextend([&](const PebblePlay & p) { return f.table.at(space.index(p)); }, s);
}

inline PebbleCoKleisli pebble_compose(const PebbleCoKleisli & g, const PebbleCoKleisli & f)
{
    if (f.k != g.k || f.n != g.n || f.target_size != g.source_size)
        throw InvalidArgument("coKleisli maps do not compose");
    auto fs = f.space();
    auto gs = g.space();
    PebbleCoKleisli h{f.k, f.n, f.source_size, g.target_size, {}};
    for (std::size_t i = 0; i < fs.size(); ++i)
        h.table.push_back(g.table.at(gs.index(pebble_coextension(f, fs.play(i)))));
    return h;
}

/// A Duplicator strategy in positional form: a family of partial maps with
/// at most k pairs each, kept sorted by source element.
struct StrategyFamily {
    std::size_t k = 0;
    std::vector<PartialMap> parts;

    bool contains(const PartialMap & p) const { return std::binary_search(parts.begin(), parts.end(), p); }
};

struct PebbleDecision {
    bool holds = false;
    StrategyFamily family;
};

namespace detail {
    inline PartialMap normalized(PartialMap p)
    {
        std::sort(p.begin(), p.end());
        p.erase(std::unique(p.begin(), p.end()), p.end());
        return p;
    }

    /// Greatest family of partial homomorphisms (or isomorphisms) of size <= k
    /// closed under restriction, with forth (and back) for members of size < k.
    inline StrategyFamily greatest_pebble_family(const Structure & a, const Structure & b, std::size_t k, bool two_sided,
        std::size_t cap)
    {
        require_same_vocabulary(a, b);
        if (k == 0)
            throw InvalidArgument("pebble count k must be at least 1");

        std::vector<PartialMap> maps;
        std::map<PartialMap, std::size_t> id;
        PartialMap current;
        std::vector<char> used_target(b.size(), 0);
        auto valid = [&](const PartialMap & p) { return two_sided ? is_partial_iso(p, a, b) : is_partial_hom(p, a, b); };
        std::function<void(Elem)> enumerate = [&](Elem x) {
            if (x == a.size()) {
                if (maps.size() >= cap)
                    throw CapExceeded("pebble family exceeds " + std::to_string(cap) + " partial maps");
                id.emplace(current, maps.size());
                maps.push_back(current);
                return;
            }
            enumerate(x + 1);
            if (current.size() == k)
                return;
            for (Elem y = 0; y < b.size(); ++y) {
                if (two_sided && used_target[y])
                    continue;
                current.emplace_back(x, y);
                if (valid(current)) {
                    used_target[y] = 1;
                    enumerate(x + 1);
                    used_target[y] = 0;
                }
                current.pop_back();
            }
        };
        enumerate(0);

        const std::size_t count = maps.size();
        std::vector<char> alive(count, 1);
        // restrictions[i]: ids of the one-pair restrictions of map i.
        std::vector<std::vector<std::size_t>> restrictions(count);
        // forth[i][x]: ids of the extensions of map i by some (x, y).
        std::vector<std::vector<std::vector<std::size_t>>> forth(count), back(count);
        for (std::size_t i = 0; i < count; ++i) {
            auto & p = maps[i];
            for (std::size_t j = 0; j < p.size(); ++j) {
                PartialMap q = p;
                q.erase(q.begin() + static_cast<std::ptrdiff_t>(j));
                restrictions[i].push_back(id.at(q));
            }
            if (p.size() >= k)
                continue;
            std::vector<char> in_dom(a.size(), 0), in_range(b.size(), 0);
            for (auto [x, y] : p) {
                in_dom[x] = 1;
                in_range[y] = 1;
            }
            forth[i].resize(a.size());
            for (Elem x = 0; x < a.size(); ++x) {
                if (in_dom[x])
                    continue;
                for (Elem y = 0; y < b.size(); ++y) {
                    auto q = normalized([&] { auto r = p; r.emplace_back(x, y); return r; }());
                    if (auto it = id.find(q); it != id.end())
                        forth[i][x].push_back(it->second);
                }
            }
            if (two_sided) {
                back[i].resize(b.size());
                for (Elem y = 0; y < b.size(); ++y) {
                    if (in_range[y])
                        continue;
                    for (Elem x = 0; x < a.size(); ++x) {
                        auto q = normalized([&] { auto r = p; r.emplace_back(x, y); return r; }());
                        if (auto it = id.find(q); it != id.end())
                            back[i][y].push_back(it->second);
                    }
                }
            }
        }

        auto some_alive = [&](const std::vector<std::size_t> & ids) {
            return std::any_of(ids.begin(), ids.end(), [&](std::size_t j) { return alive[j] != 0; });
        };

        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < count; ++i) {
                if (! alive[i])
                    continue;
                bool ok = std::all_of(restrictions[i].begin(), restrictions[i].end(), [&](std::size_t j) { return alive[j] != 0; });
                if (ok && maps[i].size() < k) {
                    std::vector<char> in_dom(a.size(), 0), in_range(b.size(), 0);
                    for (auto [x, y] : maps[i]) {
                        in_dom[x] = 1;
                        in_range[y] = 1;
                    }
                    for (Elem x = 0; ok && x < a.size(); ++x)
                        if (! in_dom[x] && ! some_alive(forth[i][x]))
                            ok = false;
                    if (two_sided)
                        for (Elem y = 0; ok && y < b.size(); ++y)
                            if (! in_range[y] && ! some_alive(back[i][y]))
                                ok = false;
                }
                if (! ok) {
                    alive[i] = 0;
                    changed = true;
                }
            }
        }

        StrategyFamily family{k, {}};
        for (std::size_t i = 0; i < count; ++i)
            if (alive[i])
                family.parts.push_back(maps[i]);
        std::sort(family.parts.begin(), family.parts.end());
        return family;
    }
} // namespace detail

constexpr std::size_t default_family_cap = 5'000'000;

/// Existential k-pebble game from A to B, as the greatest positional
/// Duplicator strategy. Holds iff the family contains the empty map.
inline PebbleDecision decide_exist_pebble(const Structure & a, const Structure & b, std::size_t k,
    std::size_t cap = default_family_cap)
{
    PebbleDecision d;
    d.family = detail::greatest_pebble_family(a, b, k, false, cap);
    d.holds = d.family.contains(PartialMap{});
    if (! d.holds)
        d.family.parts.clear();
    return d;
}

/// Two-sided k-pebble game: positions are the current pebble placements,
/// winning while they define a partial isomorphism.
inline PebbleDecision decide_pebble_back_forth(const Structure & a, const Structure & b, std::size_t k,
    std::size_t cap = default_family_cap)
{
    PebbleDecision d;
    d.family = detail::greatest_pebble_family(a, b, k, true, cap);
    d.holds = d.family.contains(PartialMap{});
    if (! d.holds)
        d.family.parts.clear();
    return d;
}

/// Independent audit of a family by direct enumeration. Returns an empty
/// string when the family is a valid nonempty Duplicator strategy.
inline std::string audit_family(const StrategyFamily & family, const Structure & a, const Structure & b, bool two_sided)
{
    if (! family.contains(PartialMap{}))
        return "family does not contain the empty map";
    for (auto & p : family.parts) {
        if (p.size() > family.k)
            return "member larger than k";
        if (! std::is_sorted(p.begin(), p.end()))
            return "member not normalized";
        if (two_sided ? ! is_partial_iso(p, a, b) : ! is_partial_hom(p, a, b))
            return two_sided ? "member is not a partial isomorphism" : "member is not a partial homomorphism";
        for (std::size_t j = 0; j < p.size(); ++j) {
            auto q = p;
            q.erase(q.begin() + static_cast<std::ptrdiff_t>(j));
            if (! family.contains(q))
                return "family not closed under restriction";
        }
        if (p.size() == family.k)
            continue;
        for (Elem x = 0; x < a.size(); ++x) {
            if (std::any_of(p.begin(), p.end(), [&](auto pr) { return pr.first == x; }))
                continue;
            bool found = false;
            for (Elem y = 0; y < b.size() && ! found; ++y) {
                auto q = p;
                q.emplace_back(x, y);
                found = family.contains(detail::normalized(q));
            }
            if (! found)
                return "forth property fails";
        }
        if (! two_sided)
            continue;
        for (Elem y = 0; y < b.size(); ++y) {
            if (std::any_of(p.begin(), p.end(), [&](auto pr) { return pr.second == y; }))
                continue;
            bool found = false;
            for (Elem x = 0; x < a.size() && ! found; ++x) {
                auto q = p;
                q.emplace_back(x, y);
                found = family.contains(detail::normalized(q));
            }
            if (! found)
                return "back property fails";
        }
    }
    return "";
}

/// Reads a coKleisli table on the truncation off a positional strategy:
/// replay each play, keep the current placement of each pebble, and answer
/// each move with the first target element that keeps the placements in the
/// family.
inline PebbleCoKleisli strategy_table(const StrategyFamily & family, const Structure & a, const Structure & b,
    std::size_t n)
{
    PebblePlaySpace space(a.size(), family.k, n);
    PebbleCoKleisli f{family.k, n, a.size(), b.size(), std::vector<Elem>(space.size(), 0)};
    for (std::size_t i = 0; i < space.size(); ++i) {
        auto s = space.play(i);
        std::vector<std::optional<std::pair<Elem, Elem>>> placed(family.k + 1);
        for (std::size_t j = 0; j + 1 < s.size(); ++j) {
            PebblePlay prefix(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(j + 1));
            placed[s[j].pebble] = std::make_pair(s[j].elem, f.table[space.index(prefix)]);
        }
        placed[s.back().pebble].reset();
        PartialMap rest;
        for (auto & pl : placed)
            if (pl)
                rest.push_back(*pl);
        bool answered = false;
        for (Elem y = 0; y < b.size() && ! answered; ++y) {
            auto q = rest;
            q.emplace_back(s.back().elem, y);
            if (family.contains(detail::normalized(q))) {
                f.table[i] = y;
                answered = true;
            }
        }
        if (! answered)
            throw InvalidArgument("family has no answer for play " + play_name(a, s));
    }
    return f;
}

inline std::string part_line(const Structure & a, const Structure & b, const PartialMap & p)
{
    std::string out = "part";
    for (auto [x, y] : p)
        out += " (" + a.name(x) + "↦" + b.name(y) + ")";
    return out;
}

} // namespace gamecomonad
