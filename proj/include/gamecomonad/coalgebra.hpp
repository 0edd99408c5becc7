#pragma once

#include <gamecomonad/ef.hpp>
#include <gamecomonad/forest.hpp>
#include <gamecomonad/modal.hpp>
#include <gamecomonad/pebble.hpp>

#include <string>
#include <vector>

namespace gamecomonad {

/// alpha : A -> C_k A, one play per element of the host.
template <typename Play>
struct Coalgebra {
    std::size_t k = 1;
    std::vector<Play> alpha;
};

using EfCoalgebra = Coalgebra<EfPlay>;
using PebbleCoalgebra = Coalgebra<PebblePlay>;
using ModalCoalgebra = Coalgebra<ModalPath>;

/// Outcome of a coalgebra check; `failure` names the first violated condition.
struct CoalgebraReport {
    bool ok = true;
    std::string failure;

    explicit operator bool() const noexcept { return ok; }
};

namespace detail {
    inline CoalgebraReport fail(std::string what) { return {false, std::move(what)}; }

    template <typename Play, typename Last, typename Prefix>
    CoalgebraReport check_laws(const Structure & a, const std::vector<Play> & alpha, Last last, Prefix prefix_through,
        auto name)
    {
        for (Elem e = 0; e < a.size(); ++e) {
            auto & s = alpha[e];
            if (last(s) != e)
                return fail("counit law fails at " + a.name(e) + ": alpha(" + a.name(e) + ") = " + name(s));
            // delta(alpha(e)) and C_k alpha(alpha(e)) agree iff alpha sends
            // the element played at each position to the prefix ending there.
            std::string bad = prefix_through(s);
            if (! bad.empty())
                return fail("comultiplication law fails at " + a.name(e) + ": " + bad);
        }
        return {};
    }
} // namespace detail

/// Homomorphism condition, counit law and comultiplication law for E_k.
/// Throws InvalidArgument if some alpha(a) is not a play of E_k A.
inline CoalgebraReport check_coalgebra(const Structure & a, const EfCoalgebra & c)
{
    if (c.alpha.size() != a.size())
        throw InvalidArgument("coalgebra map is not total");
    for (auto & s : c.alpha) {
        if (s.empty() || s.size() > c.k)
            throw InvalidArgument("play of length " + std::to_string(s.size()) + " is outside E_" + std::to_string(c.k));
        for (auto e : s)
            if (e >= a.size())
                throw InvalidArgument("play mentions an element outside the universe");
    }
    auto name = [&](const EfPlay & s) { return play_name(a, s); };
    auto prefixes = [&](const EfPlay & s) -> std::string {
        for (std::size_t i = 0; i < s.size(); ++i) {
            EfPlay p(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i + 1));
            if (c.alpha[s[i]] != p)
                return "alpha(" + a.name(s[i]) + ") = " + name(c.alpha[s[i]]) + " but the prefix is " + name(p);
        }
        return {};
    };
    auto r = detail::check_laws(a, c.alpha, [](const EfPlay & s) { return s.back(); }, prefixes, name);
    if (! r)
        return r;
    for (std::size_t sym = 0; sym < a.vocabulary().size(); ++sym)
        for (auto & t : a.tuples(sym))
            for (std::size_t i = 0; i < t.size(); ++i)
                for (std::size_t j = i + 1; j < t.size(); ++j)
                    if (! prefix_comparable(c.alpha[t[i]], c.alpha[t[j]]))
                        return detail::fail("not a homomorphism: " + name(c.alpha[t[i]]) + " and " +
                            name(c.alpha[t[j]]) + " are incomparable but related by " + a.vocabulary()[sym].name);
    return {};
}

inline CoalgebraReport check_coalgebra(const Structure & a, const PebbleCoalgebra & c)
{
    if (c.alpha.size() != a.size())
        throw InvalidArgument("coalgebra map is not total");
    for (auto & s : c.alpha) {
        if (s.empty())
            throw InvalidArgument("empty play is outside P_" + std::to_string(c.k));
        for (auto & m : s)
            if (m.pebble < 1 || m.pebble > c.k || m.elem >= a.size())
                throw InvalidArgument("move outside P_" + std::to_string(c.k));
    }
    auto name = [&](const PebblePlay & s) { return play_name(a, s); };
    auto prefixes = [&](const PebblePlay & s) -> std::string {
        for (std::size_t i = 0; i < s.size(); ++i) {
            PebblePlay p(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i + 1));
            if (c.alpha[s[i].elem] != p)
                return "alpha(" + a.name(s[i].elem) + ") = " + name(c.alpha[s[i].elem]) + " but the prefix is " + name(p);
        }
        return {};
    };
    auto r = detail::check_laws(a, c.alpha, [](const PebblePlay & s) { return s.back().elem; }, prefixes, name);
    if (! r)
        return r;
    for (std::size_t sym = 0; sym < a.vocabulary().size(); ++sym)
        for (auto & t : a.tuples(sym)) {
            std::vector<PebblePlay> plays;
            for (auto e : t)
                plays.push_back(c.alpha[e]);
            if (! pebble_chain_condition(plays))
                return detail::fail("not a homomorphism: the images of a " + a.vocabulary()[sym].name +
                    " tuple violate the pebble condition");
        }
    return {};
}

inline CoalgebraReport check_coalgebra(const Structure & a, const ModalCoalgebra & c)
{
    require_modal(a);
    if (c.alpha.size() != a.size())
        throw InvalidArgument("coalgebra map is not total");
    auto point = *a.point();
    for (auto & s : c.alpha) {
        if (s.origin != point)
            throw InvalidArgument("path does not start at the distinguished element");
        if (s.length() > c.k)
            throw InvalidArgument("path longer than " + std::to_string(c.k));
        Elem prev = s.origin;
        for (auto & [label, e] : s.steps) {
            if (label < 0 || static_cast<std::size_t>(label) >= a.vocabulary().size() ||
                a.vocabulary()[static_cast<std::size_t>(label)].arity != 2 ||
                ! a.holds(static_cast<std::size_t>(label), {prev, e}))
                throw InvalidArgument("path step is not a transition of the structure");
            prev = e;
        }
    }
    auto name = [&](const ModalPath & s) { return path_name(a, s); };
    if (c.alpha[point].length() != 0)
        return detail::fail("distinguished element is not sent to the distinguished path");
    auto prefixes = [&](const ModalPath & s) -> std::string {
        for (std::size_t i = 0; i <= s.length(); ++i) {
            auto p = s.prefix(i);
            if (c.alpha[p.last()] != p)
                return "alpha(" + a.name(p.last()) + ") = " + name(c.alpha[p.last()]) + " but the prefix is " + name(p);
        }
        return {};
    };
    auto r = detail::check_laws(a, c.alpha, [](const ModalPath & s) { return s.last(); }, prefixes, name);
    if (! r)
        return r;
    for (std::size_t sym = 0; sym < a.vocabulary().size(); ++sym) {
        if (a.vocabulary()[sym].arity != 2)
            continue;
        for (auto & t : a.tuples(sym)) {
            auto extended = c.alpha[t[0]];
            extended.steps.emplace_back(static_cast<int>(sym), t[1]);
            if (c.alpha[t[1]] != extended)
                return detail::fail("not a homomorphism: " + a.vocabulary()[sym].name + "(" + a.name(t[0]) + "," +
                    a.name(t[1]) + ") but " + name(c.alpha[t[1]]) + " does not extend " + name(c.alpha[t[0]]));
        }
    }
    return {};
}

/// v <= v' iff alpha(v) is a prefix of alpha(v').
inline ForestCover coalgebra_to_forest_cover(const Structure & a, const EfCoalgebra & c)
{
    if (auto r = check_coalgebra(a, c); ! r)
        throw InvalidArgument("not a coalgebra: " + r.failure);
    ForestCover f;
    f.parent.assign(a.size(), no_vertex);
    for (Elem v = 0; v < a.size(); ++v)
        if (c.alpha[v].size() > 1)
            f.parent[v] = c.alpha[v][c.alpha[v].size() - 2];
    return f;
}

/// alpha(v) is the chain of predecessors of v ending at v.
inline EfCoalgebra forest_cover_to_coalgebra(const Structure & a, const ForestCover & f, std::size_t k)
{
    auto g = gaifman(a);
    if (auto e = validate_forest_cover(g, f); ! e.empty())
        throw InvalidArgument("not a forest cover: " + e);
    if (f.height() > k)
        throw InvalidArgument("forest height " + std::to_string(f.height()) + " exceeds " + std::to_string(k));
    EfCoalgebra c{k, {}};
    for (std::size_t v = 0; v < f.size(); ++v) {
        EfPlay s;
        for (auto x : f.chain(v))
            s.push_back(static_cast<Elem>(x));
        c.alpha.push_back(std::move(s));
    }
    return c;
}

inline PebbleForestCover coalgebra_to_pebble_forest_cover(const Structure & a, const PebbleCoalgebra & c)
{
    if (auto r = check_coalgebra(a, c); ! r)
        throw InvalidArgument("not a coalgebra: " + r.failure);
    PebbleForestCover pfc;
    pfc.cover.parent.assign(a.size(), no_vertex);
    pfc.pebble.assign(a.size(), 0);
    for (Elem v = 0; v < a.size(); ++v) {
        auto & s = c.alpha[v];
        if (s.size() > 1)
            pfc.cover.parent[v] = s[s.size() - 2].elem;
        pfc.pebble[v] = s.back().pebble;
    }
    return pfc;
}

inline PebbleCoalgebra pebble_forest_cover_to_coalgebra(const Structure & a, const PebbleForestCover & pfc, std::size_t k)
{
    if (auto e = validate_pebble_forest_cover(gaifman(a), pfc, k); ! e.empty())
        throw InvalidArgument("not a " + std::to_string(k) + "-pebble forest cover: " + e);
    PebbleCoalgebra c{k, {}};
    for (std::size_t v = 0; v < pfc.cover.size(); ++v) {
        PebblePlay s;
        for (auto x : pfc.cover.chain(v))
            s.push_back({pfc.pebble[x], static_cast<Elem>(x)});
        c.alpha.push_back(std::move(s));
    }
    return c;
}

inline std::string serialize_coalgebra(const Structure & a, const EfCoalgebra & c)
{
    std::string out;
    for (Elem v = 0; v < a.size(); ++v)
        out += "alpha " + a.name(v) + " " + play_name(a, c.alpha[v]) + "\n";
    return out;
}

inline std::string serialize_coalgebra(const Structure & a, const PebbleCoalgebra & c)
{
    std::string out;
    for (Elem v = 0; v < a.size(); ++v)
        out += "alpha " + a.name(v) + " " + play_name(a, c.alpha[v]) + "\n";
    return out;
}

inline std::string serialize_coalgebra(const Structure & a, const ModalCoalgebra & c)
{
    std::string out;
    for (Elem v = 0; v < a.size(); ++v)
        out += "alpha " + a.name(v) + " " + path_name(a, c.alpha[v]) + "\n";
    return out;
}

} // namespace gamecomonad
