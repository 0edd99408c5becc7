#pragma once

#include <gamecomonad/ef.hpp>
#include <gamecomonad/modal.hpp>
#include <gamecomonad/pebble.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gamecomonad {

/// Result of a pointwise law check: how many instances were evaluated and,
/// on failure, the first law that broke and the play where it broke.
struct LawReport {
    bool ok = true;
    std::size_t checks = 0;
    std::string law;
    std::string counterexample;

    /// Records one instance; returns false once a failure is stored.
    bool expect(bool holds, const char * name, const std::string & where)
    {
        ++checks;
        if (! holds && ok) {
            ok = false;
            law = name;
            counterexample = where;
        }
        return ok;
    }
};

namespace detail {
    /// Seeded test maps C_k A -> A given as deterministic hashes of the play,
    /// so they are defined on every sequence (not just on a table's domain).
    struct SeededMap {
        std::uint64_t seed;
        std::size_t range;

        static std::uint64_t mix(std::uint64_t h, std::uint64_t x)
        {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xbf58476d1ce4e5b9ULL;
            return h ^ (h >> 31);
        }

        Elem operator()(const EfPlay & s) const
        {
            std::uint64_t h = seed;
            for (auto e : s)
                h = mix(h, e);
            return static_cast<Elem>(h % range);
        }

        Elem operator()(const PebblePlay & s) const
        {
            std::uint64_t h = seed;
            for (auto & m : s)
                h = mix(mix(h, m.pebble), m.elem);
            return static_cast<Elem>(h % range);
        }

        Elem operator()(const ModalPath & p) const
        {
            std::uint64_t h = mix(seed, p.origin);
            for (auto & [label, e] : p.steps)
                h = mix(mix(h, static_cast<std::uint64_t>(label)), e);
            return static_cast<Elem>(h % range);
        }
    };

    /// The relation of a lifted structure over sequences: pairwise prefix
    /// comparable, with the last elements related in the base structure.
    template <typename Seq, typename Base>
    bool ef_lifted(const std::vector<Seq> & plays, Base && base)
    {
        for (std::size_t i = 0; i < plays.size(); ++i)
            for (std::size_t j = i + 1; j < plays.size(); ++j)
                if (! prefix_comparable(plays[i], plays[j]))
                    return false;
        return base(plays);
    }
} // namespace detail

/// Counit, coassociativity, homomorphism and coextension laws of E_k on A.
inline LawReport check_ef_laws(const Structure & a, std::size_t k, std::uint64_t seed = 1, std::size_t maps = 3,
    std::size_t cap = default_play_cap)
{
    LawReport r;
    EfPlaySpace space(a.size(), k, cap);
    auto c = ef_structure(a, k, cap);
    auto name = [&](const EfPlay & s) { return play_name(a, s); };
    auto identity = [](const EfPlay & s) { return s; };

    for (std::size_t i = 0; i < space.size(); ++i) {
        auto s = space.play(i);
        auto d = comult(s);
        r.expect(counit(d) == s, "counit after comultiplication", name(s));
        r.expect(fmap([](const EfPlay & p) { return counit(p); }, d) == s, "mapped counit after comultiplication", name(s));
        r.expect(comult(d) == fmap([](const EfPlay & p) { return comult(p); }, d), "coassociativity", name(s));
        r.expect(coextend([](const EfPlay & p) { return counit(p); }, s) == s, "coextension of counit", name(s));
        r.expect(coextend(identity, s) == d, "comultiplication as coextension of identity", name(s));
    }

    for (std::size_t sym = 0; sym < a.vocabulary().size(); ++sym)
        for (auto & t : c.tuples(sym)) {
            Tuple lasts;
            std::vector<std::vector<EfPlay>> lifted;
            for (auto e : t) {
                auto s = space.play(e);
                lasts.push_back(counit(s));
                lifted.push_back(comult(s));
            }
            r.expect(a.holds(sym, lasts), "counit is a homomorphism", c.name(t[0]));
            bool delta_hom = detail::ef_lifted(lifted, [&](const std::vector<std::vector<EfPlay>> & ps) {
                Tuple idx;
                for (auto & p : ps)
                    idx.push_back(static_cast<Elem>(space.index(counit(p))));
                return c.holds(sym, idx);
            });
            r.expect(delta_hom, "comultiplication is a homomorphism", c.name(t[0]));
        }

    if (a.size() > 0)
        for (std::size_t m = 0; m < maps; ++m) {
            detail::SeededMap f{seed * 2 * (m + 1), a.size()}, g{seed * 2 * (m + 1) + 1, a.size()};
            for (std::size_t i = 0; i < space.size(); ++i) {
                auto s = space.play(i);
                auto fs = coextend(f, s);
                r.expect(counit(fs) == f(s), "counit after coextension", name(s));
                auto gf = [&](const EfPlay & p) { return g(coextend(f, p)); };
                r.expect(coextend(gf, s) == coextend(g, fs), "coextension of a composite", name(s));
            }
        }
    return r;
}

/// The same laws for P_k on plays of length at most n.
inline LawReport check_pebble_laws(const Structure & a, std::size_t k, std::size_t n, std::uint64_t seed = 1,
    std::size_t maps = 3, std::size_t cap = default_play_cap)
{
    LawReport r;
    PebblePlaySpace space(a.size(), k, n, cap);
    auto c = pebble_structure(a, k, n, cap);
    auto name = [&](const PebblePlay & s) { return play_name(a, s); };

    for (std::size_t i = 0; i < space.size(); ++i) {
        auto s = space.play(i);
        auto d = pebble_comult(s);
        r.expect(pebble_counit(d) == s, "counit after comultiplication", name(s));
        r.expect(pebble_fmap([](const PebblePlay & p) { return pebble_counit(p); }, d) == s,
            "mapped counit after comultiplication", name(s));
        r.expect(pebble_comult(d) == pebble_fmap([](const PebblePlay & p) { return pebble_comult(p); }, d),
            "coassociativity", name(s));
        r.expect(pebble_coextend([](const PebblePlay & p) { return pebble_counit(p); }, s) == s,
            "coextension of counit", name(s));
        r.expect(pebble_coextend([](const PebblePlay & p) { return p; }, s) == d,
            "comultiplication as coextension of identity", name(s));
    }

    for (std::size_t sym = 0; sym < a.vocabulary().size(); ++sym)
        for (auto & t : c.tuples(sym)) {
            Tuple lasts, idx;
            std::vector<std::vector<Move<PebblePlay>>> lifted;
            for (auto e : t) {
                auto s = space.play(e);
                lasts.push_back(pebble_counit(s));
                lifted.push_back(pebble_comult(s));
                idx.push_back(static_cast<Elem>(space.index(pebble_counit(lifted.back()))));
            }
            r.expect(a.holds(sym, lasts), "counit is a homomorphism", c.name(t[0]));
            r.expect(pebble_chain_condition(lifted) && c.holds(sym, idx), "comultiplication is a homomorphism",
                c.name(t[0]));
        }

    if (a.size() > 0)
        for (std::size_t m = 0; m < maps; ++m) {
            detail::SeededMap f{seed * 2 * (m + 1), a.size()}, g{seed * 2 * (m + 1) + 1, a.size()};
            for (std::size_t i = 0; i < space.size(); ++i) {
                auto s = space.play(i);
                auto fs = pebble_coextend(f, s);
                r.expect(pebble_counit(fs) == f(s), "counit after coextension", name(s));
                auto gf = [&](const PebblePlay & p) { return g(pebble_coextend(f, p)); };
                r.expect(pebble_coextend(gf, s) == pebble_coextend(g, fs), "coextension of a composite", name(s));
            }
        }
    return r;
}

/// The same laws for M_k on the unravelling of a pointed structure.
inline LawReport check_modal_laws(const Structure & a, std::size_t k, std::uint64_t seed = 1, std::size_t maps = 3,
    std::size_t cap = default_play_cap)
{
    LawReport r;
    auto paths = modal_universe(a, k, cap);
    auto c = unravel(a, k, cap);
    std::map<ModalPath, std::size_t> index;
    for (std::size_t i = 0; i < paths.size(); ++i)
        index.emplace(paths[i], i);
    auto name = [&](const ModalPath & p) { return path_name(a, p); };

    r.expect(modal_counit(paths[0]) == *a.point(), "counit preserves the point", name(paths[0]));
    r.expect(modal_comult(paths[0]) == Path<ModalPath>{paths[0], {}}, "comultiplication preserves the point",
        name(paths[0]));
    for (auto & p : paths) {
        auto d = modal_comult(p);
        r.expect(modal_counit(d) == p, "counit after comultiplication", name(p));
        r.expect(modal_fmap([](const ModalPath & q) { return modal_counit(q); }, d) == p,
            "mapped counit after comultiplication", name(p));
        r.expect(modal_comult(d) == modal_fmap([](const ModalPath & q) { return modal_comult(q); }, d),
            "coassociativity", name(p));
        r.expect(modal_coextend([](const ModalPath & q) { return modal_counit(q); }, p) == p, "coextension of counit",
            name(p));
        r.expect(modal_coextend([](const ModalPath & q) { return q; }, p) == d,
            "comultiplication as coextension of identity", name(p));
    }

    for (std::size_t sym = 0; sym < a.vocabulary().size(); ++sym) {
        auto arity = a.vocabulary()[sym].arity;
        for (auto & t : c.tuples(sym)) {
            if (arity == 1) {
                auto & p = paths[t[0]];
                r.expect(a.holds(sym, {p.last()}), "counit is a homomorphism", name(p));
                auto d = modal_comult(p);
                r.expect(c.holds(sym, {static_cast<Elem>(index.at(d.last()))}), "comultiplication is a homomorphism",
                    name(p));
                continue;
            }
            auto & p = paths[t[0]];
            auto & q = paths[t[1]];
            r.expect(a.holds(sym, {p.last(), q.last()}), "counit is a homomorphism", name(q));
            // In M_k(M_k A), R relates a path to its one-step extension by R.
            auto dp = modal_comult(p), dq = modal_comult(q);
            auto extended = dp;
            extended.steps.emplace_back(static_cast<int>(sym), dq.last());
            bool base = c.holds(sym, {static_cast<Elem>(index.at(dp.last())), static_cast<Elem>(index.at(dq.last()))});
            r.expect(extended == dq && base, "comultiplication is a homomorphism", name(q));
        }
    }

    if (a.size() > 0)
        for (std::size_t m = 0; m < maps; ++m) {
            detail::SeededMap f{seed * 2 * (m + 1), a.size()}, g{seed * 2 * (m + 1) + 1, a.size()};
            for (auto & p : paths) {
                auto fp = modal_coextend(f, p);
                r.expect(modal_counit(fp) == f(p), "counit after coextension", name(p));
                auto gf = [&](const ModalPath & q) { return g(modal_coextend(f, q)); };
                r.expect(modal_coextend(gf, p) == modal_coextend(g, fp), "coextension of a composite", name(p));
            }
        }
    return r;
}

} // namespace gamecomonad
