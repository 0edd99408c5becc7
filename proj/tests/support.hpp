#pragma once

// Shared fixtures for the test suites: structure ensembles and oracles that
// are written independently of the library's search code.

#include <gamecomonad/gamecomonad.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace testing_support {

using namespace gamecomonad;

inline Vocabulary vocab(std::initializer_list<std::pair<const char *, std::size_t>> symbols)
{
    Vocabulary v;
    for (auto [name, arity] : symbols)
        v.add(name, arity);
    return v;
}

/// All candidate tuples of every symbol over n elements, in a fixed order.
inline std::vector<std::pair<std::size_t, Tuple>> all_tuples(const Vocabulary & v, std::size_t n)
{
    std::vector<std::pair<std::size_t, Tuple>> out;
    for (std::size_t s = 0; s < v.size(); ++s) {
        const std::size_t m = v[s].arity;
        Tuple t(m, 0);
        if (n == 0 && m > 0)
            continue;
        while (true) {
            out.emplace_back(s, t);
            std::size_t i = m;
            while (i > 0 && ++t[i - 1] == n)
                t[--i] = 0;
            if (i == 0)
                break;
        }
    }
    return out;
}

inline Structure from_bits(const Vocabulary & v, std::size_t n, std::uint64_t bits,
    const std::vector<std::pair<std::size_t, Tuple>> & candidates)
{
    Structure s(v);
    s.add_elements(n);
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (bits >> i & 1u)
            s.add_tuple(candidates[i].first, candidates[i].second);
    return s;
}

/// Every structure over `v` with exactly n elements (labelled, not up to iso).
inline std::vector<Structure> all_structures(const Vocabulary & v, std::size_t n)
{
    auto candidates = all_tuples(v, n);
    std::vector<Structure> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << candidates.size()); ++bits)
        out.push_back(from_bits(v, n, bits, candidates));
    return out;
}

inline std::vector<Structure> all_structures_up_to(const Vocabulary & v, std::size_t max_n)
{
    std::vector<Structure> out;
    for (std::size_t n = 0; n <= max_n; ++n)
        for (auto & s : all_structures(v, n))
            out.push_back(std::move(s));
    return out;
}

/// Keeps one representative per isomorphism class.
inline std::vector<Structure> up_to_iso(const std::vector<Structure> & all)
{
    std::vector<Structure> reps;
    for (auto & s : all) {
        bool seen = false;
        for (auto & r : reps)
            if (r.size() == s.size() && find_iso(r, s)) {
                seen = true;
                break;
            }
        if (! seen)
            reps.push_back(s);
    }
    return reps;
}

inline Structure random_structure(const Vocabulary & v, std::size_t n, std::mt19937_64 & rng, unsigned percent = 35)
{
    auto candidates = all_tuples(v, n);
    Structure s(v);
    s.add_elements(n);
    for (auto & [sym, t] : candidates)
        if (rng() % 100 < percent)
            s.add_tuple(sym, t);
    return s;
}

inline Graph random_graph(std::size_t n, std::mt19937_64 & rng, unsigned percent = 50)
{
    Graph g(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (rng() % 100 < percent)
                g.add_edge(u, v);
    return g;
}

inline std::vector<Graph> all_graphs(std::size_t n)
{
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            pairs.emplace_back(u, v);
    std::vector<Graph> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs.size()); ++bits) {
        Graph g(n);
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (bits >> i & 1u)
                g.add_edge(pairs[i].first, pairs[i].second);
        out.push_back(g);
    }
    return out;
}

inline Structure pointed(Structure s, Elem p)
{
    s.set_point(p);
    return s;
}

/// Brute force over all |B|^|A| maps.
inline std::size_t count_homs(const Structure & a, const Structure & b)
{
    std::size_t count = 0;
    ElemMap f(a.size(), 0);
    if (b.size() == 0)
        return a.size() == 0 ? 1 : 0;
    while (true) {
        if (check_hom(f, a, b))
            ++count;
        std::size_t i = 0;
        while (i < f.size() && ++f[i] == b.size())
            f[i++] = 0;
        if (i == f.size())
            break;
    }
    return count;
}

/// Plain recursive first-order evaluator with no compilation or tables.
inline bool naive_eval(const Structure & a, const Formula & f, std::map<std::string, Elem> env)
{
    auto value = [&](const std::string & x) { return env.at(x); };
    switch (f.op()) {
    case Connective::truth: return true;
    case Connective::falsity: return false;
    case Connective::atom: {
        Tuple t;
        for (auto & x : f.vars())
            t.push_back(value(x));
        return a.holds(*a.vocabulary().find(f.symbol()), t);
    }
    case Connective::equal: return value(f.vars()[0]) == value(f.vars()[1]);
    case Connective::negation: return ! naive_eval(a, f.body(), env);
    case Connective::conjunction: return naive_eval(a, f.left(), env) && naive_eval(a, f.right(), env);
    case Connective::disjunction: return naive_eval(a, f.left(), env) || naive_eval(a, f.right(), env);
    case Connective::implication: return ! naive_eval(a, f.left(), env) || naive_eval(a, f.right(), env);
    default: break;
    }
    std::size_t witnesses = 0;
    for (Elem e = 0; e < a.size(); ++e) {
        env[f.bound()] = e;
        witnesses += naive_eval(a, f.body(), env) ? 1 : 0;
    }
    switch (f.op()) {
    case Connective::exists: return witnesses > 0;
    case Connective::forall: return witnesses == a.size();
    case Connective::at_least: return witnesses >= f.count();
    case Connective::at_most: return witnesses <= f.count();
    default: return false;
    }
}

/// k-round Ehrenfeucht-Fraisse game played directly on element sequences.
/// With `back` false only Spoiler moves in A are allowed and the winning
/// condition is a partial homomorphism.
inline bool naive_ef(const Structure & a, const Structure & b, std::size_t k, bool back, PartialMap pos = {})
{
    if (back ? ! is_partial_iso(pos, a, b) : ! is_partial_hom(pos, a, b))
        return false;
    if (k == 0)
        return true;
    for (Elem x = 0; x < a.size(); ++x) {
        bool answered = false;
        for (Elem y = 0; y < b.size() && ! answered; ++y) {
            auto next = pos;
            next.emplace_back(x, y);
            answered = naive_ef(a, b, k - 1, back, next);
        }
        if (! answered)
            return false;
    }
    if (back)
        for (Elem y = 0; y < b.size(); ++y) {
            bool answered = false;
            for (Elem x = 0; x < a.size() && ! answered; ++x) {
                auto next = pos;
                next.emplace_back(x, y);
                answered = naive_ef(a, b, k - 1, back, next);
            }
            if (! answered)
                return false;
        }
    return true;
}

/// k-pebble game over positions that record which pebble sits where, solved
/// as a greatest fixpoint over those positions.
inline bool naive_pebble(const Structure & a, const Structure & b, std::size_t k, bool back)
{
    const std::size_t cells = a.size() * b.size() + 1; // 0 = pebble off the board
    std::size_t positions = 1;
    for (std::size_t i = 0; i < k; ++i)
        positions *= cells;
    auto decode = [&](std::size_t code) {
        PartialMap p;
        for (std::size_t i = 0; i < k; ++i) {
            auto c = code % cells;
            code /= cells;
            if (c)
                p.emplace_back(static_cast<Elem>((c - 1) / b.size()), static_cast<Elem>((c - 1) % b.size()));
        }
        return p;
    };
    std::vector<char> alive(positions, 0);
    for (std::size_t code = 0; code < positions; ++code) {
        auto p = decode(code);
        alive[code] = back ? is_partial_iso(p, a, b) : is_partial_hom(p, a, b);
    }
    auto place = [&](std::size_t code, std::size_t pebble, std::size_t cell) {
        std::size_t mul = 1;
        for (std::size_t i = 0; i < pebble; ++i)
            mul *= cells;
        auto current = code / mul % cells;
        return code - current * mul + cell * mul;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t code = 0; code < positions; ++code) {
            if (! alive[code])
                continue;
            bool ok = true;
            for (std::size_t p = 0; p < k && ok; ++p) {
                for (Elem x = 0; x < a.size() && ok; ++x) {
                    bool found = false;
                    for (Elem y = 0; y < b.size() && ! found; ++y)
                        found = alive[place(code, p, 1 + x * b.size() + y)];
                    ok = found;
                }
                if (back)
                    for (Elem y = 0; y < b.size() && ok; ++y) {
                        bool found = false;
                        for (Elem x = 0; x < a.size() && ! found; ++x)
                            found = alive[place(code, p, 1 + x * b.size() + y)];
                        ok = found;
                    }
            }
            if (! ok) {
                alive[code] = 0;
                changed = true;
            }
        }
    }
    return alive[0];
}

/// Depth-k bisimilarity by iterated partition refinement on the disjoint
/// union, starting from the partition by unary facts.
inline bool refinement_bisimilar(const Structure & a, const Structure & b, std::size_t k)
{
    const std::size_t n = a.size() + b.size();
    auto side = [&](std::size_t v) -> std::pair<const Structure *, Elem> {
        return v < a.size() ? std::make_pair(&a, static_cast<Elem>(v)) : std::make_pair(&b, static_cast<Elem>(v - a.size()));
    };
    const auto & voc = a.vocabulary();
    std::vector<std::size_t> cls(n);
    {
        std::map<std::vector<bool>, std::size_t> ids;
        for (std::size_t v = 0; v < n; ++v) {
            auto [s, e] = side(v);
            std::vector<bool> sig;
            for (std::size_t sym = 0; sym < voc.size(); ++sym)
                if (voc[sym].arity == 1)
                    sig.push_back(s->holds(sym, {e}));
            cls[v] = ids.emplace(sig, ids.size()).first->second;
        }
    }
    for (std::size_t round = 0; round < k; ++round) {
        std::map<std::pair<std::size_t, std::set<std::pair<std::size_t, std::size_t>>>, std::size_t> ids;
        std::vector<std::size_t> next(n);
        for (std::size_t v = 0; v < n; ++v) {
            auto [s, e] = side(v);
            std::set<std::pair<std::size_t, std::size_t>> succ;
            std::size_t offset = s == &a ? 0 : a.size();
            for (std::size_t sym = 0; sym < voc.size(); ++sym)
                if (voc[sym].arity == 2)
                    for (auto & t : s->tuples(sym))
                        if (t[0] == e)
                            succ.emplace(sym, cls[offset + t[1]]);
            next[v] = ids.emplace(std::make_pair(cls[v], succ), ids.size()).first->second;
        }
        cls = next;
    }
    return cls[*a.point()] == cls[a.size() + *b.point()];
}

/// Digraph on n elements named a, b, c... from an edge list like "ab ba cc".
inline Structure digraph(std::size_t n, std::string_view edges)
{
    std::string text = "vocab R 2\n";
    for (std::size_t i = 0; i < n; ++i)
        text += std::string("elem ") + static_cast<char>('a' + i) + "\n";
    for (std::size_t i = 0; i + 1 < edges.size(); i += 3)
        text += std::string("rel R ") + edges[i] + " " + edges[i + 1] + "\n";
    return parse_structure(text);
}

struct NamedPair {
    const char * name;
    Structure a, b;
};

/// Fixed catalogue of 3-element comparisons.
inline std::vector<NamedPair> named_three_element_cases()
{
    return {
        {"path vs 3-cycle", digraph(3, "ab bc"), digraph(3, "ab bc ca")},
        {"3-cycle vs transitive tournament", digraph(3, "ab bc ca"), digraph(3, "ab bc ac")},
        {"symmetric triangle vs symmetric path", digraph(3, "ab ba bc cb ac ca"), digraph(3, "ab ba bc cb")},
        {"out-star vs in-star", digraph(3, "ab ac"), digraph(3, "ba ca")},
        {"path vs reversed path", digraph(3, "ab bc"), digraph(3, "ba cb")},
        {"2-cycle plus isolated vs 3-cycle", digraph(3, "ab ba"), digraph(3, "ab bc ca")},
        {"one loop vs no loop", digraph(3, "aa"), digraph(3, "")},
        {"edge plus isolated vs path", digraph(3, "ab"), digraph(3, "ab bc")},
        {"3-cycle vs itself relabelled", digraph(3, "ab bc ca"), digraph(3, "ba cb ac")},
        {"loop chain vs two loops", digraph(3, "aa ab bb"), digraph(3, "aa bb")},
    };
}

} // namespace testing_support
