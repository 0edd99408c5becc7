// Acceptance run: one PASS/FAIL line per criterion, each with its time bound.
// Exit status is nonzero if any criterion fails.

#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

using namespace gamecomonad;
using namespace testing_support;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
    std::size_t checked = 0;
    std::size_t failures = 0;

    void expect(bool holds, const std::string & what)
    {
        ++checked;
        if (! holds) {
            if (failures < 3)
                detail << " [" << what << "]";
            ++failures;
            ok = false;
        }
    }
};

int failed = 0;

template <typename Body>
void criterion(const char * id, const char * title, double bound_seconds, Body body)
{
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    std::string error;
    try {
        body(o);
    }
    catch (const std::exception & e) {
        o.ok = false;
        error = e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = seconds < bound_seconds;
    bool pass = o.ok && in_time;
    if (! pass)
        ++failed;
    std::printf("%s %s: %s (checks=%zu failures=%zu time=%.1fs bound=%.0fs)%s%s%s\n", id, pass ? "PASS" : "FAIL", title,
        o.checked, o.failures, seconds, bound_seconds, in_time ? "" : " [over time bound]",
        error.empty() ? "" : (" [error: " + error + "]").c_str(), o.detail.str().c_str());
    std::fflush(stdout);
}

std::vector<Structure> pointed_at_zero(const std::vector<Structure> & all)
{
    std::vector<Structure> out;
    for (auto & s : all)
        if (s.size() > 0)
            out.push_back(pointed(s, 0));
    return out;
}

std::vector<char> truth_vector(const Structure & s, const std::vector<Formula> & formulas)
{
    std::vector<char> t;
    t.reserve(formulas.size());
    for (auto & f : formulas)
        t.push_back(eval(s, f));
    return t;
}

ForestCover cover_from(const std::vector<std::size_t> & parent, std::size_t n)
{
    ForestCover f;
    for (auto x : parent)
        f.parent.push_back(x == n ? no_vertex : x);
    return f;
}

void ac1(Outcome & o)
{
    for (auto v : {vocab({{"R", 2}}), vocab({{"R", 2}, {"S", 1}})}) {
        auto all = all_structures_up_to(v, 3);
        for (auto & a : all)
            for (std::size_t k = 1; k <= 3; ++k) {
                auto r = check_ef_laws(a, k);
                o.expect(r.ok, "ef " + r.law + " at " + r.counterexample);
            }
        for (auto & a : pointed_at_zero(all))
            for (std::size_t k = 1; k <= 3; ++k) {
                auto r = check_modal_laws(a, k);
                o.expect(r.ok, "modal " + r.law + " at " + r.counterexample);
            }
        for (auto & a : all_structures_up_to(v, 2))
            for (std::size_t k = 1; k <= 3; ++k)
                for (std::size_t n = 1; n <= 3; ++n) {
                    auto r = check_pebble_laws(a, k, n);
                    o.expect(r.ok, "pebble " + r.law + " at " + r.counterexample);
                }
    }
}

void ac2(Outcome & o)
{
    constexpr std::size_t formulas_per_case = 250;
    std::size_t separated = 0, spoiler_wins = 0;
    std::mt19937_64 rng(2024);
    for (auto v : {vocab({{"R", 2}}), vocab({{"R", 2}, {"S", 1}})}) {
        auto all = all_structures_up_to(v, 2);
        std::vector<std::pair<Structure, Structure>> pairs;
        for (auto & a : all)
            for (auto & b : all)
                pairs.emplace_back(a, b);
        for (int i = 0; i < 50; ++i)
            pairs.emplace_back(random_structure(v, 3, rng), random_structure(v, 3, rng));
        for (std::size_t k = 1; k <= 3; ++k) {
            auto formulas = sample_formulas(v, {Fragment::ep, k, formulas_per_case, 1000 + k});
            std::map<std::string, std::vector<char>> truth;
            auto truth_of = [&](const Structure & s) -> const std::vector<char> & {
                auto key = serialize_structure(s);
                auto it = truth.find(key);
                if (it == truth.end())
                    it = truth.emplace(key, truth_vector(s, formulas)).first;
                return it->second;
            };
            for (auto & [a, b] : pairs) {
                bool game = decide_exist_ef(a, b, k).holds;
                bool hom = find_hom(ef_structure(a, k), b).has_value();
                o.expect(game == hom, "game and lifted hom disagree at k=" + std::to_string(k));
                auto & ta = truth_of(a);
                auto & tb = truth_of(b);
                bool counterexample = false;
                for (std::size_t f = 0; f < formulas.size(); ++f)
                    if (ta[f] && ! tb[f])
                        counterexample = true;
                if (game)
                    o.expect(! counterexample, "sampled formula separates a Duplicator win at k=" + std::to_string(k));
                else {
                    ++spoiler_wins;
                    separated += counterexample;
                }
            }
        }
    }
    o.detail << " spoiler-wins=" << spoiler_wins << " separated-by-sample=" << separated;
}

void ac3(Outcome & o)
{
    auto check = [&](const Graph & g) {
        auto r = coalgebra_number_ef(graph_structure(g));
        o.expect(r.kappa == oracle_treedepth(g), "kappa differs from tree-depth");
    };
    for (std::size_t n = 1; n <= 4; ++n)
        for (auto & g : all_graphs(n))
            check(g);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i)
        check(random_graph(5 + rng() % 2, rng));
}

void ac4(Outcome & o)
{
    auto check = [&](const Graph & g) {
        auto r = coalgebra_number_pebble(graph_structure(g));
        o.expect(r.kappa == oracle_treewidth(g) + 1, "kappa differs from tree-width + 1");
    };
    for (std::size_t n = 1; n <= 4; ++n)
        for (auto & g : all_graphs(n))
            check(g);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i)
        check(random_graph(5, rng));
}

void ac5(Outcome & o)
{
    auto v = vocab({{"R", 2}, {"S", 1}});
    auto all = all_structures_up_to(v, 2);
    for (auto & a : all)
        for (auto & b : all)
            for (std::size_t k = 1; k <= 2; ++k)
                o.expect(theta_fixpoint(a, b, k, Comonad::ef).nonempty() == solve_back_forth(a, b, k, Comonad::ef).holds,
                    "fixpoint and game disagree");
    for (auto & c : named_three_element_cases())
        for (std::size_t k = 1; k <= 2; ++k)
            o.expect(theta_fixpoint(c.a, c.b, k, Comonad::ef).nonempty() ==
                    solve_back_forth(c.a, c.b, k, Comonad::ef).holds,
                std::string(c.name));
}

void ac6(Outcome & o)
{
    auto v = vocab({{"R", 2}, {"S", 1}});
    auto all = all_structures_up_to(v, 2);
    auto run = [&](const std::vector<Structure> & ensemble, Comonad c) {
        for (auto & a : ensemble)
            for (auto & b : ensemble) {
                bool next_iso = false, next_bf = false, next_both = false;
                for (std::size_t k = 3; k >= 1; --k) {
                    bool iso = c == Comonad::pebble ? false : decide_cokleisli_iso(a, b, k, c).holds;
                    bool bf = solve_back_forth(a, b, k, c).holds;
                    bool both = decide_both_ways(a, b, k, c);
                    o.expect(! iso || bf, to_string(c) + " iso without back-and-forth");
                    o.expect(! bf || both, to_string(c) + " back-and-forth without both ways");
                    if (k < 3) {
                        o.expect(! next_iso || iso, to_string(c) + " iso not monotone");
                        o.expect(! next_bf || bf, to_string(c) + " back-and-forth not monotone");
                        o.expect(! next_both || both, to_string(c) + " both ways not monotone");
                    }
                    next_iso = iso;
                    next_bf = bf;
                    next_both = both;
                }
            }
    };
    run(all, Comonad::ef);
    run(all, Comonad::pebble);
    run(pointed_at_zero(all), Comonad::modal);
}

void ac7(Outcome & o)
{
    auto run_pairs = [&](const std::vector<Structure> & ensemble) {
        for (auto & a : ensemble)
            for (auto & b : ensemble)
                for (std::size_t k = 1; k <= 3; ++k)
                    o.expect(decide_bisim_k(a, b, k).holds == refinement_bisimilar(a, b, k), "bisimulation disagrees");
    };
    // Exhaustive up to pointed isomorphism: three states with one label, and
    // two states with two labels.
    run_pairs(up_to_iso(pointed_at_zero(all_structures_up_to(vocab({{"R", 2}}), 3))));
    run_pairs(up_to_iso(pointed_at_zero(all_structures_up_to(vocab({{"R", 2}, {"Q", 2}}), 2))));
    run_pairs(up_to_iso(pointed_at_zero(all_structures_up_to(vocab({{"R", 2}, {"P", 1}}), 2))));
    // Three states with two labels: every structure against a reference
    // panel drawn from the same space.
    auto v = vocab({{"R", 2}, {"Q", 2}});
    auto three = all_structures(v, 3);
    std::mt19937_64 rng(7);
    std::vector<Structure> panel;
    for (int i = 0; i < 4; ++i)
        panel.push_back(pointed(three[rng() % three.size()], 0));
    panel.push_back(pointed(all_structures(v, 1)[0], 0));
    for (std::size_t i = 0; i < three.size(); i += 1) {
        auto a = pointed(three[i], 0);
        for (auto & b : panel) {
            std::size_t k = 1 + i % 3;
            o.expect(decide_bisim_k(a, b, k).holds == refinement_bisimilar(a, b, k), "bisimulation disagrees");
        }
    }
}

void ac8(Outcome & o)
{
    for (std::size_t n = 1; n <= 4; ++n)
        for (auto & g : all_graphs(n)) {
            auto a = graph_structure(g);
            for_each_forest(n, [&](const std::vector<std::size_t> & parent) {
                auto f = cover_from(parent, n);
                if (! validate_forest_cover(g, f).empty())
                    return;
                auto c = forest_cover_to_coalgebra(a, f, f.height());
                o.expect(static_cast<bool>(check_coalgebra(a, c)), "cover gives no coalgebra");
                o.expect(coalgebra_to_forest_cover(a, c) == f, "cover round trip");
                o.expect(forest_cover_to_coalgebra(a, coalgebra_to_forest_cover(a, c), c.k).alpha == c.alpha,
                    "coalgebra round trip");
                // every pebbling with at most n pebbles
                for (unsigned k = 1; k <= n; ++k) {
                    std::vector<unsigned> pebble(n, 1);
                    while (true) {
                        PebbleForestCover pfc{f, pebble};
                        if (validate_pebble_forest_cover(g, pfc, k).empty()) {
                            auto pc = pebble_forest_cover_to_coalgebra(a, pfc, k);
                            o.expect(coalgebra_to_pebble_forest_cover(a, pc) == pfc, "pebble cover round trip");
                            auto td = pfc_to_tree_decomposition(pfc);
                            o.expect(validate_tree_decomposition(g, td).empty(), "decomposition invalid");
                            o.expect(td.width() + 1 <= k, "decomposition too wide");
                            auto back = tree_decomposition_to_pfc(g, td, k);
                            o.expect(validate_pebble_forest_cover(g, back, k).empty(), "pebbling invalid");
                        }
                        std::size_t i = 0;
                        while (i < n && ++pebble[i] > k)
                            pebble[i++] = 1;
                        if (i == n)
                            break;
                    }
                }
            });
            // Every decomposition with at most four nodes, with each tree shape
            // rooted both at a leaf and at an inner node.
            const std::size_t subsets = std::size_t{1} << n;
            std::vector<std::vector<std::pair<std::size_t, std::size_t>>> shapes{{}, {{0, 1}}, {{0, 1}, {1, 2}}, {{0, 1}, {0, 2}},
                {{0, 1}, {1, 2}, {2, 3}}, {{0, 1}, {0, 2}, {2, 3}}, {{0, 1}, {0, 2}, {0, 3}}, {{0, 1}, {1, 2}, {1, 3}}};
            for (auto & edges : shapes) {
                std::size_t m = edges.size() + 1;
                std::vector<std::size_t> pick(m, 0);
                while (true) {
                    TreeDecomposition td;
                    td.edges = edges;
                    for (auto s : pick) {
                        std::vector<std::size_t> bag;
                        for (std::size_t v = 0; v < n; ++v)
                            if (s >> v & 1u)
                                bag.push_back(v);
                        td.bags.push_back(bag);
                    }
                    if (validate_tree_decomposition(g, td).empty()) {
                        auto k = td.width() + 1;
                        auto pfc = tree_decomposition_to_pfc(g, td, k);
                        o.expect(validate_pebble_forest_cover(g, pfc, k).empty(), "decomposition gives bad pebbling");
                        o.expect(pfc.pebbles_used() <= k, "too many pebbles");
                        auto again = pfc_to_tree_decomposition(pfc);
                        o.expect(validate_tree_decomposition(g, again).empty() && again.width() + 1 <= k,
                            "pebbling gives bad decomposition");
                    }
                    std::size_t i = 0;
                    while (i < m && ++pick[i] == subsets)
                        pick[i++] = 0;
                    if (i == m)
                        break;
                }
            }
        }
}

void ac9(Outcome & o)
{
    std::size_t emitted = 0;
    auto audit = [&](const std::string & cert, const Structure & a, const Structure & b, const std::string & what) {
        if (cert.empty())
            return;
        ++emitted;
        auto rep = verify_certificate(cert, a, b);
        o.expect(rep.ok, what + ": " + rep.failure);
    };
    auto v = vocab({{"R", 2}, {"S", 1}});
    auto all = all_structures_up_to(v, 2);
    for (auto & a : all)
        for (auto & b : all) {
            if (auto f = find_hom(a, b))
                audit(hom_certificate(a, b, *f), a, b, "hom");
            for (std::size_t k = 1; k <= 2; ++k) {
                for (auto mode : {"exists", "both", "backforth", "iso"})
                    audit(decide_certified(a, b, k, Comonad::ef, mode).certificate, a, b, std::string("ef ") + mode);
                for (auto mode : {"exists", "both", "backforth"})
                    audit(decide_certified(a, b, k, Comonad::pebble, mode).certificate, a, b,
                        std::string("pebble ") + mode);
            }
        }
    auto pointed_all = pointed_at_zero(all);
    for (auto & a : pointed_all)
        for (auto & b : pointed_all)
            for (std::size_t k = 1; k <= 2; ++k)
                for (auto mode : {"exists", "both", "backforth", "iso"})
                    audit(decide_certified(a, b, k, Comonad::modal, mode).certificate, a, b, std::string("modal ") + mode);
    for (std::size_t n = 1; n <= 4; ++n)
        for (auto & g : all_graphs(n)) {
            auto a = graph_structure(g);
            auto e = coalgebra_number_ef(a);
            audit(coalgebra_certificate(a, e.witness.coalgebra, "ef", [&](const EfPlay & s) { return play_name(a, s); }), a,
                a, "ef coalgebra");
            auto p = coalgebra_number_pebble(a);
            audit(coalgebra_certificate(a, p.witness.coalgebra, "pebble",
                      [&](const PebblePlay & s) { return play_name(a, s); }),
                a, a, "pebble coalgebra");
        }
    for (auto & a : pointed_all) {
        try {
            auto m = coalgebra_number_modal(a);
            audit(coalgebra_certificate(a, m.witness, "modal", [&](const ModalPath & q) { return path_name(a, q); }), a, a,
                "modal coalgebra");
        }
        catch (const NoCoalgebra &) {
        }
        catch (const CyclicStructure &) {
        }
    }
    o.detail << " certificates=" << emitted;
}

} // namespace

int main()
{
    criterion("AC1", "comonad laws on exhaustive small structures", 60, ac1);
    criterion("AC2", "existential EF game, lifted homomorphism and sampled positive formulas", 300, ac2);
    criterion("AC3", "tree-depth equals the EF coalgebra number", 300, ac3);
    criterion("AC4", "tree-width equals the pebbling coalgebra number minus one", 600, ac4);
    criterion("AC5", "fixpoint nonemptiness matches the back-and-forth game", 300, ac5);
    criterion("AC6", "equivalence inclusions and monotonicity in k", 300, ac6);
    criterion("AC7", "bisimulation game matches partition refinement", 120, ac7);
    criterion("AC8", "cover, coalgebra and decomposition round trips", 120, ac8);
    criterion("AC9", "every emitted certificate re-verifies", 600, ac9);
    std::printf("%s\n", failed == 0 ? "ALL PASS" : "SOME CRITERIA FAILED");
    return failed == 0 ? 0 : 1;
}
