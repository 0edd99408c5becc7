#include "support.hpp"

#include <gtest/gtest.h>

using namespace gamecomonad;
using namespace testing_support;

namespace {

/// Pointed structures over {R/2, P/1} with up to `n` states, point at state 0.
std::vector<Structure> pointed_ensemble(const Vocabulary & v, std::size_t n)
{
    std::vector<Structure> out;
    for (std::size_t size = 1; size <= n; ++size)
        for (auto & s : all_structures(v, size))
            out.push_back(pointed(s, 0));
    return out;
}

TEST(ModalUniverse, Examples)
{
    auto cycle = parse_structure("vocab R 2\nelem a\nelem b\nrel R a b\nrel R b a\nstart a");
    auto paths = modal_universe(cycle, 2);
    ASSERT_EQ(paths.size(), 3u);
    EXPECT_EQ(path_name(cycle, paths[2]), "[a,R,b,R,a]");
    auto single = parse_structure("vocab R 2\nelem a\nstart a");
    EXPECT_EQ(modal_universe(single, 4).size(), 1u);
}

TEST(ModalUniverse, RejectsBadInputs)
{
    auto unpointed = parse_structure("vocab R 2\nelem a");
    EXPECT_THROW(modal_universe(unpointed, 1), InvalidArgument);
    auto ternary = parse_structure("vocab T 3\nelem a\nstart a");
    EXPECT_THROW(modal_universe(ternary, 1), InvalidArgument);
}

TEST(Unravel, TreeIsItsOwnUnravelling)
{
    auto tree = parse_structure("vocab R 2\nelem r\nelem a\nelem b\nelem c\nrel R r a\nrel R r b\nrel R a c\nstart r");
    auto u = unravel(tree, 2);
    EXPECT_TRUE(find_iso(u, tree));
}

TEST(Unravel, IdempotentOnEnsemble)
{
    auto v = vocab({{"R", 2}, {"P", 1}});
    for (auto & a : pointed_ensemble(v, 2))
        for (std::size_t k = 1; k <= 3; ++k) {
            auto u = unravel(a, k);
            EXPECT_TRUE(find_iso(unravel(u, k), u));
        }
}

TEST(ModalComonad, LawsOnEnsemble)
{
    auto v = vocab({{"R", 2}, {"P", 1}});
    for (auto & a : pointed_ensemble(v, 2))
        for (std::size_t k = 1; k <= 3; ++k) {
            auto r = check_modal_laws(a, k);
            EXPECT_TRUE(r.ok) << r.law << " at " << r.counterexample;
        }
}

TEST(ModalGame, Examples)
{
    auto chain = parse_structure("vocab R 2\nelem a\nelem b\nelem c\nrel R a b\nrel R b c\nstart a");
    auto cycle = parse_structure("vocab R 2\nelem x\nelem y\nrel R x y\nrel R y x\nstart x");
    EXPECT_TRUE(decide_sim_k(chain, chain, 3).holds);
    EXPECT_TRUE(decide_bisim_k(chain, chain, 3).holds);
    EXPECT_TRUE(decide_sim_k(chain, cycle, 2).holds);
    EXPECT_TRUE(find_hom(unravel(chain, 2), cycle));
    auto step = parse_structure("vocab R 2\nelem a\nelem b\nrel R a b\nstart a");
    auto stuck = parse_structure("vocab R 2\nelem a\nstart a");
    EXPECT_FALSE(decide_bisim_k(step, stuck, 1).holds);
}

TEST(ModalGame, SimulationIsHomFromUnravelling)
{
    auto v = vocab({{"R", 2}, {"P", 1}});
    auto all = pointed_ensemble(v, 2);
    for (auto & a : all)
        for (auto & b : all)
            for (std::size_t k = 1; k <= 3; ++k) {
                auto d = decide_sim_k(a, b, k);
                EXPECT_EQ(d.holds, find_hom(unravel(a, k), b).has_value());
                if (d.holds)
                    EXPECT_TRUE(check_hom(d.table, unravel(a, k), b));
            }
}

TEST(ModalGame, BisimulationAgreesWithRefinement)
{
    auto v = vocab({{"R", 2}, {"P", 1}});
    auto all = pointed_ensemble(v, 2);
    for (auto & a : all)
        for (auto & b : all)
            for (std::size_t k = 1; k <= 3; ++k)
                EXPECT_EQ(decide_bisim_k(a, b, k).holds, refinement_bisimilar(a, b, k));
}

TEST(ModalGame, BisimulationImpliesSimulationBothWays)
{
    auto v = vocab({{"R", 2}});
    auto all = pointed_ensemble(v, 3);
    std::mt19937_64 rng(41);
    for (int i = 0; i < 300; ++i) {
        auto & a = all[rng() % all.size()];
        auto & b = all[rng() % all.size()];
        for (std::size_t k = 1; k <= 3; ++k)
            if (decide_bisim_k(a, b, k).holds) {
                EXPECT_TRUE(decide_sim_k(a, b, k).holds);
                EXPECT_TRUE(decide_sim_k(b, a, k).holds);
            }
    }
}

} // namespace
