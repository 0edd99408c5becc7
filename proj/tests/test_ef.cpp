#include "support.hpp"

#include <gtest/gtest.h>

using namespace gamecomonad;
using namespace testing_support;

namespace {

Structure edge_ab() { return parse_structure("vocab R 2\nelem a\nelem b\nrel R a b"); }
Structure loop() { return parse_structure("vocab R 2\nelem a\nrel R a a"); }
Structure two_cycle() { return parse_structure("vocab R 2\nelem x\nelem y\nrel R x y\nrel R y x"); }
Structure path3() { return parse_structure("vocab R 2\nelem a\nelem b\nelem c\nrel R a b\nrel R b c"); }

TEST(EfUniverse, Counts)
{
    auto v = vocab({{"R", 2}});
    Structure two(v), one(v), none(v);
    two.add_elements(2);
    one.add_elements(1);
    EXPECT_EQ(ef_universe(two, 2).size(), 6u);
    auto plays = ef_universe(one, 3);
    EXPECT_EQ(plays, (std::vector<EfPlay>{{0}, {0, 0}, {0, 0, 0}}));
    EXPECT_TRUE(ef_universe(none, 4).empty());
    EXPECT_THROW(ef_universe(two, 0), InvalidArgument);
}

TEST(EfUniverse, CapIsEnforced)
{
    auto v = vocab({{"R", 2}});
    Structure s(v);
    s.add_elements(10);
    EXPECT_THROW(ef_universe(s, 7), CapExceeded);
    EXPECT_THROW(ef_universe(s, 3, 100), CapExceeded);
}

TEST(EfStructure, LiftedRelation)
{
    auto a = parse_structure("vocab R 2\nvocab S 1\nelem a\nelem b\nrel R a b\nrel S a");
    auto c = ef_structure(a, 2);
    EfPlaySpace space(2, 2);
    auto at = [&](EfPlay s) { return static_cast<Elem>(space.index(s)); };
    EXPECT_TRUE(c.holds(0, {at({0}), at({0, 1})}));
    EXPECT_FALSE(c.holds(0, {at({0}), at({1})}));
    EXPECT_TRUE(c.holds(1, {at({1, 0})}));
    EXPECT_FALSE(c.holds(1, {at({0, 1})}));
}

TEST(EfStructure, MatchesDefinitionExhaustively)
{
    auto v = vocab({{"R", 2}, {"S", 1}});
    for (auto & a : all_structures_up_to(v, 2))
        for (std::size_t k = 1; k <= 3; ++k) {
            auto c = ef_structure(a, k);
            auto plays = ef_universe(a, k);
            for (Elem i = 0; i < plays.size(); ++i) {
                EXPECT_EQ(c.holds(1, {i}), a.holds(1, {plays[i].back()}));
                for (Elem j = 0; j < plays.size(); ++j) {
                    bool expected = prefix_comparable(plays[i], plays[j]) &&
                        a.holds(0, {plays[i].back(), plays[j].back()});
                    EXPECT_EQ(c.holds(0, {i, j}), expected);
                }
            }
        }
}

TEST(EfComonad, CounitAndComult)
{
    EXPECT_EQ(counit(EfPlay{0}), 0u);
    EXPECT_EQ(counit(EfPlay{0, 1}), 1u);
    EXPECT_EQ(counit(EfPlay{1, 1, 0}), 0u);
    EXPECT_EQ(comult(EfPlay{0}), (std::vector<EfPlay>{{0}}));
    EXPECT_EQ(comult(EfPlay{0, 1}), (std::vector<EfPlay>{{0}, {0, 1}}));
    EXPECT_THROW(counit(EfPlay{}), InvalidArgument);
}

TEST(EfComonad, CoextensionExamples)
{
    auto constant = [](const EfPlay &) { return Elem{2}; };
    EXPECT_EQ(coextend(constant, EfPlay{0, 1}), (EfPlay{2, 2}));
    EXPECT_EQ(coextend([](const EfPlay & s) { return counit(s); }, EfPlay{1, 0, 1}), (EfPlay{1, 0, 1}));
    auto f = [](const EfPlay & s) { return s == EfPlay{0, 1} ? Elem{1} : Elem{0}; };
    EXPECT_EQ(coextend(f, EfPlay{0, 1}), (EfPlay{0, 1}));
}

TEST(EfComonad, CokleisliComposition)
{
    auto id2 = ef_identity(2, 2);
    std::mt19937_64 rng(4);
    auto random_map = [&] {
        EfCoKleisli f{2, 2, 2, {}};
        for (int i = 0; i < 6; ++i)
            f.table.push_back(static_cast<Elem>(rng() % 2));
        return f;
    };
    for (int i = 0; i < 50; ++i) {
        auto f = random_map(), g = random_map(), h = random_map();
        EXPECT_EQ(cokleisli_compose(id2, f), f);
        EXPECT_EQ(cokleisli_compose(f, id2), f);
        EXPECT_EQ(cokleisli_compose(h, cokleisli_compose(g, f)), cokleisli_compose(cokleisli_compose(h, g), f));
    }
    EfCoKleisli other{3, 2, 2, {}};
    EXPECT_THROW(cokleisli_compose(other, id2), InvalidArgument);
}

TEST(EfComonad, LawsOnSmallEnsemble)
{
    auto v = vocab({{"R", 2}, {"S", 1}});
    for (auto & a : all_structures_up_to(v, 2))
        for (std::size_t k = 1; k <= 3; ++k) {
            auto r = check_ef_laws(a, k);
            EXPECT_TRUE(r.ok) << r.law << " at " << r.counterexample;
        }
}

TEST(EfGame, NamedExamples)
{
    EXPECT_TRUE(decide_exist_ef(edge_ab(), edge_ab(), 3).holds);
    EXPECT_FALSE(decide_exist_ef(loop(), two_cycle(), 2).holds);
    EXPECT_TRUE(decide_exist_ef(path3(), two_cycle(), 3).holds);
}

TEST(EfGame, CertificatesAreHomomorphisms)
{
    auto d = decide_exist_ef(path3(), two_cycle(), 3);
    ASSERT_TRUE(d.strategy);
    EXPECT_TRUE(is_cokleisli_hom(*d.strategy, path3(), two_cycle()));
    auto none = decide_exist_ef(loop(), two_cycle(), 2);
    EXPECT_FALSE(none.spoiler.empty());
    auto a = loop(), b = two_cycle();
    auto ta = ef_play_tree(a, 2), tb = ef_play_tree(b, 2);
    auto w = branch_winning_set(a, ta, b, tb, BranchRelation::hom);
    EXPECT_EQ(audit_spoiler(ta, tb, w, SpoilerMoves::a_only, none.spoiler), "");
}

TEST(EfGame, AgreesWithHomIntoLiftedStructureAndNaiveGame)
{
    auto v = vocab({{"R", 2}, {"S", 1}});
    auto all = all_structures_up_to(v, 2);
    for (auto & a : all)
        for (auto & b : all)
            for (std::size_t k = 1; k <= 2; ++k) {
                bool game = decide_exist_ef(a, b, k).holds;
                EXPECT_EQ(game, find_hom(ef_structure(a, k), b).has_value());
                EXPECT_EQ(game, naive_ef(a, b, k, false));
            }
}

TEST(EfGame, MonotoneInRounds)
{
    auto v = vocab({{"R", 2}});
    std::mt19937_64 rng(9);
    for (int i = 0; i < 60; ++i) {
        auto a = random_structure(v, 3, rng), b = random_structure(v, 2 + rng() % 2, rng);
        for (std::size_t k = 1; k < 3; ++k)
            if (decide_exist_ef(a, b, k + 1).holds)
                EXPECT_TRUE(decide_exist_ef(a, b, k).holds);
    }
}

TEST(EfGame, HomImpliesEveryRound)
{
    auto v = vocab({{"R", 2}});
    std::mt19937_64 rng(13);
    for (int i = 0; i < 60; ++i) {
        auto a = random_structure(v, 3, rng), b = random_structure(v, 3, rng);
        if (find_hom(a, b))
            EXPECT_TRUE(decide_exist_ef(a, b, 3).holds);
    }
}

TEST(EfGame, VocabularyMismatch)
{
    auto a = parse_structure("vocab S 1\nelem a");
    EXPECT_THROW(decide_exist_ef(a, edge_ab(), 1), VocabularyMismatch);
}

} // namespace
