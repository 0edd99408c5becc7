#include "support.hpp"

#include <gtest/gtest.h>

using namespace gamecomonad;
using namespace testing_support;

namespace {

TEST(Formula, QuantifierRank)
{
    EXPECT_EQ(quantifier_rank(parse_formula("R(x,y)")), 0u);
    EXPECT_EQ(quantifier_rank(parse_formula("E x . E y . R(x,y)")), 2u);
    EXPECT_EQ(quantifier_rank(parse_formula("E x . (R(x,x) & A y . S(y))")), 2u);
    EXPECT_EQ(quantifier_rank(parse_formula("E>=2 x . E<=1 y . R(x,y)")), 2u);
}

TEST(Formula, ParsePrintRoundTrip)
{
    for (auto text : {"E x . R(x,x)", "~R(x,x)", "A x . (R(x,x) -> S(x))", "E>=2 x . E y . R(x,y)",
             "(E x . S(x)) & T", "~(x = y)", "A x . A y . (R(x,y) | R(y,x) | x = y)"}) {
        auto f = parse_formula(text);
        EXPECT_EQ(parse_formula(to_string(f)), f) << text;
    }
}

TEST(Formula, ParseErrors)
{
    EXPECT_THROW(parse_formula("E x R(x)"), ParseError);
    EXPECT_THROW(parse_formula("R(x"), ParseError);
    EXPECT_THROW(parse_formula(""), ParseError);
    EXPECT_THROW(parse_formula("R(x) R(y)"), ParseError);
}

TEST(Formula, Fragments)
{
    EXPECT_TRUE(is_existential_positive(parse_formula("E x . (R(x,x) | E y . R(x,y))")));
    EXPECT_FALSE(is_existential_positive(parse_formula("A x . R(x,x)")));
    EXPECT_FALSE(is_existential_positive(parse_formula("E x . ~R(x,x)")));
    EXPECT_TRUE(uses_counting(parse_formula("E>=2 x . S(x)")));
    EXPECT_EQ(free_variables(parse_formula("E x . R(x,y)")), (std::set<std::string>{"y"}));
}

TEST(Eval, Examples)
{
    auto a = parse_structure("vocab R 2\nelem a\nelem b\nrel R a b");
    EXPECT_TRUE(eval(a, parse_formula("E x . E y . R(x,y)")));
    EXPECT_FALSE(eval(a, parse_formula("E>=2 x . E y . R(x,y)")));
    auto single = parse_structure("vocab R 2\nelem a\nrel R a a");
    EXPECT_TRUE(eval(single, parse_formula("E x . R(x,x)")));
    EXPECT_TRUE(eval(single, parse_formula("R(x,x)"), {{"x", 0}}));
    EXPECT_FALSE(eval(single, parse_formula("~R(x,x)"), {{"x", 0}}));
    EXPECT_FALSE(eval(a, parse_formula("A x . R(x,x)")));
    Structure empty(a.vocabulary());
    EXPECT_TRUE(eval(empty, parse_formula("A x . F")));
}

TEST(Eval, Errors)
{
    auto a = parse_structure("vocab R 2\nelem a");
    EXPECT_THROW(eval(a, parse_formula("R(x,x)")), InvalidArgument);
    EXPECT_THROW(eval(a, parse_formula("E x . Q(x)")), InvalidArgument);
    EXPECT_THROW(eval(a, parse_formula("E x . R(x)")), InvalidArgument);
}

TEST(Eval, AgreesWithNaiveEvaluator)
{
    auto v = vocab({{"R", 2}, {"S", 1}});
    std::mt19937_64 rng(99);
    std::size_t cases = 0;
    for (auto fragment : {Fragment::ep, Fragment::full, Fragment::counting}) {
        auto formulas = sample_formulas(v, {fragment, 3, 170, 100 + static_cast<std::uint64_t>(fragment)});
        for (auto & f : formulas) {
            auto s = random_structure(v, rng() % 5, rng);
            EXPECT_EQ(eval(s, f), naive_eval(s, f, {})) << to_string(f);
            ++cases;
        }
    }
    EXPECT_GE(cases, 500u);
}

TEST(Sampler, DeterministicAndWithinRank)
{
    auto v = vocab({{"R", 2}, {"S", 1}});
    for (auto fragment : {Fragment::ep, Fragment::full, Fragment::counting, Fragment::modal_ep, Fragment::modal,
             Fragment::modal_counting})
        for (std::size_t k = 0; k <= 3; ++k) {
            SampleOptions o{fragment, k, 60, 3};
            auto first = sample_formulas(v, o);
            auto second = sample_formulas(v, o);
            ASSERT_EQ(first.size(), 60u);
            EXPECT_EQ(first, second);
            for (auto & f : first) {
                EXPECT_LE(quantifier_rank(f), k);
                if (fragment == Fragment::ep || fragment == Fragment::modal_ep)
                    EXPECT_TRUE(is_existential_positive(f)) << to_string(f);
                if (fragment == Fragment::ep)
                    EXPECT_FALSE(uses_equality(f));
                if (is_modal(fragment))
                    EXPECT_TRUE(free_variables(f).empty() || free_variables(f) == std::set<std::string>{"x"});
                else
                    EXPECT_TRUE(free_variables(f).empty()) << to_string(f);
            }
        }
    EXPECT_TRUE(sample_formulas(v, {Fragment::ep, 2, 0, 1}).empty());
}

TEST(Sampler, VariableBound)
{
    auto v = vocab({{"R", 2}});
    for (auto & f : sample_formulas(v, {Fragment::full, 4, 100, 8, 2})) {
        auto tokens = variable_tokens(f);
        EXPECT_LE(tokens.size(), 2u);
        EXPECT_TRUE(free_variables(f).empty());
    }
}

TEST(Sampler, HomomorphismsPreserveExistentialPositiveSentences)
{
    auto v = vocab({{"R", 2}, {"S", 1}});
    auto formulas = sample_formulas(v, {Fragment::ep, 3, 200, 12});
    std::mt19937_64 rng(12);
    std::size_t cases = 0;
    while (cases < 200) {
        auto a = random_structure(v, 1 + rng() % 4, rng), b = random_structure(v, 1 + rng() % 4, rng, 50);
        auto f = find_hom(a, b);
        if (! f)
            continue;
        ASSERT_TRUE(check_hom(*f, a, b));
        ++cases;
        for (auto & phi : formulas)
            if (eval(a, phi))
                EXPECT_TRUE(eval(b, phi)) << to_string(phi);
    }
}

} // namespace
