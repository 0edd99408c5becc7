#pragma once

#include <gamecomonad/formula.hpp>
#include <gamecomonad/structure.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace gamecomonad {

enum class Fragment {
    ep,            ///< existential positive, no equality
    full,          ///< full first-order logic with equality
    counting,      ///< full logic plus counting quantifiers
    modal_ep,      ///< guarded diamonds, conjunction, disjunction (free variable x)
    modal,         ///< guarded diamonds and boxes with negation (free variable x)
    modal_counting ///< modal plus graded diamonds
};

inline Fragment parse_fragment(std::string_view s)
{
    if (s == "ep")
        return Fragment::ep;
    if (s == "full")
        return Fragment::full;
    if (s == "counting")
        return Fragment::counting;
    if (s == "modal-ep")
        return Fragment::modal_ep;
    if (s == "modal")
        return Fragment::modal;
    if (s == "modal-counting")
        return Fragment::modal_counting;
    throw InvalidArgument("unknown fragment '" + std::string(s) + "'");
}

inline std::string to_string(Fragment f)
{
    switch (f) {
    case Fragment::ep: return "ep";
    case Fragment::full: return "full";
    case Fragment::counting: return "counting";
    case Fragment::modal_ep: return "modal-ep";
    case Fragment::modal: return "modal";
    case Fragment::modal_counting: return "modal-counting";
    }
    return "?";
}

inline bool is_modal(Fragment f)
{
    return f == Fragment::modal_ep || f == Fragment::modal || f == Fragment::modal_counting;
}

struct SampleOptions {
    Fragment fragment = Fragment::ep;
    std::size_t k = 2;
    std::size_t count = 100;
    std::uint64_t seed = 1;
    /// With max_vars > 0, only the tokens x1..x<max_vars> are used and
    /// quantifiers rebind them (the k-variable fragment).
    std::size_t max_vars = 0;
    /// Upper bound on the number of connectives and quantifiers per formula.
    std::size_t max_size = 12;
};

/// The header line recording the generator and its parameters.
inline std::string sampler_header(const SampleOptions & o)
{
    std::string h = "# sampler mt19937_64 seed=" + std::to_string(o.seed) + " fragment=" + to_string(o.fragment) +
        " k=" + std::to_string(o.k) + " count=" + std::to_string(o.count);
    if (o.max_vars)
        h += " vars=" + std::to_string(o.max_vars);
    return h;
}

namespace detail {
    /// Random formula generator driven by std::mt19937_64. Choices are reduced
    /// with `rng() % n`, so the output is a pure function of the seed.
    class FormulaSampler {
    public:
        FormulaSampler(const Vocabulary & vocab, const SampleOptions & o) : vocab_(vocab), o_(o), rng_(o.seed) {}

        Formula next()
        {
            budget_ = o_.max_size;
            if (is_modal(o_.fragment))
                return modal(o_.k, "x", "y");
            return first_order(o_.k, {});
        }

    private:
        std::size_t pick(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }
        bool chance(unsigned percent) { return pick(100) < percent; }

        bool has_equality() const { return o_.fragment == Fragment::full || o_.fragment == Fragment::counting; }
        bool positive() const { return o_.fragment == Fragment::ep || o_.fragment == Fragment::modal_ep; }
        bool counting() const { return o_.fragment == Fragment::counting || o_.fragment == Fragment::modal_counting; }

        std::string fresh(const std::vector<std::string> & bound)
        {
            if (o_.max_vars)
                return "x" + std::to_string(1 + pick(o_.max_vars));
            return "x" + std::to_string(bound.size() + 1);
        }

        Formula leaf(const std::vector<std::string> & bound)
        {
            std::vector<std::size_t> usable;
            for (std::size_t s = 0; s < vocab_.size(); ++s)
                if (vocab_[s].arity == 0 || ! bound.empty())
                    usable.push_back(s);
            bool eq = has_equality() && ! bound.empty() && chance(15);
            if (eq)
                return Formula::equal(bound[pick(bound.size())], bound[pick(bound.size())]);
            if (usable.empty() || chance(5)) {
                if (positive() || chance(50))
                    return Formula::truth();
                return Formula::falsity();
            }
            auto s = usable[pick(usable.size())];
            std::vector<std::string> args;
            for (std::size_t i = 0; i < vocab_[s].arity; ++i)
                args.push_back(bound[pick(bound.size())]);
            return Formula::atom(vocab_[s].name, std::move(args));
        }

        Formula first_order(std::size_t rank, std::vector<std::string> bound)
        {
            if (budget_ == 0 || (bound.size() > 0 && chance(25)))
                return leaf(bound);
            --budget_;
            // Quantify early so most samples say something about the structure.
            if (rank > 0 && (bound.empty() || chance(45))) {
                auto x = fresh(bound);
                auto inner = bound;
                if (std::find(inner.begin(), inner.end(), x) == inner.end())
                    inner.push_back(x);
                auto body = first_order(rank - 1, inner);
                if (positive())
                    return Formula::exists(x, body);
                auto c = pick(counting() ? 4 : 2);
                if (c == 0)
                    return Formula::exists(x, body);
                if (c == 1)
                    return Formula::forall(x, body);
                auto n = 1 + pick(3);
                return c == 2 ? Formula::at_least(n, x, body) : Formula::at_most(n, x, body);
            }
            if (bound.empty())
                return leaf(bound);
            auto c = pick(positive() ? 2 : 4);
            if (c == 2)
                return Formula::negation(first_order(rank, bound));
            auto l = first_order(rank, bound);
            auto r = first_order(rank, bound);
            if (c == 0)
                return Formula::conjunction(l, r);
            if (c == 1)
                return Formula::disjunction(l, r);
            return Formula::implication(l, r);
        }

        Formula modal_leaf(const std::string & x)
        {
            std::vector<std::size_t> unary;
            for (std::size_t s = 0; s < vocab_.size(); ++s)
                if (vocab_[s].arity == 1)
                    unary.push_back(s);
            if (unary.empty() || chance(10))
                return positive() || chance(50) ? Formula::truth() : Formula::falsity();
            return Formula::atom(vocab_[unary[pick(unary.size())]].name, {x});
        }

        /// Standard translation with the two tokens x, y alternating.
        Formula modal(std::size_t depth, const std::string & x, const std::string & y)
        {
            if (budget_ == 0 || chance(20))
                return modal_leaf(x);
            --budget_;
            std::vector<std::size_t> binary;
            for (std::size_t s = 0; s < vocab_.size(); ++s)
                if (vocab_[s].arity == 2)
                    binary.push_back(s);
            if (depth > 0 && ! binary.empty() && chance(55)) {
                auto r = vocab_[binary[pick(binary.size())]].name;
                auto guard = Formula::atom(r, {x, y});
                auto body = modal(depth - 1, y, x);
                auto c = positive() ? 0 : pick(counting() ? 3 : 2);
                if (c == 0)
                    return Formula::exists(y, Formula::conjunction(guard, body));
                if (c == 1)
                    return Formula::forall(y, Formula::implication(guard, body));
                return Formula::at_least(1 + pick(3), y, Formula::conjunction(guard, body));
            }
            auto c = pick(positive() ? 2 : 3);
            if (c == 2)
                return Formula::negation(modal(depth, x, y));
            auto l = modal(depth, x, y);
            auto r = modal(depth, x, y);
            return c == 0 ? Formula::conjunction(l, r) : Formula::disjunction(l, r);
        }

        const Vocabulary & vocab_;
        SampleOptions o_;
        std::mt19937_64 rng_;
        std::size_t budget_ = 0;
    };
} // namespace detail

/// Deterministic list of formulas of the requested fragment with quantifier
/// rank (or modal depth) at most k. First-order fragments yield sentences;
/// modal fragments yield formulas in the single free variable x.
inline std::vector<Formula> sample_formulas(const Vocabulary & vocab, const SampleOptions & o)
{
    detail::FormulaSampler s(vocab, o);
    std::vector<Formula> out;
    out.reserve(o.count);
    for (std::size_t i = 0; i < o.count; ++i)
        out.push_back(s.next());
    return out;
}

} // namespace gamecomonad
