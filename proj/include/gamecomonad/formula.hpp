#pragma once

#include <gamecomonad/error.hpp>
#include <gamecomonad/structure.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace gamecomonad {

enum class Connective {
    truth,
    falsity,
    atom,     ///< symbol(vars...)
    equal,    ///< vars[0] = vars[1]
    negation,
    conjunction,
    disjunction,
    implication,
    exists,
    forall,
    at_least, ///< E>=n x . phi
    at_most   ///< E<=n x . phi
};

/// Immutable first-order formula. Cheap to copy; subformulas are shared.
class Formula {
public:
    struct Node;
    using Ptr = std::shared_ptr<const Node>;
    struct Node {
        Connective op;
        std::string symbol;
        std::vector<std::string> vars;
        std::size_t count = 0;
        Ptr left, right;
    };

    static Formula truth() { return make({Connective::truth, {}, {}, 0, {}, {}}); }
    static Formula falsity() { return make({Connective::falsity, {}, {}, 0, {}, {}}); }
    static Formula atom(std::string symbol, std::vector<std::string> vars)
    {
        return make({Connective::atom, std::move(symbol), std::move(vars), 0, {}, {}});
    }
    static Formula equal(std::string x, std::string y) { return make({Connective::equal, {}, {std::move(x), std::move(y)}, 0, {}, {}}); }
    static Formula negation(const Formula & f) { return make({Connective::negation, {}, {}, 0, f.node_, {}}); }
    static Formula conjunction(const Formula & l, const Formula & r) { return make({Connective::conjunction, {}, {}, 0, l.node_, r.node_}); }
    static Formula disjunction(const Formula & l, const Formula & r) { return make({Connective::disjunction, {}, {}, 0, l.node_, r.node_}); }
    static Formula implication(const Formula & l, const Formula & r) { return make({Connective::implication, {}, {}, 0, l.node_, r.node_}); }
    static Formula exists(std::string x, const Formula & f) { return make({Connective::exists, {}, {std::move(x)}, 0, f.node_, {}}); }
    static Formula forall(std::string x, const Formula & f) { return make({Connective::forall, {}, {std::move(x)}, 0, f.node_, {}}); }
    static Formula at_least(std::size_t n, std::string x, const Formula & f)
    {
        return make({Connective::at_least, {}, {std::move(x)}, n, f.node_, {}});
    }
    static Formula at_most(std::size_t n, std::string x, const Formula & f)
    {
        return make({Connective::at_most, {}, {std::move(x)}, n, f.node_, {}});
    }

    Connective op() const { return node_->op; }
    const std::string & symbol() const { return node_->symbol; }
    const std::vector<std::string> & vars() const { return node_->vars; }
    const std::string & bound() const { return node_->vars.at(0); }
    std::size_t count() const { return node_->count; }
    Formula left() const { return Formula(node_->left); }
    Formula right() const { return Formula(node_->right); }
    Formula body() const { return Formula(node_->left); }

    bool is_quantifier() const
    {
        auto o = op();
        return o == Connective::exists || o == Connective::forall || o == Connective::at_least || o == Connective::at_most;
    }
    bool is_binary() const
    {
        auto o = op();
        return o == Connective::conjunction || o == Connective::disjunction || o == Connective::implication;
    }

    friend bool operator==(const Formula & a, const Formula & b)
    {
        if (a.node_ == b.node_)
            return true;
        if (a.op() != b.op() || a.symbol() != b.symbol() || a.vars() != b.vars() || a.count() != b.count())
            return false;
        if (a.op() == Connective::negation || a.is_quantifier())
            return a.body() == b.body();
        if (a.is_binary())
            return a.left() == b.left() && a.right() == b.right();
        return true;
    }

private:
    explicit Formula(Ptr p) : node_(std::move(p)) {}
    static Formula make(Node n) { return Formula(std::make_shared<const Node>(std::move(n))); }

    Ptr node_;
};

/// Maximum nesting depth of quantifiers; counting quantifiers count once.
inline std::size_t quantifier_rank(const Formula & f)
{
    if (f.is_quantifier())
        return 1 + quantifier_rank(f.body());
    if (f.op() == Connective::negation)
        return quantifier_rank(f.body());
    if (f.is_binary())
        return std::max(quantifier_rank(f.left()), quantifier_rank(f.right()));
    return 0;
}

/// Atoms, equality, truth, conjunction, disjunction and plain existential
/// quantification only.
inline bool is_existential_positive(const Formula & f)
{
    switch (f.op()) {
    case Connective::truth:
    case Connective::atom:
    case Connective::equal: return true;
    case Connective::conjunction:
    case Connective::disjunction: return is_existential_positive(f.left()) && is_existential_positive(f.right());
    case Connective::exists: return is_existential_positive(f.body());
    default: return false;
    }
}

inline bool uses_counting(const Formula & f)
{
    if (f.op() == Connective::at_least || f.op() == Connective::at_most)
        return true;
    if (f.is_quantifier() || f.op() == Connective::negation)
        return uses_counting(f.body());
    if (f.is_binary())
        return uses_counting(f.left()) || uses_counting(f.right());
    return false;
}

inline bool uses_equality(const Formula & f)
{
    if (f.op() == Connective::equal)
        return true;
    if (f.is_quantifier() || f.op() == Connective::negation)
        return uses_equality(f.body());
    if (f.is_binary())
        return uses_equality(f.left()) || uses_equality(f.right());
    return false;
}

inline std::set<std::string> free_variables(const Formula & f)
{
    switch (f.op()) {
    case Connective::atom:
    case Connective::equal: return {f.vars().begin(), f.vars().end()};
    case Connective::negation: return free_variables(f.body());
    case Connective::exists:
    case Connective::forall:
    case Connective::at_least:
    case Connective::at_most: {
        auto v = free_variables(f.body());
        v.erase(f.bound());
        return v;
    }
    case Connective::conjunction:
    case Connective::disjunction:
    case Connective::implication: {
        auto v = free_variables(f.left());
        auto r = free_variables(f.right());
        v.insert(r.begin(), r.end());
        return v;
    }
    default: return {};
    }
}

/// Distinct variable tokens occurring anywhere (bound or free).
inline std::set<std::string> variable_tokens(const Formula & f)
{
    std::set<std::string> v;
    if (f.op() == Connective::atom || f.op() == Connective::equal || f.is_quantifier())
        v.insert(f.vars().begin(), f.vars().end());
    if (f.is_quantifier() || f.op() == Connective::negation) {
        auto b = variable_tokens(f.body());
        v.insert(b.begin(), b.end());
    }
    if (f.is_binary()) {
        auto l = variable_tokens(f.left()), r = variable_tokens(f.right());
        v.insert(l.begin(), l.end());
        v.insert(r.begin(), r.end());
    }
    return v;
}

/// Text form accepted by parse_formula. Binary connectives are always
/// parenthesized; quantifiers extend as far right as possible.
inline std::string to_string(const Formula & f)
{
    auto quant_body = [](const Formula & b) { return to_string(b); };
    // A quantifier on the left of a binary connective would swallow the
    // right operand when read back.
    auto left_operand = [](const Formula & l) { return l.is_quantifier() ? "(" + to_string(l) + ")" : to_string(l); };
    switch (f.op()) {
    case Connective::truth: return "T";
    case Connective::falsity: return "F";
    case Connective::atom: {
        std::string out = f.symbol() + "(";
        for (std::size_t i = 0; i < f.vars().size(); ++i)
            out += (i ? "," : "") + f.vars()[i];
        return out + ")";
    }
    case Connective::equal: return f.vars()[0] + " = " + f.vars()[1];
    case Connective::negation: {
        auto b = f.body();
        bool wrap = b.op() == Connective::equal || b.is_quantifier();
        return "~" + (wrap ? "(" + to_string(b) + ")" : to_string(b));
    }
    case Connective::conjunction: return "(" + left_operand(f.left()) + " & " + to_string(f.right()) + ")";
    case Connective::disjunction: return "(" + left_operand(f.left()) + " | " + to_string(f.right()) + ")";
    case Connective::implication: return "(" + left_operand(f.left()) + " -> " + to_string(f.right()) + ")";
    case Connective::exists: return "E " + f.bound() + " . " + quant_body(f.body());
    case Connective::forall: return "A " + f.bound() + " . " + quant_body(f.body());
    case Connective::at_least: return "E>=" + std::to_string(f.count()) + " " + f.bound() + " . " + quant_body(f.body());
    case Connective::at_most: return "E<=" + std::to_string(f.count()) + " " + f.bound() + " . " + quant_body(f.body());
    }
    return "?";
}

namespace detail {
    class FormulaParser {
    public:
        explicit FormulaParser(std::string_view text) : text_(text) {}

        Formula parse()
        {
            auto f = implication();
            skip_space();
            if (pos_ != text_.size())
                fail("unexpected '" + std::string(text_.substr(pos_, 1)) + "'");
            return f;
        }

    private:
        [[noreturn]] void fail(const std::string & what) const
        {
            throw ParseError(0, "formula column " + std::to_string(pos_ + 1) + ": " + what);
        }

        void skip_space()
        {
            while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
        }

        bool accept(std::string_view tok)
        {
            skip_space();
            if (text_.substr(pos_, tok.size()) == tok) {
                pos_ += tok.size();
                return true;
            }
            return false;
        }

        void expect(std::string_view tok)
        {
            if (! accept(tok))
                fail("expected '" + std::string(tok) + "'");
        }

        static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
        static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

        std::string peek_ident()
        {
            skip_space();
            std::size_t p = pos_;
            if (p >= text_.size() || ! ident_start(text_[p]))
                return "";
            while (p < text_.size() && ident_char(text_[p]))
                ++p;
            return std::string(text_.substr(pos_, p - pos_));
        }

        std::string ident()
        {
            auto id = peek_ident();
            if (id.empty())
                fail("expected identifier");
            pos_ += id.size();
            return id;
        }

        char next_significant(std::size_t from) const
        {
            while (from < text_.size() && std::isspace(static_cast<unsigned char>(text_[from])))
                ++from;
            return from < text_.size() ? text_[from] : '\0';
        }

        Formula implication()
        {
            auto left = disjunction();
            if (accept("->"))
                return Formula::implication(left, implication());
            return left;
        }

        Formula disjunction()
        {
            auto left = conjunction();
            while (accept("|"))
                left = Formula::disjunction(left, conjunction());
            return left;
        }

        Formula conjunction()
        {
            auto left = unary();
            while (accept("&"))
                left = Formula::conjunction(left, unary());
            return left;
        }

        Formula unary()
        {
            if (accept("~"))
                return Formula::negation(unary());
            skip_space();
            auto id = peek_ident();
            if (id == "E" || id == "A") {
                std::size_t after = pos_ + 1;
                char c = next_significant(after);
                if (id == "E" && text_.substr(after, 2) == ">=")
                    return counting(true);
                if (id == "E" && text_.substr(after, 2) == "<=")
                    return counting(false);
                if (ident_start(c)) {
                    pos_ = after;
                    auto x = ident();
                    expect(".");
                    auto body = implication();
                    return id == "E" ? Formula::exists(x, body) : Formula::forall(x, body);
                }
            }
            return primary();
        }

        Formula counting(bool at_least)
        {
            pos_ += 3;
            skip_space();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected count");
            auto n = std::stoul(std::string(text_.substr(start, pos_ - start)));
            auto x = ident();
            expect(".");
            auto body = implication();
            return at_least ? Formula::at_least(n, x, body) : Formula::at_most(n, x, body);
        }

        Formula primary()
        {
            if (accept("(")) {
                auto f = implication();
                expect(")");
                return f;
            }
            auto id = ident();
            if (accept("(")) {
                std::vector<std::string> args;
                if (! accept(")")) {
                    do
                        args.push_back(ident());
                    while (accept(","));
                    expect(")");
                }
                return Formula::atom(id, std::move(args));
            }
            if (accept("="))
                return Formula::equal(id, ident());
            if (id == "T")
                return Formula::truth();
            if (id == "F")
                return Formula::falsity();
            fail("expected atom, equality, T or F");
        }

        std::string_view text_;
        std::size_t pos_ = 0;
    };
} // namespace detail

/// Parses `E x . phi`, `A x . phi`, `E>=n x . phi`, `E<=n x . phi`, `~`, `&`,
/// `|`, `->` (right associative), `R(x,y)`, `x = y`, `T`, `F` and parentheses.
/// Precedence from tightest: `~`, `&`, `|`, `->`; quantifier bodies extend as
/// far right as possible.
inline Formula parse_formula(std::string_view text) { return detail::FormulaParser(text).parse(); }

namespace detail {
    /// Formula compiled against a structure: variables become slots, symbols
    /// become indices, relations dense bit tables.
    class CompiledFormula {
    public:
        CompiledFormula(const Structure & a, const Formula & f) : a_(a)
        {
            tables_.resize(a.vocabulary().size());
            for (std::size_t s = 0; s < a.vocabulary().size(); ++s) {
                auto m = a.vocabulary()[s].arity;
                std::size_t cells = 1;
                bool dense = true;
                for (std::size_t i = 0; i < m && dense; ++i) {
                    if (a.size() != 0 && cells > (std::size_t{1} << 24) / a.size())
                        dense = false;
                    cells *= a.size();
                }
                if (dense) {
                    tables_[s].assign(cells, 0);
                    for (auto & t : a.tuples(s))
                        tables_[s][flat(t.data(), m)] = 1;
                }
            }
            root_ = compile(f);
        }

        bool eval(const std::map<std::string, Elem> & env)
        {
            slots_.assign(slot_names_.size(), 0);
            for (std::size_t i = 0; i < slot_names_.size(); ++i) {
                auto it = env.find(slot_names_[i]);
                if (it != env.end()) {
                    if (it->second >= a_.size())
                        throw InvalidArgument("environment value outside universe");
                    slots_[i] = it->second;
                }
                else if (free_slots_.count(i))
                    throw InvalidArgument("unbound free variable '" + slot_names_[i] + "'");
            }
            return run(root_);
        }

        void require_bound(const std::set<std::string> & free)
        {
            for (auto & v : free)
                free_slots_.insert(slot(v));
        }

    private:
        struct Op {
            Connective op;
            std::size_t symbol = 0;
            std::vector<std::size_t> args;
            std::size_t count = 0;
            int left = -1, right = -1;
        };

        std::size_t flat(const Elem * t, std::size_t m) const
        {
            std::size_t i = 0;
            for (std::size_t j = 0; j < m; ++j)
                i = i * a_.size() + t[j];
            return i;
        }

        std::size_t slot(const std::string & v)
        {
            for (std::size_t i = 0; i < slot_names_.size(); ++i)
                if (slot_names_[i] == v)
                    return i;
            slot_names_.push_back(v);
            return slot_names_.size() - 1;
        }

        int compile(const Formula & f)
        {
            Op op;
            op.op = f.op();
            if (f.op() == Connective::atom) {
                auto s = a_.vocabulary().find(f.symbol());
                if (! s)
                    throw InvalidArgument("unknown symbol '" + f.symbol() + "' in formula");
                if (a_.vocabulary()[*s].arity != f.vars().size())
                    throw InvalidArgument("arity mismatch for '" + f.symbol() + "' in formula");
                op.symbol = *s;
            }
            for (auto & v : f.vars())
                op.args.push_back(slot(v));
            op.count = f.count();
            if (f.is_quantifier() || f.op() == Connective::negation)
                op.left = compile(f.body());
            if (f.is_binary()) {
                op.left = compile(f.left());
                op.right = compile(f.right());
            }
            ops_.push_back(std::move(op));
            return static_cast<int>(ops_.size() - 1);
        }

        bool holds(const Op & op)
        {
            Tuple t;
            t.reserve(op.args.size());
            for (auto s : op.args)
                t.push_back(slots_[s]);
            if (! tables_[op.symbol].empty())
                return tables_[op.symbol][flat(t.data(), t.size())] != 0;
            return a_.holds(op.symbol, t);
        }

        bool run(int i)
        {
            const Op & op = ops_[static_cast<std::size_t>(i)];
            switch (op.op) {
            case Connective::truth: return true;
            case Connective::falsity: return false;
            case Connective::atom: return holds(op);
            case Connective::equal: return slots_[op.args[0]] == slots_[op.args[1]];
            case Connective::negation: return ! run(op.left);
            case Connective::conjunction: return run(op.left) && run(op.right);
            case Connective::disjunction: return run(op.left) || run(op.right);
            case Connective::implication: return ! run(op.left) || run(op.right);
            default: break;
            }
            auto x = op.args[0];
            auto saved = slots_[x];
            std::size_t witnesses = 0;
            bool result = false;
            bool decided = false;
            for (Elem e = 0; e < a_.size() && ! decided; ++e) {
                slots_[x] = e;
                bool b = run(op.left);
                switch (op.op) {
                case Connective::exists:
                    if (b)
                        result = decided = true;
                    break;
                case Connective::forall:
                    if (! b) {
                        result = false;
                        decided = true;
                    }
                    break;
                case Connective::at_least:
                    if (b && ++witnesses >= op.count)
                        result = decided = true;
                    break;
                case Connective::at_most:
                    if (b && ++witnesses > op.count) {
                        result = false;
                        decided = true;
                    }
                    break;
                default: break;
                }
            }
            if (! decided) {
                switch (op.op) {
                case Connective::exists: result = false; break;
                case Connective::forall: result = true; break;
                case Connective::at_least: result = witnesses >= op.count; break;
                case Connective::at_most: result = witnesses <= op.count; break;
                default: break;
                }
            }
            slots_[x] = saved;
            return result;
        }

        const Structure & a_;
        std::vector<std::vector<char>> tables_;
        std::vector<Op> ops_;
        std::vector<std::string> slot_names_;
        std::set<std::size_t> free_slots_;
        std::vector<Elem> slots_;
        int root_ = -1;
    };
} // namespace detail

/// Tarskian satisfaction A |= phi[env]. Every free variable must be bound in env.
inline bool eval(const Structure & a, const Formula & f, const std::map<std::string, Elem> & env = {})
{
    detail::CompiledFormula c(a, f);
    c.require_bound(free_variables(f));
    return c.eval(env);
}

} // namespace gamecomonad
