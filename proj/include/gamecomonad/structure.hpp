#pragma once

#include <gamecomonad/error.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gamecomonad {

/// Elements of a universe are dense indices in declaration order.
using Elem = std::uint32_t;
using Tuple = std::vector<Elem>;

struct Symbol {
    std::string name;
    std::size_t arity;

    bool operator==(const Symbol &) const = default;
};

/// Ordered list of relation symbols. Names are unique and arities positive.
class Vocabulary {
public:
    Vocabulary() = default;

    std::size_t add(std::string name, std::size_t arity)
    {
        if (arity == 0)
            throw InvalidArgument("symbol '" + name + "' must have positive arity");
        if (find(name))
            throw InvalidArgument("duplicate symbol '" + name + "'");
        symbols_.push_back(Symbol{std::move(name), arity});
        return symbols_.size() - 1;
    }

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    const Symbol & operator[](std::size_t i) const { return symbols_.at(i); }
    auto begin() const { return symbols_.begin(); }
    auto end() const { return symbols_.end(); }

    std::optional<std::size_t> find(std::string_view name) const
    {
        for (std::size_t i = 0; i < symbols_.size(); ++i)
            if (symbols_[i].name == name)
                return i;
        return std::nullopt;
    }

    std::size_t max_arity() const noexcept
    {
        std::size_t m = 0;
        for (auto & s : symbols_)
            m = std::max(m, s.arity);
        return m;
    }

    bool operator==(const Vocabulary &) const = default;

private:
    std::vector<Symbol> symbols_;
};

/// A finite relational structure, optionally pointed.
///
/// Tuples are kept in insertion order (for serialization) and in an ordered
/// set (for membership). Duplicate tuples are ignored.
class Structure {
public:
    Structure() = default;
    explicit Structure(Vocabulary vocab) : vocab_(std::move(vocab)), tuples_(vocab_.size()), members_(vocab_.size()) {}

    const Vocabulary & vocabulary() const noexcept { return vocab_; }
    std::size_t size() const noexcept { return names_.size(); }
    bool empty() const noexcept { return names_.empty(); }

    Elem add_element(std::string name)
    {
        if (index_.count(name))
            throw InvalidArgument("duplicate element '" + name + "'");
        auto e = static_cast<Elem>(names_.size());
        index_.emplace(name, e);
        names_.push_back(std::move(name));
        return e;
    }

    /// Adds `n` elements named by their index.
    void add_elements(std::size_t n)
    {
        for (std::size_t i = 0; i < n; ++i)
            add_element(std::to_string(size()));
    }

    const std::string & name(Elem e) const { return names_.at(e); }
    const std::vector<std::string> & names() const noexcept { return names_; }

    std::optional<Elem> find_element(std::string_view name) const
    {
        auto it = index_.find(std::string(name));
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    void add_tuple(std::size_t symbol, Tuple t)
    {
        if (symbol >= vocab_.size())
            throw InvalidArgument("unknown symbol index " + std::to_string(symbol));
        if (t.size() != vocab_[symbol].arity)
            throw InvalidArgument("arity mismatch for '" + vocab_[symbol].name + "': expected " +
                std::to_string(vocab_[symbol].arity) + ", got " + std::to_string(t.size()));
        for (auto e : t)
            if (e >= size())
                throw InvalidArgument("tuple component outside universe");
        if (members_[symbol].insert(t).second)
            tuples_[symbol].push_back(std::move(t));
    }

    void add_tuple(std::string_view symbol, Tuple t)
    {
        auto s = vocab_.find(symbol);
        if (! s)
            throw InvalidArgument("unknown symbol '" + std::string(symbol) + "'");
        add_tuple(*s, std::move(t));
    }

    /// Tuples of `symbol` in insertion order.
    const std::vector<Tuple> & tuples(std::size_t symbol) const { return tuples_.at(symbol); }

    bool holds(std::size_t symbol, const Tuple & t) const { return members_.at(symbol).count(t) != 0; }

    std::size_t tuple_count() const noexcept
    {
        std::size_t c = 0;
        for (auto & ts : tuples_)
            c += ts.size();
        return c;
    }

    std::optional<Elem> point() const noexcept { return point_; }

    void set_point(Elem e)
    {
        if (e >= size())
            throw InvalidArgument("point outside universe");
        point_ = e;
    }

    void clear_point() noexcept { point_.reset(); }

    /// Structural equality: same vocabulary, element names, tuple sets and point.
    friend bool operator==(const Structure & a, const Structure & b)
    {
        return a.vocab_ == b.vocab_ && a.names_ == b.names_ && a.members_ == b.members_ && a.point_ == b.point_;
    }

private:
    Vocabulary vocab_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, Elem> index_;
    std::vector<std::vector<Tuple>> tuples_;
    std::vector<std::set<Tuple>> members_;
    std::optional<Elem> point_;
};

inline void require_same_vocabulary(const Structure & a, const Structure & b)
{
    if (! (a.vocabulary() == b.vocabulary()))
        throw VocabularyMismatch("structures have different vocabularies");
}

/// Finite simple graph: symmetric, irreflexive adjacency.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adj_(n) {}

    std::size_t size() const noexcept { return adj_.size(); }

    void add_edge(std::size_t u, std::size_t v)
    {
        if (u >= size() || v >= size())
            throw InvalidArgument("edge endpoint outside vertex set");
        if (u == v)
            return;
        insert_sorted(adj_[u], v);
        insert_sorted(adj_[v], u);
    }

    bool adjacent(std::size_t u, std::size_t v) const
    {
        return std::binary_search(adj_.at(u).begin(), adj_.at(u).end(), v);
    }

    const std::vector<std::size_t> & neighbours(std::size_t v) const { return adj_.at(v); }

    std::size_t edge_count() const noexcept
    {
        std::size_t c = 0;
        for (auto & a : adj_)
            c += a.size();
        return c / 2;
    }

    std::vector<std::pair<std::size_t, std::size_t>> edges() const
    {
        std::vector<std::pair<std::size_t, std::size_t>> result;
        for (std::size_t u = 0; u < size(); ++u)
            for (auto v : adj_[u])
                if (u < v)
                    result.emplace_back(u, v);
        return result;
    }

    /// Adjacency as bitmasks; requires at most 64 vertices.
    std::vector<std::uint64_t> masks() const
    {
        if (size() > 64)
            throw CapExceeded("graph has more than 64 vertices");
        std::vector<std::uint64_t> m(size(), 0);
        for (std::size_t u = 0; u < size(); ++u)
            for (auto v : adj_[u])
                m[u] |= std::uint64_t{1} << v;
        return m;
    }

    bool operator==(const Graph &) const = default;

private:
    static void insert_sorted(std::vector<std::size_t> & v, std::size_t x)
    {
        auto it = std::lower_bound(v.begin(), v.end(), x);
        if (it == v.end() || *it != x)
            v.insert(it, x);
    }

    std::vector<std::vector<std::size_t>> adj_;
};

/// Gaifman graph: distinct elements are adjacent iff they co-occur in a tuple.
inline Graph gaifman(const Structure & a)
{
    Graph g(a.size());
    for (std::size_t s = 0; s < a.vocabulary().size(); ++s)
        for (auto & t : a.tuples(s))
            for (std::size_t i = 0; i < t.size(); ++i)
                for (std::size_t j = i + 1; j < t.size(); ++j)
                    g.add_edge(t[i], t[j]);
    return g;
}

/// The graph as a structure over one symmetric binary symbol `E`.
inline Structure graph_structure(const Graph & g, std::string_view symbol = "E")
{
    Vocabulary v;
    v.add(std::string(symbol), 2);
    Structure s(std::move(v));
    s.add_elements(g.size());
    for (auto [u, w] : g.edges()) {
        s.add_tuple(0, {static_cast<Elem>(u), static_cast<Elem>(w)});
        s.add_tuple(0, {static_cast<Elem>(w), static_cast<Elem>(u)});
    }
    return s;
}

} // namespace gamecomonad
