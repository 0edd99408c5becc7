#pragma once

#include <gamecomonad/error.hpp>
#include <gamecomonad/structure.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace gamecomonad {

constexpr std::size_t no_vertex = static_cast<std::size_t>(-1);

/// A forest order on the vertex set given by parent pointers; roots have
/// parent no_vertex. v <= w iff v is an ancestor of w (or v = w).
struct ForestCover {
    std::vector<std::size_t> parent;

    std::size_t size() const noexcept { return parent.size(); }

    bool operator==(const ForestCover &) const = default;

    /// Ancestors of v from the root down to v itself; throws on a cycle.
    std::vector<std::size_t> chain(std::size_t v) const
    {
        std::vector<std::size_t> c;
        for (std::size_t x = v; x != no_vertex; x = parent.at(x)) {
            if (c.size() > parent.size())
                throw InvalidArgument("parent pointers contain a cycle");
            c.push_back(x);
        }
        std::reverse(c.begin(), c.end());
        return c;
    }

    bool below_or_equal(std::size_t v, std::size_t w) const
    {
        for (std::size_t x = w; x != no_vertex; x = parent[x])
            if (x == v)
                return true;
        return false;
    }

    bool comparable(std::size_t v, std::size_t w) const { return below_or_equal(v, w) || below_or_equal(w, v); }

    /// Size of the longest chain (0 for an empty forest).
    std::size_t height() const
    {
        std::size_t h = 0;
        for (std::size_t v = 0; v < size(); ++v)
            h = std::max(h, chain(v).size());
        return h;
    }

    /// Vertices in an order where every parent precedes its children.
    std::vector<std::size_t> preorder() const
    {
        std::vector<std::size_t> order(size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::vector<std::size_t> depth(size());
        for (std::size_t v = 0; v < size(); ++v)
            depth[v] = chain(v).size();
        std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return depth[x] < depth[y]; });
        return order;
    }
};

/// Empty string if `f` is a forest on the vertices of g in which adjacent
/// vertices are comparable; otherwise the first violation.
inline std::string validate_forest_cover(const Graph & g, const ForestCover & f)
{
    if (f.size() != g.size())
        return "forest has " + std::to_string(f.size()) + " vertices, graph has " + std::to_string(g.size());
    for (std::size_t v = 0; v < f.size(); ++v)
        if (f.parent[v] != no_vertex && f.parent[v] >= f.size())
            return "parent of " + std::to_string(v) + " out of range";
    try {
        for (std::size_t v = 0; v < f.size(); ++v)
            f.chain(v);
    }
    catch (const InvalidArgument & e) {
        return e.what();
    }
    for (auto [u, v] : g.edges())
        if (! f.comparable(u, v))
            return "adjacent vertices " + std::to_string(u) + " and " + std::to_string(v) + " are incomparable";
    return {};
}

/// Rooted tree of bags; node 0 is the root. `edges` are the tree edges.
struct TreeDecomposition {
    std::vector<std::vector<std::size_t>> bags;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    std::size_t width() const
    {
        std::size_t w = 0;
        for (auto & b : bags)
            w = std::max(w, b.size());
        return w == 0 ? 0 : w - 1;
    }

    /// Parent pointers with node 0 as root; nullopt if the edges are not a tree.
    std::optional<std::vector<std::size_t>> rooted() const
    {
        const std::size_t n = bags.size();
        if (n == 0 || edges.size() + 1 != n)
            return std::nullopt;
        std::vector<std::vector<std::size_t>> adj(n);
        for (auto [x, y] : edges) {
            if (x >= n || y >= n || x == y)
                return std::nullopt;
            adj[x].push_back(y);
            adj[y].push_back(x);
        }
        std::vector<std::size_t> parent(n, no_vertex);
        std::vector<char> seen(n, 0);
        std::vector<std::size_t> stack{0};
        seen[0] = 1;
        std::size_t reached = 1;
        while (! stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (auto y : adj[x])
                if (! seen[y]) {
                    seen[y] = 1;
                    parent[y] = x;
                    ++reached;
                    stack.push_back(y);
                }
        }
        if (reached != n)
            return std::nullopt;
        return parent;
    }
};

/// Empty string if `td` is a tree decomposition of g; otherwise the first
/// violated condition.
inline std::string validate_tree_decomposition(const Graph & g, const TreeDecomposition & td)
{
    auto parent = td.rooted();
    if (! parent)
        return "decomposition edges do not form a tree";
    const std::size_t n = g.size();
    std::vector<std::vector<char>> in(td.bags.size(), std::vector<char>(n, 0));
    for (std::size_t x = 0; x < td.bags.size(); ++x)
        for (auto v : td.bags[x]) {
            if (v >= n)
                return "bag " + std::to_string(x) + " mentions unknown vertex";
            in[x][v] = 1;
        }
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t count = 0, tops = 0;
        for (std::size_t x = 0; x < td.bags.size(); ++x)
            if (in[x][v]) {
                ++count;
                // The nodes holding v are connected iff exactly one of them
                // has its parent outside the set.
                if ((*parent)[x] == no_vertex || ! in[(*parent)[x]][v])
                    ++tops;
            }
        if (count == 0)
            return "vertex " + std::to_string(v) + " is in no bag";
        if (tops != 1)
            return "bags containing vertex " + std::to_string(v) + " are not connected";
    }
    for (auto [u, v] : g.edges()) {
        bool covered = false;
        for (std::size_t x = 0; x < td.bags.size() && ! covered; ++x)
            covered = in[x][u] && in[x][v];
        if (! covered)
            return "edge " + std::to_string(u) + "-" + std::to_string(v) + " is in no bag";
    }
    return {};
}

/// A forest cover with a pebbling p : V -> {1..k}.
struct PebbleForestCover {
    ForestCover cover;
    std::vector<unsigned> pebble;

    bool operator==(const PebbleForestCover &) const = default;

    unsigned pebbles_used() const
    {
        unsigned m = 0;
        for (auto p : pebble)
            m = std::max(m, p);
        return m;
    }

    /// Ancestors u of w (w included) whose pebble is not reused strictly
    /// between u and w: the placements still on the board at w.
    std::vector<std::size_t> active(std::size_t w) const
    {
        auto c = cover.chain(w);
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < c.size(); ++i) {
            bool reused = false;
            for (std::size_t j = i + 1; j < c.size() && ! reused; ++j)
                reused = pebble[c[j]] == pebble[c[i]];
            if (! reused)
                out.push_back(c[i]);
        }
        return out;
    }
};

inline std::string validate_pebble_forest_cover(const Graph & g, const PebbleForestCover & pfc, std::size_t k)
{
    if (auto e = validate_forest_cover(g, pfc.cover); ! e.empty())
        return e;
    if (pfc.pebble.size() != g.size())
        return "pebbling is not total";
    for (std::size_t v = 0; v < g.size(); ++v)
        if (pfc.pebble[v] < 1 || pfc.pebble[v] > k)
            return "pebble of vertex " + std::to_string(v) + " outside 1.." + std::to_string(k);
    for (auto [x, y] : g.edges()) {
        auto u = x, v = y;
        if (! pfc.cover.below_or_equal(u, v))
            std::swap(u, v);
        for (auto w = v; w != u; w = pfc.cover.parent[w])
            if (pfc.pebble[w] == pfc.pebble[u])
                return "pebble " + std::to_string(pfc.pebble[u]) + " of vertex " + std::to_string(u) +
                    " is reused at " + std::to_string(w) + " before its neighbour " + std::to_string(v);
    }
    return {};
}

/// One node per vertex holding its active placements. Several roots are
/// joined under an extra root with an empty bag.
inline TreeDecomposition pfc_to_tree_decomposition(const PebbleForestCover & pfc)
{
    const std::size_t n = pfc.cover.size();
    TreeDecomposition td;
    std::size_t roots = 0;
    for (auto p : pfc.cover.parent)
        roots += p == no_vertex;
    const std::size_t offset = roots > 1 || n == 0 ? 1 : 0;
    if (offset)
        td.bags.emplace_back();
    // With a single root the root vertex must sit at node 0.
    std::vector<std::size_t> node(n);
    auto order = pfc.cover.preorder();
    for (std::size_t i = 0; i < n; ++i)
        node[order[i]] = i + offset;
    td.bags.resize(n + offset);
    for (auto v : order) {
        auto bag = pfc.active(v);
        std::sort(bag.begin(), bag.end());
        td.bags[node[v]] = std::move(bag);
        auto p = pfc.cover.parent[v];
        if (p != no_vertex)
            td.edges.emplace_back(node[p], node[v]);
        else if (offset)
            td.edges.emplace_back(0, node[v]);
    }
    return td;
}

/// Forest: vertices ordered by the decomposition node nearest the root that
/// holds them (ties by index), each hung below the previous one on its
/// branch. Pebbles: greedy, distinct from earlier vertices sharing the bag
/// of the vertex's top node.
inline PebbleForestCover tree_decomposition_to_pfc(const Graph & g, const TreeDecomposition & td, std::size_t k)
{
    if (auto e = validate_tree_decomposition(g, td); ! e.empty())
        throw InvalidArgument("not a tree decomposition: " + e);
    if (g.size() > 0 && td.width() + 1 > k)
        throw InvalidArgument("decomposition width " + std::to_string(td.width()) + " is not below " + std::to_string(k));
    auto parent = *td.rooted();
    const std::size_t n = g.size(), m = td.bags.size();

    std::vector<std::size_t> depth(m, 0);
    std::vector<std::size_t> node_order(m);
    std::iota(node_order.begin(), node_order.end(), std::size_t{0});
    for (std::size_t x = 0; x < m; ++x)
        for (auto y = parent[x]; y != no_vertex; y = parent[y])
            ++depth[x];
    std::stable_sort(node_order.begin(), node_order.end(), [&](auto x, auto y) { return depth[x] < depth[y]; });

    std::vector<std::size_t> top(n, no_vertex);
    for (auto x : node_order)
        for (auto v : td.bags[x])
            if (top[v] == no_vertex)
                top[v] = x;

    std::vector<std::vector<std::size_t>> topped(m);
    for (std::size_t v = 0; v < n; ++v)
        topped[top[v]].push_back(v);

    PebbleForestCover pfc;
    pfc.cover.parent.assign(n, no_vertex);
    pfc.pebble.assign(n, 0);
    // last[x]: the deepest forest vertex introduced at x or above it.
    std::vector<std::size_t> last(m, no_vertex);
    for (auto x : node_order) {
        std::size_t prev = parent[x] == no_vertex ? no_vertex : last[parent[x]];
        for (auto v : topped[x]) {
            pfc.cover.parent[v] = prev;
            prev = v;
        }
        last[x] = prev;
    }
    for (auto x : node_order)
        for (auto v : topped[x]) {
            std::vector<char> used(k + 2, 0);
            for (auto u : td.bags[x])
                if (u != v && pfc.pebble[u] != 0 && pfc.cover.below_or_equal(u, v))
                    used[pfc.pebble[u]] = 1;
            unsigned p = 1;
            while (used[p])
                ++p;
            pfc.pebble[v] = p;
        }
    return pfc;
}

inline std::string serialize_forest(const Structure & a, const ForestCover & f)
{
    std::string out;
    for (std::size_t v = 0; v < f.size(); ++v) {
        if (f.parent[v] == no_vertex)
            out += "root " + a.name(static_cast<Elem>(v)) + "\n";
        else
            out += "parent " + a.name(static_cast<Elem>(v)) + " " + a.name(static_cast<Elem>(f.parent[v])) + "\n";
    }
    return out;
}

inline std::string serialize_pebbling(const Structure & a, const PebbleForestCover & pfc)
{
    std::string out = serialize_forest(a, pfc.cover);
    for (std::size_t v = 0; v < pfc.pebble.size(); ++v)
        out += "pebble " + a.name(static_cast<Elem>(v)) + " " + std::to_string(pfc.pebble[v]) + "\n";
    return out;
}

inline std::string serialize_decomposition(const Structure & a, const TreeDecomposition & td)
{
    std::string out;
    for (std::size_t x = 0; x < td.bags.size(); ++x) {
        out += "bag " + std::to_string(x);
        for (auto v : td.bags[x])
            out += " " + a.name(static_cast<Elem>(v));
        out += "\n";
    }
    for (auto [x, y] : td.edges)
        out += "edge " + std::to_string(x) + " " + std::to_string(y) + "\n";
    return out;
}

} // namespace gamecomonad
