#pragma once

#include <gamecomonad/error.hpp>
#include <gamecomonad/structure.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace gamecomonad {

/// Exhaustive oracles for tree-depth and tree-width. They use only the
/// graph itself, none of the comonad or forest-cover machinery.
constexpr std::size_t default_oracle_cap = 7;

/// Calls `visit(parent)` for every parent array on n vertices (value n
/// meaning "root") that describes a forest.
inline void for_each_forest(std::size_t n, const std::function<void(const std::vector<std::size_t> &)> & visit)
{
    std::vector<std::size_t> parent(n, 0);
    auto acyclic = [&] {
        for (std::size_t v = 0; v < n; ++v) {
            std::size_t steps = 0;
            for (auto x = v; x != n; x = parent[x])
                if (++steps > n)
                    return false;
        }
        return true;
    };
    while (true) {
        if (acyclic())
            visit(parent);
        std::size_t i = 0;
        while (i < n && parent[i] == n)
            parent[i++] = 0;
        if (i == n)
            return;
        ++parent[i];
    }
}

/// Tree-depth: the least height of a forest on V in which adjacent vertices
/// are comparable, by exhaustive search over all forests.
inline std::size_t oracle_treedepth(const Graph & g, std::size_t cap = default_oracle_cap)
{
    const std::size_t n = g.size();
    if (n > cap)
        throw CapExceeded("tree-depth oracle limited to " + std::to_string(cap) + " vertices");
    if (n == 0)
        return 0;
    auto edges = g.edges();
    std::size_t best = n;
    for_each_forest(n, [&](const std::vector<std::size_t> & parent) {
        auto ancestor = [&](std::size_t u, std::size_t v) {
            for (auto x = v; x != n; x = parent[x])
                if (x == u)
                    return true;
            return false;
        };
        for (auto [u, v] : edges)
            if (! ancestor(u, v) && ! ancestor(v, u))
                return;
        std::size_t h = 0;
        for (std::size_t v = 0; v < n; ++v) {
            std::size_t d = 0;
            for (auto x = v; x != n; x = parent[x])
                ++d;
            h = std::max(h, d);
        }
        best = std::min(best, h);
    });
    return best;
}

/// Tree-width by dynamic programming over elimination orderings:
/// TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|), where Q(S, v) is
/// the set of vertices outside S + v reachable from v through S.
inline std::size_t oracle_treewidth(const Graph & g, std::size_t cap = default_oracle_cap)
{
    const std::size_t n = g.size();
    if (n > cap)
        throw CapExceeded("tree-width oracle limited to " + std::to_string(cap) + " vertices");
    if (n == 0)
        return 0;
    auto q = [&](std::uint32_t s, std::size_t v) {
        std::uint32_t seen = 1u << v, stack_bits = 1u << v, outside = 0;
        while (stack_bits) {
            std::size_t x = 0;
            while (! (stack_bits >> x & 1u))
                ++x;
            stack_bits &= ~(1u << x);
            for (auto y : g.neighbours(x)) {
                auto b = 1u << y;
                if (seen & b)
                    continue;
                seen |= b;
                if (s & b)
                    stack_bits |= b;
                else
                    outside |= b;
            }
        }
        std::size_t c = 0;
        for (; outside; outside &= outside - 1)
            ++c;
        return c;
    };
    const std::uint32_t full = (1u << n) - 1;
    std::vector<std::size_t> tw(std::size_t{1} << n, std::numeric_limits<std::size_t>::max());
    tw[0] = 0;
    for (std::uint32_t s = 1; s <= full; ++s)
        for (std::size_t v = 0; v < n; ++v) {
            if (! (s >> v & 1u))
                continue;
            auto rest = s & ~(1u << v);
            tw[s] = std::min(tw[s], std::max(tw[rest], q(rest, v)));
        }
    return tw[full];
}

} // namespace gamecomonad
