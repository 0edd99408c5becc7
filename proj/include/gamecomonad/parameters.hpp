#pragma once

#include <gamecomonad/coalgebra.hpp>
#include <gamecomonad/forest.hpp>

#include <bit>
#include <functional>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

namespace gamecomonad {

namespace detail {
    using Mask = std::uint64_t;

    inline Mask bit(std::size_t v) { return Mask{1} << v; }

    /// Connected components of the subgraph induced by `set`.
    inline std::vector<Mask> components(const std::vector<Mask> & adj, Mask set)
    {
        std::vector<Mask> out;
        while (set) {
            Mask comp = set & (~set + 1);
            Mask frontier = comp;
            while (frontier) {
                auto v = static_cast<std::size_t>(std::countr_zero(frontier));
                frontier &= frontier - 1;
                Mask fresh = adj[v] & set & ~comp;
                comp |= fresh;
                frontier |= fresh;
            }
            out.push_back(comp);
            set &= ~comp;
        }
        return out;
    }

    inline Mask neighbourhood(const std::vector<Mask> & adj, Mask set)
    {
        Mask n = 0;
        for (Mask s = set; s; s &= s - 1)
            n |= adj[static_cast<std::size_t>(std::countr_zero(s))];
        return n & ~set;
    }

    /// Searches a rooted elimination forest: every connected set C picks a
    /// root r and recurses into the components of C - r. `admissible(C)` is
    /// the extra condition on each subtree; `height` bounds the depth when set.
    class EliminationSearch {
    public:
        EliminationSearch(const Graph & g, std::function<bool(Mask)> admissible) :
            adj_(g.masks()), admissible_(std::move(admissible))
        {
        }

        /// Forest of height <= h, or nullopt.
        std::optional<std::vector<std::size_t>> forest(std::size_t h)
        {
            memo_.clear();
            Mask all = adj_.empty() ? 0 : (adj_.size() == 64 ? ~Mask{0} : bit(adj_.size()) - 1);
            for (auto c : components(adj_, all))
                if (! feasible(c, h))
                    return std::nullopt;
            std::vector<std::size_t> parent(adj_.size(), no_vertex);
            for (auto c : components(adj_, all))
                build(c, h, no_vertex, parent);
            return parent;
        }

    private:
        bool feasible(Mask c, std::size_t h)
        {
            if (c == 0)
                return true;
            if (h == 0 || ! admissible_(c))
                return false;
            if (static_cast<std::size_t>(std::popcount(c)) <= 1)
                return true;
            auto key = std::make_pair(c, h);
            if (auto it = memo_.find(key); it != memo_.end())
                return it->second != no_vertex;
            std::size_t choice = no_vertex;
            for (Mask s = c; s && choice == no_vertex; s &= s - 1) {
                auto r = static_cast<std::size_t>(std::countr_zero(s));
                bool ok = true;
                for (auto d : components(adj_, c & ~bit(r)))
                    if (! feasible(d, h - 1)) {
                        ok = false;
                        break;
                    }
                if (ok)
                    choice = r;
            }
            memo_[key] = choice;
            return choice != no_vertex;
        }

        void build(Mask c, std::size_t h, std::size_t above, std::vector<std::size_t> & parent)
        {
            std::size_t r;
            if (std::popcount(c) == 1)
                r = static_cast<std::size_t>(std::countr_zero(c));
            else {
                feasible(c, h);
                r = memo_.at({c, h});
            }
            parent[r] = above;
            for (auto d : components(adj_, c & ~bit(r)))
                build(d, h - 1, r, parent);
        }

        std::vector<Mask> adj_;
        std::function<bool(Mask)> admissible_;
        std::map<std::pair<Mask, std::size_t>, std::size_t> memo_;
    };
} // namespace detail

template <typename Witness>
struct Kappa {
    std::size_t kappa = 0;
    Witness witness;
};

struct EfKappaWitness {
    ForestCover cover;
    EfCoalgebra coalgebra;
};

struct PebbleKappaWitness {
    PebbleForestCover cover;
    TreeDecomposition decomposition;
    PebbleCoalgebra coalgebra;
};

/// Least k with an E_k coalgebra on A, found as a minimum-height forest cover
/// of the Gaifman graph (tree-depth).
inline Kappa<EfKappaWitness> coalgebra_number_ef(const Structure & a)
{
    auto g = gaifman(a);
    if (g.size() > 64)
        throw CapExceeded("coalgebra number search supports at most 64 elements");
    detail::EliminationSearch search(g, [](detail::Mask) { return true; });
    for (std::size_t k = 1;; ++k) {
        if (auto parent = search.forest(k)) {
            Kappa<EfKappaWitness> r;
            r.kappa = k;
            r.witness.cover.parent = *parent;
            r.witness.coalgebra = forest_cover_to_coalgebra(a, r.witness.cover, k);
            return r;
        }
    }
}

/// Least k with a P_k coalgebra on A, found as a k-pebble forest cover.
/// The cover is an elimination forest in which every subtree C has at most
/// k - 1 neighbours outside it; pebbles are then chosen greedily, avoiding
/// the pebbles of those neighbours.
inline Kappa<PebbleKappaWitness> coalgebra_number_pebble(const Structure & a)
{
    auto g = gaifman(a);
    if (g.size() > 64)
        throw CapExceeded("coalgebra number search supports at most 64 elements");
    auto adj = g.masks();
    const std::size_t n = g.size();
    for (std::size_t k = 1;; ++k) {
        detail::EliminationSearch search(g, [&](detail::Mask c) {
            return static_cast<std::size_t>(std::popcount(detail::neighbourhood(adj, c))) + 1 <= k;
        });
        auto parent = search.forest(n == 0 ? 1 : n);
        if (! parent)
            continue;
        Kappa<PebbleKappaWitness> r;
        r.kappa = k;
        auto & pfc = r.witness.cover;
        pfc.cover.parent = *parent;
        pfc.pebble.assign(n, 0);
        std::vector<detail::Mask> subtree(n, 0);
        for (std::size_t v = 0; v < n; ++v)
            for (auto x : pfc.cover.chain(v))
                subtree[x] |= detail::bit(v);
        for (auto v : pfc.cover.preorder()) {
            std::vector<char> used(k + 2, 0);
            for (auto s = detail::neighbourhood(adj, subtree[v]); s; s &= s - 1)
                used[pfc.pebble[static_cast<std::size_t>(std::countr_zero(s))]] = 1;
            unsigned p = 1;
            while (used[p])
                ++p;
            pfc.pebble[v] = p;
        }
        r.witness.decomposition = pfc_to_tree_decomposition(pfc);
        r.witness.coalgebra = pebble_forest_cover_to_coalgebra(a, pfc, k);
        return r;
    }
}

/// Longest transition path from the distinguished element; throws
/// CyclicStructure if a cycle is reachable.
inline std::size_t modal_depth(const Structure & a)
{
    require_modal(a);
    auto succ = labelled_successors(a);
    std::vector<int> state(a.size(), 0); // 0 new, 1 on stack, 2 done
    std::vector<std::size_t> depth(a.size(), 0);
    std::function<void(Elem)> visit = [&](Elem v) {
        state[v] = 1;
        for (auto & [label, w] : succ[v]) {
            if (state[w] == 1)
                throw CyclicStructure("a cycle is reachable from the distinguished element");
            if (state[w] == 0)
                visit(w);
            depth[v] = std::max(depth[v], depth[w] + 1);
        }
        state[v] = 2;
    };
    visit(*a.point());
    return depth[*a.point()];
}

/// Least k with an M_k coalgebra: max(1, modal depth). A coalgebra exists
/// only when every element is reached by exactly one transition path from
/// the distinguished element; otherwise NoCoalgebra is thrown.
inline Kappa<ModalCoalgebra> coalgebra_number_modal(const Structure & a)
{
    auto depth = modal_depth(a);
    auto point = *a.point();
    std::vector<std::optional<ModalPath>> path(a.size());
    path[point] = ModalPath{point, {}};
    std::vector<Elem> queue{point};
    auto succ = labelled_successors(a);
    for (std::size_t i = 0; i < queue.size(); ++i) {
        auto v = queue[i];
        for (auto & [label, w] : succ[v]) {
            if (path[w])
                throw NoCoalgebra("element " + a.name(w) + " is reached by more than one transition path");
            auto p = *path[v];
            p.steps.emplace_back(label, w);
            path[w] = std::move(p);
            queue.push_back(w);
        }
    }
    Kappa<ModalCoalgebra> r;
    r.kappa = std::max<std::size_t>(1, depth);
    r.witness.k = r.kappa;
    for (Elem v = 0; v < a.size(); ++v) {
        if (! path[v])
            throw NoCoalgebra("element " + a.name(v) + " is not reachable from the distinguished element");
        r.witness.alpha.push_back(*path[v]);
    }
    return r;
}

} // namespace gamecomonad
