#pragma once

#include <gamecomonad/game.hpp>
#include <gamecomonad/play_tree.hpp>

#include <functional>
#include <string>
#include <vector>

namespace gamecomonad {

/// A strategy table f : C_k A -> B in coextended form: image[s] is the node
/// f*(s) of the play tree of B. The root maps to the root and every child to
/// a child with the same label, so f and f* determine each other.
using TreeMap = std::vector<std::size_t>;

constexpr std::size_t default_strategy_cap = 2'000'000;

/// All tables whose graph stays in W: S(A,B) = { f | (s, f*(s)) in W for all s }.
inline std::vector<TreeMap> enumerate_strategies(const PlayTree & ta, const PlayTree & tb, const WinningSet & w,
    std::size_t cap = default_strategy_cap)
{
    std::vector<TreeMap> result;
    if (! w.contains(0, 0))
        return result;
    TreeMap current(ta.size(), 0);
    std::function<void(std::size_t)> assign = [&](std::size_t s) {
        if (s == ta.size()) {
            if (result.size() >= cap)
                throw CapExceeded("strategy set exceeds " + std::to_string(cap) + " tables");
            result.push_back(current);
            return;
        }
        auto from = current[ta[s].parent];
        for (auto t : tb[from].children) {
            if (tb[t].label != ta[s].label || ! w.contains(s, t))
                continue;
            current[s] = t;
            assign(s + 1);
        }
    };
    // Nodes are stored parent-first, so each parent is assigned before its children.
    assign(1);
    return result;
}

struct ThetaResult {
    /// Greatest fixpoint of Theta inside S(A,B).
    std::vector<TreeMap> fixpoint;
    /// Gamma(fixpoint) inside S(B,A); with `fixpoint` a locally invertible pair.
    std::vector<TreeMap> partner;
    std::size_t strategies_ab = 0;
    std::size_t strategies_ba = 0;
    std::size_t iterations = 0;

    bool nonempty() const noexcept { return ! fixpoint.empty(); }
};

namespace detail {
    /// hit[s * |B| + t] iff some f in F has f*(s) = t.
    inline std::vector<char> hits(const std::vector<TreeMap> & fs, std::size_t na, std::size_t nb)
    {
        std::vector<char> hit(na * nb, 0);
        for (auto & f : fs)
            for (std::size_t s = 0; s < na; ++s)
                hit[s * nb + f[s]] = 1;
        return hit;
    }

    /// { g in T | for all t, some f in F has f* g* t = t }.
    inline std::vector<TreeMap> inverse_closure(const std::vector<TreeMap> & fs, std::size_t na,
        const std::vector<TreeMap> & candidates, std::size_t nb)
    {
        auto hit = hits(fs, na, nb);
        std::vector<TreeMap> out;
        for (auto & g : candidates) {
            bool ok = true;
            for (std::size_t t = 0; ok && t < nb; ++t)
                ok = hit[g[t] * nb + t] != 0;
            if (ok)
                out.push_back(g);
        }
        return out;
    }
} // namespace detail

/// Iterates Theta = Delta . Gamma downward from S(A,B) until it stabilizes.
/// `w_ab` ranges over (A-node, B-node), `w_ba` over (B-node, A-node).
inline ThetaResult theta_fixpoint(const PlayTree & ta, const PlayTree & tb, const WinningSet & w_ab,
    const WinningSet & w_ba, std::size_t cap = default_strategy_cap)
{
    auto s = enumerate_strategies(ta, tb, w_ab, cap);
    auto t = enumerate_strategies(tb, ta, w_ba, cap);
    ThetaResult r;
    r.strategies_ab = s.size();
    r.strategies_ba = t.size();
    std::vector<TreeMap> f = s;
    while (true) {
        ++r.iterations;
        auto g = detail::inverse_closure(f, ta.size(), t, tb.size());
        auto next = detail::inverse_closure(g, tb.size(), s, ta.size());
        // Theta is monotone and Theta(S) is inside S, so the sequence descends.
        if (next.size() == f.size()) {
            r.fixpoint = std::move(next);
            r.partner = std::move(g);
            break;
        }
        f = std::move(next);
    }
    return r;
}

/// Checks that (F, G) is a locally invertible pair by direct evaluation.
inline bool is_locally_invertible(const std::vector<TreeMap> & fs, const std::vector<TreeMap> & gs, std::size_t na,
    std::size_t nb)
{
    for (auto & f : fs)
        for (std::size_t s = 0; s < na; ++s) {
            bool found = false;
            for (auto & g : gs)
                if (g[f[s]] == s) {
                    found = true;
                    break;
                }
            if (! found)
                return false;
        }
    for (auto & g : gs)
        for (std::size_t t = 0; t < nb; ++t) {
            bool found = false;
            for (auto & f : fs)
                if (f[g[t]] == t) {
                    found = true;
                    break;
                }
            if (! found)
                return false;
        }
    return fs.empty() == gs.empty();
}

} // namespace gamecomonad
