#pragma once

#include <gamecomonad/game.hpp>
#include <gamecomonad/play_tree.hpp>
#include <gamecomonad/theta.hpp>

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

namespace gamecomonad {

struct TreeIsoResult {
    bool holds = false;
    /// f* as a node map A -> B and g* = (f*)^-1 as a node map B -> A.
    TreeMap forward, backward;
};

/// Searches for mutually inverse coextensions f*, g*: a label-preserving
/// bijection of the play trees under which every matched pair of nodes
/// satisfies `local` (the homomorphism condition of f and g at that node).
///
/// Subtrees are independent once their roots are matched, so the search is a
/// memoized perfect-matching problem on the children of each matched pair.
/// Ties are broken towards the lowest-numbered child.
class TreeIsoSearch {
public:
    TreeIsoSearch(const PlayTree & ta, const PlayTree & tb, std::function<bool(std::size_t, std::size_t)> local,
        std::size_t cap) :
        ta_(ta), tb_(tb), local_(std::move(local)), cap_(cap)
    {
    }

    TreeIsoResult run()
    {
        TreeIsoResult r;
        r.holds = matches(0, 0);
        if (r.holds) {
            r.forward.assign(ta_.size(), 0);
            r.backward.assign(tb_.size(), 0);
            build(0, 0, r);
        }
        return r;
    }

private:
    bool matches(std::size_t s, std::size_t t)
    {
        auto key = (static_cast<std::uint64_t>(s) << 32) | t;
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        if (memo_.size() >= cap_)
            throw CapExceeded("iso search budget of " + std::to_string(cap_) + " positions exceeded");
        bool result = local_(s, t) && ! matching(s, t).empty();
        memo_.emplace(key, result);
        return result;
    }

    /// Perfect label-preserving matching of children by Kuhn's augmenting
    /// paths; returns match[i] = index into tb children for ta child i, or an
    /// empty vector when none exists. Leaves yield a single sentinel entry.
    std::vector<std::size_t> matching(std::size_t s, std::size_t t)
    {
        auto & cs = ta_[s].children;
        auto & ct = tb_[t].children;
        if (cs.size() != ct.size())
            return {};
        if (cs.empty())
            return {static_cast<std::size_t>(-1)};
        std::vector<std::vector<std::size_t>> adj(cs.size());
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = 0; j < ct.size(); ++j)
                if (ta_[cs[i]].label == tb_[ct[j]].label && matches(cs[i], ct[j]))
                    adj[i].push_back(j);
        std::vector<std::size_t> owner(ct.size(), none);
        for (std::size_t i = 0; i < cs.size(); ++i) {
            std::vector<char> seen(ct.size(), 0);
            if (! augment(i, adj, owner, seen))
                return {};
        }
        std::vector<std::size_t> match(cs.size());
        for (std::size_t j = 0; j < ct.size(); ++j)
            match[owner[j]] = j;
        return match;
    }

    static bool augment(std::size_t i, const std::vector<std::vector<std::size_t>> & adj, std::vector<std::size_t> & owner,
        std::vector<char> & seen)
    {
        for (auto j : adj[i]) {
            if (seen[j])
                continue;
            seen[j] = 1;
            if (owner[j] == none || augment(owner[j], adj, owner, seen)) {
                owner[j] = i;
                return true;
            }
        }
        return false;
    }

    void build(std::size_t s, std::size_t t, TreeIsoResult & r)
    {
        r.forward[s] = t;
        r.backward[t] = s;
        auto & cs = ta_[s].children;
        if (cs.empty())
            return;
        auto match = matching(s, t);
        for (std::size_t i = 0; i < cs.size(); ++i)
            build(cs[i], tb_[t].children[match[i]], r);
    }

    static constexpr std::size_t none = static_cast<std::size_t>(-1);

    const PlayTree & ta_;
    const PlayTree & tb_;
    std::function<bool(std::size_t, std::size_t)> local_;
    std::size_t cap_;
    std::unordered_map<std::uint64_t, bool> memo_;
};

/// Checks that two node maps are label-preserving tree morphisms that are
/// mutually inverse, i.e. g* f* = id and f* g* = id.
inline bool mutually_inverse(const PlayTree & ta, const PlayTree & tb, const TreeMap & f, const TreeMap & g)
{
    if (f.size() != ta.size() || g.size() != tb.size())
        return false;
    for (std::size_t s = 0; s < ta.size(); ++s)
        if (f[s] >= tb.size() || g[f[s]] != s)
            return false;
    for (std::size_t t = 0; t < tb.size(); ++t)
        if (g[t] >= ta.size() || f[g[t]] != t)
            return false;
    return true;
}

} // namespace gamecomonad
