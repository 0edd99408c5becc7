#pragma once

#include <gamecomonad/structure.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace gamecomonad {

/// The play tree of C_k A: node 0 is the root, children are the one-move
/// extensions of a play. For the EF comonad the root is a virtual node (the
/// empty play); for the modal comonad it is the distinguished play [a].
///
/// Each node records the move that created it: the element played and, for
/// labelled moves (modal transitions), the symbol index of the label.
struct PlayTree {
    static constexpr std::size_t no_parent = static_cast<std::size_t>(-1);
    static constexpr int no_label = -1;

    struct Node {
        std::size_t parent = no_parent;
        std::size_t depth = 0;
        int label = no_label;
        Elem elem = 0;
        std::vector<std::size_t> children;
    };

    std::vector<Node> nodes;
    std::vector<std::string> names;
    bool virtual_root = true;

    std::size_t size() const noexcept { return nodes.size(); }
    const Node & operator[](std::size_t i) const { return nodes[i]; }

    std::size_t add(std::size_t parent, int label, Elem elem, std::string name)
    {
        Node n;
        n.parent = parent;
        n.depth = parent == no_parent ? 0 : nodes[parent].depth + 1;
        n.label = label;
        n.elem = elem;
        nodes.push_back(n);
        names.push_back(std::move(name));
        if (parent != no_parent)
            nodes[parent].children.push_back(nodes.size() - 1);
        return nodes.size() - 1;
    }

    /// Elements along the branch from the root to `node`, excluding a virtual root.
    std::vector<Elem> branch(std::size_t node) const
    {
        std::vector<Elem> result(nodes[node].depth + (virtual_root ? 0 : 1));
        for (std::size_t i = result.size(); i-- > 0; node = nodes[node].parent)
            result[i] = nodes[node].elem;
        return result;
    }

    /// Labels along the branch, one per move (root excluded).
    std::vector<int> labels(std::size_t node) const
    {
        std::vector<int> result(nodes[node].depth);
        for (std::size_t i = result.size(); i-- > 0; node = nodes[node].parent)
            result[i] = nodes[node].label;
        return result;
    }

    std::optional<std::size_t> find(const std::string & name) const
    {
        if (index_.size() != names.size()) {
            index_.clear();
            for (std::size_t i = 0; i < names.size(); ++i)
                index_.emplace(names[i], i);
        }
        auto it = index_.find(name);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    /// First child of `node` with the given label and element.
    std::optional<std::size_t> child(std::size_t node, int label, Elem elem) const
    {
        for (auto c : nodes[node].children)
            if (nodes[c].label == label && nodes[c].elem == elem)
                return c;
        return std::nullopt;
    }

private:
    mutable std::unordered_map<std::string, std::size_t> index_;
};

/// How two aligned element sequences must relate.
enum class BranchRelation {
    hom,      ///< equalities and relations are preserved left to right
    iso,      ///< equalities and relations are preserved and reflected
    relations ///< relations are preserved and reflected; equality is not consulted
};

/// Checks the index-wise condition between two equal-length sequences: for
/// every symbol R of arity m and every index tuple i_1..i_m,
/// R(as[i]) implies (or, for iso, is equivalent to) R(bs[i]); likewise for
/// equality of positions. With `only_last`, only index tuples that mention
/// the last position are checked.
inline bool branch_consistent(const Structure & a, const std::vector<Elem> & as, const Structure & b,
    const std::vector<Elem> & bs, BranchRelation mode, bool only_last = false)
{
    const std::size_t d = as.size();
    if (d != bs.size())
        return false;
    if (d == 0)
        return true;
    const bool iso = mode != BranchRelation::hom;
    for (std::size_t i = only_last ? d - 1 : 0; mode != BranchRelation::relations && i < d; ++i)
        for (std::size_t j = 0; j < (only_last ? d : i + 1); ++j) {
            bool ea = as[i] == as[j], eb = bs[i] == bs[j];
            if (ea && ! eb)
                return false;
            if (iso && eb && ! ea)
                return false;
        }

    Tuple ta, tb;
    std::vector<std::size_t> idx;
    for (std::size_t s = 0; s < a.vocabulary().size(); ++s) {
        const std::size_t m = a.vocabulary()[s].arity;
        idx.assign(m, 0);
        ta.assign(m, 0);
        tb.assign(m, 0);
        while (true) {
            bool mentions_last = ! only_last;
            for (std::size_t p = 0; p < m; ++p) {
                ta[p] = as[idx[p]];
                tb[p] = bs[idx[p]];
                mentions_last = mentions_last || idx[p] == d - 1;
            }
            if (mentions_last) {
                bool ra = a.holds(s, ta), rb = b.holds(s, tb);
                if (ra && ! rb)
                    return false;
                if (iso && rb && ! ra)
                    return false;
            }
            std::size_t p = 0;
            while (p < m && ++idx[p] == d)
                idx[p++] = 0;
            if (p == m)
                break;
        }
    }
    return true;
}

} // namespace gamecomonad
