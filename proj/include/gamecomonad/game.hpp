#pragma once

#include <gamecomonad/play_tree.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gamecomonad {

/// A set of winning positions W_{A,B} over a pair of play trees.
///
/// `prefix_closed` declares that no extension of a position outside W is in
/// W; the solver then prunes such positions as soon as they arise. Built-in
/// sets are prefix-closed; table-backed sets are not assumed to be.
struct WinningSet {
    std::string name;
    bool prefix_closed = false;
    std::function<bool(std::size_t, std::size_t)> contains;

    static WinningSet from_table(std::set<std::pair<std::size_t, std::size_t>> table)
    {
        return WinningSet{"table", false, [t = std::move(table)](std::size_t s, std::size_t u) { return t.count({s, u}) != 0; }};
    }
};

/// Positions whose two branches define a partial isomorphism (or, with
/// BranchRelation::hom, a partial homomorphism).
inline WinningSet branch_winning_set(const Structure & a, const PlayTree & ta, const Structure & b, const PlayTree & tb,
    BranchRelation mode)
{
    return WinningSet{mode == BranchRelation::iso ? "partial-iso" : "partial-hom", true,
        [&a, &ta, &b, &tb, mode](std::size_t s, std::size_t t) {
            return branch_consistent(a, ta.branch(s), b, tb.branch(t), mode);
        }};
}

enum class Side { a, b };

inline char side_char(Side s) { return s == Side::a ? 'A' : 'B'; }

/// Spoiler may play in A only (existential games) or in either structure.
enum class SpoilerMoves { a_only, both };

/// Duplicator answers Spoiler's `move` (a child of s on side A, or of t on
/// side B) at position (s, t) with `response` on the other side.
struct Reply {
    std::size_t s, t;
    Side side;
    std::size_t move, response;
};

/// Spoiler's choice at position (s, t).
struct Spoil {
    std::size_t s, t;
    Side side;
    std::size_t move;
};

struct GameResult {
    bool duplicator_wins = false;
    std::vector<Reply> duplicator;
    std::vector<Spoil> spoiler;
};

namespace detail {
    class TreeGameSolver {
    public:
        TreeGameSolver(const PlayTree & ta, const PlayTree & tb, const WinningSet & w, SpoilerMoves moves, std::size_t cap) :
            ta_(ta), tb_(tb), w_(w), moves_(moves), cap_(cap)
        {
        }

        bool wins(std::size_t s, std::size_t t)
        {
            auto k = key(s, t);
            if (auto it = memo_.find(k); it != memo_.end())
                return it->second;
            if (memo_.size() >= cap_)
                throw CapExceeded("game position budget of " + std::to_string(cap_) + " exceeded");
            bool result = compute(s, t);
            memo_.emplace(k, result);
            return result;
        }

        std::optional<std::size_t> response(std::size_t s, std::size_t t, Side side, std::size_t move)
        {
            auto & own = side == Side::a ? ta_ : tb_;
            auto & other = side == Side::a ? tb_ : ta_;
            std::size_t from = side == Side::a ? t : s;
            for (auto r : other[from].children) {
                if (other[r].label != own[move].label)
                    continue;
                bool ok = side == Side::a ? wins(move, r) : wins(r, move);
                if (ok)
                    return r;
            }
            return std::nullopt;
        }

        bool has_moves(std::size_t s, std::size_t t) const
        {
            return ! ta_[s].children.empty() || (moves_ == SpoilerMoves::both && ! tb_[t].children.empty());
        }

        template <typename F>
        void for_each_move(std::size_t s, std::size_t t, F && f) const
        {
            for (auto c : ta_[s].children)
                if (! f(Side::a, c))
                    return;
            if (moves_ == SpoilerMoves::both)
                for (auto c : tb_[t].children)
                    if (! f(Side::b, c))
                        return;
        }

        void collect_duplicator(std::size_t s, std::size_t t, std::vector<Reply> & out)
        {
            if (! visited_.insert(key(s, t)).second)
                return;
            for_each_move(s, t, [&](Side side, std::size_t m) {
                auto r = *response(s, t, side, m);
                out.push_back(Reply{s, t, side, m, r});
                if (side == Side::a)
                    collect_duplicator(m, r, out);
                else
                    collect_duplicator(r, m, out);
                return true;
            });
        }

        void collect_spoiler(std::size_t s, std::size_t t, std::vector<Spoil> & out)
        {
            if (! visited_.insert(key(s, t)).second)
                return;
            if (w_.prefix_closed && ! w_.contains(s, t))
                return;
            if (! has_moves(s, t))
                return;
            std::optional<std::pair<Side, std::size_t>> choice;
            for_each_move(s, t, [&](Side side, std::size_t m) {
                if (! response(s, t, side, m)) {
                    choice.emplace(side, m);
                    return false;
                }
                return true;
            });
            out.push_back(Spoil{s, t, choice->first, choice->second});
            auto & own = choice->first == Side::a ? ta_ : tb_;
            auto & other = choice->first == Side::a ? tb_ : ta_;
            std::size_t from = choice->first == Side::a ? t : s;
            for (auto r : other[from].children) {
                if (other[r].label != own[choice->second].label)
                    continue;
                if (choice->first == Side::a)
                    collect_spoiler(choice->second, r, out);
                else
                    collect_spoiler(r, choice->second, out);
            }
        }

    private:
        static std::uint64_t key(std::size_t s, std::size_t t) { return (static_cast<std::uint64_t>(s) << 32) | t; }

        bool compute(std::size_t s, std::size_t t)
        {
            if (w_.prefix_closed && ! w_.contains(s, t))
                return false;
            if (! has_moves(s, t))
                return w_.contains(s, t);
            bool all = true;
            for_each_move(s, t, [&](Side side, std::size_t m) {
                all = response(s, t, side, m).has_value();
                return all;
            });
            return all;
        }

        const PlayTree & ta_;
        const PlayTree & tb_;
        const WinningSet & w_;
        SpoilerMoves moves_;
        std::size_t cap_;
        std::unordered_map<std::uint64_t, bool> memo_;
        std::set<std::uint64_t> visited_;
    };
} // namespace detail

constexpr std::size_t default_position_cap = 20'000'000;

/// Solves the game on two play trees by backward induction from the roots.
///
/// Each round Spoiler extends one side by a move and Duplicator extends the
/// other by a move with the same label. When Spoiler has no move left the
/// game ends and Duplicator wins iff the position is in W. Duplicator loses
/// as soon as it cannot answer. The returned strategy is the first winning
/// choice in child order, for whichever player wins.
inline GameResult solve_tree_game(const PlayTree & ta, const PlayTree & tb, const WinningSet & w, SpoilerMoves moves,
    std::size_t position_cap = default_position_cap)
{
    detail::TreeGameSolver solver(ta, tb, w, moves, position_cap);
    GameResult result;
    result.duplicator_wins = solver.wins(0, 0);
    if (result.duplicator_wins)
        solver.collect_duplicator(0, 0, result.duplicator);
    else
        solver.collect_spoiler(0, 0, result.spoiler);
    return result;
}

/// Audits a Duplicator strategy by replaying every Spoiler choice against it.
/// Returns an empty string on success, else a description of the first defect.
inline std::string audit_duplicator(const PlayTree & ta, const PlayTree & tb, const WinningSet & w, SpoilerMoves moves,
    const std::vector<Reply> & replies)
{
    std::map<std::tuple<std::size_t, std::size_t, int, std::size_t>, std::size_t> table;
    for (auto & r : replies)
        table[{r.s, r.t, static_cast<int>(r.side), r.move}] = r.response;

    std::function<std::string(std::size_t, std::size_t)> visit = [&](std::size_t s, std::size_t t) -> std::string {
        bool any = ! ta[s].children.empty() || (moves == SpoilerMoves::both && ! tb[t].children.empty());
        if (! any)
            return w.contains(s, t) ? "" : "terminal position " + ta.names[s] + " " + tb.names[t] + " not winning";
        for (int side = 0; side < (moves == SpoilerMoves::both ? 2 : 1); ++side) {
            auto & own = side == 0 ? ta : tb;
            auto & other = side == 0 ? tb : ta;
            std::size_t from = side == 0 ? s : t;
            std::size_t other_from = side == 0 ? t : s;
            for (auto m : own[from].children) {
                auto it = table.find({s, t, side, m});
                if (it == table.end())
                    return "no reply at " + ta.names[s] + " " + tb.names[t] + " to " + own.names[m];
                auto r = it->second;
                if (r >= other.size() || other[r].parent != other_from || other[r].label != own[m].label)
                    return "illegal reply " + (r < other.size() ? other.names[r] : std::to_string(r)) + " to " +
                        own.names[m];
                auto sub = side == 0 ? visit(m, r) : visit(r, m);
                if (! sub.empty())
                    return sub;
            }
        }
        return "";
    };
    return visit(0, 0);
}

/// Audits a Spoiler strategy against every Duplicator answer.
inline std::string audit_spoiler(const PlayTree & ta, const PlayTree & tb, const WinningSet & w, SpoilerMoves moves,
    const std::vector<Spoil> & spoils)
{
    std::map<std::pair<std::size_t, std::size_t>, std::pair<Side, std::size_t>> table;
    for (auto & sp : spoils)
        table[{sp.s, sp.t}] = {sp.side, sp.move};

    std::function<std::string(std::size_t, std::size_t)> visit = [&](std::size_t s, std::size_t t) -> std::string {
        if (w.prefix_closed && ! w.contains(s, t))
            return "";
        bool any = ! ta[s].children.empty() || (moves == SpoilerMoves::both && ! tb[t].children.empty());
        if (! any)
            return w.contains(s, t) ? "Duplicator reaches winning terminal " + ta.names[s] + " " + tb.names[t] : "";
        auto it = table.find({s, t});
        if (it == table.end())
            return "no Spoiler move at " + ta.names[s] + " " + tb.names[t];
        auto [side, m] = it->second;
        if (side == Side::b && moves == SpoilerMoves::a_only)
            return "Spoiler may not play in B";
        auto & own = side == Side::a ? ta : tb;
        auto & other = side == Side::a ? tb : ta;
        std::size_t from = side == Side::a ? s : t;
        std::size_t other_from = side == Side::a ? t : s;
        if (m >= own.size() || own[m].parent != from)
            return "illegal Spoiler move at " + ta.names[s] + " " + tb.names[t];
        for (auto r : other[other_from].children) {
            if (other[r].label != own[m].label)
                continue;
            auto sub = side == Side::a ? visit(m, r) : visit(r, m);
            if (! sub.empty())
                return sub;
        }
        return "";
    };
    return visit(0, 0);
}

} // namespace gamecomonad
