#pragma once

#include <gamecomonad/structure.hpp>

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace gamecomonad {

/// A total map between universes, indexed by source element.
using ElemMap = std::vector<Elem>;

/// Finite set of (source, target) pairs; functionality is not assumed.
using PartialMap = std::vector<std::pair<Elem, Elem>>;

inline bool points_compatible(std::span<const Elem> f, const Structure & a, const Structure & b)
{
    if (a.point() && b.point())
        return f[*a.point()] == *b.point();
    return true;
}

/// True iff `f` preserves every tuple of every symbol (and the point, when
/// both structures are pointed).
inline bool check_hom(std::span<const Elem> f, const Structure & a, const Structure & b)
{
    require_same_vocabulary(a, b);
    if (f.size() != a.size())
        throw InvalidArgument("mapping is not total on the source universe");
    for (auto v : f)
        if (v >= b.size())
            throw InvalidArgument("mapping value outside target universe");
    if (! points_compatible(f, a, b))
        return false;
    Tuple image;
    for (std::size_t s = 0; s < a.vocabulary().size(); ++s)
        for (auto & t : a.tuples(s)) {
            image.clear();
            for (auto e : t)
                image.push_back(f[e]);
            if (! b.holds(s, image))
                return false;
        }
    return true;
}

struct HomSearchOptions {
    bool injective = false;
};

namespace detail {
    /// Backtracking homomorphism search over source elements in universe order,
    /// values in target order, with forward pruning on tuples that have a
    /// single unassigned position left.
    class HomSearcher {
    public:
        HomSearcher(const Structure & a, const Structure & b, HomSearchOptions opts) :
            a_(a), b_(b), opts_(opts), domain_(a.size(), std::vector<char>(b.size(), 1)), assignment_(a.size(), unassigned)
        {
            incident_.resize(a.size());
            for (std::size_t s = 0; s < a.vocabulary().size(); ++s)
                for (std::size_t i = 0; i < a.tuples(s).size(); ++i) {
                    auto & t = a.tuples(s)[i];
                    for (std::size_t j = 0; j < t.size(); ++j)
                        if (std::find(t.begin(), t.begin() + j, t[j]) == t.begin() + j)
                            incident_[t[j]].push_back({s, i});
                }
        }

        std::optional<ElemMap> run()
        {
            if (a_.point() && b_.point())
                for (Elem v = 0; v < b_.size(); ++v)
                    if (v != *b_.point())
                        domain_[*a_.point()][v] = 0;
            // Tuples over a single variable constrain it immediately.
            for (Elem x = 0; x < a_.size(); ++x)
                for (auto [s, i] : incident_[x]) {
                    auto & t = a_.tuples(s)[i];
                    if (std::all_of(t.begin(), t.end(), [&](Elem e) { return e == x; }))
                        for (Elem v = 0; v < b_.size(); ++v)
                            if (domain_[x][v] && ! b_.holds(s, Tuple(t.size(), v)))
                                domain_[x][v] = 0;
                }
            if (! search(0))
                return std::nullopt;
            return assignment_;
        }

    private:
        static constexpr Elem unassigned = static_cast<Elem>(-1);

        struct Incidence {
            std::size_t symbol;
            std::size_t tuple;
        };

        bool search(Elem x)
        {
            if (x == a_.size())
                return true;
            for (Elem v = 0; v < b_.size(); ++v) {
                if (! domain_[x][v])
                    continue;
                if (opts_.injective && used(v))
                    continue;
                assignment_[x] = v;
                std::size_t mark = trail_.size();
                if (consistent_and_prune(x) && search(x + 1))
                    return true;
                undo(mark);
                assignment_[x] = unassigned;
            }
            return false;
        }

        bool used(Elem v) const
        {
            for (auto w : assignment_)
                if (w == v)
                    return true;
            return false;
        }

        bool consistent_and_prune(Elem x)
        {
            Tuple image;
            for (auto [s, i] : incident_[x]) {
                auto & t = a_.tuples(s)[i];
                std::optional<Elem> open;
                bool several_open = false;
                for (auto e : t)
                    if (assignment_[e] == unassigned) {
                        if (open && *open != e)
                            several_open = true;
                        open = e;
                    }
                if (! open) {
                    image.clear();
                    for (auto e : t)
                        image.push_back(assignment_[e]);
                    if (! b_.holds(s, image))
                        return false;
                }
                else if (! several_open) {
                    bool any = false;
                    for (Elem v = 0; v < b_.size(); ++v) {
                        if (! domain_[*open][v])
                            continue;
                        image.clear();
                        for (auto e : t)
                            image.push_back(e == *open ? v : assignment_[e]);
                        if (b_.holds(s, image))
                            any = true;
                        else {
                            domain_[*open][v] = 0;
                            trail_.emplace_back(*open, v);
                        }
                    }
                    if (! any)
                        return false;
                }
            }
            return true;
        }

        void undo(std::size_t mark)
        {
            while (trail_.size() > mark) {
                auto [x, v] = trail_.back();
                domain_[x][v] = 1;
                trail_.pop_back();
            }
        }

        const Structure & a_;
        const Structure & b_;
        HomSearchOptions opts_;
        std::vector<std::vector<char>> domain_;
        ElemMap assignment_;
        std::vector<std::vector<Incidence>> incident_;
        std::vector<std::pair<Elem, Elem>> trail_;
    };
} // namespace detail

/// Some homomorphism A -> B if one exists; the first in the order induced by
/// backtracking over source elements and target values in declaration order.
inline std::optional<ElemMap> find_hom(const Structure & a, const Structure & b, HomSearchOptions opts = {})
{
    require_same_vocabulary(a, b);
    if (opts.injective && a.size() > b.size())
        return std::nullopt;
    return detail::HomSearcher(a, b, opts).run();
}

/// Some isomorphism A -> B if one exists.
inline std::optional<ElemMap> find_iso(const Structure & a, const Structure & b)
{
    require_same_vocabulary(a, b);
    if (a.size() != b.size() || a.point().has_value() != b.point().has_value())
        return std::nullopt;
    for (std::size_t s = 0; s < a.vocabulary().size(); ++s)
        if (a.tuples(s).size() != b.tuples(s).size())
            return std::nullopt;
    // An injective hom between equal-size structures with equal tuple counts
    // maps tuples bijectively, so it reflects relations as well.
    return find_hom(a, b, {.injective = true});
}

namespace detail {
    inline std::optional<std::vector<std::optional<Elem>>> as_function(const PartialMap & p, std::size_t source_size)
    {
        std::vector<std::optional<Elem>> f(source_size);
        for (auto [x, y] : p) {
            if (x >= source_size)
                return std::nullopt;
            if (f[x] && *f[x] != y)
                return std::nullopt;
            f[x] = y;
        }
        return f;
    }

    inline bool preserves_on_domain(const std::vector<std::optional<Elem>> & f, const Structure & a, const Structure & b)
    {
        Tuple image;
        for (std::size_t s = 0; s < a.vocabulary().size(); ++s)
            for (auto & t : a.tuples(s)) {
                image.clear();
                bool inside = true;
                for (auto e : t) {
                    if (! f[e]) {
                        inside = false;
                        break;
                    }
                    image.push_back(*f[e]);
                }
                if (inside && ! b.holds(s, image))
                    return false;
            }
        return true;
    }
} // namespace detail

/// Functional, and every source tuple inside the domain maps into B.
inline bool is_partial_hom(const PartialMap & p, const Structure & a, const Structure & b)
{
    auto f = detail::as_function(p, a.size());
    return f && detail::preserves_on_domain(*f, a, b);
}

/// Functional, injective, and preserves and reflects every relation on its domain.
inline bool is_partial_iso(const PartialMap & p, const Structure & a, const Structure & b)
{
    auto f = detail::as_function(p, a.size());
    if (! f)
        return false;
    PartialMap inverse;
    inverse.reserve(p.size());
    for (auto [x, y] : p)
        inverse.emplace_back(y, x);
    auto g = detail::as_function(inverse, b.size());
    if (! g)
        return false;
    return detail::preserves_on_domain(*f, a, b) && detail::preserves_on_domain(*g, b, a);
}

} // namespace gamecomonad
