#pragma once

#include <optional>
#include <vector>

#include "twistoid/torus.hpp"

namespace twistoid {

/// Open circular arc with rational endpoints: the set
/// { start + t mod 1 : 0 < t < length }, or the whole circle when full.
/// Arcs are nonempty by construction.
struct Arc {
    bool full = false;
    Rational start;  // in [0,1); unused when full
    Rational length; // in (0,1); unused when full

    static Arc whole() { return Arc{true, Rational(0), Rational(1)}; }
    static Arc open(const Rational& from, const Rational& to);

    bool contains(const Rational& x) const;
    Arc translated(const Rational& shift) const;

    /// End of the arc as start + length (may exceed 1, meaning wrap).
    Rational end() const { return start + length; }

    bool operator==(const Arc& o) const = default;
};

/// Intersection of two arcs on the circle: zero, one, or two arcs.
std::vector<Arc> arc_intersect(const Arc& a, const Arc& b);

/// Product of per-dimension arcs, an open box on the torus.
struct ArcProduct {
    std::vector<Arc> arcs;

    std::size_t dim() const { return arcs.size(); }
    bool contains(const TorusPoint& p) const;
    ArcProduct translated(const std::vector<Rational>& shift) const;

    bool operator==(const ArcProduct& o) const = default;
};

/// Finite union of arc-products. Empty vector is the empty set.
struct Region {
    std::vector<ArcProduct> pieces;

    static Region whole(std::size_t dim);
    static Region empty() { return Region{}; }

    bool is_empty_representation() const { return pieces.empty(); }
    std::size_t dim() const { return pieces.empty() ? 0 : pieces.front().dim(); }
    bool contains(const TorusPoint& p) const;
    Region translated(const std::vector<Rational>& shift) const;

    bool operator==(const Region& o) const = default;
};

Region region_intersect(const Region& a, const Region& b);
Region region_union(Region a, const Region& b);

/// One-dimensional pieces of the circle induced by a set of cut points:
/// the cut points themselves plus a representative inside each open gap.
/// Membership in any arc with endpoints among the cuts is constant on each
/// open gap, so these representatives decide set predicates exactly.
std::vector<Rational> circle_cell_representatives(std::vector<Rational> cuts);

/// All cut points of a region along one dimension.
std::vector<Rational> region_cuts(const Region& r, std::size_t dim_index);

/// Exact emptiness / containment via cell decomposition over the union of
/// both regions' endpoint cuts.
bool region_is_empty(const Region& r);
bool region_contains_region(const Region& outer, const Region& inner);

} // namespace twistoid
