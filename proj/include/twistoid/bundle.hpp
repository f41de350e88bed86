#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistoid/cover.hpp"

namespace twistoid {

/// Symbolic phase, linear in the torus coordinates:
///   phi(x, y) = a0 + a1*x + a2*y,
/// standing for the circle value e(phi(x,y)). The coordinate coefficients are
/// integers so that e(phi) is single-valued on regions wrapping a circle
/// direction; the winding of the phase along an axis is the coefficient.
struct AffinePhase {
    Rational a0;
    std::int64_t a1 = 0;
    std::int64_t a2 = 0;

    Rational eval(const TorusPoint& p) const {
        return a0 + p.coords.at(0) * a1 + p.coords.at(1) * a2;
    }
    AffinePhase negated() const { return {-a0, -a1, -a2}; }
    AffinePhase plus(const AffinePhase& o) const { return {a0 + o.a0, a1 + o.a1, a2 + o.a2}; }

    bool operator==(const AffinePhase& o) const = default;
};

/// One piece of a piecewise transition function.
struct TransitionPiece {
    Region region;
    AffinePhase phase;

    bool operator==(const TransitionPiece& o) const = default;
};

/// Transition data for a principal G-bundle over the 2-torus: a cover plus,
/// for each ordered chart pair, a piecewise affine phase on the overlap.
/// group_modulus == 0 is the circle; m > 0 is the cyclic group Z_m, for which
/// pieces must be constant with values in (1/m)Z.
struct TransitionFamily {
    Cover cover;
    std::int64_t group_modulus = 0;
    std::map<std::pair<int, int>, std::vector<TransitionPiece>> transitions;

    /// c_{i,j}(x). Identity when i == j; falls back to the inverse of the
    /// (j,i) entry when only that direction is stored. Throws DomainError
    /// when x lies in no stored piece.
    GroupValue evaluate(int i, int j, const TorusPoint& x) const;

    GroupValue identity() const { return GroupValue{group_modulus, Phase()}; }

    /// Every transition value of the trivial bundle is 1_G.
    static TransitionFamily trivial(Cover cover, std::int64_t group_modulus = 0);
};

struct CocycleReport {
    std::size_t points_checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Checks conditions (a) c_{i,i} = 1, (b) c_{i,j} = c_{j,i}^{-1} and
/// (c) c_{i,j} c_{j,k} = c_{i,k} at every point of the denominator-`q`
/// lattice lying in the relevant overlaps.
CocycleReport cocycle_check(const TransitionFamily& family, std::int64_t q);

/// Bundle-with-dynamics context: all refined covers and transition powers
/// are generated from this pair.
struct BundleContext {
    TransitionFamily base;
    AffineTorusMap alpha;

    GroupValue identity() const { return base.identity(); }
};

/// Index vector in J^{|n|}; sign distinguishes the positive-level charts
/// U_vec from the negative-level charts W_vec. Lexicographically ordered.
struct RefinedIndex {
    std::vector<int> vec;
    int sign = +1;

    std::size_t length() const { return vec.size(); }
    bool operator==(const RefinedIndex& o) const { return vec == o.vec && sign == o.sign; }
    auto operator<=>(const RefinedIndex& o) const = default;
};

/// sigma: reverse the order of the indices. An involution.
RefinedIndex flip(const RefinedIndex& idx);

/// Point of the disjoint-union total space before quotienting: group value,
/// base point, refined chart index and level. Level 0 uses the unit index
/// (empty vector), displayed as 1.
struct BundlePoint {
    GroupValue g;
    TorusPoint x;
    RefinedIndex index; // empty vec at level 0
    std::int64_t level = 0;

    bool operator==(const BundlePoint& o) const = default;
    std::strong_ordering operator<=>(const BundlePoint& o) const {
        if (auto c = level <=> o.level; c != 0) return c;
        if (auto c = x <=> o.x; c != 0) return c;
        if (auto c = index <=> o.index; c != 0) return c;
        return g <=> o.g;
    }
};

/// Exact region of the refined chart U_vec (n > 0) or W_vec (n < 0).
Region refined_chart(const BundleContext& ctx, std::int64_t n, const RefinedIndex& idx);

/// Pointwise membership x in U_vec / W_vec, without building the region.
bool refined_chart_contains(const BundleContext& ctx, std::int64_t n,
                            const RefinedIndex& idx, const TorusPoint& x);

/// Lexicographically least index vector whose refined chart contains x.
RefinedIndex canonical_index(const BundleContext& ctx, std::int64_t n, const TorusPoint& x);

/// The derived transition c^{(n)}_{vec_i, vec_j}(x). For n < 0 the closed
/// form with inverted base values and the composition of first-level inverse
/// transitions are both evaluated and cross-checked.
GroupValue transition_power(const BundleContext& ctx, std::int64_t n,
                            const RefinedIndex& i, const RefinedIndex& j,
                            const TorusPoint& x);

/// Both displayed flip identities at x:
///   c^{(n)}_{i,j}(x) == c^{(-n)}_{flip(j), flip(i)}(alpha^n(x))
/// and the same with n replaced by -n at the transported point.
bool flip_identity_check(const BundleContext& ctx, std::int64_t n,
                         const RefinedIndex& i, const RefinedIndex& j,
                         const TorusPoint& x);

/// Canonical representative of the equivalence class of p: least valid
/// index, group value transported by the transition power. Idempotent.
BundlePoint canonicalize(const BundleContext& ctx, const BundlePoint& p);

bool points_equivalent(const BundleContext& ctx, const BundlePoint& p, const BundlePoint& q);

/// Pointwise tensor of two transition families over the same cover: phases
/// add piecewise on intersected regions.
TransitionFamily tensor_transitions(const TransitionFamily& a, const TransitionFamily& b);

std::string transition_family_to_json(const TransitionFamily& f);
TransitionFamily transition_family_from_json(const std::string& text);

} // namespace twistoid
