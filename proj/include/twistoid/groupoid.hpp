#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "twistoid/bundle.hpp"

namespace twistoid {

/// Arrow (x, n) of the transformation groupoid X x| Z: range x, source
/// alpha^n(x).
struct GammaElement {
    TorusPoint x;
    std::int64_t n = 0;

    bool operator==(const GammaElement& o) const = default;
    auto operator<=>(const GammaElement& o) const = default;
};

GammaElement gamma_compose(const AffineTorusMap& alpha, const GammaElement& a,
                           const GammaElement& b);
GammaElement gamma_inverse(const AffineTorusMap& alpha, const GammaElement& a);

/// Element of the twist groupoid: a canonical bundle point together with its
/// generating context. Equality is structural; composition results are
/// always canonicalized, so equal classes compare equal.
class LambdaElement {
  public:
    LambdaElement(std::shared_ptr<const BundleContext> ctx, BundlePoint p);

    /// Builds and canonicalizes in one step.
    static LambdaElement make(std::shared_ptr<const BundleContext> ctx, GroupValue g,
                              TorusPoint x, RefinedIndex index, std::int64_t level);

    /// The canonical point at x with group value 1_G at the given level.
    static LambdaElement unit_rep(std::shared_ptr<const BundleContext> ctx, TorusPoint x,
                                  std::int64_t level);

    const BundlePoint& point() const { return point_; }
    const std::shared_ptr<const BundleContext>& context() const { return ctx_; }
    std::int64_t level() const { return point_.level; }
    const GroupValue& g() const { return point_.g; }
    const TorusPoint& base() const { return point_.x; }
    const RefinedIndex& index() const { return point_.index; }

    bool operator==(const LambdaElement& o) const { return point_ == o.point_; }
    auto operator<=>(const LambdaElement& o) const { return point_ <=> o.point_; }

  private:
    std::shared_ptr<const BundleContext> ctx_;
    BundlePoint point_;
};

/// Unit-space projections of an arrow.
TorusPoint range(const LambdaElement& e);
TorusPoint source(const LambdaElement& e);

/// The groupoid product on raw representatives, without canonicalizing the
/// result. Dispatches on the sign/magnitude pattern of the levels: unit
/// levels first, matching signs by concatenation, exact cancellation, then
/// the four mixed-sign splittings. Throws NotComposable when the base points
/// do not match up.
BundlePoint compose_points(const BundleContext& ctx, const BundlePoint& a, const BundlePoint& b);

/// The groupoid product; the result is canonical.
LambdaElement compose(const LambdaElement& a, const LambdaElement& b);

LambdaElement inverse(const LambdaElement& e);

/// The unit-space-preserving projection onto the transformation groupoid.
GammaElement project(const LambdaElement& e);

/// Embedding of unit-space circle pairs: iota(x, z) at level 0.
LambdaElement iota(std::shared_ptr<const BundleContext> ctx, const TorusPoint& x,
                   const GroupValue& z);

/// Central action of the structure group on arrows.
LambdaElement circle_act(const GroupValue& z, const LambdaElement& e);

/// Seeded sampling utilities shared by the verification suites.
class LatticeSampler {
  public:
    LatticeSampler(std::shared_ptr<const BundleContext> ctx, std::int64_t refinement_factor,
                   std::uint64_t seed);

    TorusPoint point(std::mt19937_64& rng) const;
    GroupValue group_value(std::mt19937_64& rng) const;
    /// A canonical arrow at a random point with a random group value.
    LambdaElement arrow(std::mt19937_64& rng, std::int64_t level) const;
    /// An arbitrary (possibly non-canonical) representative of the same
    /// class as e: the index is re-drawn among all valid ones and the group
    /// value transported accordingly.
    BundlePoint jitter(std::mt19937_64& rng, const LambdaElement& e) const;

    std::int64_t lattice_denominator() const { return denominator_; }

  private:
    std::shared_ptr<const BundleContext> ctx_;
    std::int64_t denominator_;
};

struct TwistAxiomsReport {
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t injectivity_checked = 0;
    std::size_t surjectivity_checked = 0;
    std::size_t fiber_checked = 0;
    std::size_t centrality_checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Randomized verification of the twist axioms: injectivity of iota and
/// freeness of the action, surjectivity of the projection onto sampled
/// arrows, the fiber condition, and centrality of the circle action.
TwistAxiomsReport twist_axioms_report(std::shared_ptr<const BundleContext> ctx,
                                      std::size_t samples, std::uint64_t seed,
                                      std::int64_t level_bound = 3,
                                      std::int64_t refinement_factor = 8);

} // namespace twistoid
