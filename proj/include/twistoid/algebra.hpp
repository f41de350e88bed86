#pragma once

#include <map>
#include <memory>
#include <optional>

#include "twistoid/bimodule.hpp"
#include "twistoid/groupoid.hpp"

namespace twistoid {

/// Finite alpha-invariant model of the base torus: the full q x q rational
/// grid, which the dynamics permutes when its translation is grid
/// compatible.
struct OrbitGrid {
    std::int64_t q = 0;

    explicit OrbitGrid(std::int64_t q_, const AffineTorusMap& alpha) : q(q_) {
        require_grid_compatible(alpha, q);
    }

    bool contains(const TorusPoint& p) const {
        return (reduce_mod1(p[0]) * q).denominator() == 1 &&
               (reduce_mod1(p[1]) * q).denominator() == 1;
    }
};

/// Key of a circle orbit in the groupoid over the grid: the canonical
/// arrow with group value 1. Values of an equivariant function are stored
/// once per orbit at this representative.
struct OrbitKey {
    std::int64_t level = 0;
    TorusPoint x;
    RefinedIndex index;

    bool operator<(const OrbitKey& o) const {
        if (level != o.level) return level < o.level;
        if (!(x == o.x)) return x < o.x;
        return index < o.index;
    }
    bool operator==(const OrbitKey& o) const = default;
};

/// Finitely supported circle-equivariant function on the twist groupoid
/// over a finite grid: g(z.lambda) = z g(lambda), so one complex value per
/// orbit determines the function. The stored representative has group
/// value 1.
class EquivariantFunction {
  public:
    EquivariantFunction(std::shared_ptr<const BundleContext> ctx, OrbitGrid grid,
                        std::int64_t level_bound);

    const std::shared_ptr<const BundleContext>& context() const { return ctx_; }
    const OrbitGrid& grid() const { return grid_; }
    std::int64_t level_bound() const { return bound_; }
    const std::map<OrbitKey, Complex>& support() const { return support_; }

    /// Sets the value at the orbit of the canonical arrow with base x.
    void set(std::int64_t level, const TorusPoint& x, Complex value);

    /// Value at an arbitrary representative: e(g) times the stored value at
    /// its canonical orbit key. Uses the bundle transitions through
    /// canonicalization, so it is exact on any representative.
    Complex value(const BundlePoint& p) const;

    Complex value(const LambdaElement& e) const { return value(e.point()); }

    EquivariantFunction operator+(const EquivariantFunction& o) const;
    EquivariantFunction operator-(const EquivariantFunction& o) const;
    EquivariantFunction operator*(Complex z) const;

    double max_abs() const;

  private:
    friend EquivariantFunction convolve(const EquivariantFunction&, const EquivariantFunction&,
                                        std::optional<std::uint64_t>);
    friend EquivariantFunction involution(const EquivariantFunction& f);
    friend EquivariantFunction gamma_act(const Phase& z, const EquivariantFunction& f);
    friend EquivariantFunction spectral_component(const EquivariantFunction& f, std::int64_t n);

    void add_at(const BundlePoint& canonical_rep, Complex contribution);
    void prune();

    std::shared_ptr<const BundleContext> ctx_;
    OrbitGrid grid_;
    std::int64_t bound_;
    std::map<OrbitKey, Complex> support_;
};

double max_abs_diff(const EquivariantFunction& a, const EquivariantFunction& b);

/// Twisted convolution: (f*h)(lambda) = sum over factorizations
/// lambda = lambda1 lambda2, one term per circle orbit, with every phase
/// coming from the groupoid product. When jitter_seed is set, both factors
/// are re-represented at random equivalent points before composing; for a
/// consistent bundle this changes nothing.
EquivariantFunction convolve(const EquivariantFunction& f, const EquivariantFunction& h,
                             std::optional<std::uint64_t> jitter_seed = std::nullopt);

/// f*(lambda) = conj(f(lambda^{-1})).
EquivariantFunction involution(const EquivariantFunction& f);

/// Dual circle action: scales the level-p component by the phase p*z.
EquivariantFunction gamma_act(const Phase& z, const EquivariantFunction& f);

/// Restriction to a single level of the grading.
EquivariantFunction spectral_component(const EquivariantFunction& f, std::int64_t n);

/// Level-0 slice as a grid function, and back.
GridFunction level_zero_as_grid(const EquivariantFunction& f);
EquivariantFunction grid_as_level(const std::shared_ptr<const BundleContext>& ctx,
                                  const OrbitGrid& grid, std::int64_t level_bound,
                                  std::int64_t level, const GridFunction& values);

struct CrosscheckReport {
    std::int64_t c = 0;
    std::int64_t q = 0;
    std::uint64_t seed = 0;
    double max_error = 0.0;
    double identification_defect = 0.0;
    std::vector<std::pair<std::string, double>> identity_errors;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Verifies that the level-(0,1) corner of the convolution algebra carries
/// exactly the spectral-subspace bimodule operations: the two module
/// actions, and both inner products against involution-convolution, at
/// every grid node. Level-1 orbit values are identified with quasi-periodic
/// functions through the section dictionary and the spectral multiplier.
CrosscheckReport d1_crosscheck(std::int64_t c, const Rational& mu, const Rational& nu,
                               std::int64_t q, std::uint64_t seed, double tol = 1e-9);

/// Same verification against an externally supplied (possibly corrupted)
/// transition family.
CrosscheckReport d1_crosscheck_with_family(TransitionFamily family, std::int64_t c,
                                           const Rational& mu, const Rational& nu,
                                           std::int64_t q, std::uint64_t seed,
                                           double tol = 1e-9);

} // namespace twistoid
