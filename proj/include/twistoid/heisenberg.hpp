#pragma once

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "twistoid/bundle.hpp"

namespace twistoid {

/// Element of the reparametrized Heisenberg group, coordinates in R^3.
struct HeisenbergPoint {
    Rational x, y, s;

    bool operator==(const HeisenbergPoint& o) const = default;
};

/// Group law (x,y,s)(x',y',s') = (x+x', y+y', s+s'+c*y*x').
HeisenbergPoint h_mul(const HeisenbergPoint& a, const HeisenbergPoint& b, std::int64_t c);

HeisenbergPoint h_identity();

/// Solves a * a^{-1} = 0: (-x, -y, -s + c*x*y).
HeisenbergPoint h_inverse(const HeisenbergPoint& a, std::int64_t c);

/// Point of the compact quotient by the integer lattice acting on the
/// right: the unique representative with all coordinates in [0,1).
struct HeisenbergManifoldPoint {
    HeisenbergPoint rep;
    std::int64_t c = 1;

    bool operator==(const HeisenbergManifoldPoint& o) const = default;
};

HeisenbergManifoldPoint lattice_canonicalize(const HeisenbergPoint& p, std::int64_t c);

/// s-shift by the phase t, then re-canonicalize. A free circle action on
/// the fibers of the bundle projection.
HeisenbergManifoldPoint circle_action(const Phase& t, const HeisenbergManifoldPoint& w);

/// (x, y) mod 1; fibers are exactly the circle-action orbits.
TorusPoint bundle_projection(const HeisenbergManifoldPoint& w);

/// Two overlapping x-bands over the torus with transition 1_G on the low
/// overlap component and phase c*y on the wrap component. This is the
/// transition data of the manifold's circle bundle: local sections lift x
/// to the band around 0 (chart 1) or to (3/8, 1) (chart 2), and comparing
/// the lifts across the wrap shifts s by c*y.
TransitionFamily nc_clutching_data(std::int64_t c);

/// The x-lift used by chart `chart` of the clutching cover at base
/// coordinate x in [0,1): x itself, or x - 1 on the wrap part of chart 1.
Rational clutching_lift(int chart, const Rational& x);

/// Circle-equivariant function on the Heisenberg manifold, stored as values
/// at s = 0 over a rational grid on the base torus; the s-dependence is
/// recovered from equivariance, and x-translation by integers from the
/// lattice relations.
class EquivariantNcFunction {
  public:
    using Sample = std::function<std::complex<double>(const HeisenbergPoint&)>;

    /// Samples f on the grid and verifies the lattice-invariance and
    /// equivariance relations at every node within `tol`; throws
    /// InvariantViolation otherwise.
    EquivariantNcFunction(std::int64_t c, std::int64_t grid_q, const Sample& f,
                          double tol = 1e-9);

    /// Direct construction from grid values (no validation possible).
    EquivariantNcFunction(std::int64_t c, std::int64_t grid_q,
                          std::vector<std::complex<double>> values);

    std::int64_t c() const { return c_; }
    std::int64_t grid_q() const { return q_; }

    /// Value at an arbitrary rational triple, reconstructed through the
    /// lattice relations and equivariance. (x, y) must reduce to grid nodes.
    std::complex<double> value(const HeisenbergPoint& p) const;

    std::complex<double> value_at_node(std::int64_t a, std::int64_t b) const;

    const std::vector<std::complex<double>>& values() const { return values_; }

  private:
    std::int64_t c_;
    std::int64_t q_;
    std::vector<std::complex<double>> values_; // row-major, a + q*b at (a/q, b/q)
};

/// Quasi-periodic grid function: values on [0,1) x T with the extension
/// rule f(x+1, y) = e(t0 + t1*y) f(x, y). Declared here because the
/// Heisenberg manifold's equivariant functions map onto these; the module
/// calculus lives in bimodule.hpp.
class QuasiPeriodicFunction {
  public:
    QuasiPeriodicFunction(Rational twist_const, std::int64_t twist_coeff, std::int64_t grid_q,
                          std::vector<std::complex<double>> values);

    static QuasiPeriodicFunction zero(Rational twist_const, std::int64_t twist_coeff,
                                      std::int64_t grid_q);

    std::int64_t grid_q() const { return q_; }
    const Rational& twist_const() const { return t0_; }
    std::int64_t twist_coeff() const { return t1_; }

    std::complex<double> value_at_node(std::int64_t a, std::int64_t b) const;
    std::complex<double>& at_node(std::int64_t a, std::int64_t b);

    /// Evaluate at rational (x, y); x may be any real lift, y is periodic.
    std::complex<double> value(const Rational& x, const Rational& y) const;

    const std::vector<std::complex<double>>& values() const { return values_; }
    std::vector<std::complex<double>>& values() { return values_; }

  private:
    Rational t0_;
    std::int64_t t1_;
    std::int64_t q_;
    std::vector<std::complex<double>> values_;
};

/// The grid shadow of the section space: F(x, y) = f(x, y, 0), an element
/// with twist rule F(x+1, y) = e(-c*y) F(x, y).
QuasiPeriodicFunction equivariant_to_section(const EquivariantNcFunction& f);

/// Inverse of equivariant_to_section via f(x, y, s) = e(s) F(x, y).
EquivariantNcFunction section_to_equivariant(const QuasiPeriodicFunction& F, std::int64_t c);

struct HeisenbergReport {
    std::int64_t c = 0;
    std::int64_t grid_q = 0;
    std::uint64_t seed = 0;
    std::size_t group_axiom_samples = 0;
    std::size_t lattice_samples = 0;
    std::vector<std::string> failures;
    // One entry per verified identification condition, in order (i)..(vi),
    // plus the round trip.
    std::vector<std::pair<std::string, bool>> conditions;
    bool ok() const;
};

/// End-to-end verification: group axioms on random rational triples,
/// lattice invariance of the canonical form, the circle action, and the
/// six identification conditions with the section round trip on the grid.
HeisenbergReport heisenberg_check(std::int64_t c, std::int64_t grid_q, std::uint64_t seed,
                                  std::size_t samples = 1000, double tol = 1e-9);

} // namespace twistoid
