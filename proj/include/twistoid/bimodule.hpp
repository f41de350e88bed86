#pragma once

#include <complex>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "twistoid/heisenberg.hpp"

namespace twistoid {

using Complex = std::complex<double>;

/// Complex values on the q x q rational grid of the 2-torus: the desk model
/// of both the coefficient algebra C(T^2) and of module elements.
class GridFunction {
  public:
    GridFunction(std::int64_t q, Complex fill = 0.0)
        : q_(q), values_(static_cast<std::size_t>(q * q), fill) {
        if (q <= 0) throw InvalidConfig("grid denominator must be positive");
    }
    GridFunction(std::int64_t q, std::vector<Complex> values);

    std::int64_t grid_q() const { return q_; }
    const std::vector<Complex>& values() const { return values_; }

    Complex at(std::int64_t a, std::int64_t b) const;
    Complex& at(std::int64_t a, std::int64_t b);

    /// Value at a rational point, which must be a grid node.
    Complex value(const TorusPoint& p) const;

    GridFunction conjugated() const;
    double sup_norm() const;

    GridFunction operator+(const GridFunction& o) const;
    GridFunction operator-(const GridFunction& o) const;
    GridFunction operator*(const GridFunction& o) const; // pointwise
    GridFunction operator*(Complex z) const;

    bool compatible(const GridFunction& o) const { return q_ == o.q_; }

  private:
    std::int64_t q_;
    std::vector<Complex> values_;
};

double max_abs_diff(const GridFunction& a, const GridFunction& b);

/// Automorphism of the grid algebra induced by a grid-preserving torus map m
/// by precomposition: (theta(phi))(v) = phi(m(v)). With this convention the
/// dynamics lambda acts on functions as phi |-> phi o lambda.
struct TorusAutomorphism {
    AffineTorusMap map;

    GridFunction apply(const GridFunction& phi) const;
    TorusAutomorphism inverse() const { return {map.inverse()}; }
    /// Composition in Aut: (this o other)(phi) = this(other(phi)).
    TorusAutomorphism after(const TorusAutomorphism& other) const;

    static TorusAutomorphism translation(const Rational& dx, const Rational& dy) {
        return {AffineTorusMap{{dx, dy}}};
    }
    static TorusAutomorphism identity() { return translation(Rational(0), Rational(0)); }
};

/// Checks that the map permutes the q-grid.
void require_grid_compatible(const AffineTorusMap& m, std::int64_t q);

/// A Hilbert bimodule over the grid algebra, presented operationally: the
/// two actions and the two inner products over a common element container.
/// Decorations (twists, symmetrization, conjugation) compose the closures.
struct BimoduleStructure {
    std::string name;
    std::int64_t grid_q = 0;
    std::function<GridFunction(const GridFunction&, const GridFunction&)> left_act;
    std::function<GridFunction(const GridFunction&, const GridFunction&)> right_act;
    std::function<GridFunction(const GridFunction&, const GridFunction&)> inner_left;
    std::function<GridFunction(const GridFunction&, const GridFunction&)> inner_right;
};

/// The bimodule A_theta: plain left action, right action and right inner
/// product twisted through theta.
BimoduleStructure a_theta(const TorusAutomorphism& theta, std::int64_t q);

/// The symmetric bimodule of twist-c quasi-periodic functions, all four
/// operations pointwise.
BimoduleStructure mc_structure(std::int64_t c, std::int64_t q);

/// First spectral subspace of the deformed algebra: left action pointwise,
/// right action through the dynamics, right inner product pulled back
/// through its inverse.
BimoduleStructure d1_structure(std::int64_t c, const Rational& mu, const Rational& nu,
                               std::int64_t q);

/// M tensored with A_theta: same container, decorated right half.
BimoduleStructure tensor_with_a_theta(const BimoduleStructure& m, const TorusAutomorphism& theta);

/// Right structure replaced by the left one. The right inner product is
/// <xi,eta> := <eta,xi>_L; the argument swap is what axiom (d) forces once
/// scalars are complex.
BimoduleStructure symmetrize(const BimoduleStructure& m);

/// Conjugation by an automorphism: both actions through alpha^{-1}, both
/// inner products transported by alpha.
BimoduleStructure conjugate(const BimoduleStructure& m, const TorusAutomorphism& alpha);

/// Section space of the circle bundle described by a two-band transition
/// family: one stored value per base node, taken in the lexicographically
/// least chart containing the node. Operations are the symmetric pointwise
/// ones.
BimoduleStructure lt_structure(const TransitionFamily& family, std::int64_t q);

/// The correspondence of the dynamics: sections with the right action and
/// right inner product summed over the (singleton) fibers of alpha.
BimoduleStructure h_correspondence(const TransitionFamily& family, const AffineTorusMap& alpha,
                                   std::int64_t q);

/// Section container for the identification tests: values at canonical
/// charts, transported across charts by the family's transitions.
struct SectionFunction {
    std::int64_t q = 0;
    GridFunction values;

    /// Chart-i value at a node: e(c_{i, i0}) * stored value.
    Complex chart_value(const TransitionFamily& family, int chart, std::int64_t a,
                        std::int64_t b) const;
};

/// Sample a quasi-periodic function as a section of the clutching bundle
/// whose transitions match its twist: chart values are F at the chart's
/// x-lift.
SectionFunction section_from_quasiperiodic(const QuasiPeriodicFunction& F);

/// Verifies s_i = e(c_{i,j}) s_j at every overlap node of the family.
double section_transition_defect(const TransitionFamily& family, const SectionFunction& s,
                                 const QuasiPeriodicFunction& F);

struct AxiomReport {
    std::string name;
    std::size_t samples = 0;
    double max_error = 0.0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Hilbert-bimodule axioms, module laws and the compatibility identity on
/// random elements, nodewise within tol.
AxiomReport check_bimodule_axioms(const BimoduleStructure& m, std::uint64_t seed,
                                  std::size_t samples, double tol = 1e-9);

/// a.xi == xi.a on random pairs.
AxiomReport check_symmetric(const BimoduleStructure& m, std::uint64_t seed, std::size_t samples,
                            double tol = 1e-9);

/// A bimodule map between two structures over the same grid, given as a
/// nodewise multiplier, checked on random elements: intertwines both
/// actions and both inner products.
AxiomReport check_multiplier_isomorphism(const BimoduleStructure& from,
                                         const BimoduleStructure& to,
                                         const GridFunction& multiplier, std::uint64_t seed,
                                         std::size_t samples, double tol = 1e-9);

/// The multiplier e(c*nu*x) implementing the isomorphism from the first
/// spectral subspace onto M^c tensored with the dynamics twist.
GridFunction d1_to_mc_multiplier(std::int64_t c, const Rational& nu, std::int64_t q);

/// Two-element frame for the spectral subspace: partition of unity
/// subordinate to the clutching bands, transported into the module. The
/// report checks sum_i <xi_i, xi_i> == 1 for both inner products.
AxiomReport d1_fullness_witness(std::int64_t c, const Rational& mu, const Rational& nu,
                                std::int64_t q, double tol = 1e-9);

/// Winding number of the phase along one axis: the symbolic coefficient,
/// cross-checked by accumulating principal-branch increments over the loop.
std::int64_t winding_degree(const AffinePhase& phase, int axis, std::size_t samples = 1024);

/// Degree of a two-band clutching family along the y axis: difference of
/// the overlap components' windings, higher x-component minus lower.
std::int64_t winding_degree(const TransitionFamily& family, int axis = 1,
                            std::size_t samples = 1024);

/// Random grid function with entries uniform in the unit square.
GridFunction random_grid_function(std::int64_t q, std::mt19937_64& rng);

} // namespace twistoid
