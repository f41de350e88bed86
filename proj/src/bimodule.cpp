#include "twistoid/bimodule.hpp"

#include <algorithm>
#include <cmath>

namespace twistoid {

GridFunction::GridFunction(std::int64_t q, std::vector<Complex> values)
    : q_(q), values_(std::move(values)) {
    if (q <= 0) throw InvalidConfig("grid denominator must be positive");
    if (values_.size() != static_cast<std::size_t>(q * q))
        throw InvalidConfig("grid value count mismatch");
}

Complex GridFunction::at(std::int64_t a, std::int64_t b) const {
    a %= q_; if (a < 0) a += q_;
    b %= q_; if (b < 0) b += q_;
    return values_[static_cast<std::size_t>(a + q_ * b)];
}

Complex& GridFunction::at(std::int64_t a, std::int64_t b) {
    a %= q_; if (a < 0) a += q_;
    b %= q_; if (b < 0) b += q_;
    return values_[static_cast<std::size_t>(a + q_ * b)];
}

Complex GridFunction::value(const TorusPoint& p) const {
    Rational xq = reduce_mod1(p[0]) * q_;
    Rational yq = reduce_mod1(p[1]) * q_;
    if (xq.denominator() != 1 || yq.denominator() != 1)
        throw DomainError("point is not a grid node");
    return at(xq.numerator(), yq.numerator());
}

GridFunction GridFunction::conjugated() const {
    GridFunction out(q_);
    for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = std::conj(values_[i]);
    return out;
}

double GridFunction::sup_norm() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

GridFunction GridFunction::operator+(const GridFunction& o) const {
    if (!compatible(o)) throw ContextMismatch("grid mismatch");
    GridFunction out(q_);
    for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = values_[i] + o.values_[i];
    return out;
}

GridFunction GridFunction::operator-(const GridFunction& o) const {
    if (!compatible(o)) throw ContextMismatch("grid mismatch");
    GridFunction out(q_);
    for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = values_[i] - o.values_[i];
    return out;
}

GridFunction GridFunction::operator*(const GridFunction& o) const {
    if (!compatible(o)) throw ContextMismatch("grid mismatch");
    GridFunction out(q_);
    for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = values_[i] * o.values_[i];
    return out;
}

GridFunction GridFunction::operator*(Complex z) const {
    GridFunction out(q_);
    for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = values_[i] * z;
    return out;
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
    if (!a.compatible(b)) throw ContextMismatch("grid mismatch");
    double m = 0.0;
    for (std::int64_t i = 0; i < a.grid_q(); ++i)
        for (std::int64_t j = 0; j < a.grid_q(); ++j)
            m = std::max(m, std::abs(a.at(i, j) - b.at(i, j)));
    return m;
}

void require_grid_compatible(const AffineTorusMap& m, std::int64_t q) {
    for (const auto& t : m.translation) {
        if ((reduce_mod1(t) * q).denominator() != 1)
            throw InvalidConfig("map does not preserve the grid: translation " +
                                format_rational(t) + " with q=" + std::to_string(q));
    }
}

GridFunction TorusAutomorphism::apply(const GridFunction& phi) const {
    std::int64_t q = phi.grid_q();
    require_grid_compatible(map, q);
    std::int64_t da = (reduce_mod1(map.translation.at(0)) * q).numerator();
    std::int64_t db = (reduce_mod1(map.translation.at(1)) * q).numerator();
    GridFunction out(q);
    for (std::int64_t a = 0; a < q; ++a)
        for (std::int64_t b = 0; b < q; ++b) out.at(a, b) = phi.at(a + da, b + db);
    return out;
}

TorusAutomorphism TorusAutomorphism::after(const TorusAutomorphism& other) const {
    // Pullbacks compose contravariantly, so the point maps compose in the
    // other order; for translations both orders agree.
    AffineTorusMap composed;
    composed.translation.resize(map.translation.size());
    for (std::size_t i = 0; i < map.translation.size(); ++i)
        composed.translation[i] = map.translation[i] + other.map.translation[i];
    return {composed};
}

BimoduleStructure a_theta(const TorusAutomorphism& theta, std::int64_t q) {
    BimoduleStructure m;
    m.name = "a_theta";
    m.grid_q = q;
    TorusAutomorphism inv = theta.inverse();
    m.left_act = [](const GridFunction& a, const GridFunction& xi) { return a * xi; };
    m.right_act = [theta](const GridFunction& xi, const GridFunction& a) {
        return xi * theta.apply(a);
    };
    m.inner_left = [](const GridFunction& xi, const GridFunction& eta) {
        return xi * eta.conjugated();
    };
    m.inner_right = [inv](const GridFunction& xi, const GridFunction& eta) {
        return inv.apply(xi.conjugated() * eta);
    };
    return m;
}

BimoduleStructure mc_structure(std::int64_t c, std::int64_t q) {
    BimoduleStructure m;
    m.name = "m^" + std::to_string(c);
    m.grid_q = q;
    m.left_act = [](const GridFunction& a, const GridFunction& xi) { return a * xi; };
    m.right_act = [](const GridFunction& xi, const GridFunction& a) { return xi * a; };
    m.inner_left = [](const GridFunction& xi, const GridFunction& eta) {
        return xi * eta.conjugated();
    };
    m.inner_right = [](const GridFunction& xi, const GridFunction& eta) {
        return xi.conjugated() * eta;
    };
    return m;
}

BimoduleStructure d1_structure(std::int64_t c, const Rational& mu, const Rational& nu,
                               std::int64_t q) {
    (void)c; // the twist enters only when elements are evaluated off the grid
    AffineTorusMap lambda{{mu * 2, nu * 2}};
    require_grid_compatible(lambda, q);
    TorusAutomorphism dyn{lambda};
    TorusAutomorphism dyn_inv = dyn.inverse();
    BimoduleStructure m;
    m.name = "d1";
    m.grid_q = q;
    m.left_act = [](const GridFunction& a, const GridFunction& xi) { return a * xi; };
    m.right_act = [dyn](const GridFunction& xi, const GridFunction& a) {
        return xi * dyn.apply(a);
    };
    m.inner_left = [](const GridFunction& xi, const GridFunction& eta) {
        return xi * eta.conjugated();
    };
    m.inner_right = [dyn_inv](const GridFunction& xi, const GridFunction& eta) {
        return dyn_inv.apply(xi.conjugated() * eta);
    };
    return m;
}

BimoduleStructure tensor_with_a_theta(const BimoduleStructure& m,
                                      const TorusAutomorphism& theta) {
    BimoduleStructure out = m;
    out.name = m.name + " (x) a_theta";
    TorusAutomorphism inv = theta.inverse();
    auto base_right = m.right_act;
    auto base_inner_right = m.inner_right;
    out.right_act = [base_right, theta](const GridFunction& xi, const GridFunction& a) {
        return base_right(xi, theta.apply(a));
    };
    out.inner_right = [base_inner_right, inv](const GridFunction& xi, const GridFunction& eta) {
        return inv.apply(base_inner_right(xi, eta));
    };
    return out;
}

BimoduleStructure symmetrize(const BimoduleStructure& m) {
    BimoduleStructure out = m;
    out.name = m.name + "^s";
    auto left = m.left_act;
    auto inner_left = m.inner_left;
    out.right_act = [left](const GridFunction& xi, const GridFunction& a) {
        return left(a, xi);
    };
    out.inner_right = [inner_left](const GridFunction& xi, const GridFunction& eta) {
        return inner_left(eta, xi);
    };
    return out;
}

BimoduleStructure conjugate(const BimoduleStructure& m, const TorusAutomorphism& alpha) {
    BimoduleStructure out = m;
    out.name = "conj(" + m.name + ")";
    TorusAutomorphism inv = alpha.inverse();
    auto left = m.left_act;
    auto right = m.right_act;
    auto inner_left = m.inner_left;
    auto inner_right = m.inner_right;
    out.left_act = [left, inv](const GridFunction& a, const GridFunction& xi) {
        return left(inv.apply(a), xi);
    };
    out.right_act = [right, inv](const GridFunction& xi, const GridFunction& a) {
        return right(xi, inv.apply(a));
    };
    out.inner_left = [inner_left, alpha](const GridFunction& xi, const GridFunction& eta) {
        return alpha.apply(inner_left(xi, eta));
    };
    out.inner_right = [inner_right, alpha](const GridFunction& xi, const GridFunction& eta) {
        return alpha.apply(inner_right(xi, eta));
    };
    return out;
}

BimoduleStructure lt_structure(const TransitionFamily& family, std::int64_t q) {
    if (family.group_modulus != 0)
        throw InvalidConfig("section spaces are built over circle bundles");
    if (!cover_validate(family.cover).covered)
        throw InvalidConfig("transition family's cover does not cover the torus");
    BimoduleStructure m = mc_structure(0, q);
    m.name = "l_t";
    return m;
}

BimoduleStructure h_correspondence(const TransitionFamily& family, const AffineTorusMap& alpha,
                                   std::int64_t q) {
    BimoduleStructure m = lt_structure(family, q);
    m.name = "h";
    require_grid_compatible(alpha, q);
    TorusAutomorphism pull{alpha};
    m.right_act = [pull](const GridFunction& xi, const GridFunction& g) {
        // (xi . g)(t) = xi(t) g(alpha(p(t)))
        return xi * pull.apply(g);
    };
    AffineTorusMap map = alpha;
    m.inner_right = [map, q](const GridFunction& xi, const GridFunction& eta) {
        // <xi,eta>(x) = sum over the fiber { t : alpha(t) = x }, a single
        // term for a homeomorphism, accumulated explicitly.
        GridFunction out(q);
        std::int64_t da = (reduce_mod1(map.translation.at(0)) * q).numerator();
        std::int64_t db = (reduce_mod1(map.translation.at(1)) * q).numerator();
        for (std::int64_t a = 0; a < q; ++a)
            for (std::int64_t b = 0; b < q; ++b)
                out.at(a + da, b + db) += std::conj(xi.at(a, b)) * eta.at(a, b);
        return out;
    };
    return m;
}

Complex SectionFunction::chart_value(const TransitionFamily& family, int chart, std::int64_t a,
                                     std::int64_t b) const {
    TorusPoint x = torus2(Rational(a, q), Rational(b, q));
    if (!family.cover.chart(chart).contains(x))
        throw DomainError("node outside the requested chart");
    int canonical = charts_containing(family.cover, x).front();
    GroupValue transport = family.evaluate(chart, canonical, x);
    return transport.unit() * values.at(a, b);
}

SectionFunction section_from_quasiperiodic(const QuasiPeriodicFunction& F) {
    if (F.twist_const() != Rational(0))
        throw InvalidConfig("clutching sections need a pure winding twist");
    std::int64_t q = F.grid_q();
    std::int64_t bundle_c = -F.twist_coeff();
    Cover cover = nc_clutching_data(bundle_c).cover;
    SectionFunction s{q, GridFunction(q)};
    for (std::int64_t a = 0; a < q; ++a) {
        for (std::int64_t b = 0; b < q; ++b) {
            TorusPoint x = torus2(Rational(a, q), Rational(b, q));
            int chart = charts_containing(cover, x).front();
            s.values.at(a, b) = F.value(clutching_lift(chart, Rational(a, q)), Rational(b, q));
        }
    }
    return s;
}

double section_transition_defect(const TransitionFamily& family, const SectionFunction& s,
                                 const QuasiPeriodicFunction& F) {
    double defect = 0.0;
    std::int64_t q = s.q;
    auto indices = family.cover.indices();
    for (std::int64_t a = 0; a < q; ++a) {
        for (std::int64_t b = 0; b < q; ++b) {
            TorusPoint x = torus2(Rational(a, q), Rational(b, q));
            for (int i : indices) {
                if (!family.cover.chart(i).contains(x)) continue;
                Complex via_transition = s.chart_value(family, i, a, b);
                Complex via_lift = F.value(clutching_lift(i, Rational(a, q)), Rational(b, q));
                defect = std::max(defect, std::abs(via_transition - via_lift));
            }
        }
    }
    return defect;
}

GridFunction random_grid_function(std::int64_t q, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    GridFunction f(q);
    for (std::int64_t a = 0; a < q; ++a)
        for (std::int64_t b = 0; b < q; ++b) f.at(a, b) = Complex(u(rng), u(rng));
    return f;
}

AxiomReport check_bimodule_axioms(const BimoduleStructure& m, std::uint64_t seed,
                                  std::size_t samples, double tol) {
    AxiomReport report;
    report.name = m.name;
    report.samples = samples;
    std::mt19937_64 rng(seed);
    auto record = [&](const std::string& what, double err) {
        report.max_error = std::max(report.max_error, err);
        if (err > tol) report.failures.push_back(what + ": error " + std::to_string(err));
    };
    for (std::size_t i = 0; i < samples; ++i) {
        GridFunction xi = random_grid_function(m.grid_q, rng);
        GridFunction eta = random_grid_function(m.grid_q, rng);
        GridFunction zeta = random_grid_function(m.grid_q, rng);
        GridFunction a = random_grid_function(m.grid_q, rng);
        GridFunction b = random_grid_function(m.grid_q, rng);

        // (a),(b): self inner products are positive and see the whole element.
        for (auto side : {m.inner_right, m.inner_left}) {
            GridFunction self = side(xi, xi);
            double worst = 0.0;
            for (std::int64_t p = 0; p < m.grid_q; ++p)
                for (std::int64_t r = 0; r < m.grid_q; ++r) {
                    worst = std::max(worst, std::abs(self.at(p, r).imag()));
                    worst = std::max(worst, std::max(0.0, -self.at(p, r).real()));
                }
            record("positivity", worst);
            double xi_sup = xi.sup_norm();
            record("norm consistency", std::abs(self.sup_norm() - xi_sup * xi_sup));
        }
        // (c): hermitian symmetry.
        record("right hermitian",
               max_abs_diff(m.inner_right(xi, eta), m.inner_right(eta, xi).conjugated()));
        record("left hermitian",
               max_abs_diff(m.inner_left(xi, eta), m.inner_left(eta, xi).conjugated()));
        // (d) and (d)'.
        record("right (d)", max_abs_diff(m.inner_right(xi, m.right_act(eta, a)),
                                         m.inner_right(xi, eta) * a));
        record("left (d)'", max_abs_diff(m.inner_left(m.left_act(a, xi), eta),
                                         a * m.inner_left(xi, eta)));
        // Module laws.
        record("left module law", max_abs_diff(m.left_act(a * b, xi),
                                               m.left_act(a, m.left_act(b, xi))));
        record("right module law", max_abs_diff(m.right_act(xi, a * b),
                                                m.right_act(m.right_act(xi, a), b)));
        record("action commutation", max_abs_diff(m.right_act(m.left_act(a, xi), b),
                                                  m.left_act(a, m.right_act(xi, b))));
        // Compatibility of the two inner products.
        record("compatibility", max_abs_diff(m.left_act(m.inner_left(xi, eta), zeta),
                                             m.right_act(xi, m.inner_right(eta, zeta))));
    }
    return report;
}

AxiomReport check_symmetric(const BimoduleStructure& m, std::uint64_t seed, std::size_t samples,
                            double tol) {
    AxiomReport report;
    report.name = m.name + " symmetry";
    report.samples = samples;
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        GridFunction xi = random_grid_function(m.grid_q, rng);
        GridFunction a = random_grid_function(m.grid_q, rng);
        double err = max_abs_diff(m.left_act(a, xi), m.right_act(xi, a));
        report.max_error = std::max(report.max_error, err);
        if (err > tol) report.failures.push_back("a.xi != xi.a, error " + std::to_string(err));
    }
    return report;
}

AxiomReport check_multiplier_isomorphism(const BimoduleStructure& from,
                                         const BimoduleStructure& to,
                                         const GridFunction& multiplier, std::uint64_t seed,
                                         std::size_t samples, double tol) {
    if (from.grid_q != to.grid_q) throw ContextMismatch("grid mismatch");
    AxiomReport report;
    report.name = from.name + " ~ " + to.name;
    report.samples = samples;
    std::mt19937_64 rng(seed);
    auto v = [&multiplier](const GridFunction& xi) { return multiplier * xi; };
    auto record = [&](const std::string& what, double err) {
        report.max_error = std::max(report.max_error, err);
        if (err > tol) report.failures.push_back(what + ": error " + std::to_string(err));
    };
    for (std::size_t i = 0; i < samples; ++i) {
        GridFunction xi = random_grid_function(from.grid_q, rng);
        GridFunction eta = random_grid_function(from.grid_q, rng);
        GridFunction a = random_grid_function(from.grid_q, rng);
        record("left action", max_abs_diff(to.left_act(a, v(xi)), v(from.left_act(a, xi))));
        record("right action", max_abs_diff(to.right_act(v(xi), a), v(from.right_act(xi, a))));
        record("left inner", max_abs_diff(to.inner_left(v(xi), v(eta)),
                                          from.inner_left(xi, eta)));
        record("right inner", max_abs_diff(to.inner_right(v(xi), v(eta)),
                                           from.inner_right(xi, eta)));
    }
    return report;
}

GridFunction d1_to_mc_multiplier(std::int64_t c, const Rational& nu, std::int64_t q) {
    GridFunction u(q);
    for (std::int64_t a = 0; a < q; ++a) {
        Complex phase = Phase(nu * c * Rational(a, q)).unit();
        for (std::int64_t b = 0; b < q; ++b) u.at(a, b) = phase;
    }
    return u;
}

namespace {

// Partition of unity subordinate to the clutching bands, piecewise linear
// in x with rational breakpoints.
Rational band_partition_p1(const Rational& x0) {
    Rational x = reduce_mod1(x0);
    if (x <= Rational(3, 8)) return Rational(1);
    if (x <= Rational(1, 2)) return (Rational(1, 2) - x) * 8;
    if (x <= Rational(7, 8)) return Rational(0);
    return (x - Rational(7, 8)) * 8;
}

} // namespace

AxiomReport d1_fullness_witness(std::int64_t c, const Rational& mu, const Rational& nu,
                                std::int64_t q, double tol) {
    BimoduleStructure d1 = d1_structure(c, mu, nu, q);
    GridFunction u = d1_to_mc_multiplier(c, nu, q);

    // Frame in the quasi-periodic picture, then pulled back through the
    // multiplier: eta_1 carries the seam phase on the wrap part of band 1.
    GridFunction eta1(q), eta2(q);
    for (std::int64_t a = 0; a < q; ++a) {
        Rational x(a, q);
        double amp1 = std::sqrt(to_double(band_partition_p1(x)));
        double amp2 = std::sqrt(1.0 - to_double(band_partition_p1(x)));
        for (std::int64_t b = 0; b < q; ++b) {
            Rational y(b, q);
            Complex seam = x > Rational(7, 8) ? Phase(y * c).unit() : Complex(1.0, 0.0);
            eta1.at(a, b) = amp1 * seam;
            eta2.at(a, b) = amp2;
        }
    }
    GridFunction xi1 = u.conjugated() * eta1;
    GridFunction xi2 = u.conjugated() * eta2;

    AxiomReport report;
    report.name = "d1 fullness witness";
    report.samples = 1;
    GridFunction one(q, Complex(1.0, 0.0));
    double err_r = max_abs_diff(d1.inner_right(xi1, xi1) + d1.inner_right(xi2, xi2), one);
    double err_l = max_abs_diff(d1.inner_left(xi1, xi1) + d1.inner_left(xi2, xi2), one);
    report.max_error = std::max(err_r, err_l);
    if (err_r > tol) report.failures.push_back("right inner products do not sum to 1");
    if (err_l > tol) report.failures.push_back("left inner products do not sum to 1");
    return report;
}

namespace {

std::int64_t numeric_winding(const std::function<Complex(double)>& loop, std::size_t samples) {
    double total = 0.0;
    Complex prev = loop(0.0);
    for (std::size_t t = 1; t <= samples; ++t) {
        Complex cur = loop(static_cast<double>(t) / static_cast<double>(samples));
        total += std::arg(cur / prev);
        prev = cur;
    }
    double turns = total / (2.0 * std::numbers::pi);
    double nearest = std::round(turns);
    if (std::abs(turns - nearest) >= 0.1)
        throw InvariantViolation("numeric winding is not close to an integer");
    return static_cast<std::int64_t>(nearest);
}

} // namespace

std::int64_t winding_degree(const AffinePhase& phase, int axis, std::size_t samples) {
    std::int64_t symbolic = axis == 0 ? phase.a1 : phase.a2;
    auto loop = [&phase, axis](double t) {
        double angle = 2.0 * std::numbers::pi *
                       (to_double(phase.a0) +
                        (axis == 0 ? static_cast<double>(phase.a1) * t
                                   : static_cast<double>(phase.a2) * t));
        return Complex(std::cos(angle), std::sin(angle));
    };
    std::int64_t numeric = numeric_winding(loop, samples);
    if (numeric != symbolic)
        throw InvariantViolation("symbolic and numeric windings disagree");
    return symbolic;
}

std::int64_t winding_degree(const TransitionFamily& family, int axis, std::size_t samples) {
    if (family.group_modulus != 0)
        throw InvalidConfig("winding degree is defined for circle bundles");
    auto it = family.transitions.find({1, 2});
    if (it == family.transitions.end() || it->second.size() != 2)
        throw InvalidConfig("degree computation expects a two-band clutching family");
    // Order the two overlap components along the x axis.
    auto x_mid = [](const TransitionPiece& piece) {
        const Arc& arc = piece.region.pieces.at(0).arcs.at(0);
        return reduce_mod1(arc.start + arc.length / 2);
    };
    const TransitionPiece* low = &it->second[0];
    const TransitionPiece* high = &it->second[1];
    if (x_mid(*high) < x_mid(*low)) std::swap(low, high);

    std::int64_t symbolic = axis == 0 ? high->phase.a1 - low->phase.a1
                                      : high->phase.a2 - low->phase.a2;
    // Numeric cross-check: wind the ratio of the two components' values
    // along the loop.
    AffinePhase diff = high->phase.plus(low->phase.negated());
    auto loop = [&diff, axis](double t) {
        double angle = 2.0 * std::numbers::pi *
                       (to_double(diff.a0) +
                        (axis == 0 ? static_cast<double>(diff.a1) * t
                                   : static_cast<double>(diff.a2) * t));
        return Complex(std::cos(angle), std::sin(angle));
    };
    std::int64_t numeric = numeric_winding(loop, samples);
    if (numeric != symbolic)
        throw InvariantViolation("symbolic and numeric bundle degrees disagree");
    return symbolic;
}

} // namespace twistoid
