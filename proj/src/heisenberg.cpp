#include "twistoid/heisenberg.hpp"

#include <random>

namespace twistoid {

HeisenbergPoint h_mul(const HeisenbergPoint& a, const HeisenbergPoint& b, std::int64_t c) {
    return HeisenbergPoint{a.x + b.x, a.y + b.y, a.s + b.s + a.y * b.x * c};
}

HeisenbergPoint h_identity() { return HeisenbergPoint{Rational(0), Rational(0), Rational(0)}; }

HeisenbergPoint h_inverse(const HeisenbergPoint& a, std::int64_t c) {
    return HeisenbergPoint{-a.x, -a.y, -a.s + a.x * a.y * c};
}

HeisenbergManifoldPoint lattice_canonicalize(const HeisenbergPoint& p, std::int64_t c) {
    if (c == 0) throw InvalidConfig("lattice modulus c must be nonzero");
    std::int64_t k = -rational_floor(p.x);
    std::int64_t m = -rational_floor(p.y);
    Rational s_shifted = p.s + p.y * k * c;
    std::int64_t n = -rational_floor(s_shifted);
    HeisenbergPoint lattice{Rational(k), Rational(m), Rational(n)};
    HeisenbergPoint rep = h_mul(p, lattice, c);
    return HeisenbergManifoldPoint{rep, c};
}

HeisenbergManifoldPoint circle_action(const Phase& t, const HeisenbergManifoldPoint& w) {
    HeisenbergPoint shifted = w.rep;
    shifted.s += t.value;
    return lattice_canonicalize(shifted, w.c);
}

TorusPoint bundle_projection(const HeisenbergManifoldPoint& w) {
    return torus2(w.rep.x, w.rep.y);
}

TransitionFamily nc_clutching_data(std::int64_t c) {
    // Chart 1 wraps x = 0, chart 2 is the middle band; both are x-bands with
    // the full circle in y. Overlap components: A = (3/8, 1/2), B = (7/8, 1).
    Cover cover;
    ArcProduct band1{{Arc::open(Rational(7, 8), Rational(13, 8)), Arc::whole()}};
    ArcProduct band2{{Arc::open(Rational(3, 8), Rational(1)), Arc::whole()}};
    cover.charts[1] = Region{{band1}};
    cover.charts[2] = Region{{band2}};

    Region low{{ArcProduct{{Arc::open(Rational(3, 8), Rational(1, 2)), Arc::whole()}}}};
    Region wrap{{ArcProduct{{Arc::open(Rational(7, 8), Rational(1)), Arc::whole()}}}};

    TransitionFamily f;
    f.cover = std::move(cover);
    f.group_modulus = 0;
    f.transitions[{1, 2}] = {TransitionPiece{low, AffinePhase{Rational(0), 0, 0}},
                             TransitionPiece{wrap, AffinePhase{Rational(0), 0, c}}};
    f.transitions[{2, 1}] = {TransitionPiece{low, AffinePhase{Rational(0), 0, 0}},
                             TransitionPiece{wrap, AffinePhase{Rational(0), 0, -c}}};
    return f;
}

Rational clutching_lift(int chart, const Rational& x) {
    Rational x0 = reduce_mod1(x);
    if (chart == 1) {
        if (x0 < Rational(1, 2)) return x0;
        if (x0 > Rational(7, 8)) return x0 - 1;
        throw DomainError("x outside chart 1 band");
    }
    if (chart == 2) {
        if (x0 > Rational(3, 8)) return x0;
        throw DomainError("x outside chart 2 band");
    }
    throw DomainError("clutching cover has charts 1 and 2 only");
}

EquivariantNcFunction::EquivariantNcFunction(std::int64_t c, std::int64_t grid_q,
                                             const Sample& f, double tol)
    : c_(c), q_(grid_q) {
    if (q_ <= 0) throw InvalidConfig("grid denominator must be positive");
    values_.resize(static_cast<std::size_t>(q_ * q_));
    auto close = [tol](std::complex<double> a, std::complex<double> b) {
        return std::abs(a - b) <= tol;
    };
    for (std::int64_t b = 0; b < q_; ++b) {
        for (std::int64_t a = 0; a < q_; ++a) {
            Rational x(a, q_), y(b, q_);
            HeisenbergPoint base{x, y, Rational(0)};
            std::complex<double> v = f(base);
            values_[static_cast<std::size_t>(a + q_ * b)] = v;
            // Lattice invariance: (i), (ii), (iii).
            if (!close(f(HeisenbergPoint{x + 1, y, y * c_}), v))
                throw InvariantViolation("condition (i) fails at a grid node");
            if (!close(f(HeisenbergPoint{x, y + 1, Rational(0)}), v))
                throw InvariantViolation("condition (ii) fails at a grid node");
            if (!close(f(HeisenbergPoint{x, y, Rational(1)}), v))
                throw InvariantViolation("condition (iii) fails at a grid node");
            // Equivariance (iv) at a non-trivial shift.
            Rational t(1, 3);
            if (!close(f(HeisenbergPoint{x, y, t}), Phase(t).unit() * v))
                throw InvariantViolation("condition (iv) fails at a grid node");
        }
    }
}

EquivariantNcFunction::EquivariantNcFunction(std::int64_t c, std::int64_t grid_q,
                                             std::vector<std::complex<double>> values)
    : c_(c), q_(grid_q), values_(std::move(values)) {
    if (values_.size() != static_cast<std::size_t>(q_ * q_))
        throw InvalidConfig("grid value count mismatch");
}

std::complex<double> EquivariantNcFunction::value_at_node(std::int64_t a, std::int64_t b) const {
    a %= q_; if (a < 0) a += q_;
    b %= q_; if (b < 0) b += q_;
    return values_[static_cast<std::size_t>(a + q_ * b)];
}

std::complex<double> EquivariantNcFunction::value(const HeisenbergPoint& p) const {
    HeisenbergManifoldPoint w = lattice_canonicalize(p, c_);
    Rational xq = w.rep.x * q_;
    Rational yq = w.rep.y * q_;
    if (xq.denominator() != 1 || yq.denominator() != 1)
        throw DomainError("point does not reduce to a grid node");
    return Phase(w.rep.s).unit() * value_at_node(xq.numerator(), yq.numerator());
}

QuasiPeriodicFunction::QuasiPeriodicFunction(Rational twist_const, std::int64_t twist_coeff,
                                             std::int64_t grid_q,
                                             std::vector<std::complex<double>> values)
    : t0_(std::move(twist_const)), t1_(twist_coeff), q_(grid_q), values_(std::move(values)) {
    if (q_ <= 0) throw InvalidConfig("grid denominator must be positive");
    if (values_.size() != static_cast<std::size_t>(q_ * q_))
        throw InvalidConfig("grid value count mismatch");
}

QuasiPeriodicFunction QuasiPeriodicFunction::zero(Rational twist_const, std::int64_t twist_coeff,
                                                  std::int64_t grid_q) {
    return QuasiPeriodicFunction(std::move(twist_const), twist_coeff, grid_q,
                                 std::vector<std::complex<double>>(
                                     static_cast<std::size_t>(grid_q * grid_q)));
}

std::complex<double> QuasiPeriodicFunction::value_at_node(std::int64_t a, std::int64_t b) const {
    a %= q_; if (a < 0) a += q_;
    b %= q_; if (b < 0) b += q_;
    return values_[static_cast<std::size_t>(a + q_ * b)];
}

std::complex<double>& QuasiPeriodicFunction::at_node(std::int64_t a, std::int64_t b) {
    a %= q_; if (a < 0) a += q_;
    b %= q_; if (b < 0) b += q_;
    return values_[static_cast<std::size_t>(a + q_ * b)];
}

std::complex<double> QuasiPeriodicFunction::value(const Rational& x, const Rational& y) const {
    std::int64_t k = rational_floor(x);
    Rational x0 = x - k;
    Rational y0 = reduce_mod1(y);
    Rational xq = x0 * q_;
    Rational yq = y0 * q_;
    if (xq.denominator() != 1 || yq.denominator() != 1)
        throw DomainError("point does not reduce to a grid node");
    // f(x0 + k, y) = e(k*(t0 + t1*y)) f(x0, y)
    Phase ext(Rational(k) * (t0_ + y0 * t1_));
    return ext.unit() * value_at_node(xq.numerator(), yq.numerator());
}

QuasiPeriodicFunction equivariant_to_section(const EquivariantNcFunction& f) {
    return QuasiPeriodicFunction(Rational(0), -f.c(), f.grid_q(), f.values());
}

EquivariantNcFunction section_to_equivariant(const QuasiPeriodicFunction& F, std::int64_t c) {
    if (F.twist_const() != Rational(0) || F.twist_coeff() != -c)
        throw InvalidConfig("section twist does not match the manifold modulus");
    return EquivariantNcFunction(c, F.grid_q(), F.values());
}

bool HeisenbergReport::ok() const {
    if (!failures.empty()) return false;
    for (const auto& [name, passed] : conditions)
        if (!passed) return false;
    return true;
}

namespace {

Rational random_rational(std::mt19937_64& rng, std::int64_t max_num, std::int64_t max_den) {
    std::uniform_int_distribution<std::int64_t> num(-max_num, max_num);
    std::uniform_int_distribution<std::int64_t> den(1, max_den);
    return Rational(num(rng), den(rng));
}

HeisenbergPoint random_point(std::mt19937_64& rng) {
    return HeisenbergPoint{random_rational(rng, 48, 12), random_rational(rng, 48, 12),
                           random_rational(rng, 48, 12)};
}

// Triangle bump, support (-1, 1).
double tri(double u) { return std::max(0.0, 1.0 - std::abs(u)); }

} // namespace

HeisenbergReport heisenberg_check(std::int64_t c, std::int64_t grid_q, std::uint64_t seed,
                                  std::size_t samples, double tol) {
    if (c == 0) throw InvalidConfig("modulus c must be nonzero");
    HeisenbergReport report;
    report.c = c;
    report.grid_q = grid_q;
    report.seed = seed;
    std::mt19937_64 rng(seed);

    // Group axioms on random rational triples.
    for (std::size_t i = 0; i < samples; ++i) {
        HeisenbergPoint a = random_point(rng), b = random_point(rng), d = random_point(rng);
        ++report.group_axiom_samples;
        if (!(h_mul(h_mul(a, b, c), d, c) == h_mul(a, h_mul(b, d, c), c)))
            report.failures.push_back("associativity fails");
        if (!(h_mul(a, h_identity(), c) == a) || !(h_mul(h_identity(), a, c) == a))
            report.failures.push_back("identity law fails");
        if (!(h_mul(a, h_inverse(a, c), c) == h_identity()) ||
            !(h_mul(h_inverse(a, c), a, c) == h_identity()))
            report.failures.push_back("inverse law fails");
    }

    // Lattice invariance of the canonical form.
    for (std::size_t i = 0; i < samples / 10 + 1; ++i) {
        HeisenbergPoint p = random_point(rng);
        HeisenbergManifoldPoint canon = lattice_canonicalize(p, c);
        for (std::int64_t k = -3; k <= 3; ++k)
            for (std::int64_t m = -3; m <= 3; ++m)
                for (std::int64_t n = -3; n <= 3; ++n) {
                    ++report.lattice_samples;
                    HeisenbergPoint lattice{Rational(k), Rational(m), Rational(n)};
                    if (!(lattice_canonicalize(h_mul(p, lattice, c), c) == canon)) {
                        report.failures.push_back("canonical form not lattice invariant");
                        goto lattice_done;
                    }
                }
    }
lattice_done:;

    // Circle action: identity, additivity, full turn, freeness, projection.
    {
        HeisenbergManifoldPoint w = lattice_canonicalize(random_point(rng), c);
        bool ok = circle_action(Phase(), w) == w;
        Phase t1(Rational(1, 5)), t2(Rational(3, 7));
        ok = ok && circle_action(t2, circle_action(t1, w)) == circle_action(t1 + t2, w);
        ok = ok && circle_action(Phase(Rational(1)), w) == w;
        ok = ok && !(circle_action(Phase(Rational(1, 2)), w) == w);
        ok = ok && bundle_projection(circle_action(t1, w)) == bundle_projection(w);
        HeisenbergPoint shift{Rational(2, 5), Rational(3, 11), Rational(0)};
        HeisenbergManifoldPoint moved = lattice_canonicalize(h_mul(shift, w.rep, c), c);
        TorusPoint expected =
            torus2(shift.x + bundle_projection(w)[0], shift.y + bundle_projection(w)[1]);
        ok = ok && bundle_projection(moved) == expected;
        report.conditions.emplace_back("circle-action", ok);
    }

    // Identification conditions (i)-(vi) for a function built from a
    // quasi-periodic generator: f(x, y, s) = e(s) * sum_k phi(x+k) e(c*k*y).
    auto generator = [c](const HeisenbergPoint& p) -> std::complex<double> {
        double x = to_double(p.x);
        std::complex<double> acc = 0.0;
        for (std::int64_t k = -3; k <= 3; ++k) {
            double u = x + static_cast<double>(k);
            if (tri(u) == 0.0) continue;
            std::complex<double> coeff(tri(u), 0.35 * tri(u) * u);
            acc += coeff * Phase(p.y * (k * c)).unit();
        }
        return Phase(p.s).unit() * acc;
    };

    auto close = [tol](std::complex<double> a, std::complex<double> b) {
        return std::abs(a - b) <= tol;
    };
    bool ok_i = true, ok_ii = true, ok_iii = true, ok_iv = true, ok_v = true, ok_vi = true;
    for (std::int64_t b = 0; b < grid_q; ++b) {
        for (std::int64_t a = 0; a < grid_q; ++a) {
            Rational x(a, grid_q), y(b, grid_q);
            std::complex<double> v = generator(HeisenbergPoint{x, y, Rational(0)});
            ok_i = ok_i && close(generator(HeisenbergPoint{x + 1, y, y * c}), v);
            ok_ii = ok_ii && close(generator(HeisenbergPoint{x, y + 1, Rational(0)}), v);
            ok_iii = ok_iii && close(generator(HeisenbergPoint{x, y, Rational(1)}), v);
            Rational t(2, 7);
            ok_iv = ok_iv &&
                    close(generator(HeisenbergPoint{x, y, t}), Phase(t).unit() * v);
            ok_v = ok_v && close(v, Phase(y * c).unit() *
                                        generator(HeisenbergPoint{x + 1, y, Rational(0)}));
            ok_vi = ok_vi && close(generator(HeisenbergPoint{x, y + 1, Rational(0)}), v) &&
                    close(generator(HeisenbergPoint{x, y, Rational(1)}), v);
        }
    }
    report.conditions.emplace_back("(i)", ok_i);
    report.conditions.emplace_back("(ii)", ok_ii);
    report.conditions.emplace_back("(iii)", ok_iii);
    report.conditions.emplace_back("(iv)", ok_iv);
    report.conditions.emplace_back("(v)", ok_v);
    report.conditions.emplace_back("(vi)", ok_vi);

    // Section round trip and reconstruction through the lattice relations.
    {
        EquivariantNcFunction f(c, grid_q, generator, tol);
        QuasiPeriodicFunction F = equivariant_to_section(f);
        EquivariantNcFunction f2 = section_to_equivariant(F, c);
        bool ok = true;
        std::uniform_int_distribution<std::int64_t> node(0, grid_q - 1);
        std::uniform_int_distribution<std::int64_t> shift(-2, 2);
        for (std::size_t i = 0; i < samples; ++i) {
            Rational x(node(rng), grid_q), y(node(rng), grid_q);
            std::int64_t k = shift(rng), m = shift(rng), n = shift(rng);
            HeisenbergPoint p = h_mul(HeisenbergPoint{x, y, Rational(0)},
                                      HeisenbergPoint{Rational(k), Rational(m), Rational(n)}, c);
            ok = ok && close(f2.value(p), generator(p));
            ok = ok && close(F.value(x + k, y), generator(HeisenbergPoint{x + k, y, Rational(0)}));
        }
        for (std::int64_t b = 0; b < grid_q; ++b)
            for (std::int64_t a = 0; a < grid_q; ++a)
                ok = ok && close(f2.value_at_node(a, b), f.value_at_node(a, b));
        report.conditions.emplace_back("round-trip", ok);
    }

    return report;
}

} // namespace twistoid
