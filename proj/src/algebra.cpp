#include "twistoid/algebra.hpp"

#include <random>
#include <set>

namespace twistoid {

EquivariantFunction::EquivariantFunction(std::shared_ptr<const BundleContext> ctx,
                                         OrbitGrid grid, std::int64_t level_bound)
    : ctx_(std::move(ctx)), grid_(grid), bound_(level_bound) {
    if (!ctx_) throw InvalidConfig("null bundle context");
    if (ctx_->base.group_modulus != 0)
        throw InvalidConfig("the convolution algebra is built over circle bundles only");
    if (bound_ < 1) throw InvalidConfig("level bound must be at least 1");
}

void EquivariantFunction::set(std::int64_t level, const TorusPoint& x, Complex value) {
    if (level < -bound_ || level > bound_) throw InvalidConfig("level outside the bound");
    if (!grid_.contains(x)) throw DomainError("base point off the grid");
    OrbitKey key{level, x, canonical_index(*ctx_, level, x)};
    if (value == Complex(0.0, 0.0)) {
        support_.erase(key);
    } else {
        support_[key] = value;
    }
}

Complex EquivariantFunction::value(const BundlePoint& p) const {
    BundlePoint canon = canonicalize(*ctx_, p);
    auto it = support_.find(OrbitKey{canon.level, canon.x, canon.index});
    if (it == support_.end()) return {0.0, 0.0};
    return canon.g.unit() * it->second;
}

void EquivariantFunction::add_at(const BundlePoint& canonical_rep, Complex contribution) {
    // f(g . rep0) = e(g) f(rep0), so the stored orbit value picks up the
    // inverse phase of the representative's group coordinate.
    OrbitKey key{canonical_rep.level, canonical_rep.x, canonical_rep.index};
    support_[key] += canonical_rep.g.inverse().unit() * contribution;
}

void EquivariantFunction::prune() {
    for (auto it = support_.begin(); it != support_.end();) {
        if (it->second == Complex(0.0, 0.0)) {
            it = support_.erase(it);
        } else {
            ++it;
        }
    }
}

namespace {

void require_same_context(const EquivariantFunction& a, const EquivariantFunction& b) {
    if (a.context().get() != b.context().get() || a.grid().q != b.grid().q)
        throw ContextMismatch("equivariant functions over different contexts");
}

BundlePoint orbit_rep(const BundleContext& ctx, const OrbitKey& key) {
    (void)ctx;
    return BundlePoint{GroupValue::circle(Phase()), key.x, key.index, key.level};
}

/// Random equivalent representative: the index is re-drawn among all valid
/// chart vectors at the base point and the group value transported.
BundlePoint jitter_point(const BundleContext& ctx, std::mt19937_64& rng,
                         const BundlePoint& p) {
    if (p.level == 0) return p;
    RefinedIndex idx;
    idx.sign = p.level > 0 ? +1 : -1;
    for (std::size_t k = 0; k < p.index.length(); ++k) {
        TorusPoint probe = p.level > 0
                               ? map_power(ctx.alpha, static_cast<std::int64_t>(k), p.x)
                               : map_power(ctx.alpha, -static_cast<std::int64_t>(k) - 1, p.x);
        auto options = charts_containing(ctx.base.cover, probe);
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        idx.vec.push_back(options[pick(rng)]);
    }
    GroupValue g = transition_power(ctx, p.level, p.index, idx, p.x) * p.g;
    return BundlePoint{g, p.x, idx, p.level};
}

} // namespace

EquivariantFunction EquivariantFunction::operator+(const EquivariantFunction& o) const {
    require_same_context(*this, o);
    EquivariantFunction out(ctx_, grid_, std::max(bound_, o.bound_));
    out.support_ = support_;
    for (const auto& [key, v] : o.support_) out.support_[key] += v;
    out.prune();
    return out;
}

EquivariantFunction EquivariantFunction::operator-(const EquivariantFunction& o) const {
    return *this + (o * Complex(-1.0, 0.0));
}

EquivariantFunction EquivariantFunction::operator*(Complex z) const {
    EquivariantFunction out(ctx_, grid_, bound_);
    if (z == Complex(0.0, 0.0)) return out;
    for (const auto& [key, v] : support_) out.support_[key] = v * z;
    return out;
}

double EquivariantFunction::max_abs() const {
    double m = 0.0;
    for (const auto& [key, v] : support_) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const EquivariantFunction& a, const EquivariantFunction& b) {
    return (a - b).max_abs();
}

EquivariantFunction convolve(const EquivariantFunction& f, const EquivariantFunction& h,
                             std::optional<std::uint64_t> jitter_seed) {
    require_same_context(f, h);
    const BundleContext& ctx = *f.context();
    EquivariantFunction out(f.context(), f.grid(), f.level_bound() + h.level_bound());

    std::set<std::int64_t> h_levels;
    for (const auto& [key, v] : h.support()) h_levels.insert(key.level);

    std::optional<std::mt19937_64> rng;
    if (jitter_seed) rng.emplace(*jitter_seed);

    for (const auto& [key1, v1] : f.support()) {
        TorusPoint mid = map_power(ctx.alpha, key1.level, key1.x);
        for (std::int64_t level2 : h_levels) {
            OrbitKey key2{level2, mid, canonical_index(ctx, level2, mid)};
            auto it = h.support().find(key2);
            if (it == h.support().end()) continue;
            BundlePoint p1 = orbit_rep(ctx, key1);
            BundlePoint p2 = orbit_rep(ctx, key2);
            Complex a = v1;
            Complex b = it->second;
            if (rng) {
                p1 = jitter_point(ctx, *rng, p1);
                p2 = jitter_point(ctx, *rng, p2);
                a = f.value(p1);
                b = h.value(p2);
            }
            BundlePoint product = canonicalize(ctx, compose_points(ctx, p1, p2));
            out.add_at(product, a * b);
        }
    }
    out.prune();
    return out;
}

EquivariantFunction involution(const EquivariantFunction& f) {
    const BundleContext& ctx = *f.context();
    EquivariantFunction out(f.context(), f.grid(), f.level_bound());
    for (const auto& [key, v] : f.support()) {
        TorusPoint x_inv = map_power(ctx.alpha, key.level, key.x);
        std::int64_t level_inv = -key.level;
        OrbitKey key_inv{level_inv, x_inv, canonical_index(ctx, level_inv, x_inv)};
        // f*(rep) = conj(f(rep^{-1})) at the canonical representative.
        BundlePoint rep = orbit_rep(ctx, key_inv);
        BundlePoint rep_inverse{rep.g.inverse(), map_power(ctx.alpha, level_inv, x_inv),
                                flip(rep.index), key.level};
        out.support_[key_inv] = std::conj(f.value(rep_inverse));
    }
    out.prune();
    return out;
}

EquivariantFunction gamma_act(const Phase& z, const EquivariantFunction& f) {
    EquivariantFunction out(f.context(), f.grid(), f.level_bound());
    for (const auto& [key, v] : f.support())
        out.support_[key] = (z * key.level).unit() * v;
    out.prune();
    return out;
}

EquivariantFunction spectral_component(const EquivariantFunction& f, std::int64_t n) {
    EquivariantFunction out(f.context(), f.grid(), f.level_bound());
    for (const auto& [key, v] : f.support())
        if (key.level == n) out.support_[key] = v;
    return out;
}

GridFunction level_zero_as_grid(const EquivariantFunction& f) {
    std::int64_t q = f.grid().q;
    GridFunction out(q);
    for (const auto& [key, v] : f.support()) {
        if (key.level != 0) continue;
        out.at((key.x[0] * q).numerator(), (key.x[1] * q).numerator()) = v;
    }
    return out;
}

EquivariantFunction grid_as_level(const std::shared_ptr<const BundleContext>& ctx,
                                  const OrbitGrid& grid, std::int64_t level_bound,
                                  std::int64_t level, const GridFunction& values) {
    EquivariantFunction out(ctx, grid, level_bound);
    std::int64_t q = grid.q;
    for (std::int64_t a = 0; a < q; ++a)
        for (std::int64_t b = 0; b < q; ++b)
            out.set(level, torus2(Rational(a, q), Rational(b, q)), values.at(a, b));
    return out;
}

namespace {

/// Identification of a spectral-subspace element with a level-1 orbit
/// function: multiply by the spectral phase e(c nu x), read the result as a
/// quasi-periodic function of pure winding c, and sample it as a section of
/// the clutching bundle in each node's canonical chart.
EquivariantFunction identify_level1(const std::shared_ptr<const BundleContext>& ctx,
                                    const OrbitGrid& grid, std::int64_t level_bound,
                                    std::int64_t c, const Rational& nu, const GridFunction& g) {
    std::int64_t q = grid.q;
    GridFunction u = d1_to_mc_multiplier(c, nu, q);
    QuasiPeriodicFunction F(Rational(0), c, q, (u * g).values());
    SectionFunction s = section_from_quasiperiodic(F);
    return grid_as_level(ctx, grid, level_bound, 1, s.values);
}

} // namespace

CrosscheckReport d1_crosscheck_with_family(TransitionFamily family, std::int64_t c,
                                           const Rational& mu, const Rational& nu,
                                           std::int64_t q, std::uint64_t seed, double tol) {
    CrosscheckReport report;
    report.c = c;
    report.q = q;
    report.seed = seed;

    auto ctx = std::make_shared<BundleContext>(
        BundleContext{std::move(family), AffineTorusMap{{mu * 2, nu * 2}}});
    OrbitGrid grid(q, ctx->alpha);
    BimoduleStructure d1 = d1_structure(c, mu, nu, q);

    std::mt19937_64 rng(seed);
    GridFunction g1 = random_grid_function(q, rng);
    GridFunction g2 = random_grid_function(q, rng);
    GridFunction phi = random_grid_function(q, rng);

    auto lift = [&](const GridFunction& g) {
        return identify_level1(ctx, grid, 2, c, nu, g);
    };
    EquivariantFunction f1 = lift(g1);
    EquivariantFunction f2 = lift(g2);
    EquivariantFunction phi0 = grid_as_level(ctx, grid, 2, 0, phi);

    // The identification itself must be consistent with the family's
    // transitions; this is where a corrupted phase shows first.
    {
        GridFunction u = d1_to_mc_multiplier(c, nu, q);
        QuasiPeriodicFunction F(Rational(0), c, q, (u * g1).values());
        SectionFunction s = section_from_quasiperiodic(F);
        report.identification_defect = section_transition_defect(ctx->base, s, F);
        if (report.identification_defect > tol)
            report.failures.push_back("section/transition identification defect " +
                                      std::to_string(report.identification_defect));
    }

    auto record = [&](const std::string& name, double err) {
        report.identity_errors.emplace_back(name, err);
        report.max_error = std::max(report.max_error, err);
        if (err > tol) report.failures.push_back(name + ": error " + std::to_string(err));
    };

    // Left action: (phi . g) matches level-0 * level-1 convolution.
    record("left action",
           max_abs_diff(convolve(phi0, f1, seed), lift(d1.left_act(phi, g1))));
    // Right action: (g . phi) matches level-1 * level-0 convolution.
    record("right action",
           max_abs_diff(convolve(f1, phi0, seed + 1), lift(d1.right_act(g1, phi))));
    // Right inner product: f1* conv f2 lands at level 0.
    record("right inner product",
           max_abs_diff(level_zero_as_grid(convolve(involution(f1), f2, seed + 2)),
                        d1.inner_right(g1, g2)));
    // Left inner product: f1 conv f2*.
    record("left inner product",
           max_abs_diff(level_zero_as_grid(convolve(f1, involution(f2), seed + 3)),
                        d1.inner_left(g1, g2)));
    return report;
}

CrosscheckReport d1_crosscheck(std::int64_t c, const Rational& mu, const Rational& nu,
                               std::int64_t q, std::uint64_t seed, double tol) {
    return d1_crosscheck_with_family(nc_clutching_data(-c), c, mu, nu, q, seed, tol);
}

} // namespace twistoid
