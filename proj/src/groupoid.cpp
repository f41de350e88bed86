#include "twistoid/groupoid.hpp"

#include <numeric>

namespace twistoid {

GammaElement gamma_compose(const AffineTorusMap& alpha, const GammaElement& a,
                           const GammaElement& b) {
    if (!(map_power(alpha, a.n, a.x) == b.x))
        throw NotComposable("transformation-groupoid arrows do not compose");
    return GammaElement{a.x, a.n + b.n};
}

GammaElement gamma_inverse(const AffineTorusMap& alpha, const GammaElement& a) {
    return GammaElement{map_power(alpha, a.n, a.x), -a.n};
}

LambdaElement::LambdaElement(std::shared_ptr<const BundleContext> ctx, BundlePoint p)
    : ctx_(std::move(ctx)), point_(std::move(p)) {
    if (!ctx_) throw InvalidConfig("null bundle context");
    point_ = canonicalize(*ctx_, point_);
}

LambdaElement LambdaElement::make(std::shared_ptr<const BundleContext> ctx, GroupValue g,
                                  TorusPoint x, RefinedIndex index, std::int64_t level) {
    return LambdaElement(std::move(ctx),
                         BundlePoint{std::move(g), std::move(x), std::move(index), level});
}

LambdaElement LambdaElement::unit_rep(std::shared_ptr<const BundleContext> ctx, TorusPoint x,
                                      std::int64_t level) {
    GroupValue one = ctx->identity();
    RefinedIndex idx = canonical_index(*ctx, level, x);
    return LambdaElement(std::move(ctx), BundlePoint{one, std::move(x), std::move(idx), level});
}

TorusPoint range(const LambdaElement& e) { return e.base(); }

TorusPoint source(const LambdaElement& e) {
    return map_power(e.context()->alpha, e.level(), e.base());
}

namespace {

RefinedIndex concat(const RefinedIndex& a, const RefinedIndex& b, int sign) {
    RefinedIndex out;
    out.sign = sign;
    out.vec = a.vec;
    out.vec.insert(out.vec.end(), b.vec.begin(), b.vec.end());
    return out;
}

RefinedIndex slice(const RefinedIndex& a, std::size_t from, std::size_t count, int sign) {
    RefinedIndex out;
    out.sign = sign;
    out.vec.assign(a.vec.begin() + static_cast<std::ptrdiff_t>(from),
                   a.vec.begin() + static_cast<std::ptrdiff_t>(from + count));
    return out;
}

} // namespace

BundlePoint compose_points(const BundleContext& ctx, const BundlePoint& a,
                           const BundlePoint& b) {
    if (!(map_power(ctx.alpha, a.level, a.x) == b.x))
        throw NotComposable("source/range mismatch");

    const std::int64_t n = a.level;
    const std::int64_t m = b.level;
    const GroupValue gg = a.g * b.g;
    const TorusPoint& x = a.x;

    auto out = [&](GroupValue g, RefinedIndex idx, std::int64_t level) {
        return BundlePoint{std::move(g), x, std::move(idx), level};
    };

    if (n == 0) return out(gg, b.index, m);
    if (m == 0) return out(gg, a.index, n);

    if (n > 0 && m > 0) // (a)
        return out(gg, concat(a.index, b.index, +1), n + m);
    if (n < 0 && m < 0) // (b)
        return out(gg, concat(a.index, b.index, -1), n + m);

    if (n > 0 && m == -n) { // (c) exact cancellation
        GroupValue c = transition_power(ctx, n, a.index, flip(b.index), x);
        return out(c * gg, RefinedIndex{}, 0);
    }
    if (n < 0 && m == -n) { // (d)
        GroupValue c =
            transition_power(ctx, -n, b.index, flip(a.index), map_power(ctx.alpha, n, x));
        return out(c * gg, RefinedIndex{}, 0);
    }

    if (n < 0 && m > 0 && m < -n) { // (e): split a
        std::size_t keep = static_cast<std::size_t>(-n - m);
        RefinedIndex head = slice(a.index, 0, keep, -1);
        RefinedIndex tail = slice(a.index, keep, static_cast<std::size_t>(m), -1);
        GroupValue c =
            transition_power(ctx, m, b.index, flip(tail), map_power(ctx.alpha, n, x));
        return out(c * gg, head, n + m);
    }
    if (n < 0 && m > 0 && m > -n) { // (f): split b
        RefinedIndex head = slice(b.index, 0, static_cast<std::size_t>(-n), +1);
        RefinedIndex tail =
            slice(b.index, static_cast<std::size_t>(-n), static_cast<std::size_t>(n + m), +1);
        GroupValue c =
            transition_power(ctx, -n, head, flip(a.index), map_power(ctx.alpha, n, x));
        return out(c * gg, tail, n + m);
    }
    if (n > 0 && m < 0 && -m > n) { // (g): split b
        RefinedIndex head = slice(b.index, 0, static_cast<std::size_t>(n), -1);
        RefinedIndex tail =
            slice(b.index, static_cast<std::size_t>(n), static_cast<std::size_t>(-m - n), -1);
        GroupValue c = transition_power(ctx, n, a.index, flip(head), x);
        return out(c * gg, tail, n + m);
    }
    // (h): n > 0 > m with n > -m: split a
    RefinedIndex head = slice(a.index, 0, static_cast<std::size_t>(n + m), +1);
    RefinedIndex tail =
        slice(a.index, static_cast<std::size_t>(n + m), static_cast<std::size_t>(-m), +1);
    GroupValue c =
        transition_power(ctx, -m, tail, flip(b.index), map_power(ctx.alpha, n + m, x));
    return out(c * gg, head, n + m);
}

LambdaElement compose(const LambdaElement& a, const LambdaElement& b) {
    if (a.context().get() != b.context().get())
        throw ContextMismatch("arrows from different bundle contexts");
    return LambdaElement(a.context(), compose_points(*a.context(), a.point(), b.point()));
}

LambdaElement inverse(const LambdaElement& e) {
    const BundleContext& ctx = *e.context();
    return LambdaElement(e.context(),
                         BundlePoint{e.g().inverse(), map_power(ctx.alpha, e.level(), e.base()),
                                     flip(e.index()), -e.level()});
}

GammaElement project(const LambdaElement& e) { return GammaElement{e.base(), e.level()}; }

LambdaElement iota(std::shared_ptr<const BundleContext> ctx, const TorusPoint& x,
                   const GroupValue& z) {
    return LambdaElement(std::move(ctx), BundlePoint{z, x, RefinedIndex{}, 0});
}

LambdaElement circle_act(const GroupValue& z, const LambdaElement& e) {
    return LambdaElement(e.context(),
                         BundlePoint{z * e.g(), e.base(), e.index(), e.level()});
}

LatticeSampler::LatticeSampler(std::shared_ptr<const BundleContext> ctx,
                               std::int64_t refinement_factor, std::uint64_t /*seed*/)
    : ctx_(std::move(ctx)) {
    // Lattice fine enough to land in every overlap piece and stay exact
    // under the dynamics: lcm of all arc endpoint denominators and the
    // translation denominators, times the refinement factor.
    std::int64_t lcm = 1;
    auto absorb = [&lcm](const Rational& r) { lcm = std::lcm(lcm, r.denominator()); };
    for (const auto& [i, region] : ctx_->base.cover.charts) {
        for (const auto& piece : region.pieces) {
            for (const auto& arc : piece.arcs) {
                if (arc.full) continue;
                absorb(arc.start);
                absorb(arc.length);
            }
        }
    }
    for (const auto& t : ctx_->alpha.translation) absorb(t);
    denominator_ = lcm * std::max<std::int64_t>(1, refinement_factor);
}

TorusPoint LatticeSampler::point(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::int64_t> pick(0, denominator_ - 1);
    return torus2(Rational(pick(rng), denominator_), Rational(pick(rng), denominator_));
}

GroupValue LatticeSampler::group_value(std::mt19937_64& rng) const {
    std::int64_t m = ctx_->base.group_modulus;
    if (m > 0) {
        std::uniform_int_distribution<std::int64_t> pick(0, m - 1);
        return GroupValue::cyclic(pick(rng), m);
    }
    std::uniform_int_distribution<std::int64_t> pick(0, denominator_ - 1);
    return GroupValue::circle(Rational(pick(rng), denominator_));
}

LambdaElement LatticeSampler::arrow(std::mt19937_64& rng, std::int64_t level) const {
    TorusPoint x = point(rng);
    RefinedIndex idx = canonical_index(*ctx_, level, x);
    return LambdaElement(ctx_, BundlePoint{group_value(rng), std::move(x), std::move(idx), level});
}

BundlePoint LatticeSampler::jitter(std::mt19937_64& rng, const LambdaElement& e) const {
    if (e.level() == 0) return e.point();
    std::int64_t n = e.level();
    RefinedIndex idx;
    idx.sign = n > 0 ? +1 : -1;
    for (std::size_t k = 0; k < e.index().length(); ++k) {
        TorusPoint probe = n > 0
                               ? map_power(ctx_->alpha, static_cast<std::int64_t>(k), e.base())
                               : map_power(ctx_->alpha, -static_cast<std::int64_t>(k) - 1,
                                           e.base());
        auto options = charts_containing(ctx_->base.cover, probe);
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        idx.vec.push_back(options[pick(rng)]);
    }
    GroupValue g = transition_power(*ctx_, n, e.index(), idx, e.base()) * e.g();
    return BundlePoint{g, e.base(), idx, n};
}

TwistAxiomsReport twist_axioms_report(std::shared_ptr<const BundleContext> ctx,
                                      std::size_t samples, std::uint64_t seed,
                                      std::int64_t level_bound,
                                      std::int64_t refinement_factor) {
    TwistAxiomsReport report;
    report.samples = samples;
    report.seed = seed;
    std::mt19937_64 rng(seed);
    LatticeSampler sampler(ctx, refinement_factor, seed);
    std::uniform_int_distribution<std::int64_t> level_pick(-level_bound, level_bound);

    for (std::size_t s = 0; s < samples; ++s) {
        // iota is injective and the action is free.
        TorusPoint x = sampler.point(rng);
        GroupValue z = sampler.group_value(rng);
        GroupValue w = sampler.group_value(rng);
        ++report.injectivity_checked;
        if (z != w && iota(ctx, x, z) == iota(ctx, x, w))
            report.failures.push_back("iota not injective in the group coordinate");
        LambdaElement lambda = sampler.arrow(rng, level_pick(rng));
        if (!z.is_identity() && circle_act(z, lambda) == lambda)
            report.failures.push_back("group action has a fixed point");

        // The projection hits every sampled arrow of the base groupoid.
        ++report.surjectivity_checked;
        GammaElement target{sampler.point(rng), level_pick(rng)};
        LambdaElement lift = LambdaElement::unit_rep(ctx, target.x, target.n);
        if (!(project(lift) == target))
            report.failures.push_back("projection misses a sampled base arrow");

        // Fiber condition: same projection implies a group translate.
        ++report.fiber_checked;
        LambdaElement fiber_mate = circle_act(sampler.group_value(rng), lambda);
        if (project(fiber_mate) == project(lambda)) {
            GroupValue diff = fiber_mate.g() * lambda.g().inverse();
            if (!(circle_act(diff, lambda) == fiber_mate))
                report.failures.push_back("fiber condition fails");
        }

        // Centrality: lambda iota(s(lambda), z) == iota(r(lambda), z) lambda.
        ++report.centrality_checked;
        LambdaElement left = compose(lambda, iota(ctx, source(lambda), z));
        LambdaElement right = compose(iota(ctx, range(lambda), z), lambda);
        if (!(left == right))
            report.failures.push_back("central action identity fails");
        if (!(project(left) == project(lambda)))
            report.failures.push_back("central translate changes the projection");
    }
    return report;
}

} // namespace twistoid
