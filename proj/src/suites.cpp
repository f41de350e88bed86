#include "twistoid/suites.hpp"

#include <cstdlib>
#include <future>
#include <random>
#include <set>

#include "twistoid/heisenberg.hpp"

namespace twistoid {

void RunConfig::validate() const {
    if (grid_q <= 0) throw InvalidConfig("grid denominator must be positive");
    if (level_bound < 1) throw InvalidConfig("level bound must be at least 1");
    if (samples == 0) throw InvalidConfig("sample count must be positive");
    if ((reduce_mod1(mu * 2) * grid_q).denominator() != 1 ||
        (reduce_mod1(nu * 2) * grid_q).denominator() != 1)
        throw InvalidConfig("2*mu and 2*nu must be multiples of 1/grid");
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "cocycle",    "flip",     "twist-axioms", "associativity",
        "heisenberg", "bimodule", "algebra"};
    return names;
}

namespace {

Json config_json(const RunConfig& cfg) {
    Json j;
    j["c"] = cfg.c;
    j["mu"] = rational_to_json(cfg.mu);
    j["nu"] = rational_to_json(cfg.nu);
    j["grid"] = cfg.grid_q;
    j["levels"] = cfg.level_bound;
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    return j;
}

struct CheckCollector {
    Json checks = Json::array();
    bool all_ok = true;

    void add(const std::string& name, std::size_t count, std::vector<std::string> failures,
             Json extra = Json()) {
        Json c;
        c["name"] = name;
        c["checked"] = count;
        if (!extra.is_null())
            for (auto& [k, v] : extra.items()) c[k] = v;
        c["failures"] = failures;
        if (!failures.empty()) all_ok = false;
        checks.push_back(std::move(c));
    }

    Json finish(const std::string& suite, const RunConfig& cfg) const {
        Json out;
        out["suite"] = suite;
        out["config"] = config_json(cfg);
        out["checks"] = checks;
        out["ok"] = all_ok;
        return out;
    }
};

std::shared_ptr<const BundleContext> qhm_context(const RunConfig& cfg, std::int64_t c) {
    return std::make_shared<BundleContext>(BundleContext{nc_clutching_data(c), cfg.alpha()});
}

RefinedIndex random_valid_index(const BundleContext& ctx, std::int64_t n, const TorusPoint& x,
                                std::mt19937_64& rng) {
    RefinedIndex idx;
    idx.sign = n > 0 ? +1 : -1;
    std::int64_t len = n < 0 ? -n : n;
    for (std::int64_t k = 0; k < len; ++k) {
        TorusPoint probe = n > 0 ? map_power(ctx.alpha, k, x) : map_power(ctx.alpha, -k - 1, x);
        auto options = charts_containing(ctx.base.cover, probe);
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        idx.vec.push_back(options[pick(rng)]);
    }
    return idx;
}

RefinedIndex concat_idx(const RefinedIndex& a, const RefinedIndex& b, int sign) {
    RefinedIndex out;
    out.sign = sign;
    out.vec = a.vec;
    out.vec.insert(out.vec.end(), b.vec.begin(), b.vec.end());
    return out;
}

RefinedIndex slice_idx(const RefinedIndex& a, std::size_t from, std::size_t count, int sign) {
    RefinedIndex out;
    out.sign = sign;
    out.vec.assign(a.vec.begin() + static_cast<std::ptrdiff_t>(from),
                   a.vec.begin() + static_cast<std::ptrdiff_t>(from + count));
    return out;
}

Json suite_cocycle(const RunConfig& cfg) {
    CheckCollector out;
    TransitionFamily family = nc_clutching_data(cfg.c);
    CocycleReport base = cocycle_check(family, 48);
    out.add("base cocycle conditions on the 1/48 lattice", base.points_checked, base.failures);

    // Derived transitions inherit the three conditions on refined covers.
    auto ctx = qhm_context(cfg, cfg.c);
    std::mt19937_64 rng(cfg.seed);
    LatticeSampler sampler(ctx, 8, cfg.seed);
    std::size_t checked = 0;
    std::vector<std::string> failures;
    for (std::int64_t n = -4; n <= 4 && failures.empty(); ++n) {
        if (n == 0) continue;
        for (std::size_t s = 0; s < cfg.samples / 8 + 1; ++s) {
            TorusPoint x = sampler.point(rng);
            RefinedIndex i = random_valid_index(*ctx, n, x, rng);
            RefinedIndex j = random_valid_index(*ctx, n, x, rng);
            RefinedIndex k = random_valid_index(*ctx, n, x, rng);
            GroupValue one = ctx->identity();
            ++checked;
            try {
                if (transition_power(*ctx, n, i, i, x) != one)
                    failures.push_back("derived c_{i,i} != 1 at level " + std::to_string(n));
                GroupValue cij = transition_power(*ctx, n, i, j, x);
                GroupValue cji = transition_power(*ctx, n, j, i, x);
                if (cij * cji != one)
                    failures.push_back("derived inverse condition fails at level " +
                                       std::to_string(n));
                GroupValue cjk = transition_power(*ctx, n, j, k, x);
                GroupValue cik = transition_power(*ctx, n, i, k, x);
                if (cij * cjk != cik)
                    failures.push_back("derived cocycle condition fails at level " +
                                       std::to_string(n));
            } catch (const Error& e) {
                failures.push_back(e.what());
            }
        }
    }
    out.add("derived transition cocycle conditions, |n| <= 4", checked, failures);
    return out.finish("cocycle", cfg);
}

Json suite_flip(const RunConfig& cfg) {
    CheckCollector out;
    auto ctx = qhm_context(cfg, cfg.c);
    std::mt19937_64 rng(cfg.seed);
    LatticeSampler sampler(ctx, 8, cfg.seed);
    std::uniform_int_distribution<std::int64_t> mag(1, 4);
    std::uniform_int_distribution<int> sign(0, 1);
    std::size_t checked = 0;
    std::vector<std::string> failures;
    for (std::size_t s = 0; s < cfg.samples; ++s) {
        std::int64_t n = mag(rng) * (sign(rng) ? 1 : -1);
        TorusPoint x = sampler.point(rng);
        RefinedIndex i = random_valid_index(*ctx, n, x, rng);
        RefinedIndex j = random_valid_index(*ctx, n, x, rng);
        ++checked;
        try {
            if (!flip_identity_check(*ctx, n, i, j, x))
                failures.push_back("flip identity fails at level " + std::to_string(n));
        } catch (const Error& e) {
            failures.push_back(e.what());
        }
    }
    out.add("flip identities, both variants, |n| <= 4", checked, failures);
    return out.finish("flip", cfg);
}

Json suite_twist_axioms(const RunConfig& cfg) {
    CheckCollector out;
    {
        auto ctx = qhm_context(cfg, cfg.c);
        TwistAxiomsReport r =
            twist_axioms_report(ctx, cfg.samples, cfg.seed, cfg.level_bound);
        Json extra;
        extra["injectivity"] = r.injectivity_checked;
        extra["surjectivity"] = r.surjectivity_checked;
        extra["fiber"] = r.fiber_checked;
        extra["centrality"] = r.centrality_checked;
        out.add("twist axioms over the circle group", r.samples, r.failures, extra);
    }
    {
        // Same groupoid mechanics with a finite cyclic structure group.
        TransitionFamily family = nc_clutching_data(cfg.c);
        TransitionFamily zfam;
        zfam.cover = family.cover;
        zfam.group_modulus = 6;
        for (const auto& [key, pieces] : family.transitions) {
            std::vector<TransitionPiece> constant;
            for (const auto& piece : pieces) {
                std::int64_t r = ((piece.phase.a2 % 6) + 6) % 6;
                if (key.first > key.second) r = (6 - r) % 6;
                constant.push_back(
                    TransitionPiece{piece.region, AffinePhase{Rational(r, 6), 0, 0}});
            }
            zfam.transitions[key] = constant;
        }
        auto ctx = std::make_shared<BundleContext>(BundleContext{zfam, cfg.alpha()});
        TwistAxiomsReport r =
            twist_axioms_report(ctx, cfg.samples / 4 + 1, cfg.seed, cfg.level_bound);
        out.add("twist axioms over Z/6", r.samples, r.failures);
    }
    return out.finish("twist-axioms", cfg);
}

Json suite_associativity(const RunConfig& cfg) {
    CheckCollector out;
    auto ctx = qhm_context(cfg, cfg.c);
    std::mt19937_64 rng(cfg.seed);
    LatticeSampler sampler(ctx, 8, cfg.seed);
    const std::int64_t L = std::max<std::int64_t>(3, cfg.level_bound);
    std::uniform_int_distribution<std::int64_t> mag(1, L);
    const std::size_t per_pattern = std::max<std::size_t>(200, cfg.samples / 27);

    std::size_t checked = 0;
    std::vector<std::string> failures;
    for (int sm = -1; sm <= 1; ++sm) {
        for (int sn = -1; sn <= 1; ++sn) {
            for (int sp = -1; sp <= 1; ++sp) {
                for (std::size_t t = 0; t < per_pattern && failures.size() < 8; ++t) {
                    std::int64_t m = sm * mag(rng);
                    std::int64_t n = sn * mag(rng);
                    std::int64_t p = sp * mag(rng);
                    TorusPoint x = sampler.point(rng);
                    try {
                        LambdaElement l1 = LambdaElement::make(
                            ctx, sampler.group_value(rng), x, canonical_index(*ctx, m, x), m);
                        TorusPoint xm = map_power(ctx->alpha, m, x);
                        TorusPoint xmn = map_power(ctx->alpha, m + n, x);
                        LambdaElement l2 = LambdaElement::make(
                            ctx, sampler.group_value(rng), xm, canonical_index(*ctx, n, xm), n);
                        LambdaElement l3 = LambdaElement::make(
                            ctx, sampler.group_value(rng), xmn, canonical_index(*ctx, p, xmn),
                            p);
                        ++checked;
                        if (!(compose(compose(l1, l2), l3) == compose(l1, compose(l2, l3))))
                            failures.push_back("associativity fails for pattern (" +
                                               std::to_string(m) + "," + std::to_string(n) +
                                               "," + std::to_string(p) + ")");
                        // Units and inverses, plus the projection morphism.
                        LambdaElement unit_r = iota(ctx, range(l1), ctx->identity());
                        LambdaElement unit_s = iota(ctx, source(l1), ctx->identity());
                        if (!(compose(unit_r, l1) == l1) || !(compose(l1, unit_s) == l1))
                            failures.push_back("unit law fails");
                        if (!(compose(l1, inverse(l1)) == unit_r) ||
                            !(compose(inverse(l1), l1) == unit_s))
                            failures.push_back("inverse law fails");
                        GammaElement pr = gamma_compose(ctx->alpha, project(l1), project(l2));
                        if (!(project(compose(l1, l2)) == pr))
                            failures.push_back("projection is not multiplicative");
                    } catch (const Error& e) {
                        failures.push_back(e.what());
                    }
                }
            }
        }
    }
    out.add("associativity, units, inverses across all 27 sign patterns", checked, failures);

    // The worked mixed pattern m < 0 < n, p < 0 with |m| > n, n < |p|, and
    // the exact transition identity behind its associativity.
    std::size_t worked_checked = 0;
    std::vector<std::string> worked_failures;
    for (std::size_t t = 0; t < per_pattern && worked_failures.size() < 8; ++t) {
        std::uniform_int_distribution<std::int64_t> small(1, L - 1);
        std::int64_t n = small(rng);
        std::uniform_int_distribution<std::int64_t> big(n + 1, L);
        std::int64_t m = -big(rng);
        std::int64_t p = -big(rng);
        TorusPoint x = sampler.point(rng);
        try {
            TorusPoint xm = map_power(ctx->alpha, m, x);
            TorusPoint xmn = map_power(ctx->alpha, m + n, x);
            LambdaElement l1 = LambdaElement::make(ctx, sampler.group_value(rng), x,
                                                   canonical_index(*ctx, m, x), m);
            LambdaElement l2 = LambdaElement::make(ctx, sampler.group_value(rng), xm,
                                                   canonical_index(*ctx, n, xm), n);
            LambdaElement l3 = LambdaElement::make(ctx, sampler.group_value(rng), xmn,
                                                   canonical_index(*ctx, p, xmn), p);
            ++worked_checked;
            if (!(compose(compose(l1, l2), l3) == compose(l1, compose(l2, l3))))
                worked_failures.push_back("worked-pattern associativity fails");

            // Exact phase identity with random valid representatives.
            RefinedIndex i = random_valid_index(*ctx, m, x, rng);
            RefinedIndex j = random_valid_index(*ctx, n, xm, rng);
            RefinedIndex k = random_valid_index(*ctx, p, xmn, rng);
            RefinedIndex i1 = slice_idx(i, 0, static_cast<std::size_t>(-m - n), -1);
            RefinedIndex i2 = slice_idx(i, static_cast<std::size_t>(-m - n),
                                        static_cast<std::size_t>(n), -1);
            RefinedIndex k1 = slice_idx(k, 0, static_cast<std::size_t>(n), -1);
            RefinedIndex k2 = slice_idx(k, static_cast<std::size_t>(n),
                                        static_cast<std::size_t>(-p - n), -1);
            GroupValue lhs =
                transition_power(*ctx, n, j, flip(k1), xm) *
                transition_power(*ctx, m + n + p, concat_idx(i, k2, -1), concat_idx(i1, k, -1),
                                 x);
            GroupValue rhs = transition_power(*ctx, n, j, flip(i2), xm);
            if (lhs != rhs)
                worked_failures.push_back("associativity transition identity fails");
        } catch (const Error& e) {
            worked_failures.push_back(e.what());
        }
    }
    out.add("worked pattern and its transition identity", worked_checked, worked_failures);

    // Representative independence of the product.
    std::size_t rep_checked = 0;
    std::vector<std::string> rep_failures;
    std::uniform_int_distribution<std::int64_t> lev(-L, L);
    for (std::size_t t = 0; t < std::max<std::size_t>(500, cfg.samples); ++t) {
        std::int64_t m = lev(rng), n = lev(rng);
        TorusPoint x = sampler.point(rng);
        try {
            LambdaElement l1 = LambdaElement::make(ctx, sampler.group_value(rng), x,
                                                   canonical_index(*ctx, m, x), m);
            TorusPoint xm = map_power(ctx->alpha, m, x);
            LambdaElement l2 = LambdaElement::make(ctx, sampler.group_value(rng), xm,
                                                   canonical_index(*ctx, n, xm), n);
            BundlePoint j1 = sampler.jitter(rng, l1);
            BundlePoint j2 = sampler.jitter(rng, l2);
            ++rep_checked;
            BundlePoint raw = compose_points(*ctx, j1, j2);
            if (!(canonicalize(*ctx, raw) == compose(l1, l2).point()))
                rep_failures.push_back("product depends on the representative");
        } catch (const Error& e) {
            rep_failures.push_back(e.what());
        }
    }
    out.add("representative independence of the product", rep_checked, rep_failures);
    return out.finish("associativity", cfg);
}

Json suite_heisenberg(const RunConfig& cfg) {
    CheckCollector out;
    std::int64_t c = cfg.c == 0 ? 1 : cfg.c;
    HeisenbergReport r = heisenberg_check(c, cfg.grid_q, cfg.seed, cfg.samples);
    Json extra;
    extra["group_axiom_samples"] = r.group_axiom_samples;
    extra["lattice_samples"] = r.lattice_samples;
    Json conds = Json::array();
    std::vector<std::string> failures = r.failures;
    for (const auto& [name, passed] : r.conditions) {
        Json c_entry;
        c_entry["name"] = name;
        c_entry["ok"] = passed;
        conds.push_back(std::move(c_entry));
        if (!passed) failures.push_back("condition " + name + " fails");
    }
    extra["conditions"] = conds;
    out.add("group, lattice, circle action and identification conditions",
            r.group_axiom_samples + r.lattice_samples, failures, extra);
    return out.finish("heisenberg", cfg);
}

Json suite_bimodule(const RunConfig& cfg) {
    CheckCollector out;
    const std::int64_t q = cfg.grid_q;
    const std::int64_t c = cfg.c == 0 ? 1 : cfg.c;
    const std::size_t samples = std::max<std::size_t>(8, cfg.samples / 64);
    const double tol = 1e-9;
    TorusAutomorphism alpha_aut{cfg.alpha()};

    auto add_axioms = [&](const BimoduleStructure& m) {
        AxiomReport r = check_bimodule_axioms(m, cfg.seed, samples, tol);
        Json extra;
        extra["max_error"] = r.max_error;
        out.add("axioms: " + m.name, r.samples, r.failures, extra);
    };
    add_axioms(a_theta(TorusAutomorphism::identity(), q));
    add_axioms(a_theta(alpha_aut, q));
    add_axioms(mc_structure(c, q));
    add_axioms(d1_structure(c, cfg.mu, cfg.nu, q));
    add_axioms(symmetrize(d1_structure(c, cfg.mu, cfg.nu, q)));
    add_axioms(conjugate(mc_structure(c, q), alpha_aut));
    add_axioms(tensor_with_a_theta(mc_structure(c, q), alpha_aut));
    TransitionFamily clutching = nc_clutching_data(-c);
    add_axioms(lt_structure(clutching, q));
    add_axioms(h_correspondence(clutching, cfg.alpha(), q));

    auto add_symmetry = [&](const BimoduleStructure& m) {
        AxiomReport r = check_symmetric(m, cfg.seed, samples, tol);
        Json extra;
        extra["max_error"] = r.max_error;
        out.add("symmetric: " + m.name, r.samples, r.failures, extra);
    };
    add_symmetry(mc_structure(c, q));
    add_symmetry(lt_structure(clutching, q));
    add_symmetry(symmetrize(d1_structure(c, cfg.mu, cfg.nu, q)));

    // Spectral subspace against the twisted symmetric module.
    {
        GridFunction u = d1_to_mc_multiplier(c, cfg.nu, q);
        AxiomReport r = check_multiplier_isomorphism(
            d1_structure(c, cfg.mu, cfg.nu, q),
            tensor_with_a_theta(mc_structure(c, q), alpha_aut), u, cfg.seed, samples, tol);
        Json extra;
        extra["max_error"] = r.max_error;
        out.add("d1 = m^c (x) a_alpha via the spectral multiplier", r.samples, r.failures,
                extra);
        AxiomReport rs = check_multiplier_isomorphism(
            symmetrize(d1_structure(c, cfg.mu, cfg.nu, q)), mc_structure(c, q), u, cfg.seed,
            samples, tol);
        Json extra2;
        extra2["max_error"] = rs.max_error;
        out.add("symmetrize(d1) = m^c via the spectral multiplier", rs.samples, rs.failures,
                extra2);
    }

    // a_alpha (x) a_beta = a_{alpha beta} through xi (x) eta -> xi.alpha(eta).
    {
        std::mt19937_64 rng(cfg.seed);
        TorusAutomorphism beta = TorusAutomorphism::translation(Rational(1, 8), Rational(3, 8));
        BimoduleStructure a1 = a_theta(alpha_aut, q);
        BimoduleStructure a2 = a_theta(beta, q);
        BimoduleStructure a12 = a_theta(alpha_aut.after(beta), q);
        std::vector<std::string> failures;
        double max_err = 0.0;
        for (std::size_t s = 0; s < samples; ++s) {
            GridFunction xi = random_grid_function(q, rng);
            GridFunction eta = random_grid_function(q, rng);
            GridFunction xi2 = random_grid_function(q, rng);
            GridFunction eta2 = random_grid_function(q, rng);
            GridFunction a = random_grid_function(q, rng);
            auto embed = [&](const GridFunction& u1, const GridFunction& u2) {
                return a1.right_act(u1, u2);
            };
            GridFunction left = a12.inner_right(embed(xi, eta), embed(xi2, eta2));
            GridFunction right =
                a2.inner_right(eta, a2.left_act(a1.inner_right(xi, xi2), eta2));
            max_err = std::max(max_err, max_abs_diff(left, right));
            max_err = std::max(max_err, max_abs_diff(embed(xi, a2.right_act(eta, a)),
                                                     a12.right_act(embed(xi, eta), a)));
            max_err = std::max(max_err, max_abs_diff(embed(a1.left_act(a, xi), eta),
                                                     a12.left_act(a, embed(xi, eta))));
        }
        if (max_err > tol) failures.push_back("tensor identification error");
        Json extra;
        extra["max_error"] = max_err;
        out.add("a_alpha (x) a_beta = a_{alpha beta}", samples, failures, extra);
    }

    // Sections of the clutching bundle against the symmetric module.
    {
        std::mt19937_64 rng(cfg.seed + 17);
        GridFunction raw = random_grid_function(q, rng);
        QuasiPeriodicFunction F(Rational(0), c, q, raw.values());
        SectionFunction s = section_from_quasiperiodic(F);
        double defect = section_transition_defect(clutching, s, F);
        std::vector<std::string> failures;
        if (defect > tol)
            failures.push_back("section/transition identification defect");
        GridFunction kappa(q);
        for (std::int64_t a = 0; a < q; ++a) {
            TorusPoint xp = torus2(Rational(a, q), Rational(0));
            int chart = charts_containing(clutching.cover, xp).front();
            std::int64_t k0 =
                rational_floor(clutching_lift(chart, Rational(a, q)) - Rational(a, q));
            for (std::int64_t b = 0; b < q; ++b)
                kappa.at(a, b) = Phase(Rational(b, q) * (c * k0)).unit();
        }
        AxiomReport r = check_multiplier_isomorphism(mc_structure(c, q),
                                                     lt_structure(clutching, q), kappa,
                                                     cfg.seed, samples, tol);
        Json extra;
        extra["identification_defect"] = defect;
        extra["max_error"] = r.max_error;
        for (const auto& msg : r.failures) failures.push_back(msg);
        out.add("sections of the clutching bundle realize m^c", r.samples, failures, extra);
    }

    // The correspondence of the dynamics is the twisted section module.
    {
        GridFunction one(q, Complex(1.0, 0.0));
        AxiomReport r = check_multiplier_isomorphism(
            tensor_with_a_theta(lt_structure(clutching, q), alpha_aut),
            h_correspondence(clutching, cfg.alpha(), q), one, cfg.seed, samples, tol);
        Json extra;
        extra["max_error"] = r.max_error;
        out.add("h = l_t (x) a_alpha", r.samples, r.failures, extra);
    }

    {
        AxiomReport r = d1_fullness_witness(c, cfg.mu, cfg.nu, q);
        Json extra;
        extra["max_error"] = r.max_error;
        out.add("fullness witness for d1", 1, r.failures, extra);
    }

    // Degree arithmetic.
    {
        std::vector<std::string> failures;
        std::size_t checked = 0;
        for (std::int64_t d = -3; d <= 3; ++d) {
            ++checked;
            try {
                if (winding_degree(nc_clutching_data(d)) != d)
                    failures.push_back("clutching degree differs from " + std::to_string(d));
            } catch (const Error& e) {
                failures.push_back(e.what());
            }
        }
        std::mt19937_64 rng(cfg.seed + 5);
        std::uniform_int_distribution<std::int64_t> pick(-5, 5);
        for (int t = 0; t < 10; ++t) {
            std::int64_t c1 = pick(rng), c2 = pick(rng);
            ++checked;
            try {
                TransitionFamily tensor =
                    tensor_transitions(nc_clutching_data(c1), nc_clutching_data(c2));
                if (winding_degree(tensor) != c1 + c2)
                    failures.push_back("tensor degree is not additive");
            } catch (const Error& e) {
                failures.push_back(e.what());
            }
        }
        out.add("winding degrees and tensor additivity", checked, failures);
    }
    return out.finish("bimodule", cfg);
}

EquivariantFunction random_equivariant(const std::shared_ptr<const BundleContext>& ctx,
                                       const OrbitGrid& grid, std::int64_t bound,
                                       std::mt19937_64& rng, std::size_t support_size) {
    EquivariantFunction f(ctx, grid, bound);
    std::uniform_int_distribution<std::int64_t> node(0, grid.q - 1);
    std::uniform_int_distribution<std::int64_t> lev(-bound, bound);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t s = 0; s < support_size; ++s) {
        TorusPoint x = torus2(Rational(node(rng), grid.q), Rational(node(rng), grid.q));
        f.set(lev(rng), x, Complex(u(rng), u(rng)));
    }
    return f;
}

Json suite_algebra(const RunConfig& cfg) {
    CheckCollector out;
    const std::int64_t c = cfg.c == 0 ? 1 : cfg.c;
    const std::int64_t q = cfg.grid_q;
    const double tol = 1e-9;
    auto ctx = qhm_context(cfg, -c);
    OrbitGrid grid(q, ctx->alpha);
    std::mt19937_64 rng(cfg.seed);
    const std::size_t trials = std::max<std::size_t>(4, cfg.samples / 64);

    {
        std::vector<std::string> failures;
        double max_err = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            EquivariantFunction f = random_equivariant(ctx, grid, cfg.level_bound, rng, 12);
            EquivariantFunction g = random_equivariant(ctx, grid, cfg.level_bound, rng, 12);
            EquivariantFunction h = random_equivariant(ctx, grid, cfg.level_bound, rng, 12);
            max_err = std::max(
                max_err, max_abs_diff(convolve(convolve(f, g), h), convolve(f, convolve(g, h))));
        }
        if (max_err > tol) failures.push_back("convolution associativity error");
        Json extra;
        extra["max_error"] = max_err;
        out.add("convolution associativity", trials, failures, extra);
    }
    {
        std::vector<std::string> failures;
        double max_err = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            EquivariantFunction f = random_equivariant(ctx, grid, cfg.level_bound, rng, 12);
            EquivariantFunction g = random_equivariant(ctx, grid, cfg.level_bound, rng, 12);
            max_err = std::max(max_err, max_abs_diff(involution(involution(f)), f));
            max_err = std::max(max_err, max_abs_diff(involution(convolve(f, g)),
                                                     convolve(involution(g), involution(f))));
            Complex z(0.4, -0.8);
            max_err = std::max(max_err, max_abs_diff(involution(f * z),
                                                     involution(f) * std::conj(z)));
        }
        if (max_err > tol) failures.push_back("*-algebra axioms error");
        Json extra;
        extra["max_error"] = max_err;
        out.add("involution axioms", trials, failures, extra);
    }
    {
        std::vector<std::string> failures;
        double max_err = 0.0;
        Phase z(Rational(3, 7));
        for (std::size_t t = 0; t < trials; ++t) {
            EquivariantFunction f = random_equivariant(ctx, grid, cfg.level_bound, rng, 12);
            EquivariantFunction g = random_equivariant(ctx, grid, cfg.level_bound, rng, 12);
            max_err = std::max(max_err, max_abs_diff(gamma_act(z, convolve(f, g)),
                                                     convolve(gamma_act(z, f), gamma_act(z, g))));
            max_err = std::max(max_err, max_abs_diff(gamma_act(Phase(), f), f));
            // Fourier projection onto each level.
            std::int64_t order = 2 * cfg.level_bound + 2;
            for (std::int64_t p = -cfg.level_bound; p <= cfg.level_bound; ++p) {
                EquivariantFunction acc(ctx, grid, cfg.level_bound);
                for (std::int64_t k = 0; k < order; ++k) {
                    Phase zk(Rational(k, order));
                    acc = acc + gamma_act(zk, f) * std::conj((zk * p).unit()) *
                                    (1.0 / static_cast<double>(order));
                }
                max_err = std::max(max_err, max_abs_diff(acc, spectral_component(f, p)));
            }
        }
        if (max_err > tol) failures.push_back("grading automorphism / projection error");
        Json extra;
        extra["max_error"] = max_err;
        out.add("dual action grading and spectral projections", trials, failures, extra);
    }
    {
        // Level-0 subalgebra is the commutative grid algebra.
        std::vector<std::string> failures;
        double max_err = 0.0;
        GridFunction phi = random_grid_function(q, rng);
        GridFunction psi = random_grid_function(q, rng);
        EquivariantFunction f = grid_as_level(ctx, grid, cfg.level_bound, 0, phi);
        EquivariantFunction g = grid_as_level(ctx, grid, cfg.level_bound, 0, psi);
        max_err = std::max(max_err, max_abs_diff(convolve(f, g), convolve(g, f)));
        max_err = std::max(max_err,
                           max_abs_diff(level_zero_as_grid(convolve(f, g)), phi * psi));
        if (max_err > tol) failures.push_back("level-0 subalgebra error");
        Json extra;
        extra["max_error"] = max_err;
        out.add("level-0 subalgebra is pointwise multiplication", 1, failures, extra);
    }
    {
        // Convolution of deltas against the groupoid product, and the level
        // grading of supports.
        std::vector<std::string> failures;
        std::size_t checked = 0;
        std::uniform_int_distribution<std::int64_t> lev(-2, 2);
        std::uniform_int_distribution<std::int64_t> node(0, q - 1);
        for (std::size_t t = 0; t < std::max<std::size_t>(32, trials * 8); ++t) {
            std::int64_t n1 = lev(rng), n2 = lev(rng);
            TorusPoint x = torus2(Rational(node(rng), q), Rational(node(rng), q));
            LambdaElement l1 = LambdaElement::unit_rep(ctx, x, n1);
            LambdaElement l2 =
                LambdaElement::unit_rep(ctx, map_power(ctx->alpha, n1, x), n2);
            EquivariantFunction f(ctx, grid, cfg.level_bound);
            EquivariantFunction g(ctx, grid, cfg.level_bound);
            Complex va(0.6, -0.2), vb(-0.3, 0.9);
            f.set(n1, x, va);
            g.set(n2, map_power(ctx->alpha, n1, x), vb);
            EquivariantFunction fg = convolve(f, g);
            ++checked;
            LambdaElement product = compose(l1, l2);
            // fg is the delta at the product orbit; the stored value at the
            // phase-0 representative carries the case's transition phase.
            if (std::abs(fg.value(product.point()) - va * vb) > tol)
                failures.push_back("delta convolution disagrees with the product");
            Complex at_zero_rep = fg.value(BundlePoint{ctx->identity(), product.base(),
                                                       product.index(), product.level()});
            if (std::abs(at_zero_rep - product.g().inverse().unit() * va * vb) > tol)
                failures.push_back("delta convolution phase differs from the case phase");
            for (const auto& [key, v] : fg.support())
                if (key.level != n1 + n2) failures.push_back("level grading violated");
        }
        out.add("delta convolutions follow the groupoid product", checked, failures);
    }
    {
        CrosscheckReport r = d1_crosscheck(c, cfg.mu, cfg.nu, q, cfg.seed, tol);
        Json extra;
        extra["max_error"] = r.max_error;
        extra["identification_defect"] = r.identification_defect;
        Json ids = Json::array();
        for (const auto& [name, err] : r.identity_errors) {
            Json e;
            e["name"] = name;
            e["error"] = err;
            ids.push_back(std::move(e));
        }
        extra["identities"] = ids;
        out.add("spectral subspace crosscheck", r.identity_errors.size(), r.failures, extra);
    }
    return out.finish("algebra", cfg);
}

} // namespace

Json run_suite(const std::string& name, const RunConfig& cfg) {
    cfg.validate();
    if (name == "cocycle") return suite_cocycle(cfg);
    if (name == "flip") return suite_flip(cfg);
    if (name == "twist-axioms") return suite_twist_axioms(cfg);
    if (name == "associativity") return suite_associativity(cfg);
    if (name == "heisenberg") return suite_heisenberg(cfg);
    if (name == "bimodule") return suite_bimodule(cfg);
    if (name == "algebra") return suite_algebra(cfg);
    throw InvalidConfig("unknown suite: " + name);
}

Json run_all(const RunConfig& cfg) {
    cfg.validate();
    std::size_t threads = 1;
    if (const char* env = std::getenv("TWISTOID_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) threads = static_cast<std::size_t>(v);
    }
    const auto& names = suite_names();
    std::vector<Json> results(names.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < names.size(); ++i) results[i] = run_suite(names[i], cfg);
    } else {
        std::vector<std::future<Json>> futures;
        futures.reserve(names.size());
        for (const auto& name : names)
            futures.push_back(
                std::async(std::launch::async, [&cfg, name] { return run_suite(name, cfg); }));
        for (std::size_t i = 0; i < futures.size(); ++i) results[i] = futures[i].get();
    }
    Json out;
    out["suite"] = "all";
    out["config"] = config_json(cfg);
    Json suites = Json::array();
    bool ok = true;
    for (auto& r : results) {
        ok = ok && r.at("ok").get<bool>();
        suites.push_back(std::move(r));
    }
    out["suites"] = std::move(suites);
    out["ok"] = ok;
    return out;
}

bool report_ok(const Json& report) { return report.at("ok").get<bool>(); }

} // namespace twistoid
