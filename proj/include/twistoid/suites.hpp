#pragma once

#include <string>
#include <vector>

#include "twistoid/algebra.hpp"
#include "twistoid/json_util.hpp"

namespace twistoid {

/// Shared configuration of the verification suites and the CLI.
struct RunConfig {
    std::int64_t c = 1;
    Rational mu = Rational(1, 4);
    Rational nu = Rational(1, 6);
    std::int64_t grid_q = 24;
    std::int64_t level_bound = 3;
    std::size_t samples = 500;
    std::uint64_t seed = 0;

    AffineTorusMap alpha() const { return AffineTorusMap{{mu * 2, nu * 2}}; }
    /// Throws InvalidConfig when the dynamics does not preserve the grid or
    /// the bounds are degenerate.
    void validate() const;
};

const std::vector<std::string>& suite_names();

/// Runs one verification suite and returns its JSON report. Suite names:
/// cocycle, flip, twist-axioms, associativity, heisenberg, bimodule,
/// algebra. Throws InvalidConfig for unknown names.
Json run_suite(const std::string& name, const RunConfig& cfg);

/// All suites in order, assembled deterministically. Honors the
/// TWISTOID_THREADS environment variable for suite-level parallelism;
/// report assembly stays ordered regardless.
Json run_all(const RunConfig& cfg);

bool report_ok(const Json& report);

} // namespace twistoid
