#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "stklein/kinematics.hpp"

namespace stklein {

/// Random step problem outside the no-catch-up band (gap cases included):
/// qV_1, qA_1 in [-2, 2], E_i - qV_1 in 1 + [0.05, 20] (log-uniform),
/// qdV in [-12, 12], qdA in [-6, 6], v_m in [0, 0.97 v_g].
StepProblem random_problem(std::mt19937_64& rng);

/// Like random_problem, but rejects Klein-gap cases and those within 1e-6
/// (relative) of a tangency, so a transmitted channel propagates.
StepProblem random_propagating_problem(std::mt19937_64& rng);

/// Same as random_propagating_problem at v_m = 0.
StepProblem random_static_problem(std::mt19937_64& rng);

struct CheckStats {
    std::string name;
    double tolerance = 0.0;
    std::size_t samples = 0;
    std::size_t failures = 0;
    double max_residual = 0.0;

    void record(double residual);
    bool passed() const { return failures == 0 && samples > 0; }
};

struct VerifyReport {
    std::vector<CheckStats> checks;
    bool passed() const;
};

/// Closed forms against the independent oracles: line-hyperbola roots,
/// radicand bisection for tangent velocities and gap edges, static matching.
VerifyReport run_oracle_checks(std::size_t samples, std::uint64_t seed);

/// Comoving-frame spinor continuity, comoving energy equality, the direct
/// comoving 2x2 solve, and sensitivity to perturbed amplitudes.
VerifyReport run_continuity_checks(std::size_t samples, std::uint64_t seed);

}  // namespace stklein
