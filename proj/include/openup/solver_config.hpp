#pragma once

#include <cstdint>

namespace openup {

/// Shared knobs for the homotopy solvers.  Identical configuration (including
/// rng_seed) yields identical output regardless of the worker count.
struct SolverConfig {
    int max_newton_iters = 64;
    double newton_tol = 1e-12;        // residual inf-norm target for polished solutions
    int num_starts = 16;              // independent homotopy starts
    double homotopy_step_initial = 0.1;
    double homotopy_step_min = 1e-6;
    std::uint64_t rng_seed = 0;
    double dedup_radius = 1e-6;       // coefficient-space clustering of solutions
    int workers = 1;

    void validate() const;  // throws ValidationError
};

}  // namespace openup
