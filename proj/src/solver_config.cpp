#include "openup/solver_config.hpp"

#include "openup/errors.hpp"

namespace openup {

void SolverConfig::validate() const {
    if (max_newton_iters < 1) throw ValidationError("SolverConfig: max_newton_iters must be >= 1");
    if (!(newton_tol > 0.0)) throw ValidationError("SolverConfig: newton_tol must be positive");
    if (num_starts < 0) throw ValidationError("SolverConfig: num_starts must be >= 0");
    if (!(homotopy_step_min > 0.0) || !(homotopy_step_initial > 0.0))
        throw ValidationError("SolverConfig: homotopy steps must be positive");
    if (!(homotopy_step_min < homotopy_step_initial) || homotopy_step_initial > 0.5)
        throw ValidationError("SolverConfig: require step_min < step_initial <= 0.5");
    if (!(dedup_radius > 0.0)) throw ValidationError("SolverConfig: dedup_radius must be positive");
    if (workers < 1) throw ValidationError("SolverConfig: workers must be >= 1");
}

}  // namespace openup
