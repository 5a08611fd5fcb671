#pragma once

// Internal predictor-corrector path tracker and damped Newton, shared by the
// two homotopy solvers.  Not installed.

#include <Eigen/Dense>
#include <functional>
#include <optional>

namespace openup::detail {

struct PathSystem {
    std::function<void(const Eigen::VectorXcd& x, double t, Eigen::VectorXcd& r)> residual;
    std::function<void(const Eigen::VectorXcd& x, double t, Eigen::MatrixXcd& jac)> jacobian;
    std::function<void(const Eigen::VectorXcd& x, double t, Eigen::VectorXcd& v)> dresidual_dt;
};

struct TrackOptions {
    double step_initial = 0.1;
    double step_min = 1e-6;
    double corrector_tol = 1e-9;
    int max_corrector_iters = 4;
    double step_growth = 2.0;
    int successes_before_growth = 4;
    int max_steps = 20000;
};

/// Tracks x from t = 0 to t = 1 with an Euler predictor and Newton corrector,
/// halving the step on corrector failure.  Returns the endpoint, or nullopt
/// when the step collapses below step_min.
std::optional<Eigen::VectorXcd> track_path(const PathSystem& system, Eigen::VectorXcd x,
                                           const TrackOptions& options = {});

struct NewtonOptions {
    int max_iters = 64;
    double tol = 1e-12;
    double cond_limit = 1e14;
};

struct NewtonOutcome {
    Eigen::VectorXcd x;
    double residual_inf = 0.0;
    int iters = 0;
    bool converged = false;
    bool singular = false;
};

/// Damped Newton with an SVD step (the condition estimate comes for free).
NewtonOutcome damped_newton(const std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>& residual,
                            const std::function<void(const Eigen::VectorXcd&, Eigen::MatrixXcd&)>& jacobian,
                            Eigen::VectorXcd x0, const NewtonOptions& options = {});

/// Runs fn(i) for i in [0, count) on up to `workers` threads.  Work is keyed
/// by index, so results are independent of the scheduling.
void run_indexed(int count, int workers, const std::function<void(int)>& fn);

}  // namespace openup::detail
