#include "tracking.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace openup::detail {

namespace {

double inf_norm(const Eigen::VectorXcd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

std::optional<Eigen::VectorXcd> track_path(const PathSystem& system, Eigen::VectorXcd x,
                                           const TrackOptions& options) {
    const Eigen::Index dim = x.size();
    Eigen::VectorXcd r(dim), rt(dim), xdot(dim);
    Eigen::MatrixXcd jac(dim, dim);

    double t = 0.0;
    double dt = options.step_initial;
    int successes = 0;

    for (int step = 0; step < options.max_steps; ++step) {
        if (t >= 1.0) return x;
        dt = std::min(dt, 1.0 - t);
        const double t_next = t + dt;

        // Euler predictor: J xdot = -dr/dt.
        system.jacobian(x, t, jac);
        system.dresidual_dt(x, t, rt);
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(jac);
        xdot = lu.solve(-rt);

        bool accepted = false;
        if (xdot.allFinite()) {
            Eigen::VectorXcd x_try = x + dt * xdot;
            for (int it = 0; it < options.max_corrector_iters && x_try.allFinite(); ++it) {
                system.residual(x_try, t_next, r);
                if (inf_norm(r) < options.corrector_tol) {
                    accepted = true;
                    break;
                }
                system.jacobian(x_try, t_next, jac);
                Eigen::PartialPivLU<Eigen::MatrixXcd> lu2(jac);
                x_try -= lu2.solve(r);
            }
            if (accepted) {
                system.residual(x_try, t_next, r);
                accepted = inf_norm(r) < options.corrector_tol && x_try.allFinite();
            }
            if (accepted) {
                x = std::move(x_try);
                t = t_next;
                if (++successes >= options.successes_before_growth) {
                    dt = std::min(dt * options.step_growth, options.step_initial);
                    successes = 0;
                }
                continue;
            }
        }
        successes = 0;
        dt *= 0.5;
        if (dt < options.step_min) return std::nullopt;
    }
    return std::nullopt;
}

NewtonOutcome damped_newton(const std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>& residual,
                            const std::function<void(const Eigen::VectorXcd&, Eigen::MatrixXcd&)>& jacobian,
                            Eigen::VectorXcd x0, const NewtonOptions& options) {
    NewtonOutcome out;
    out.x = std::move(x0);
    const Eigen::Index dim = out.x.size();
    Eigen::VectorXcd r(dim), r_try(dim);
    Eigen::MatrixXcd jac(dim, dim);

    residual(out.x, r);
    double rnorm = inf_norm(r);
    for (int it = 0; it < options.max_iters; ++it) {
        out.iters = it;
        if (rnorm < options.tol) {
            out.converged = true;
            break;
        }
        jacobian(out.x, jac);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        const double smin = sv(sv.size() - 1);
        if (smin <= 0.0 || sv(0) / smin > options.cond_limit) {
            out.singular = true;
            break;
        }
        const Eigen::VectorXcd dx = svd.solve(-r);

        double lambda = 1.0;
        bool improved = false;
        for (int h = 0; h < 10; ++h) {
            Eigen::VectorXcd x_try = out.x + lambda * dx;
            residual(x_try, r_try);
            const double rn = inf_norm(r_try);
            if (rn < rnorm && x_try.allFinite()) {
                out.x = std::move(x_try);
                r = r_try;
                rnorm = rn;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!improved) break;
    }
    out.residual_inf = rnorm;
    if (rnorm < options.tol) out.converged = true;
    return out;
}

void run_indexed(int count, int workers, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    workers = std::max(1, std::min(workers, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace openup::detail
