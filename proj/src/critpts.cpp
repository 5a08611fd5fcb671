#include "openup/critpts.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "openup/errors.hpp"
#include "sampling.hpp"
#include "tracking.hpp"

namespace openup {

namespace {

// Coefficient access under the normalization p_{n+1} = 1, p_n = 0, q_n = 1.
inline Complex p_at(const Eigen::VectorXcd& x, int n, int j) {
    if (j < 0 || j > n + 1) return Complex(0.0);
    if (j < n) return x(j);
    return j == n ? Complex(0.0) : Complex(1.0);
}

inline Complex q_at(const Eigen::VectorXcd& x, int n, int k) {
    if (k < 0 || k > n) return Complex(0.0);
    return k < n ? x(n + k) : Complex(1.0);
}

double hausdorff_distance(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    double h = 0.0;
    for (const Complex& x : a) {
        double d = std::numeric_limits<double>::infinity();
        for (const Complex& y : b) d = std::min(d, std::abs(x - y));
        h = std::max(h, d);
    }
    for (const Complex& y : b) {
        double d = std::numeric_limits<double>::infinity();
        for (const Complex& x : a) d = std::min(d, std::abs(x - y));
        h = std::max(h, d);
    }
    return h;
}

}  // namespace

CriticalPointSpec CriticalPointSpec::create(std::vector<Complex> points, double separation_tol) {
    if (points.size() < 2 || points.size() % 2 != 0)
        throw DegenerateSpec("critical point list must have even length >= 2");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (std::abs(points[i] - points[j]) <= separation_tol)
                throw DegenerateSpec("critical points must be pairwise distinct");
    CriticalPointSpec spec;
    spec.n = static_cast<int>(points.size()) / 2;
    spec.points = std::move(points);
    return spec;
}

void CoefficientSystem::rho(const Eigen::VectorXcd& x, Eigen::VectorXcd& out) const {
    out.resize(2 * n_);
    for (int ell = 0; ell < 2 * n_; ++ell) {
        Complex s(0.0);
        for (int j = std::max(0, ell + 1 - n_); j <= std::min(n_ + 1, ell + 1); ++j) {
            const int k = ell + 1 - j;
            if (j == k) continue;
            s += double(j - k) * p_at(x, n_, j) * q_at(x, n_, k);
        }
        out(ell) = s;
    }
}

void CoefficientSystem::rho_jacobian(const Eigen::VectorXcd& x, Eigen::MatrixXcd& jac) const {
    jac.setZero(2 * n_, 2 * n_);
    for (int ell = 0; ell < 2 * n_; ++ell) {
        for (int j = 0; j < n_; ++j) {  // d rho_ell / d p_j = (j - k) q_k, k = ell+1-j
            const int k = ell + 1 - j;
            if (k >= 0 && k <= n_ && j != k) jac(ell, j) += double(j - k) * q_at(x, n_, k);
        }
        for (int k = 0; k < n_; ++k) {  // d rho_ell / d q_k = (j - k) p_j, j = ell+1-k
            const int j = ell + 1 - k;
            if (j >= 0 && j <= n_ + 1 && j != k) jac(ell, n_ + k) += double(j - k) * p_at(x, n_, j);
        }
    }
}

void CoefficientSystem::residual(const Eigen::VectorXcd& x, Eigen::VectorXcd& out) const {
    rho(x, out);
    for (int ell = 0; ell < 2 * n_; ++ell) out(ell) -= targets_[static_cast<std::size_t>(ell)];
}

Eigen::VectorXcd CoefficientSystem::apply_tail(Eigen::VectorXcd x) const {
    for (const TailRow& row : tail_) {
        Complex acc = row.constant;
        Complex pivot(0.0);
        for (const auto& [idx, coeff] : row.terms) {
            if (idx == row.solve_index)
                pivot = coeff;
            else
                acc += coeff * x(idx);
        }
        x(row.solve_index) = (targets_[static_cast<std::size_t>(row.ell)] - acc) / pivot;
    }
    return x;
}

CoefficientSystem build_system(const CriticalPointSpec& spec) {
    CoefficientSystem sys;
    sys.n_ = spec.n;
    sys.targets_ = coeffs_from_roots(spec.points).coeffs();
    const int n = spec.n;

    std::vector<bool> is_tail(static_cast<std::size_t>(2 * n), false);
    for (int ell = 2 * n - 1; ell >= std::max(0, 2 * n - 3); --ell) {
        CoefficientSystem::TailRow row;
        row.ell = ell;
        row.constant = Complex(0.0);
        for (int j = std::max(0, ell + 1 - n); j <= std::min(n + 1, ell + 1); ++j) {
            const int k = ell + 1 - j;
            const double w = double(j - k);
            if (w == 0.0) continue;
            const bool j_free = j < n;
            const bool k_free = k < n;
            assert(!(j_free && k_free));  // the top three rows are affine
            const Complex p_fixed = (j == n + 1) ? Complex(1.0) : Complex(0.0);
            const Complex q_fixed = Complex(1.0);  // only k == n is reachable as fixed
            if (j_free) {
                if (k == n) row.terms.emplace_back(j, w * q_fixed);
            } else if (k_free) {
                if (p_fixed != Complex(0.0)) row.terms.emplace_back(n + k, w * p_fixed);
            } else {
                row.constant += w * p_fixed * q_fixed;
            }
        }
        row.solve_index = -1;
        for (const auto& [idx, coeff] : row.terms)
            if (idx < n) row.solve_index = idx;  // prefer the p unknown
        if (row.solve_index < 0 && !row.terms.empty()) row.solve_index = row.terms.front().first;
        assert(row.solve_index >= 0);
        is_tail[static_cast<std::size_t>(ell)] = true;
        sys.tail_.push_back(std::move(row));
    }
    for (int ell = 0; ell < 2 * n; ++ell)
        if (!is_tail[static_cast<std::size_t>(ell)]) sys.residual_indices_.push_back(ell);
    return sys;
}

Eigen::VectorXcd newton_polish(const CoefficientSystem& system, Eigen::VectorXcd start,
                               const SolverConfig& config) {
    if (start.size() != system.dim()) throw ValidationError("newton_polish: start vector has wrong dimension");
    detail::NewtonOptions opts;
    opts.max_iters = config.max_newton_iters;
    opts.tol = config.newton_tol;
    auto outcome = detail::damped_newton(
        [&](const Eigen::VectorXcd& x, Eigen::VectorXcd& r) { system.residual(x, r); },
        [&](const Eigen::VectorXcd& x, Eigen::MatrixXcd& jac) { system.rho_jacobian(x, jac); },
        std::move(start), opts);
    if (outcome.singular) throw JacobianSingular("newton_polish: Jacobian condition estimate above limit");
    if (!outcome.converged)
        throw NoConvergence("newton_polish: residual " + std::to_string(outcome.residual_inf) +
                            " after iteration cap");
    return outcome.x;
}

std::pair<Polynomial, Polynomial> assemble_normalized_pair(int n, const Eigen::VectorXcd& x) {
    std::vector<Complex> pc(static_cast<std::size_t>(n + 2));
    std::vector<Complex> qc(static_cast<std::size_t>(n + 1));
    for (int j = 0; j < n; ++j) pc[static_cast<std::size_t>(j)] = x(j);
    pc[static_cast<std::size_t>(n)] = Complex(0.0);
    pc[static_cast<std::size_t>(n + 1)] = Complex(1.0);
    for (int k = 0; k < n; ++k) qc[static_cast<std::size_t>(k)] = x(n + k);
    qc[static_cast<std::size_t>(n)] = Complex(1.0);
    return {Polynomial(std::move(pc)), Polynomial(std::move(qc))};
}

Eigen::VectorXcd free_coefficients(const RationalMap& map) {
    Eigen::VectorXcd x(2 * map.n);
    for (int j = 0; j < map.n; ++j) x(j) = map.P.coeff(j);
    for (int k = 0; k < map.n; ++k) x(map.n + k) = map.Q.coeff(k);
    return x;
}

namespace {

struct StartOutcome {
    bool tracked = false;
    Eigen::VectorXcd x;
    double residual = 0.0;
};

// Random normalized map whose Wronskian has 2n simple, separated roots.
struct StartDraw {
    Eigen::VectorXcd x;
    std::vector<Complex> critical_points;  // canonically sorted
};

std::optional<StartDraw> draw_start_map(int n, std::mt19937_64& rng, double min_separation,
                                        int max_attempts = 64) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Eigen::VectorXcd x = detail::draw_disk_vector(rng, 2 * n);
        auto [P, Q] = assemble_normalized_pair(n, x);
        RootSet rs;
        try {
            rs = roots(wronskian(P, Q));
        } catch (const RootFindingError&) {
            continue;
        }
        if (rs.total_multiplicity() != 2 * n || !rs.all_simple()) continue;
        if (rs.min_pairwise_distance() <= min_separation) continue;
        return StartDraw{std::move(x), rs.locations()};
    }
    return std::nullopt;
}

}  // namespace

std::vector<CritptsSolution> solve_critical_points(const CriticalPointSpec& spec,
                                                   const SolverConfig& config) {
    config.validate();
    const int n = spec.n;
    const CoefficientSystem system = build_system(spec);

    std::vector<StartOutcome> outcomes(static_cast<std::size_t>(config.num_starts));

    detail::run_indexed(config.num_starts, config.workers, [&](int s) {
        auto rng = detail::make_engine(config.rng_seed, static_cast<std::uint64_t>(s));
        auto draw = draw_start_map(n, rng, 1e-3);
        if (!draw) return;

        const std::vector<Complex>& eta0 = draw->critical_points;
        const std::vector<Complex>& eta1 = spec.points;
        std::vector<Complex> etadot(static_cast<std::size_t>(2 * n));
        for (int j = 0; j < 2 * n; ++j)
            etadot[static_cast<std::size_t>(j)] = eta1[static_cast<std::size_t>(j)] - eta0[static_cast<std::size_t>(j)];

        auto mixed_roots = [&](double t) {
            std::vector<Complex> e(static_cast<std::size_t>(2 * n));
            for (int j = 0; j < 2 * n; ++j)
                e[static_cast<std::size_t>(j)] =
                    (1.0 - t) * eta0[static_cast<std::size_t>(j)] + t * eta1[static_cast<std::size_t>(j)];
            return e;
        };

        detail::PathSystem path;
        path.residual = [&](const Eigen::VectorXcd& x, double t, Eigen::VectorXcd& r) {
            system.rho(x, r);
            const Polynomial ct = coeffs_from_roots(mixed_roots(t));
            for (int ell = 0; ell < 2 * n; ++ell) r(ell) -= ct.coeff(ell);
        };
        path.jacobian = [&](const Eigen::VectorXcd& x, double, Eigen::MatrixXcd& jac) {
            system.rho_jacobian(x, jac);
        };
        path.dresidual_dt = [&](const Eigen::VectorXcd&, double t, Eigen::VectorXcd& v) {
            // d/dt of -c(t):  c(t) = prod (z - eta_j(t)), so
            // dc/dt = -sum_j etadot_j * prod_{k != j} (z - eta_k(t)).
            v.setZero(2 * n);
            const std::vector<Complex> e = mixed_roots(t);
            for (int j = 0; j < 2 * n; ++j) {
                std::vector<Complex> rest;
                rest.reserve(static_cast<std::size_t>(2 * n - 1));
                for (int k = 0; k < 2 * n; ++k)
                    if (k != j) rest.push_back(e[static_cast<std::size_t>(k)]);
                const Polynomial bj = coeffs_from_roots(rest);
                for (int ell = 0; ell < 2 * n; ++ell)
                    v(ell) += etadot[static_cast<std::size_t>(j)] * bj.coeff(ell);
            }
        };

        detail::TrackOptions topts;
        topts.step_initial = config.homotopy_step_initial;
        topts.step_min = config.homotopy_step_min;
        topts.corrector_tol = std::max(1e-9, config.newton_tol);
        auto endpoint = detail::track_path(path, draw->x, topts);
        if (!endpoint) return;

        try {
            const Eigen::VectorXcd polished = newton_polish(system, *endpoint, config);
            Eigen::VectorXcd r;
            system.residual(polished, r);
            outcomes[static_cast<std::size_t>(s)] = {true, polished, r.cwiseAbs().maxCoeff()};
        } catch (const Error&) {
        }
    });

    std::vector<CritptsSolution> kept;
    for (const StartOutcome& oc : outcomes) {
        if (!oc.tracked) continue;
        RationalMap map;
        try {
            auto [P, Q] = assemble_normalized_pair(n, oc.x);
            map = RationalMap::create(std::move(P), std::move(Q));
        } catch (const ValidationError&) {
            continue;
        }
        if (!verify_critical_points(map, spec).pass) continue;
        const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const CritptsSolution& sol) {
            return coefficient_distance(sol.map, map) <= config.dedup_radius;
        });
        if (!duplicate) kept.push_back({std::move(map), oc.residual});
    }
    std::sort(kept.begin(), kept.end(),
              [](const CritptsSolution& a, const CritptsSolution& b) { return canonical_less(a.map, b.map); });
    if (kept.empty())
        throw NoSolutionFound("solve_critical_points: no start converged to a verified solution (" +
                              std::to_string(config.num_starts) + " starts)");
    return kept;
}

CriticalPointReport verify_critical_points(const RationalMap& map, const CriticalPointSpec& spec) {
    CriticalPointReport report;
    const Polynomial w = map.wronskian();
    report.wronskian_degree = w.degree();
    RootSet rs;
    try {
        rs = roots(w);
    } catch (const RootFindingError&) {
        report.pass = false;
        report.hausdorff_distance = std::numeric_limits<double>::infinity();
        return report;
    }
    report.computed = rs.locations();
    report.multiplicities_simple = rs.all_simple();
    report.hausdorff_distance = hausdorff_distance(report.computed, spec.points);
    report.pass = report.hausdorff_distance < 1e-8 && report.wronskian_degree == 2 * spec.n &&
                  report.multiplicities_simple;
    return report;
}

}  // namespace openup
