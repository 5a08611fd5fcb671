#include "openup/critvals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "openup/critpts.hpp"
#include "openup/errors.hpp"
#include "sampling.hpp"
#include "tracking.hpp"

namespace openup {

CriticalValueSpec CriticalValueSpec::create(std::vector<Complex> values, double separation_tol) {
    if (values.size() < 2 || values.size() % 2 != 0)
        throw DegenerateSpec("critical value list must have even length >= 2");
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
            if (std::abs(values[i] - values[j]) <= separation_tol)
                throw DegenerateSpec("critical values must be pairwise distinct");
    CriticalValueSpec spec;
    spec.n = static_cast<int>(values.size()) / 2;
    spec.values = std::move(values);
    return spec;
}

Eigen::VectorXcd CritvalState::pack() const {
    Eigen::VectorXcd x(4 * n);
    for (int i = 0; i < n; ++i) x(i) = p[static_cast<std::size_t>(i)];
    for (int i = 0; i < n; ++i) x(n + i) = q[static_cast<std::size_t>(i)];
    for (int j = 0; j < 2 * n; ++j) x(2 * n + j) = nodes[static_cast<std::size_t>(j)];
    return x;
}

CritvalState CritvalState::unpack(int n, const Eigen::VectorXcd& x) {
    CritvalState st;
    st.n = n;
    st.p.resize(static_cast<std::size_t>(n));
    st.q.resize(static_cast<std::size_t>(n));
    st.nodes.resize(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i) st.p[static_cast<std::size_t>(i)] = x(i);
    for (int i = 0; i < n; ++i) st.q[static_cast<std::size_t>(i)] = x(n + i);
    for (int j = 0; j < 2 * n; ++j) st.nodes[static_cast<std::size_t>(j)] = x(2 * n + j);
    return st;
}

Polynomial CritvalState::numerator() const {
    std::vector<Complex> pc(static_cast<std::size_t>(n + 2), Complex(0.0));
    for (int i = 0; i < n; ++i) pc[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)];
    pc[static_cast<std::size_t>(n + 1)] = Complex(1.0);
    return Polynomial(std::move(pc));
}

Polynomial CritvalState::denominator() const {
    std::vector<Complex> qc(static_cast<std::size_t>(n + 1), Complex(0.0));
    for (int i = 0; i < n; ++i) qc[static_cast<std::size_t>(i)] = q[static_cast<std::size_t>(i)];
    qc[static_cast<std::size_t>(n)] = Complex(1.0);
    return Polynomial(std::move(qc));
}

CritvalState CritvalState::with_witnesses() const {
    CritvalState st = *this;
    const Polynomial Q = denominator();
    std::vector<Complex> y;
    y.reserve(nodes.size());
    for (const Complex& z : nodes) {
        const Complex qz = Q(z);
        if (qz == Complex(0.0)) throw ValidationError("pole witness undefined: Q(z_j) = 0");
        y.push_back(Complex(1.0) / qz);
    }
    st.pole_witness = std::move(y);
    return st;
}

Eigen::VectorXcd critval_residuals(const CritvalState& state, const CriticalValueSpec& spec) {
    const int n = spec.n;
    if (state.n != n) throw ValidationError("critval_residuals: state dimension does not match spec");
    const Polynomial P = state.numerator();
    const Polynomial Q = state.denominator();
    const Polynomial W = wronskian(P, Q);
    Eigen::VectorXcd r(4 * n);
    for (int j = 0; j < 2 * n; ++j) {
        const Complex z = state.nodes[static_cast<std::size_t>(j)];
        r(j) = P(z) - spec.values[static_cast<std::size_t>(j)] * Q(z);
        r(2 * n + j) = W(z);
    }
    return r;
}

Eigen::MatrixXcd critval_jacobian(const CritvalState& state, const CriticalValueSpec& spec) {
    const int n = spec.n;
    if (state.n != n) throw ValidationError("critval_jacobian: state dimension does not match spec");
    const Polynomial P = state.numerator();
    const Polynomial Q = state.denominator();
    const Polynomial Pd = P.derivative();
    const Polynomial Qd = Q.derivative();
    const Polynomial W = wronskian(P, Q);
    const Polynomial Wd = W.derivative();

    Eigen::MatrixXcd jac = Eigen::MatrixXcd::Zero(4 * n, 4 * n);
    for (int j = 0; j < 2 * n; ++j) {
        const Complex z = state.nodes[static_cast<std::size_t>(j)];
        const Complex zeta = spec.values[static_cast<std::size_t>(j)];
        Complex zk(1.0);  // z^k
        for (int k = 0; k < n; ++k) {
            const Complex zkm1 = (k == 0) ? Complex(0.0) : zk / z;  // careful only used scaled by k
            (void)zkm1;
            jac(j, k) = zk;
            jac(j, n + k) = -zeta * zk;
            zk *= z;
        }
        jac(j, 2 * n + j) = Pd(z) - zeta * Qd(z);

        // d W(z_j) / d p_k = (z^k)' Q - z^k Q', d / d q_k = P' z^k - P (z^k)'.
        Complex zpow(1.0);
        Complex zpow_prev(0.0);  // z^{k-1}
        for (int k = 0; k < n; ++k) {
            const Complex dzk = double(k) * zpow_prev;
            jac(2 * n + j, k) = dzk * Q(z) - zpow * Qd(z);
            jac(2 * n + j, n + k) = Pd(z) * zpow - P(z) * dzk;
            zpow_prev = zpow;
            zpow *= z;
        }
        jac(2 * n + j, 2 * n + j) = Wd(z);
    }
    return jac;
}

ValueMatching match_values(std::span<const Complex> computed, std::span<const Complex> targets) {
    ValueMatching m;
    if (computed.size() != targets.size() || computed.empty()) return m;
    std::vector<bool> used(computed.size(), false);
    m.assignment.resize(targets.size());
    for (std::size_t j = 0; j < targets.size(); ++j) {
        double best = std::numeric_limits<double>::infinity();
        int best_i = -1;
        for (std::size_t i = 0; i < computed.size(); ++i) {
            if (used[i]) continue;
            const double d = std::abs(computed[i] - targets[j]);
            if (d < best) {
                best = d;
                best_i = static_cast<int>(i);
            }
        }
        used[static_cast<std::size_t>(best_i)] = true;
        m.assignment[j] = best_i;
        m.max_distance = std::max(m.max_distance, best);
    }
    m.ok = true;
    return m;
}

std::vector<std::pair<Polynomial, Polynomial>> weak_hermite_solve(std::span<const Complex> nodes,
                                                                  const CriticalValueSpec& spec,
                                                                  double rank_tol) {
    const int n = spec.n;
    if (static_cast<int>(nodes.size()) != 2 * n)
        throw ValidationError("weak_hermite_solve: expected 2n nodes");

    const int cols = 2 * n + 3;  // n+2 coefficients of A, n+1 of B
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4 * n, cols);
    for (int j = 0; j < 2 * n; ++j) {
        const Complex z = nodes[static_cast<std::size_t>(j)];
        const Complex zeta = spec.values[static_cast<std::size_t>(j)];
        Complex zk(1.0), zk_prev(0.0);
        for (int k = 0; k <= n + 1; ++k) {
            m(2 * j, k) = zk;
            m(2 * j + 1, k) = double(k) * zk_prev;
            zk_prev = zk;
            zk *= z;
        }
        zk = Complex(1.0);
        zk_prev = Complex(0.0);
        for (int k = 0; k <= n; ++k) {
            m(2 * j, n + 2 + k) = -zeta * zk;
            m(2 * j + 1, n + 2 + k) = -zeta * double(k) * zk_prev;
            zk_prev = zk;
            zk *= z;
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rank_tol * smax) ++rank;

    std::vector<std::pair<Polynomial, Polynomial>> basis;
    for (int c = rank; c < cols; ++c) {
        const Eigen::VectorXcd v = svd.matrixV().col(c);
        std::vector<Complex> ac(static_cast<std::size_t>(n + 2));
        std::vector<Complex> bc(static_cast<std::size_t>(n + 1));
        for (int k = 0; k <= n + 1; ++k) ac[static_cast<std::size_t>(k)] = v(k);
        for (int k = 0; k <= n; ++k) bc[static_cast<std::size_t>(k)] = v(n + 2 + k);
        basis.emplace_back(Polynomial(std::move(ac)), Polynomial(std::move(bc)));
    }
    return basis;
}

Complex PartialFractionForm::operator()(Complex z) const {
    Complex v = a * z + b;
    for (std::size_t j = 0; j < poles.size(); ++j) v += residues[j] / (z - poles[j]);
    return v;
}

PartialFractionForm partial_fraction_form(const Polynomial& P, const Polynomial& Q) {
    if (P.is_zero() || Q.is_zero()) throw ValidationError("partial_fraction_form: P and Q must be nonzero");
    const int n = Q.degree();
    if (P.degree() != n + 1)
        throw ValidationError("partial_fraction_form: expected type (n+1, n)");

    PartialFractionForm pf;
    pf.a = P.coeff(n + 1) / Q.coeff(n);
    pf.b = (P.coeff(n) - pf.a * Q.coeff(n - 1)) / Q.coeff(n);
    const Polynomial linear{std::vector<Complex>{pf.b, pf.a}};
    const Polynomial remainder = P - linear * Q;
    if (remainder.degree() >= n)
        throw ValidationError("partial_fraction_form: division remainder has unexpected degree");

    if (n > 0) {
        const RootSet qroots = roots(Q);
        for (const auto& root : qroots.roots)
            if (root.multiplicity >= 2)
                throw MultiplePole("partial_fraction_form: Q has a zero of multiplicity >= 2");
        const Polynomial Qd = Q.derivative();
        for (const auto& root : qroots.roots) {
            pf.poles.push_back(root.location);
            pf.residues.push_back(remainder(root.location) / Qd(root.location));
        }
    }
    return pf;
}

RationalMap normalize_map(const Polynomial& P, const Polynomial& Q) {
    const PartialFractionForm pf = partial_fraction_form(P, Q);
    const int n = Q.degree();
    Complex pole_sum(0.0);
    for (const Complex& rho : pf.poles) pole_sum += rho;
    const Complex d = (pf.b - pf.a * pole_sum) / double(n + 1);

    // z -> (z - d)/a, then rescale both polynomials to monic.
    const Complex alpha = Complex(1.0) / pf.a;
    const Complex beta = -d / pf.a;
    Polynomial Pn = P.compose_affine(alpha, beta);
    Polynomial Qn = Q.compose_affine(alpha, beta);
    Pn = (Complex(1.0) / Pn.leading()) * Pn;
    Qn = (Complex(1.0) / Qn.leading()) * Qn;

    std::vector<Complex> pc = Pn.coeffs();
    pc[static_cast<std::size_t>(n)] = Complex(0.0);  // exact by the choice of d
    return RationalMap::create(Polynomial(std::move(pc)), std::move(Qn));
}

namespace {

struct CritvalStartDraw {
    Eigen::VectorXcd state;           // packed (p, q, nodes)
    std::vector<Complex> values0;     // F0 at the nodes, aligned with the target order
};

// Distance from the origin to the segment {(1-t) a + t b : t in [0, 1]}.
double segment_min_abs(Complex a, Complex b) {
    const Complex d = b - a;
    const double dd = std::norm(d);
    double t = dd > 0.0 ? -((a.real() * d.real()) + (a.imag() * d.imag())) / dd : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(a + t * d);
}

enum class DrawFailure { None, Exhausted, Collision };

std::pair<std::optional<CritvalStartDraw>, DrawFailure> draw_critval_start(
    const CriticalValueSpec& spec, std::mt19937_64& rng, int max_attempts = 64) {
    const int n = spec.n;
    bool saw_collision = false;
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
        if (rs.min_pairwise_distance() <= 1e-3) continue;
        const std::vector<Complex> nodes = rs.locations();

        const double qscale = 1e-6 * (1.0 + Q.max_abs_coeff());
        bool pole_near = false;
        for (const Complex& z : nodes) pole_near = pole_near || std::abs(Q(z)) <= qscale;
        if (pole_near) continue;

        std::vector<Complex> values0;
        values0.reserve(nodes.size());
        for (const Complex& z : nodes) values0.push_back(P(z) / Q(z));

        // The straight value segments must stay clear of each other.
        bool collision = false;
        for (int i = 0; i < 2 * n && !collision; ++i)
            for (int j = i + 1; j < 2 * n && !collision; ++j) {
                const Complex a = values0[static_cast<std::size_t>(i)] - values0[static_cast<std::size_t>(j)];
                const Complex b = spec.values[static_cast<std::size_t>(i)] - spec.values[static_cast<std::size_t>(j)];
                collision = segment_min_abs(a, b) < 1e-6;
            }
        if (collision) {
            saw_collision = true;
            continue;
        }

        CritvalStartDraw draw;
        draw.state.resize(4 * n);
        draw.state.head(2 * n) = x;
        for (int j = 0; j < 2 * n; ++j) draw.state(2 * n + j) = nodes[static_cast<std::size_t>(j)];
        draw.values0 = std::move(values0);
        return {std::move(draw), DrawFailure::None};
    }
    return {std::nullopt, saw_collision ? DrawFailure::Collision : DrawFailure::Exhausted};
}

}  // namespace

std::vector<CritvalSolution> solve_critical_values(const CriticalValueSpec& spec,
                                                   const SolverConfig& config) {
    config.validate();
    const int n = spec.n;

    struct StartOutcome {
        bool tracked = false;
        bool collision_only = false;
        Eigen::VectorXcd x;
        double residual = 0.0;
    };
    std::vector<StartOutcome> outcomes(static_cast<std::size_t>(config.num_starts));

    detail::run_indexed(config.num_starts, config.workers, [&](int s) {
        auto rng = detail::make_engine(config.rng_seed, static_cast<std::uint64_t>(s));
        auto [draw, failure] = draw_critval_start(spec, rng);
        if (!draw) {
            outcomes[static_cast<std::size_t>(s)].collision_only = failure == DrawFailure::Collision;
            return;
        }

        std::vector<Complex> zdot(static_cast<std::size_t>(2 * n));
        for (int j = 0; j < 2 * n; ++j)
            zdot[static_cast<std::size_t>(j)] =
                spec.values[static_cast<std::size_t>(j)] - draw->values0[static_cast<std::size_t>(j)];

        auto spec_at = [&](double t) {
            CriticalValueSpec st = spec;
            for (int j = 0; j < 2 * n; ++j)
                st.values[static_cast<std::size_t>(j)] =
                    draw->values0[static_cast<std::size_t>(j)] + t * zdot[static_cast<std::size_t>(j)];
            return st;
        };

        detail::PathSystem path;
        path.residual = [&](const Eigen::VectorXcd& x, double t, Eigen::VectorXcd& r) {
            r = critval_residuals(CritvalState::unpack(n, x), spec_at(t));
        };
        path.jacobian = [&](const Eigen::VectorXcd& x, double t, Eigen::MatrixXcd& jac) {
            jac = critval_jacobian(CritvalState::unpack(n, x), spec_at(t));
        };
        path.dresidual_dt = [&](const Eigen::VectorXcd& x, double, Eigen::VectorXcd& v) {
            const CritvalState st = CritvalState::unpack(n, x);
            const Polynomial Q = st.denominator();
            v.setZero(4 * n);
            for (int j = 0; j < 2 * n; ++j)
                v(j) = -zdot[static_cast<std::size_t>(j)] * Q(st.nodes[static_cast<std::size_t>(j)]);
        };

        detail::TrackOptions topts;
        topts.step_initial = config.homotopy_step_initial;
        topts.step_min = config.homotopy_step_min;
        topts.corrector_tol = std::max(1e-9, config.newton_tol);
        auto endpoint = detail::track_path(path, draw->state, topts);
        if (!endpoint) return;

        detail::NewtonOptions nopts;
        nopts.max_iters = config.max_newton_iters;
        nopts.tol = config.newton_tol;
        auto outcome = detail::damped_newton(
            [&](const Eigen::VectorXcd& x, Eigen::VectorXcd& r) {
                r = critval_residuals(CritvalState::unpack(n, x), spec);
            },
            [&](const Eigen::VectorXcd& x, Eigen::MatrixXcd& jac) {
                jac = critval_jacobian(CritvalState::unpack(n, x), spec);
            },
            *endpoint, nopts);
        if (!outcome.converged) return;
        outcomes[static_cast<std::size_t>(s)] = {true, false, outcome.x, outcome.residual_inf};
    });

    std::vector<CritvalSolution> kept;
    int collision_only = 0;
    for (const StartOutcome& oc : outcomes) {
        if (oc.collision_only) ++collision_only;
        if (!oc.tracked) continue;
        const CritvalState st = CritvalState::unpack(n, oc.x);

        const Polynomial Q = st.denominator();
        const double qfloor = 1e-8 * (1.0 + Q.max_abs_coeff());
        bool ok = true;
        for (const Complex& z : st.nodes) ok = ok && std::abs(Q(z)) > qfloor;
        for (std::size_t i = 0; i < st.nodes.size() && ok; ++i)
            for (std::size_t j = i + 1; j < st.nodes.size() && ok; ++j)
                ok = std::abs(st.nodes[i] - st.nodes[j]) > 1e-6;
        if (!ok) continue;

        RationalMap map;
        try {
            map = RationalMap::create(st.numerator(), Q);
        } catch (const ValidationError&) {
            continue;
        }
        if (!verify_critical_values(map, spec).pass) continue;
        const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const CritvalSolution& sol) {
            return coefficient_distance(sol.map, map) <= config.dedup_radius;
        });
        if (!duplicate) kept.push_back({std::move(map), st.nodes, oc.residual});
    }
    std::sort(kept.begin(), kept.end(),
              [](const CritvalSolution& a, const CritvalSolution& b) { return canonical_less(a.map, b.map); });
    if (kept.empty()) {
        if (config.num_starts > 0 && collision_only == config.num_starts)
            throw PathCollision("solve_critical_values: the value segments degenerate for every retry");
        throw NoSolutionFound("solve_critical_values: no start converged to a verified solution (" +
                              std::to_string(config.num_starts) + " starts)");
    }
    return kept;
}

RationalMap alternation_heuristic(const CriticalValueSpec& spec, const RationalMap& initial,
                                  const SolverConfig& config) {
    config.validate();
    const int n = spec.n;
    if (initial.n != n) throw ValidationError("alternation_heuristic: map and spec disagree on n");

    RationalMap current = initial;
    std::vector<Complex> prev_nodes;
    for (int iter = 0; iter < config.max_newton_iters; ++iter) {
        RootSet cps;
        try {
            cps = current.critical_points();
        } catch (const RootFindingError&) {
            throw StalledAlternation("alternation: critical point extraction failed");
        }
        if (cps.total_multiplicity() != 2 * n || !cps.all_simple())
            throw StalledAlternation("alternation: current map lacks 2n simple critical points");
        const std::vector<Complex> nodes = cps.locations();

        if (!prev_nodes.empty()) {
            double movement = 0.0;
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                double d = std::numeric_limits<double>::infinity();
                for (std::size_t j = 0; j < prev_nodes.size(); ++j)
                    d = std::min(d, std::abs(nodes[i] - prev_nodes[j]));
                movement = std::max(movement, d);
            }
            if (movement < 1e-12) {
                if (!verify_critical_values(current, spec).pass)
                    throw StalledAlternation("alternation: fixed point does not satisfy the spec");
                return current;
            }
        }
        prev_nodes = nodes;

        std::vector<Complex> values;
        values.reserve(nodes.size());
        for (const Complex& z : nodes) values.push_back(current(z));
        const ValueMatching matching = match_values(values, spec.values);
        if (!matching.ok) throw StalledAlternation("alternation: node/value matching failed");
        std::vector<Complex> ordered(nodes.size());
        for (std::size_t j = 0; j < nodes.size(); ++j)
            ordered[j] = nodes[static_cast<std::size_t>(matching.assignment[j])];

        const auto basis = weak_hermite_solve(ordered, spec);
        if (basis.size() != 1)
            throw StalledAlternation("alternation: weak Hermite space has dimension " +
                                     std::to_string(basis.size()));
        const auto& [A, B] = basis.front();
        const double scale = std::max(A.max_abs_coeff(), B.max_abs_coeff());
        if (std::abs(A.coeff(n + 1)) <= 1e-8 * scale || std::abs(B.coeff(n)) <= 1e-8 * scale)
            throw StalledAlternation("alternation: weak Hermite pair degenerates below type (n+1, n)");
        try {
            current = normalize_map(A, B);
        } catch (const Error&) {
            throw StalledAlternation("alternation: normalization of the interpolant failed");
        }
    }
    throw StalledAlternation("alternation: iteration cap reached");
}

CriticalValueReport verify_critical_values(const RationalMap& map, const CriticalValueSpec& spec) {
    CriticalValueReport report;
    RootSet cps;
    try {
        cps = map.critical_points();
    } catch (const RootFindingError&) {
        report.matching_distance = std::numeric_limits<double>::infinity();
        return report;
    }
    report.nodes_simple = cps.all_simple() && cps.total_multiplicity() == 2 * spec.n;
    for (const auto& root : cps.roots) report.computed_values.push_back(map(root.location));
    const ValueMatching matching = match_values(report.computed_values, spec.values);
    report.matching_distance = matching.ok ? matching.max_distance : std::numeric_limits<double>::infinity();
    report.pass = report.nodes_simple && matching.ok && report.matching_distance < 1e-7;
    return report;
}

}  // namespace openup
