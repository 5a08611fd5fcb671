#pragma once

#include <Eigen/Dense>
#include <vector>

#include "openup/rational_map.hpp"
#include "openup/solver_config.hpp"

namespace openup {

/// Prescribed critical points eta_1, ..., eta_2n (pairwise distinct).
struct CriticalPointSpec {
    int n = 0;
    std::vector<Complex> points;  // size 2n

    /// Throws DegenerateSpec on coincident points or odd/short lists.
    static CriticalPointSpec create(std::vector<Complex> points, double separation_tol = 1e-8);
};

/// The square coefficient system rho_l(p, q) = c_l, l = 0..2n-1, in the free
/// unknowns x = (p_0..p_{n-1}, q_0..q_{n-1}) under the normalization
/// p_{n+1} = 1, p_n = 0, q_n = 1.  The top three equations are affine and are
/// exposed pre-solved: q_{n-1} is closed-form and (p_{n-1}, q_{n-2}),
/// (p_{n-2}, q_{n-3}) are linearly coupled; the remaining 2n-3 equations
/// (none for n = 1) stay genuinely quadratic.
class CoefficientSystem {
public:
    struct TailRow {
        int ell;                                        // equation index rho_ell = c_ell
        int solve_index;                                // unknown eliminated by this row
        std::vector<std::pair<int, Complex>> terms;     // affine coefficients on free unknowns
        Complex constant;                               // contribution of the fixed coefficients
    };

    int n() const { return n_; }
    int dim() const { return 2 * n_; }
    const std::vector<Complex>& targets() const { return targets_; }  // c_0..c_2n
    const std::vector<TailRow>& tail() const { return tail_; }
    const std::vector<int>& residual_indices() const { return residual_indices_; }

    /// rho_0..rho_{2n-1} at x.
    void rho(const Eigen::VectorXcd& x, Eigen::VectorXcd& out) const;
    /// d rho_l / d x (bilinear structure: d rho_l/d p_j = (j-k) q_k etc.).
    void rho_jacobian(const Eigen::VectorXcd& x, Eigen::MatrixXcd& jac) const;
    /// rho(x) - targets, the polished residual map.
    void residual(const Eigen::VectorXcd& x, Eigen::VectorXcd& out) const;

    /// Enforces the pre-solved tail equations on x (solves each affine row for
    /// its eliminated unknown).  For n = 1 this returns the full solution.
    Eigen::VectorXcd apply_tail(Eigen::VectorXcd x) const;

    friend CoefficientSystem build_system(const CriticalPointSpec& spec);

private:
    int n_ = 0;
    std::vector<Complex> targets_;
    std::vector<TailRow> tail_;
    std::vector<int> residual_indices_;
};

CoefficientSystem build_system(const CriticalPointSpec& spec);

/// Damped Newton on the residual map from the given start vector.
/// Throws JacobianSingular (condition estimate above 1e14) or NoConvergence.
Eigen::VectorXcd newton_polish(const CoefficientSystem& system, Eigen::VectorXcd start,
                               const SolverConfig& config = {});

struct CritptsSolution {
    RationalMap map;
    double residual = 0.0;
};

/// Parameter-homotopy multistart; deduplicated and canonically sorted.
/// Throws NoSolutionFound when every start fails.
std::vector<CritptsSolution> solve_critical_points(const CriticalPointSpec& spec,
                                                   const SolverConfig& config = {});

struct CriticalPointReport {
    bool pass = false;
    double hausdorff_distance = 0.0;
    int wronskian_degree = 0;
    bool multiplicities_simple = false;
    std::vector<Complex> computed;
};

CriticalPointReport verify_critical_points(const RationalMap& map, const CriticalPointSpec& spec);

/// Assemble the normalized (P, Q) pair from the free coefficient vector.
std::pair<Polynomial, Polynomial> assemble_normalized_pair(int n, const Eigen::VectorXcd& x);
/// Free coefficient vector of a normalized map (inverse of the above).
Eigen::VectorXcd free_coefficients(const RationalMap& map);

}  // namespace openup
