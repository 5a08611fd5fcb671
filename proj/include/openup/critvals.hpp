#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "openup/rational_map.hpp"
#include "openup/solver_config.hpp"

namespace openup {

/// Prescribed critical values zeta_1, ..., zeta_2n (pairwise distinct).
struct CriticalValueSpec {
    int n = 0;
    std::vector<Complex> values;  // size 2n

    static CriticalValueSpec create(std::vector<Complex> values, double separation_tol = 1e-8);
};

/// Unknowns of the coupled 4n-dimensional system: the free coefficients of
/// (P, Q) plus the critical-point nodes z_1..z_2n.  The optional witnesses
/// y_j = 1/Q(z_j) algebraize the no-pole condition 1 - y_j Q(z_j) = 0; they
/// are not carried through Newton (the condition is a post-filter).
struct CritvalState {
    int n = 0;
    std::vector<Complex> p;      // p_0..p_{n-1}
    std::vector<Complex> q;      // q_0..q_{n-1}
    std::vector<Complex> nodes;  // z_1..z_2n
    std::optional<std::vector<Complex>> pole_witness;

    Eigen::VectorXcd pack() const;
    static CritvalState unpack(int n, const Eigen::VectorXcd& x);

    Polynomial numerator() const;    // monic degree n+1, zero z^n coefficient
    Polynomial denominator() const;  // monic degree n

    /// Copy with pole witnesses filled in; requires Q(z_j) != 0.
    CritvalState with_witnesses() const;
};

/// Residual vector of length 4n: first P(z_j) - zeta_j Q(z_j), then
/// (P'Q - PQ')(z_j).
Eigen::VectorXcd critval_residuals(const CritvalState& state, const CriticalValueSpec& spec);
Eigen::MatrixXcd critval_jacobian(const CritvalState& state, const CriticalValueSpec& spec);

struct CritvalSolution {
    RationalMap map;
    std::vector<Complex> nodes;  // aligned with spec.values: F(nodes[j]) = values[j]
    double residual = 0.0;
};

/// Parameter homotopy on the value vector with multistart; results are
/// filtered by the no-pole condition and node distinctness, deduplicated, and
/// canonically sorted.  Throws NoSolutionFound / PathCollision.
std::vector<CritvalSolution> solve_critical_values(const CriticalValueSpec& spec,
                                                   const SolverConfig& config = {});

/// Null-space basis of the homogeneous weak Hermite system
/// A(z_j) = zeta_j B(z_j), A'(z_j) = zeta_j B'(z_j), deg A <= n+1, deg B <= n,
/// computed by SVD with a relative rank threshold.
std::vector<std::pair<Polynomial, Polynomial>> weak_hermite_solve(std::span<const Complex> nodes,
                                                                  const CriticalValueSpec& spec,
                                                                  double rank_tol = 1e-10);

/// Fixed-point iteration alternating between critical-point extraction and
/// the weak Hermite solve.  Warm-start accelerator only; throws
/// StalledAlternation when the space dimension leaves 1, the pair degenerates,
/// or the iteration cap is reached.
RationalMap alternation_heuristic(const CriticalValueSpec& spec, const RationalMap& initial,
                                  const SolverConfig& config = {});

/// F(z) = a z + b + sum r_j / (z - pole_j) with simple, distinct poles.
struct PartialFractionForm {
    Complex a;
    Complex b;
    std::vector<Complex> residues;
    std::vector<Complex> poles;

    Complex operator()(Complex z) const;
};

/// Throws MultiplePole when Q has a zero of multiplicity >= 2.
PartialFractionForm partial_fraction_form(const Polynomial& P, const Polynomial& Q);

/// Normalizes a general type (n+1, n) map: substitutes z -> (z - d)/a with
/// d = (b - a sum(poles))/(n+1) and rescales so that p_{n+1} = q_n = 1 and
/// p_n = 0.  Critical points transform as eta -> a eta + d; critical values
/// are unchanged.
RationalMap normalize_map(const Polynomial& P, const Polynomial& Q);

/// Greedy nearest-neighbour matching of computed against prescribed values,
/// with a collision audit.
struct ValueMatching {
    bool ok = false;                 // bijective and sizes agree
    double max_distance = 0.0;
    std::vector<int> assignment;     // targets[j] matched to computed[assignment[j]]
};
ValueMatching match_values(std::span<const Complex> computed, std::span<const Complex> targets);

struct CriticalValueReport {
    bool pass = false;
    double matching_distance = 0.0;
    bool nodes_simple = false;
    std::vector<Complex> computed_values;
};

CriticalValueReport verify_critical_values(const RationalMap& map, const CriticalValueSpec& spec);

}  // namespace openup
