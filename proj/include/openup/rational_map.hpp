#pragma once

#include <span>

#include "openup/poly.hpp"

namespace openup {

/// Normalized rational function F = P/Q of type (n+1, n): P monic of degree
/// n+1 with vanishing z^n coefficient, Q monic of degree n, P and Q coprime,
/// and P'Q - PQ' of exact degree 2n.  n = 0 is the degenerate affine case.
struct RationalMap {
    Polynomial P;
    Polynomial Q;
    int n = 0;

    /// Validates the normalization (snapping the fixed coefficients exactly),
    /// coprimality, and the Wronskian degree.  Throws ValidationError.
    static RationalMap create(Polynomial P, Polynomial Q, double coprime_tol = 1e-10);

    Complex operator()(Complex z) const { return P(z) / Q(z); }

    Polynomial wronskian() const;
    RootSet critical_points(double cluster_radius = 1e-6) const;

    /// P coefficients then Q coefficients, lowest power first (the canonical
    /// ordering key for solution lists).
    std::vector<Complex> coefficient_vector() const;
};

/// Lexicographic (Re, Im) comparison of complex vectors with a small
/// tolerance band, used for the canonical ordering of solution sets.
bool lex_less(std::span<const Complex> a, std::span<const Complex> b, double tol = 1e-9);

bool canonical_less(const RationalMap& a, const RationalMap& b);

/// Max-norm distance between coefficient vectors (dedup metric); +inf when
/// the maps have different n.
double coefficient_distance(const RationalMap& a, const RationalMap& b);

}  // namespace openup
