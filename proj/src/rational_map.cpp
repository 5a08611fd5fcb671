#include "openup/rational_map.hpp"

#include <cmath>
#include <limits>

#include "openup/errors.hpp"

namespace openup {

RationalMap RationalMap::create(Polynomial P, Polynomial Q, double coprime_tol) {
    if (P.is_zero() || Q.is_zero()) throw ValidationError("RationalMap: P and Q must be nonzero");
    const int n = Q.degree();
    if (P.degree() != n + 1)
        throw ValidationError("RationalMap: expected deg P = deg Q + 1");

    constexpr double snap_tol = 1e-8;
    if (std::abs(P.coeff(n + 1) - Complex(1.0)) > snap_tol || std::abs(Q.coeff(n) - Complex(1.0)) > snap_tol ||
        std::abs(P.coeff(n)) > snap_tol)
        throw ValidationError("RationalMap: normalization p_{n+1} = 1, p_n = 0, q_n = 1 violated");

    std::vector<Complex> pc = P.coeffs();
    std::vector<Complex> qc = Q.coeffs();
    pc[static_cast<std::size_t>(n + 1)] = Complex(1.0);
    pc[static_cast<std::size_t>(n)] = Complex(0.0);
    qc[static_cast<std::size_t>(n)] = Complex(1.0);
    RationalMap map{Polynomial(std::move(pc)), Polynomial(std::move(qc)), n};

    const auto cp = coprime_check(map.P, map.Q, coprime_tol);
    if (!cp.coprime) throw ValidationError("RationalMap: P and Q are not coprime (Sylvester ratio " +
                                           std::to_string(cp.ratio) + ")");
    if (map.wronskian().degree() != 2 * n)
        throw ValidationError("RationalMap: P'Q - PQ' does not have exact degree 2n");
    return map;
}

Polynomial RationalMap::wronskian() const { return openup::wronskian(P, Q); }

RootSet RationalMap::critical_points(double cluster_radius) const {
    return roots(wronskian(), cluster_radius);
}

std::vector<Complex> RationalMap::coefficient_vector() const {
    std::vector<Complex> v;
    v.reserve(static_cast<std::size_t>(2 * n + 3));
    for (int k = 0; k <= n + 1; ++k) v.push_back(P.coeff(k));
    for (int k = 0; k <= n; ++k) v.push_back(Q.coeff(k));
    return v;
}

bool lex_less(std::span<const Complex> a, std::span<const Complex> b, double tol) {
    const std::size_t m = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < m; ++i) {
        if (std::abs(a[i].real() - b[i].real()) > tol) return a[i].real() < b[i].real();
        if (std::abs(a[i].imag() - b[i].imag()) > tol) return a[i].imag() < b[i].imag();
    }
    return a.size() < b.size();
}

bool canonical_less(const RationalMap& a, const RationalMap& b) {
    return lex_less(a.coefficient_vector(), b.coefficient_vector());
}

double coefficient_distance(const RationalMap& a, const RationalMap& b) {
    if (a.n != b.n) return std::numeric_limits<double>::infinity();
    const auto va = a.coefficient_vector();
    const auto vb = b.coefficient_vector();
    double m = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) m = std::max(m, std::abs(va[i] - vb[i]));
    return m;
}

}  // namespace openup
