#pragma once

#include <complex>
#include <span>
#include <vector>

namespace openup {

using Complex = std::complex<double>;

/// Dense complex polynomial, coefficients indexed by power (coeffs[k] multiplies z^k).
/// The zero polynomial is the empty coefficient list; otherwise the leading
/// coefficient is nonzero and degree() == coeffs().size() - 1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coeffs);

    static Polynomial constant(Complex c);
    static Polynomial monomial(int power, Complex scale = 1.0);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }

    /// Coefficient of z^k; zero beyond the stored range (including k < 0).
    Complex coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<std::size_t>(k)] : Complex(0.0);
    }
    Complex leading() const { return coeffs_.empty() ? Complex(0.0) : coeffs_.back(); }
    double max_abs_coeff() const;

    /// Horner evaluation.
    Complex operator()(Complex z) const;

    Polynomial derivative() const;

    /// Coefficients of p(scale*z + shift).
    Polynomial compose_affine(Complex scale, Complex shift) const;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Complex c, const Polynomial& p);
    bool operator==(const Polynomial&) const = default;

private:
    std::vector<Complex> coeffs_;
};

/// Root locations with multiplicities; locations are pairwise separated by
/// more than the clustering radius used to produce them.
struct RootSet {
    struct Root {
        Complex location;
        int multiplicity = 1;
    };
    std::vector<Root> roots;

    int total_multiplicity() const;
    std::vector<Complex> locations() const;
    double min_pairwise_distance() const;  // +inf when fewer than two roots
    bool all_simple() const;
};

/// P'Q - PQ'.  Computed term-pairwise so that wronskian(p, p) is exactly the
/// zero polynomial and wronskian(p, q) == -wronskian(q, p) holds exactly.
Polynomial wronskian(const Polynomial& p, const Polynomial& q);

/// Coefficients (rho_0, ..., rho_2n) of P'Q - PQ' from the bilinear form
/// rho_l = sum_{j+k=l+1} (j-k) p_j q_k, for deg P <= n+1, deg Q <= n.
std::vector<Complex> rho_coefficients(const Polynomial& p, const Polynomial& q, int n);
std::vector<Complex> rho_coefficients(const Polynomial& p, const Polynomial& q);

/// Monic polynomial with the given zeros; the empty list yields the constant 1.
Polynomial coeffs_from_roots(std::span<const Complex> points);

/// All complex roots with multiplicities.  Companion-matrix eigenvalues seed a
/// simultaneous Aberth refinement; roots closer than cluster_radius are merged
/// and their multiplicities summed.  Throws RootFindingError (carrying the
/// per-root residuals) if the refinement does not reach the residual target.
RootSet roots(const Polynomial& p, double cluster_radius = 1e-6);

struct CoprimeResult {
    bool coprime = false;
    double ratio = 0.0;  // sigma_min / sigma_max of the Sylvester matrix
};

/// Coprimality via the scaled smallest singular value of the Sylvester matrix.
CoprimeResult coprime_check(const Polynomial& p, const Polynomial& q, double tol = 1e-10);

}  // namespace openup
