#include "openup/poly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "openup/errors.hpp"

namespace openup {

namespace {

void trim_exact_zeros(std::vector<Complex>& c) {
    while (!c.empty() && c.back() == Complex(0.0)) c.pop_back();
}

}  // namespace

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    trim_exact_zeros(coeffs_);
}

Polynomial Polynomial::constant(Complex c) {
    return Polynomial(std::vector<Complex>{c});
}

Polynomial Polynomial::monomial(int power, Complex scale) {
    if (power < 0) throw ValidationError("monomial power must be nonnegative");
    std::vector<Complex> c(static_cast<std::size_t>(power) + 1, Complex(0.0));
    c.back() = scale;
    return Polynomial(std::move(c));
}

double Polynomial::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Complex Polynomial::operator()(Complex z) const {
    Complex acc(0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial();
    std::vector<Complex> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = double(k) * coeffs_[k];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::compose_affine(Complex scale, Complex shift) const {
    if (is_zero()) return Polynomial();
    // p(scale*z + shift) = q(scale*z) with q(z) = p(z + shift).
    std::vector<Complex> c = coeffs_;
    const int d = degree();
    for (int i = 0; i <= d; ++i)  // Taylor shift by repeated synthetic division
        for (int j = d - 1; j >= i; --j) c[static_cast<std::size_t>(j)] += shift * c[static_cast<std::size_t>(j) + 1];
    Complex pw(1.0);
    for (int k = 1; k <= d; ++k) {
        pw *= scale;
        c[static_cast<std::size_t>(k)] *= pw;
    }
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-() const {
    std::vector<Complex> c = coeffs_;
    for (auto& v : c) v = -v;
    return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Complex(0.0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Complex(0.0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1, Complex(0.0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
}

Polynomial operator*(Complex c, const Polynomial& p) {
    std::vector<Complex> v = p.coeffs_;
    for (auto& x : v) x *= c;
    return Polynomial(std::move(v));
}

int RootSet::total_multiplicity() const {
    int s = 0;
    for (const auto& r : roots) s += r.multiplicity;
    return s;
}

std::vector<Complex> RootSet::locations() const {
    std::vector<Complex> out;
    out.reserve(roots.size());
    for (const auto& r : roots) out.push_back(r.location);
    return out;
}

double RootSet::min_pairwise_distance() const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            m = std::min(m, std::abs(roots[i].location - roots[j].location));
    return m;
}

bool RootSet::all_simple() const {
    return std::all_of(roots.begin(), roots.end(), [](const Root& r) { return r.multiplicity == 1; });
}

Polynomial wronskian(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return Polynomial();
    const Polynomial pd = p.derivative();
    const Polynomial qd = q.derivative();
    const int len = p.degree() + q.degree();  // result degree <= len - 1
    if (len <= 0) return Polynomial();
    std::vector<Complex> w(static_cast<std::size_t>(len), Complex(0.0));
    for (int ell = 0; ell < len; ++ell) {
        Complex s(0.0);
        // Paired so the m-th term vanishes exactly when p == q.
        for (int m = 0; m <= ell; ++m) s += pd.coeff(m) * q.coeff(ell - m) - qd.coeff(m) * p.coeff(ell - m);
        w[static_cast<std::size_t>(ell)] = s;
    }
    return Polynomial(std::move(w));
}

std::vector<Complex> rho_coefficients(const Polynomial& p, const Polynomial& q, int n) {
    if (n < 0) throw ValidationError("rho_coefficients: n must be nonnegative");
    if (p.degree() > n + 1 || q.degree() > n)
        throw ValidationError("rho_coefficients: degree bounds deg P <= n+1, deg Q <= n violated");
    std::vector<Complex> rho(static_cast<std::size_t>(2 * n + 1), Complex(0.0));
    for (int ell = 0; ell <= 2 * n; ++ell) {
        Complex s(0.0);
        for (int j = std::max(0, ell + 1 - n); j <= std::min(n + 1, ell + 1); ++j) {
            const int k = ell + 1 - j;
            if (j <= k) continue;  // pair (j,k) with (k,j); the diagonal has weight zero
            s += double(j - k) * (p.coeff(j) * q.coeff(k) - p.coeff(k) * q.coeff(j));
        }
        rho[static_cast<std::size_t>(ell)] = s;
    }
    return rho;
}

std::vector<Complex> rho_coefficients(const Polynomial& p, const Polynomial& q) {
    const int n = std::max({p.degree() - 1, q.degree(), 0});
    return rho_coefficients(p, q, n);
}

Polynomial coeffs_from_roots(std::span<const Complex> points) {
    std::vector<Complex> c{Complex(1.0)};
    for (const Complex& r : points) {
        c.push_back(Complex(0.0));
        for (std::size_t k = c.size() - 1; k >= 1; --k) c[k] = c[k - 1] - r * c[k];
        c[0] = -r * c[0];
    }
    return Polynomial(std::move(c));
}

namespace {

// Sum |c_k| |z|^k, the natural evaluation scale at z.
double abs_horner(const Polynomial& p, double az) {
    double acc = 0.0;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * az + std::abs(*it);
    return acc;
}

std::vector<Complex> companion_eigenvalues(const std::vector<Complex>& monic) {
    const int d = static_cast<int>(monic.size()) - 1;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -monic[static_cast<std::size_t>(i)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<Complex> z(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) z[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    return z;
}

}  // namespace

RootSet roots(const Polynomial& p, double cluster_radius) {
    if (p.is_zero()) throw ValidationError("roots: zero polynomial");
    const int d = p.degree();
    if (d == 0) return RootSet{};

    std::vector<Complex> monic(p.coeffs().begin(), p.coeffs().end() - 1);
    const Complex lead = p.leading();
    for (auto& c : monic) c /= lead;
    monic.push_back(Complex(1.0));
    const Polynomial pm{std::vector<Complex>(monic)};
    const Polynomial pmd = pm.derivative();
    const double pinf = pm.max_abs_coeff();

    std::vector<Complex> z = companion_eigenvalues(monic);

    // Aberth-Ehrlich simultaneous refinement.
    const int max_iters = 80;
    for (int iter = 0; iter < max_iters; ++iter) {
        double max_step = 0.0;
        for (int i = 0; i < d; ++i) {
            const Complex zi = z[static_cast<std::size_t>(i)];
            Complex pv = pm(zi);
            Complex dv = pmd(zi);
            if (dv == Complex(0.0)) dv = Complex(1e-300);
            const Complex newton = pv / dv;
            Complex repulsion(0.0);
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                Complex diff = zi - z[static_cast<std::size_t>(j)];
                if (diff == Complex(0.0)) diff = Complex(1e-14, 1e-14);
                repulsion += Complex(1.0) / diff;
            }
            const Complex denom = Complex(1.0) - newton * repulsion;
            const Complex step = (denom == Complex(0.0)) ? newton : newton / denom;
            z[static_cast<std::size_t>(i)] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[static_cast<std::size_t>(i)])));
        }
        if (max_step < 1e-14) break;
    }

    std::vector<double> residuals(static_cast<std::size_t>(d));
    bool ok = true;
    for (int i = 0; i < d; ++i) {
        const Complex zi = z[static_cast<std::size_t>(i)];
        const double res = std::abs(pm(zi));
        residuals[static_cast<std::size_t>(i)] = res;
        const double backward = 8e-14 * abs_horner(pm, std::abs(zi));
        if (res > 1e-12 * (1.0 + pinf) && res > backward) ok = false;
    }
    if (!ok) throw RootFindingError("roots: Aberth refinement did not reach the residual target", residuals);

    // Cluster within cluster_radius; the centroid of a cluster is a better
    // estimate of a multiple root than any single member.
    std::sort(z.begin(), z.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    struct Cluster {
        Complex sum;
        int count;
        Complex centroid() const { return sum / double(count); }
    };
    std::vector<Cluster> clusters;
    for (const Complex& zi : z) {
        bool merged = false;
        for (auto& cl : clusters) {
            if (std::abs(zi - cl.centroid()) <= cluster_radius) {
                cl.sum += zi;
                cl.count += 1;
                merged = true;
                break;
            }
        }
        if (!merged) clusters.push_back({zi, 1});
    }
    // Merge clusters whose centroids drifted within the radius.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < clusters.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < clusters.size() && !changed; ++j)
                if (std::abs(clusters[i].centroid() - clusters[j].centroid()) <= cluster_radius) {
                    clusters[i].sum += clusters[j].sum;
                    clusters[i].count += clusters[j].count;
                    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(j));
                    changed = true;
                }
    }

    RootSet out;
    for (const auto& cl : clusters) out.roots.push_back({cl.centroid(), cl.count});
    std::sort(out.roots.begin(), out.roots.end(), [](const RootSet::Root& a, const RootSet::Root& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    return out;
}

CoprimeResult coprime_check(const Polynomial& p, const Polynomial& q, double tol) {
    if (p.is_zero() || q.is_zero()) throw ValidationError("coprime_check: inputs must be nonzero");
    const int m = p.degree();
    const int k = q.degree();
    if (m == 0 || k == 0) return {true, 1.0};  // nonzero constants share no roots

    Eigen::MatrixXcd syl = Eigen::MatrixXcd::Zero(m + k, m + k);
    for (int i = 0; i < k; ++i)  // rows of z^i * P
        for (int j = 0; j <= m; ++j) syl(i, i + j) = p.coeff(j);
    for (int i = 0; i < m; ++i)  // rows of z^i * Q
        for (int j = 0; j <= k; ++j) syl(k + i, i + j) = q.coeff(j);

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(syl);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    const double ratio = smax > 0.0 ? smin / smax : 0.0;
    return {ratio > tol, ratio};
}

}  // namespace openup
