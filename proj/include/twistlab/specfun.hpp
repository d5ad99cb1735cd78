#pragma once

#include "twistlab/rational.hpp"

#include <complex>
#include <vector>

namespace twistlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kPoleTol = 1e-12;

/// A complex value with an absolute error estimate. Sums add the budgets,
/// products and quotients propagate them to first order.
struct ComplexValue {
    double re = 0.0;
    double im = 0.0;
    double err = 0.0;

    ComplexValue() = default;
    ComplexValue(double r, double i = 0.0, double e = 0.0) : re(r), im(i), err(e < 0 ? -e : e) {}
    ComplexValue(cplx z, double e = 0.0) : re(z.real()), im(z.imag()), err(e < 0 ? -e : e) {}

    cplx z() const { return {re, im}; }
    double abs() const { return std::abs(z()); }
};

ComplexValue operator+(const ComplexValue& a, const ComplexValue& b);
ComplexValue operator-(const ComplexValue& a, const ComplexValue& b);
ComplexValue operator-(const ComplexValue& a);
ComplexValue operator*(const ComplexValue& a, const ComplexValue& b);
ComplexValue operator/(const ComplexValue& a, const ComplexValue& b);

/// Coefficients H_k(a,m), m = 0..k, of (a+delta)_k / (a)_k as a polynomial in delta.
struct PochhammerExpansion {
    ComplexValue base;
    int k = 0;
    std::vector<ComplexValue> coeffs;
    std::vector<Rational> exact;
};

ComplexValue gamma(const ComplexValue& z);
ComplexValue digamma(const ComplexValue& z);
ComplexValue pochhammer(const ComplexValue& a, int k);
PochhammerExpansion pochhammer_expansion(const Rational& a, int k);
ComplexValue gamma_r(const ComplexValue& s);
ComplexValue hurwitz_zeta(const ComplexValue& s, double x);
double bessel_k0(double u, double tol = 1e-14);

/// Error-free kernels on std::complex used by the other modules.
namespace raw {

cplx gamma(cplx z);
cplx rgamma(cplx z);
/// Ψ(z)/Γ(z), entire.
cplx rgamma_digamma(cplx z);
cplx log_gamma(cplx z);
cplx digamma(cplx z);
cplx pochhammer(cplx a, int k);
cplx gamma_r(cplx s);
cplx hurwitz_zeta(cplx s, double x);

/// Derivative of Γ_R(s+mu) / Γ_R(s+mu) evaluated at s: -log(pi)/2 + Psi((s+mu)/2)/2.
cplx gamma_r_logderiv(cplx s);

/// Nearest non-positive integer n with |z-n| < tol, or 1 if none.
long nonpositive_integer_near(cplx z, double tol = kPoleTol);

}  // namespace raw

/// Nodes and weights of n-point Gauss-Legendre quadrature on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

}  // namespace twistlab
