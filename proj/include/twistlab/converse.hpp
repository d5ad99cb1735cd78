#pragma once

#include "twistlab/lfun.hpp"
#include "twistlab/rational.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace twistlab {

/// Odd primes p = u mod v with p coprime to the level, stored as p/u.
struct TBetaSet {
    long beta_num = 1;
    long beta_den = 1;
    long level = 1;
    std::vector<long> primes;
    std::vector<Rational> members;
};

/// The first `count` such primes, found by a sieve that doubles on demand.
TBetaSet build_tbeta(long u, long v, long level, int count);

/// Weights with sum_lambda c_lambda lambda^{-t} = delta_{t0}(t) for t = 0..M-1.
/// The extended form adds lambda0 and complex weights c = base + kappa * kernel,
/// where `kernel` spans the rational null space of the Kronecker rows, so those
/// rows stay exact while sum c lambda^{-t0} log lambda = z.
struct VandermondeWeights {
    std::vector<Rational> lambdas;
    int t0 = 0;
    std::vector<Rational> weights;

    std::optional<ComplexValue> extended_log_target;
    std::optional<Rational> lambda0;
    std::vector<Rational> kernel;  // over lambdas followed by lambda0
    cplx kappa = 0.0;
    double determinant = 0.0;  // sum over kernel of d lambda^{-t0} log lambda

    /// All weights as complex numbers, lambda0 last when extended.
    std::vector<cplx> complex_weights() const;
    /// max_t |sum c lambda^{-t} - delta_{t0}(t)| evaluated exactly.
    Rational kronecker_residual() const;
    /// |sum c lambda^{-t0} log lambda - z|, or 0 if not extended.
    double log_residual() const;
};

VandermondeWeights solve_vandermonde(const std::vector<Rational>& lambdas, int t0);

/// Picks the first pool member outside `lambdas` whose determinant exceeds 1e-12.
VandermondeWeights solve_vandermonde_extended(const std::vector<Rational>& lambdas, int t0, const ComplexValue& z,
                                              const TBetaSet& pool);

struct GJFactors {
    int epsilon = 0;
    int k = 0;
    void validate() const;
};

/// G_k(s) = ((s+eps)/2)_k ((s-eps+1)/2)_k / (Gamma((s+eps)/2) Gamma((1-s+eps)/2)), entire.
ComplexValue g_factor(const GJFactors& gj, const ComplexValue& s);

/// J_k(s) from its digamma terms; DigammaPole within 1e-10 of a pole.
ComplexValue j_factor(const GJFactors& gj, const ComplexValue& s);

/// J_k(s) G_k(s) written with Psi/Gamma so every removable point is regular.
ComplexValue jg_product(const GJFactors& gj, const ComplexValue& s);

/// (I_k(alpha), I~_k(alpha)) as residue sums over the poles in pole_data, which
/// must lie in {0, 1} and include every pole listed in fe.
std::pair<ComplexValue, ComplexValue> residue_integrals(const FunctionalEquationData& fe, const GJFactors& gj,
                                                        const Rational& alpha,
                                                        const std::vector<PoleDatum>& pole_data);

struct MaassEvalPoint {
    double x = 0.0;
    double y = 1.0;
};

struct WhittakerValue {
    ComplexValue constant;     // f_0
    ComplexValue nonconstant;  // f~
    ComplexValue total() const { return constant + nonconstant; }
};

/// f_0(z) = -Res_{s=0} Lambda y^{1/2} + Res_{s=0} s Lambda y^{1/2} log y and
/// f~(z) = 2 sum_{n != 0} a_n sqrt(y) K0(2 pi |n| y) e(n x) with a_{-n} = (-1)^eps a_n,
/// summed for n <= truncation. Needs 2 pi truncation y >= 40.
WhittakerValue whittaker_series(const CoefficientSeries& series, int epsilon, const MaassEvalPoint& z,
                                const std::vector<PoleDatum>& pole_data, long truncation);

/// Smallest truncation with 2 pi T y >= 40.
long whittaker_truncation(double y);

/// max |f(z) - g(-1/(N z))|, where g carries b_n = w * (g coefficients) and
/// constant term from w * fe.dual_poles, w the root constant.
double check_modularity(const CoefficientSeries& f, const CoefficientSeries& g, const FunctionalEquationData& fe,
                        const std::vector<MaassEvalPoint>& points);

/// Left side (2/y)^eps 2F1(a, a; 1/2 + eps; -1/y^2) (alpha y)^{1/2-s}, a = (s+eps)/2.
ComplexValue expansion_lhs(int epsilon, const ComplexValue& s, double alpha, double y);

/// sqrt(pi) alpha^{1/2-s} sum_{k<ell0} (-1)^k y^{2k+1/2}/(k!)^2 (-2 log y G_k + J_k G_k).
ComplexValue expansion_rhs(int epsilon, const ComplexValue& s, double alpha, double y, int ell0);

struct ExpansionCheck {
    double residual = 0.0;
    double envelope = 0.0;  // sum of |terms| for k = ell0 .. ell0+19 at the worst y
};

ExpansionCheck check_expansion_identity(int epsilon, const ComplexValue& s, const Rational& alpha,
                                        const std::vector<double>& y_values, int ell0);

/// log2 of the ratio r(y)/|log y| against r(y/2)/|log(y/2)|, r the expansion residual.
double remainder_order(int epsilon, const ComplexValue& s, const Rational& alpha, double y, int ell0);

/// Adaptive Gauss-Kronrod 7/15 on [a, b]; QuadratureFailure past max_depth.
cplx adaptive_gk15(const std::function<cplx(double)>& f, double a, double b, double tol, int max_depth = 40);

/// |4 int_0^inf K0(2 pi alpha y) y^s dy/y - alpha^{-s} Gamma_R(s)^2|; needs Re s > 0.
double check_bessel_mellin(const Rational& alpha, const ComplexValue& s);

/// (1/2 pi i) times the counterclockwise integral of f around the rectangle
/// [re_lo, re_hi] x [im_lo, im_hi], n Gauss-Legendre nodes per side.
cplx rectangle_contour(const std::function<cplx(cplx)>& f, double re_lo, double re_hi, double im_lo, double im_hi,
                       int n = 2000);

/// The integrands of I_k and I~_k, for quadrature against residue_integrals.
cplx residue_integrand(const std::function<cplx(cplx)>& lambda_f, const GJFactors& gj, double alpha, bool tilde,
                       cplx s);

}  // namespace twistlab
