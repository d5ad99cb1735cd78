#pragma once

#include "twistlab/dirichlet.hpp"
#include "twistlab/specfun.hpp"

#include "json.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace twistlab {

/// Marks a series whose coefficients are a_n = sum_{de=n} chi1(d) chi2(e),
/// so that L(s) = L(s, chi1) L(s, chi2).
struct EisensteinFactors {
    DirichletCharacter chi1;
    DirichletCharacter chi2;
};

struct CoefficientSeries {
    std::vector<cplx> coeffs;  // coeffs[n-1] = a_n
    double growth_sigma = 0.1;
    std::optional<EisensteinFactors> eisenstein;

    std::size_t length() const { return coeffs.size(); }
    cplx a(long n) const { return n >= 1 && std::size_t(n) <= coeffs.size() ? coeffs[n - 1] : cplx(0.0); }
    /// max_n |a_n| / n^sigma over the stored range.
    double growth_constant() const;
};

/// Principal part r2/(s-p)^2 + r1/(s-p) of a completed L-function at s = p.
struct PoleDatum {
    double point = 0.0;
    cplx r1 = 0.0;
    cplx r2 = 0.0;
};

/// Lambda_f(s) = prod_i Gamma_R(s + mu_i) L_f(s) with, for primitive psi mod q
/// coprime to the level N,
///   Lambda_f(s, psi) = w (-1)^(eps - eps_psi) chi(q) psi(N) tau(psi)^2/q (q^2 N)^(1/2-s) Lambda_g(1-s, conj psi),
/// where w is root_constant and Lambda_g is built on the dual coefficients.
struct FunctionalEquationData {
    int level = 1;
    DirichletCharacter nebentypus;
    int parity = 0;
    std::vector<int> gamma_shifts{0, 0};
    ComplexValue root_constant{1.0};
    std::shared_ptr<const CoefficientSeries> dual;
    std::vector<PoleDatum> poles;       // of Lambda_f(s)
    std::vector<PoleDatum> dual_poles;  // of Lambda_g(s)

    void validate() const;
};

enum class TwistKind { Cos, Sin, Character };

struct TwistSpec {
    long numerator = 0;
    long denominator = 1;
    TwistKind kind = TwistKind::Cos;
    int r = 0;  // derivative order for Cos
    std::optional<DirichletCharacter> character;

    static TwistSpec cos(long a, long q, int r);
    static TwistSpec sin(long a, long q);
    static TwistSpec by_character(const DirichletCharacter& psi);
    void validate() const;
};

/// [k] in {0, 1} with k = [k] mod 2.
int parity_bracket(int k);

CoefficientSeries twist_coefficients(const CoefficientSeries& series, const TwistSpec& spec);

/// L(s, psi) = q^{-s} sum_a psi(a) zeta(s, a/q), for any psi (primitive or not).
ComplexValue eval_dirichlet_L(const DirichletCharacter& psi, const ComplexValue& s);

/// Completed Dirichlet L-function Gamma_R(s + eps_psi) L(s, psi).
ComplexValue eval_dirichlet_completed(const DirichletCharacter& psi, const ComplexValue& s);

/// Truncated sum_{n <= M} a_n n^{-s} with a tail bound; needs Re s > 1 + sigma.
ComplexValue eval_L_direct(const CoefficientSeries& series, const ComplexValue& s);

/// prod_i Gamma_R(s + mu_i); GammaPole at a pole of any factor.
ComplexValue gamma_product(const std::vector<int>& shifts, const ComplexValue& s);

/// Gamma shifts of the twist by a character (or additive twist) of parity e.
std::vector<int> twisted_shifts(const FunctionalEquationData& fe, int e);

/// The functional-equation data of the dual: root 1/w, nebentypus conj chi,
/// dual series set to `series`.
FunctionalEquationData dual_fe(const FunctionalEquationData& fe, std::shared_ptr<const CoefficientSeries> series);

/// Completed value Lambda_f(s), Lambda_f(s, psi) or Lambda_f(s, a/q, cos^(r)).
ComplexValue eval_completed(const CoefficientSeries& series, const FunctionalEquationData& fe,
                            const std::optional<TwistSpec>& twist, const ComplexValue& s);

double check_fe_residual(const CoefficientSeries& series, const FunctionalEquationData& fe,
                         const DirichletCharacter& psi, const std::vector<ComplexValue>& samples);

/// Right side of the additive-twist functional equation at s.
ComplexValue prop34_rhs(const CoefficientSeries& series, const FunctionalEquationData& fe, long a, long q, int r,
                        const ComplexValue& s);

double check_prop34_residual(const CoefficientSeries& series, const FunctionalEquationData& fe, long a, long q,
                             int r, const std::vector<ComplexValue>& samples);

/// Dirichlet convolution of two coefficient lists (length of the shorter).
std::vector<cplx> dirichlet_convolve(const std::vector<cplx>& a, const std::vector<cplx>& b);

/// Coefficients of L(s)/zeta(s): a_n = sum_{d|n} mu(d) b_{n/d}.
CoefficientSeries dirichlet_divide(const CoefficientSeries& numer);

std::vector<int> moebius_table(std::size_t n);

struct SmoothingParams {
    double kernel_a = 0.1;  // kernel exp(A z^2)
    double step = 0.05;
    double line = 0.0;      // Re z of the right line; 0 picks it from the truncation estimate
    double max_error = 1e-3;
};

/// Lambda(s) = I(c) - I(-c) - pole terms with I(x) = (1/2 pi i) int_{Re z = x} Lambda(s+z) e^{A z^2} dz/z.
/// The left line is reflected through the untwisted functional equation.
/// Heuristic: err comes from truncation and kernel-tail estimates.
ComplexValue smoothed_eval(const CoefficientSeries& series, const FunctionalEquationData& fe, const ComplexValue& s,
                           const SmoothingParams& params = {});

/// Standard residual grid on Re s in {0.3, 0.5, 0.7}, Im s in {0, +-1.5, +-4}.
std::vector<ComplexValue> standard_grid();

struct LFunctionPair {
    std::shared_ptr<const CoefficientSeries> series;
    FunctionalEquationData fe;
};

/// f with a_n = sum_{de=n} chi1(d) chi2(e) for primitive chi1, chi2 of equal
/// parity eps. Level q1 q2, nebentypus chi1 chi2, root tau(chi1) tau(chi2)/sqrt(q1 q2).
LFunctionPair make_eisenstein_pair(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                                   std::size_t length);

/// The zeta pair: a_n = d(n), Lambda_f = xi^2 with double poles at 0 and 1.
LFunctionPair make_zeta_pair(std::size_t length);

nlohmann::json fe_to_json(const std::string& name, const CoefficientSeries& series,
                          const FunctionalEquationData& fe);
LFunctionPair fe_from_json(const nlohmann::json& j, std::string* name = nullptr);

/// Hardy Z(t) = e^{i theta(t)} zeta(1/2 + i t) with Stirling theta.
double hardy_z(double t);

/// Critical-line zero ordinates in [t_min, t_max] from sign changes of Z on a
/// grid of the given step, bisected to 1e-8.
std::vector<double> zeta_zeros(double t_min, double t_max, double step);

}  // namespace twistlab
