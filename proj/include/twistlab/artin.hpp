#pragma once

#include "twistlab/lfun.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace twistlab {

/// Reciprocal Euler polynomials F_p(x) = prod_{P|p} L_P(s, phi)^{-1} in x = p^{-s},
/// constant term first, together with the eigenspace dimensions of complex conjugation.
struct EulerFactorTable {
    int dimension = 0;
    int conductor = 1;
    int p_plus = 0;
    int m_minus = 0;
    std::map<long, std::vector<cplx>> factors;
    std::vector<long> bad_primes;

    bool is_bad(long p) const;
    /// The contragredient: conjugated coefficients.
    EulerFactorTable contragredient() const;
};

/// Parses and validates the Euler-factor JSON document.
EulerFactorTable ingest_euler_factors(const std::string& document);
EulerFactorTable table_from_json(const nlohmann::json& j);
nlohmann::json table_to_json(const EulerFactorTable& table);

/// Roots of a complex polynomial (constant term first) by Aberth iteration;
/// clusters of a repeated root are replaced by their centroid.
std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs);

/// b_n of L(s, phi) for n <= length from the local geometric series.
CoefficientSeries expand_coefficients(const EulerFactorTable& table, std::size_t length);

struct QuotientProfile {
    std::vector<int> quotient_gamma;
    std::optional<int> epsilon;
    CoefficientSeries coefficients;  // of L(s, phi) / zeta(s)
};

QuotientProfile quotient_profile(const EulerFactorTable& table, std::size_t length);

struct PrimitivityResult {
    bool found = false;
    std::optional<long> prime;
    double margin = 0.0;  // |F_p(1)| at the reported prime, else the largest value seen
};

/// Least good prime p <= prime_bound with |F_p(1)| > 1e-8.
PrimitivityResult primitivity_proxy(const EulerFactorTable& table, long prime_bound);

/// (-1)^(m/2 - eps_psi), the value of i^(m - 2 eps_psi) for even m.
int fea_sign_factor(int m, int eps_psi);

/// Functional-equation data of the quotient L(s, phi)/zeta(s) with root w_{<inf},
/// nebentypus chi and parity m/2; the dual is built from the contragredient.
FunctionalEquationData assemble_fe(const EulerFactorTable& table, const ComplexValue& root_constant_finite,
                                   const DirichletCharacter& nebentypus, std::size_t length);

/// Completed Artin L-function Lambda(s, phi (x) psi) as a self-contained pair in
/// untwisted form: level N q^d, root w i^{-d eps_psi} chi(q) psi(N) tau(psi)^d / q^{d/2},
/// shifts [eps_psi]^p [1 - eps_psi]^m. psi = the trivial character gives Lambda(s, phi).
LFunctionPair artin_twist_pair(const EulerFactorTable& table, const ComplexValue& root_number,
                               const DirichletCharacter& nebentypus, const DirichletCharacter& psi,
                               std::size_t length);

}  // namespace twistlab
