#pragma once

#include "twistlab/specfun.hpp"

#include "json.hpp"

#include <vector>

namespace twistlab {

/// A Dirichlet character mod q stored as its full value table.
struct DirichletCharacter {
    int modulus = 1;
    std::vector<cplx> values{cplx(1.0)};
    bool primitive = true;
    int parity = 0;  // psi(-1) = (-1)^parity
    int conductor = 1;

    cplx operator()(long n) const;
    bool is_principal() const;
    DirichletCharacter conj() const;
};

/// Builds a character from a value table; checks the zero pattern and
/// multiplicativity to 1e-12 and fills parity, conductor and primitivity.
DirichletCharacter make_character(int q, std::vector<cplx> values);

DirichletCharacter principal_character(int q);

/// The character n -> a(n) b(n) modulo lcm of the two moduli.
DirichletCharacter character_product(const DirichletCharacter& a, const DirichletCharacter& b);

/// All phi(q) characters mod q, principal first; q <= 10^4.
std::vector<DirichletCharacter> enumerate_characters(int q);

/// The primitive characters mod q.
std::vector<DirichletCharacter> primitive_characters(int q);

ComplexValue gauss_sum(const DirichletCharacter& psi);

/// cos^{(r)}(x) for r in {0, 1, 2, 3}.
double cos_deriv(int r, double x);

/// (-i)^e (tau(psi)/q) sum_b conj(psi)(-b) cos^{(e)}(2 pi n b/q), e = parity of psi.
/// Equals psi(n) for primitive psi.
ComplexValue coeff_char_from_additive(const DirichletCharacter& psi, long n);

/// i^r/(q-1) sum_{psi != psi0, psi(-1) = (-1)^r} tau(conj psi) psi(a) psi(n)
/// + [r even] (1 - q/(q-1) psi0(n)); equals cos^{(r)}(2 pi n a/q). Prime q only.
ComplexValue coeff_additive_from_char(long a, int q, int r, long n);

nlohmann::json to_json(const DirichletCharacter& psi);
DirichletCharacter character_from_json(const nlohmann::json& j);

bool is_prime(long n);
long gcd_l(long a, long b);

}  // namespace twistlab
