#include "twistlab/dirichlet.hpp"

#include "twistlab/errors.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>

namespace twistlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxModulus = 10000;

long powmod(long b, long e, long m) {
    long r = 1 % m;
    b %= m;
    if (b < 0) b += m;
    while (e > 0) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

std::vector<std::pair<long, int>> factorize(long n) {
    std::vector<std::pair<long, int>> out;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

long primitive_root_mod_p(long p) {
    if (p == 2) return 1;
    auto fs = factorize(p - 1);
    for (long g = 2;; ++g) {
        bool ok = true;
        for (auto [f, e] : fs)
            if (powmod(g, (p - 1) / f, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
}

// x = g mod m1, x = 1 mod m2, for coprime m1, m2.
long crt_lift(long g, long m1, long m2) {
    for (long x = g % m1; x < m1 * m2; x += m1)
        if (x % m2 == 1 % m2) return x;
    return g;
}

// exp(2 pi i num/den), exact at multiples of 1/4.
cplx unit_root(long num, long den) {
    num %= den;
    if (num < 0) num += den;
    if ((4 * num) % den == 0) {
        switch (4 * num / den) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    double t = 2.0 * kPi * double(num) / double(den);
    return {std::cos(t), std::sin(t)};
}

int compute_conductor(int q, const std::vector<cplx>& v) {
    for (int d = 1; d <= q; ++d) {
        if (q % d) continue;
        bool trivial = true;
        for (int n = 1; n < q && trivial; n += d)
            if (std::gcd(n, q) == 1 && std::abs(v[n] - 1.0) > 1e-9) trivial = false;
        if (trivial) return d;
    }
    return q;
}

struct ModulusData {
    std::vector<DirichletCharacter> chars;
    std::vector<cplx> taus_conj;  // tau(conj psi) for each psi
};

const ModulusData& modulus_data(int q) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<ModulusData>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[q];
    if (!slot) {
        slot = std::make_unique<ModulusData>();
        slot->chars = enumerate_characters(q);
        for (const auto& psi : slot->chars) slot->taus_conj.push_back(gauss_sum(psi.conj()).z());
    }
    return *slot;
}

}  // namespace

bool is_prime(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

long gcd_l(long a, long b) { return std::gcd(a, b); }

cplx DirichletCharacter::operator()(long n) const {
    long r = n % modulus;
    if (r < 0) r += modulus;
    return values[static_cast<std::size_t>(r)];
}

bool DirichletCharacter::is_principal() const { return conductor == 1; }

DirichletCharacter DirichletCharacter::conj() const {
    DirichletCharacter out = *this;
    for (auto& v : out.values) v = std::conj(v);
    return out;
}

DirichletCharacter make_character(int q, std::vector<cplx> values) {
    if (q < 1 || q > kMaxModulus) throw DomainError("modulus must be in [1, 10000]");
    if (values.size() != static_cast<std::size_t>(q))
        throw InvariantViolation("value table length " + std::to_string(values.size()) + " != " + std::to_string(q));
    if (q == 1) values[0] = 1.0;
    for (int n = 0; n < q; ++n) {
        bool unit = std::gcd(n, q) == 1;
        double a = std::abs(values[n]);
        if (unit && std::abs(a - 1.0) > 1e-12)
            throw InvariantViolation("|psi(" + std::to_string(n) + ")| != 1");
        if (!unit && a > 1e-12) throw InvariantViolation("psi(" + std::to_string(n) + ") != 0");
        if (!unit) values[n] = 0.0;
    }
    if (q > 1 && std::abs(values[1] - 1.0) > 1e-12) throw InvariantViolation("psi(1) != 1");
    const int span = q <= 300 ? q : 50;
    for (int m = 1; m < span; ++m) {
        if (std::gcd(m, q) != 1) continue;
        for (int n = 1; n < q; ++n) {
            cplx lhs = values[static_cast<std::size_t>((long(m) * n) % q)];
            if (std::abs(lhs - values[m] * values[n]) > 1e-12)
                throw InvariantViolation("psi is not multiplicative at (" + std::to_string(m) + "," +
                                         std::to_string(n) + ")");
        }
    }
    DirichletCharacter psi;
    psi.modulus = q;
    psi.values = std::move(values);
    cplx m1 = psi.values[static_cast<std::size_t>((q - 1) % q)];
    if (std::abs(m1.imag()) > 1e-12 || std::abs(std::abs(m1.real()) - 1.0) > 1e-12)
        throw InvariantViolation("psi(-1) is not +-1");
    psi.parity = m1.real() > 0 ? 0 : 1;
    psi.conductor = compute_conductor(q, psi.values);
    psi.primitive = psi.conductor == q;
    return psi;
}

DirichletCharacter principal_character(int q) {
    std::vector<cplx> v(static_cast<std::size_t>(q), 0.0);
    for (int n = 0; n < q; ++n)
        if (std::gcd(n, q) == 1) v[n] = 1.0;
    return make_character(q, std::move(v));
}

DirichletCharacter character_product(const DirichletCharacter& a, const DirichletCharacter& b) {
    long q = std::lcm(long(a.modulus), long(b.modulus));
    if (q > kMaxModulus) throw DomainError("product modulus exceeds 10000");
    std::vector<cplx> v(static_cast<std::size_t>(q));
    for (long n = 0; n < q; ++n) v[n] = a(n) * b(n);
    return make_character(int(q), std::move(v));
}

std::vector<DirichletCharacter> enumerate_characters(int q) {
    if (q < 1 || q > kMaxModulus) throw DomainError("modulus must be in [1, 10000]");
    struct Gen {
        long g;
        long order;
    };
    std::vector<Gen> gens;
    for (auto [p, e] : factorize(q)) {
        long pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        long rest = q / pe;
        if (p == 2) {
            if (e >= 2) gens.push_back({crt_lift(pe - 1, pe, rest), 2});
            if (e >= 3) gens.push_back({crt_lift(5, pe, rest), pe / 4});
        } else {
            long g = primitive_root_mod_p(p);
            if (e >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
            gens.push_back({crt_lift(g, pe, rest), pe / p * (p - 1)});
        }
    }
    long total = 1;
    for (const auto& g : gens) total *= g.order;
    // Discrete logs of every unit with respect to the generators.
    std::vector<std::vector<long>> logs(static_cast<std::size_t>(q));
    std::vector<long> k(gens.size(), 0);
    for (long idx = 0; idx < total; ++idx) {
        long x = 1 % q;
        long rem = idx;
        for (std::size_t j = 0; j < gens.size(); ++j) {
            k[j] = rem % gens[j].order;
            rem /= gens[j].order;
            x = x * powmod(gens[j].g, k[j], q) % q;
        }
        logs[static_cast<std::size_t>(x)] = k;
    }
    long L = 1;
    for (const auto& g : gens) L = std::lcm(L, g.order);
    std::vector<DirichletCharacter> out;
    out.reserve(static_cast<std::size_t>(total));
    std::vector<long> m(gens.size(), 0);
    for (long idx = 0; idx < total; ++idx) {
        long rem = idx;
        for (std::size_t j = 0; j < gens.size(); ++j) {
            m[j] = rem % gens[j].order;
            rem /= gens[j].order;
        }
        std::vector<cplx> v(static_cast<std::size_t>(q), 0.0);
        for (int n = 0; n < q; ++n) {
            if (std::gcd(n, q) != 1) continue;
            long num = 0;
            for (std::size_t j = 0; j < gens.size(); ++j)
                num = (num + m[j] * logs[n][j] % gens[j].order * (L / gens[j].order)) % L;
            v[n] = unit_root(num, L);
        }
        if (q == 1) v[0] = 1.0;
        out.push_back(make_character(q, std::move(v)));
    }
    return out;
}

std::vector<DirichletCharacter> primitive_characters(int q) {
    std::vector<DirichletCharacter> out;
    for (auto& psi : enumerate_characters(q))
        if (psi.primitive) out.push_back(std::move(psi));
    return out;
}

ComplexValue gauss_sum(const DirichletCharacter& psi) {
    const int q = psi.modulus;
    cplx s = 0.0;
    for (int a = 0; a < q; ++a)
        if (psi.values[a] != 0.0) s += psi.values[a] * unit_root(a, q);
    return {s, 4.0 * kEps * q};
}

double cos_deriv(int r, double x) {
    switch (((r % 4) + 4) % 4) {
        case 0: return std::cos(x);
        case 1: return -std::sin(x);
        case 2: return -std::cos(x);
        default: return std::sin(x);
    }
}

namespace {

// cos^{(r)}(2 pi num/den) with the angle reduced mod 1 first.
double cos_deriv_frac(int r, long num, long den) {
    num %= den;
    if (num < 0) num += den;
    cplx e = unit_root(num, den);
    switch (((r % 4) + 4) % 4) {
        case 0: return e.real();
        case 1: return -e.imag();
        case 2: return -e.real();
        default: return e.imag();
    }
}

}  // namespace

ComplexValue coeff_char_from_additive(const DirichletCharacter& psi, long n) {
    if (!psi.primitive) throw NotPrimitive("coeff_char_from_additive needs a primitive character");
    const int q = psi.modulus;
    const int e = psi.parity;
    cplx sum = 0.0;
    for (long b = 0; b < q; ++b) sum += std::conj(psi(-b)) * cos_deriv_frac(e, (n % q) * b, q);
    cplx pre = (e ? cplx(0.0, -1.0) : cplx(1.0)) * gauss_sum(psi).z() / double(q);
    return {pre * sum, 8.0 * kEps * q};
}

ComplexValue coeff_additive_from_char(long a, int q, int r, long n) {
    if (q <= 1) throw DomainError("coeff_additive_from_char needs q > 1");
    if (std::gcd(a, long(q)) != 1) throw BadResidue("gcd(a, q) != 1");
    if (!is_prime(q)) throw DomainError("coeff_additive_from_char needs a prime modulus");
    if (r != 0 && r != 1) throw DomainError("r must be 0 or 1");
    const auto& md = modulus_data(q);
    cplx sum = 0.0;
    for (std::size_t i = 0; i < md.chars.size(); ++i) {
        const auto& psi = md.chars[i];
        if (psi.is_principal() || psi.parity != r) continue;
        sum += md.taus_conj[i] * psi(a) * psi(n);
    }
    cplx value = (r ? cplx(0.0, 1.0) : cplx(1.0)) * sum / double(q - 1);
    if (r == 0) {
        double p0 = (n % q) == 0 ? 0.0 : 1.0;
        value += 1.0 - double(q) / double(q - 1) * p0;
    }
    return {value, 8.0 * kEps * q};
}

nlohmann::json to_json(const DirichletCharacter& psi) {
    nlohmann::json vals = nlohmann::json::array();
    for (const auto& v : psi.values) vals.push_back({v.real(), v.imag()});
    return {{"modulus", psi.modulus}, {"values", vals}};
}

DirichletCharacter character_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("modulus") || !j.contains("values"))
        throw SchemaError("character needs modulus and values");
    if (!j["modulus"].is_number_integer()) throw SchemaError("modulus must be an integer");
    int q = j["modulus"].get<int>();
    const auto& vals = j["values"];
    if (!vals.is_array()) throw SchemaError("values must be an array");
    std::vector<cplx> v;
    for (const auto& e : vals) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw SchemaError("each value must be [re, im]");
        v.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return make_character(q, std::move(v));
}

}  // namespace twistlab
