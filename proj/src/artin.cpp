#include "twistlab/artin.hpp"

#include "twistlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace twistlab {

namespace {

constexpr double kUnitTol = 1e-8;
constexpr double kProxyTol = 1e-8;

cplx parse_cplx(const nlohmann::json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw SchemaError(where + ": coefficients must be [re, im] pairs");
}

int require_int(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) throw SchemaError(std::string("missing integer field ") + key);
    return j[key].get<int>();
}

int degree_of(const std::vector<cplx>& poly) {
    int d = int(poly.size()) - 1;
    while (d > 0 && poly[d] == cplx(0.0)) --d;
    return d;
}

cplx horner(const std::vector<cplx>& poly, cplx x) {
    cplx v = 0.0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * x + *it;
    return v;
}

// Power series of 1/F(x) to order k_max.
std::vector<cplx> invert_series(const std::vector<cplx>& F, int k_max) {
    std::vector<cplx> g(k_max + 1, 0.0);
    g[0] = 1.0;
    for (int k = 1; k <= k_max; ++k) {
        cplx acc = 0.0;
        for (int j = 1; j <= k && j < int(F.size()); ++j) acc += F[j] * g[k - j];
        g[k] = -acc;
    }
    return g;
}

std::vector<long> smallest_prime_factors(std::size_t n) {
    std::vector<long> spf(n + 1, 0);
    for (std::size_t i = 2; i <= n; ++i) {
        if (spf[i]) continue;
        for (std::size_t j = i; j <= n; j += i)
            if (!spf[j]) spf[j] = long(i);
    }
    return spf;
}

cplx ipow(int k) {
    static const cplx units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return units[((k % 4) + 4) % 4];
}

}  // namespace

bool EulerFactorTable::is_bad(long p) const {
    return std::find(bad_primes.begin(), bad_primes.end(), p) != bad_primes.end();
}

EulerFactorTable EulerFactorTable::contragredient() const {
    EulerFactorTable t = *this;
    for (auto& [p, poly] : t.factors)
        for (auto& c : poly) c = std::conj(c);
    return t;
}

std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs) {
    const int d = degree_of(coeffs);
    if (d < 1) return {};
    std::vector<cplx> monic(d + 1);
    for (int k = 0; k <= d; ++k) monic[k] = coeffs[k] / coeffs[d];
    std::vector<cplx> dmonic(d);
    for (int k = 1; k <= d; ++k) dmonic[k - 1] = double(k) * monic[k];

    double radius = 0.0;
    for (int k = 0; k < d; ++k) radius = std::max(radius, std::pow(std::abs(monic[k]), 1.0 / (d - k)));
    radius = std::max(radius, 0.5);
    std::vector<cplx> z(d);
    for (int k = 0; k < d; ++k) z[k] = std::polar(radius, 2 * kPi * (k + 0.25) / d);
    for (int it = 0; it < 500; ++it) {
        double move = 0.0;
        for (int i = 0; i < d; ++i) {
            cplx p = horner(monic, z[i]);
            if (p == cplx(0.0)) continue;
            cplx ratio = p / horner(dmonic, z[i]);
            cplx repulse = 0.0;
            for (int j = 0; j < d; ++j)
                if (j != i) repulse += 1.0 / (z[i] - z[j]);
            cplx step = ratio / (1.0 - ratio * repulse);
            z[i] -= step;
            move = std::max(move, std::abs(step));
        }
        if (move < 1e-15) break;
    }

    // A root of multiplicity k is only resolved to about eps^(1/k); it is a simple root of
    // the (k-1)-th derivative, so Newton on that derivative polishes the cluster mean.
    auto derivative = [](std::vector<cplx> poly, int order) {
        for (int o = 0; o < order && poly.size() > 1; ++o) {
            for (std::size_t k = 1; k < poly.size(); ++k) poly[k - 1] = double(k) * poly[k];
            poly.pop_back();
        }
        return poly;
    };
    std::vector<cplx> out;
    std::vector<bool> used(d, false);
    for (int i = 0; i < d; ++i) {
        if (used[i]) continue;
        std::vector<cplx> cluster{z[i]};
        used[i] = true;
        for (int j = i + 1; j < d; ++j)
            if (!used[j] && std::abs(z[j] - z[i]) < 1e-3) {
                cluster.push_back(z[j]);
                used[j] = true;
            }
        cplx mean = 0.0;
        for (cplx c : cluster) mean += c;
        mean /= double(cluster.size());
        if (cluster.size() > 1) {
            const auto h = derivative(monic, int(cluster.size()) - 1);
            const auto dh = derivative(h, 1);
            for (int it = 0; it < 20; ++it) {
                cplx den = horner(dh, mean);
                if (den == cplx(0.0)) break;
                cplx step = horner(h, mean) / den;
                mean -= step;
                if (std::abs(step) < 1e-16) break;
            }
        }
        out.insert(out.end(), cluster.size(), mean);
    }
    return out;
}

EulerFactorTable table_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw SchemaError("Euler-factor document must be an object");
    EulerFactorTable t;
    t.dimension = require_int(j, "dimension");
    t.conductor = require_int(j, "conductor");
    t.p_plus = require_int(j, "p_plus");
    t.m_minus = require_int(j, "m_minus");
    if (!j.contains("bad_primes") || !j["bad_primes"].is_array()) throw SchemaError("bad_primes must be an array");
    for (const auto& p : j["bad_primes"]) {
        if (!p.is_number_integer()) throw SchemaError("bad_primes entries must be integers");
        t.bad_primes.push_back(p.get<long>());
    }
    if (!j.contains("factors") || !j["factors"].is_object()) throw SchemaError("factors must be an object");
    for (const auto& [key, poly] : j["factors"].items()) {
        long p = 0;
        try {
            std::size_t used = 0;
            p = std::stol(key, &used);
            if (used != key.size()) throw SchemaError("");
        } catch (const std::exception&) {
            throw SchemaError("factor key '" + key + "' is not an integer");
        }
        if (!is_prime(p)) throw SchemaError("factor key " + key + " is not prime");
        if (!poly.is_array() || poly.empty()) throw SchemaError("factor " + key + " must be a non-empty array");
        std::vector<cplx> coeffs;
        for (const auto& c : poly) coeffs.push_back(parse_cplx(c, "factor " + key));
        t.factors[p] = std::move(coeffs);
    }

    if (t.dimension < 1) throw InvariantViolation("dimension must be positive");
    if (t.conductor < 1) throw InvariantViolation("conductor must be positive");
    if (t.p_plus < 0 || t.m_minus < 0 || t.p_plus + t.m_minus != t.dimension)
        throw InvariantViolation("p_plus + m_minus must equal the dimension");
    for (long p : t.bad_primes)
        if (!is_prime(p) || t.conductor % p != 0) throw InvariantViolation(std::to_string(p));
    for (const auto& [p, poly] : t.factors) {
        const std::string name = std::to_string(p);
        if (poly[0] != cplx(1.0)) throw InvariantViolation(name);
        const int deg = degree_of(poly);
        if (t.is_bad(p)) {
            if (deg >= t.dimension) throw InvariantViolation(name);
            continue;
        }
        if (deg != t.dimension) throw InvariantViolation(name);
        for (cplx r : polynomial_roots(poly))
            if (std::abs(std::abs(r) - 1.0) > kUnitTol) throw InvariantViolation(name);
    }
    return t;
}

EulerFactorTable ingest_euler_factors(const std::string& document) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(document);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("Euler-factor document is not JSON: ") + e.what());
    }
    return table_from_json(j);
}

nlohmann::json table_to_json(const EulerFactorTable& table) {
    nlohmann::json factors = nlohmann::json::object();
    for (const auto& [p, poly] : table.factors) {
        nlohmann::json arr = nlohmann::json::array();
        for (cplx c : poly) arr.push_back({c.real(), c.imag()});
        factors[std::to_string(p)] = arr;
    }
    return {{"dimension", table.dimension}, {"conductor", table.conductor}, {"p_plus", table.p_plus},
            {"m_minus", table.m_minus},     {"bad_primes", table.bad_primes}, {"factors", factors}};
}

CoefficientSeries expand_coefficients(const EulerFactorTable& table, std::size_t length) {
    CoefficientSeries out;
    out.growth_sigma = 0.1;
    if (length == 0) return out;
    std::vector<long> spf = smallest_prime_factors(length);
    std::map<long, std::vector<cplx>> local;
    for (std::size_t p = 2; p <= length; ++p) {
        if (spf[p] != long(p)) continue;
        auto it = table.factors.find(long(p));
        if (it == table.factors.end()) throw MissingPrime("no Euler factor at p = " + std::to_string(p));
        int k_max = 0;
        for (std::size_t q = p; q <= length; q *= p) {
            ++k_max;
            if (q > length / p) break;
        }
        local[long(p)] = invert_series(it->second, k_max);
    }
    out.coeffs.assign(length, 0.0);
    out.coeffs[0] = 1.0;
    for (std::size_t n = 2; n <= length; ++n) {
        const long p = spf[n];
        std::size_t m = n;
        int k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        out.coeffs[n - 1] = out.coeffs[m - 1] * local[p][k];
    }
    return out;
}

QuotientProfile quotient_profile(const EulerFactorTable& table, std::size_t length) {
    if (table.p_plus < 1) throw HypothesisViolation("the quotient by zeta needs p_plus >= 1");
    if (length < 1) throw DomainError("length must be >= 1");
    QuotientProfile q;
    q.quotient_gamma.assign(table.p_plus - 1, 0);
    q.quotient_gamma.insert(q.quotient_gamma.end(), table.m_minus, 1);
    if (table.m_minus % 2 == 0 && table.m_minus <= 2) q.epsilon = table.m_minus / 2;
    q.coefficients = dirichlet_divide(expand_coefficients(table, length));
    q.coefficients.growth_sigma = 0.1;
    return q;
}

PrimitivityResult primitivity_proxy(const EulerFactorTable& table, long prime_bound) {
    PrimitivityResult r;
    for (long p = 2; p <= prime_bound; ++p) {
        if (!is_prime(p) || table.is_bad(p)) continue;
        auto it = table.factors.find(p);
        if (it == table.factors.end()) throw MissingPrime("no Euler factor at p = " + std::to_string(p));
        const double v = std::abs(horner(it->second, 1.0));
        if (v > kProxyTol) {
            r.found = true;
            r.prime = p;
            r.margin = v;
            return r;
        }
        r.margin = std::max(r.margin, v);
    }
    return r;
}

int fea_sign_factor(int m, int eps_psi) {
    if (m % 2 != 0) throw DomainError("the sign factor needs m even");
    return ((m / 2 - eps_psi) % 2 == 0) ? 1 : -1;
}

FunctionalEquationData assemble_fe(const EulerFactorTable& table, const ComplexValue& root_constant_finite,
                                   const DirichletCharacter& nebentypus, std::size_t length) {
    if (std::abs(root_constant_finite.abs() - 1.0) > 1e-12)
        throw NotUnitModulus("w_{<inf} must have modulus 1");
    if (nebentypus.modulus != table.conductor) throw DomainError("nebentypus must be a character mod the conductor");
    QuotientProfile q = quotient_profile(table, length);
    if (!q.epsilon) throw HypothesisViolation("the quotient functional equation needs m in {0, 2}");
    QuotientProfile dual = quotient_profile(table.contragredient(), length);
    FunctionalEquationData fe;
    fe.level = table.conductor;
    fe.nebentypus = nebentypus;
    fe.parity = *q.epsilon;
    fe.gamma_shifts = q.quotient_gamma;
    fe.root_constant = root_constant_finite;
    fe.dual = std::make_shared<const CoefficientSeries>(std::move(dual.coefficients));
    fe.validate();
    return fe;
}

LFunctionPair artin_twist_pair(const EulerFactorTable& table, const ComplexValue& root_number,
                               const DirichletCharacter& nebentypus, const DirichletCharacter& psi,
                               std::size_t length) {
    if (std::abs(root_number.abs() - 1.0) > 1e-12) throw NotUnitModulus("the root number must have modulus 1");
    if (!psi.primitive) throw NotPrimitive("the twisting character must be primitive");
    const long q = psi.modulus;
    if (std::gcd(q, long(table.conductor)) != 1) throw DomainError("q must be coprime to the conductor");
    const int d = table.dimension;
    const int e = psi.parity;

    auto twist = [&](const CoefficientSeries& s, const DirichletCharacter& c) {
        CoefficientSeries t = s;
        for (std::size_t n = 1; n <= t.coeffs.size(); ++n) t.coeffs[n - 1] *= c(long(n));
        return t;
    };
    CoefficientSeries f = twist(expand_coefficients(table, length), psi);
    CoefficientSeries g = twist(expand_coefficients(table.contragredient(), length), psi.conj());

    cplx tau = gauss_sum(psi).z();
    cplx w = root_number.z() * ipow(-d * e) * nebentypus(q) * psi(table.conductor) *
             std::pow(tau / std::sqrt(double(q)), d);
    LFunctionPair out;
    out.series = std::make_shared<const CoefficientSeries>(std::move(f));
    out.fe.level = int(table.conductor * std::pow(double(q), d) + 0.5);
    out.fe.nebentypus = principal_character(1);
    out.fe.parity = 0;
    out.fe.gamma_shifts.assign(table.p_plus, e);
    out.fe.gamma_shifts.insert(out.fe.gamma_shifts.end(), table.m_minus, 1 - e);
    std::sort(out.fe.gamma_shifts.begin(), out.fe.gamma_shifts.end());
    out.fe.root_constant = ComplexValue(w / std::abs(w));
    out.fe.dual = std::make_shared<const CoefficientSeries>(std::move(g));
    return out;
}

}  // namespace twistlab
