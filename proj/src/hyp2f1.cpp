#include "twistlab/hyp2f1.hpp"

#include "twistlab/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace twistlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kDegenerateTol = 1e-8;

struct Summed {
    cplx sum = 0.0;
    double err = 0.0;
};

// Sums term(0), term(1), ... under the budget's dual stopping rule.
template <class Term>
Summed run_series(Term&& term, const SeriesBudget& budget, const char* what) {
    Summed out;
    double abs_sum = 0.0;
    double prev_abs = 0.0, last_abs = 0.0;
    int small_run = 0;
    const int need = std::max(1, budget.k_min / 2);
    for (int k = 0; k <= budget.k_max; ++k) {
        cplx t = term(k);
        out.sum += t;
        prev_abs = last_abs;
        last_abs = std::abs(t);
        abs_sum += last_abs;
        if (last_abs <= budget.tol * std::abs(out.sum))
            ++small_run;
        else
            small_run = 0;
        if (k + 1 >= budget.k_min && small_run >= need) {
            double r = prev_abs > 0.0 ? last_abs / prev_abs : 0.0;
            double tail = r < 1.0 ? last_abs * r / (1.0 - r) : last_abs * k;
            out.err = tail + 8.0 * kEps * abs_sum;
            return out;
        }
    }
    throw NoConvergence(std::string(what) + ": k_max = " + std::to_string(budget.k_max) + " reached");
}

void require_c(cplx c) {
    if (raw::nonpositive_integer_near(c) <= 0) throw ParameterPole("c is a non-positive integer");
}

bool near_integer(cplx z, double tol) {
    return std::abs(z.imag()) < tol && std::abs(z.real() - std::round(z.real())) < tol;
}

// Σ_k w^{-k} (p)_k (p-c+1)_k / (k! (p-q+1)_k), one half of the continuation.
Summed continuation_half(cplx p, cplx q, cplx c, cplx w, const SeriesBudget& budget) {
    cplx t = 1.0;
    cplx winv = 1.0 / w;
    auto term = [&](int k) {
        if (k > 0) {
            double km = k - 1.0;
            t *= (p + km) * (p - c + 1.0 + km) / (double(k) * (p - q + 1.0 + km)) * winv;
        }
        return t;
    };
    return run_series(term, budget, "hyp_continuation");
}

}  // namespace

void SeriesBudget::validate() const {
    if (!(tol > 0.0)) throw DomainError("SeriesBudget.tol must be positive");
    if (k_min < 8) throw DomainError("SeriesBudget.k_min must be >= 8");
    if (k_max < k_min) throw DomainError("SeriesBudget.k_max must be >= k_min");
}

ComplexValue hyp_series(const HypArgs& args, const SeriesBudget& budget) {
    budget.validate();
    const cplx a = args.a.z(), b = args.b.z(), c = args.c.z(), w = args.w.z();
    if (std::abs(w) >= 1.0) throw DomainError("hyp_series needs |w| < 1");
    require_c(c);
    cplx t = 1.0;
    auto term = [&](int k) {
        if (k > 0) {
            double km = k - 1.0;
            t *= w * (a + km) * (b + km) / (double(k) * (c + km));
        }
        return t;
    };
    Summed s = run_series(term, budget, "hyp_series");
    return {s.sum, s.err};
}

ComplexValue hyp_continuation(const HypArgs& args, const SeriesBudget& budget) {
    budget.validate();
    const cplx a = args.a.z(), b = args.b.z(), c = args.c.z(), w = args.w.z();
    if (std::abs(w) <= 1.0) throw DomainError("hyp_continuation needs |w| > 1");
    require_c(c);
    if (near_integer(a - b, kDegenerateTol))
        throw DegenerateParameters("a - b is within 1e-8 of an integer; use hyp_degenerate");
    const cplx lmw = std::log(-w);
    const cplx gc = raw::gamma(c);
    cplx pre_a = std::exp(-a * lmw) * raw::gamma(b - a) * gc * raw::rgamma(b) * raw::rgamma(c - a);
    cplx pre_b = std::exp(-b * lmw) * raw::gamma(a - b) * gc * raw::rgamma(a) * raw::rgamma(c - b);
    Summed sa = continuation_half(a, b, c, w, budget);
    Summed sb = continuation_half(b, a, c, w, budget);
    cplx ta = pre_a * sa.sum, tb = pre_b * sb.sum;
    cplx value = ta + tb;
    double err = std::abs(pre_a) * sa.err + std::abs(pre_b) * sb.err +
                 16.0 * kEps * (std::abs(ta) + std::abs(tb));
    return {value, err};
}

ComplexValue hyp_degenerate(const ComplexValue& a_in, const ComplexValue& c_in, double w,
                            const SeriesBudget& budget) {
    budget.validate();
    const cplx a = a_in.z(), c = c_in.z();
    if (!(w < -1.0)) throw DomainError("hyp_degenerate needs real w < -1");
    require_c(c);
    if (raw::nonpositive_integer_near(a) <= 0) throw ParameterPole("a is a non-positive integer");
    const cplx a1 = a - c + 1.0;
    const double lmw = std::log(-w);
    // 1/Γ(c-a) and Ψ(c-a)/Γ(c-a) are entire, so c - a in Z_{<=0} needs no special case.
    const cplx r = raw::rgamma(c - a);
    const cplx r_psi = raw::rgamma_digamma(c - a);
    const cplx pre = std::exp(-a * lmw) * raw::gamma(c) * raw::rgamma(a);
    // v = w^{-k} (a)_k / (k!)^2, p = (a1)_k, d = (a1)_k (Ψ(a1+k) - Ψ(a1)); the last two stay
    // finite when a1 is a non-positive integer.
    cplx v = 1.0, p = 1.0, d = 0.0;
    double psi_k1 = -kEulerGamma;
    cplx psi_a = raw::digamma(a);
    auto term = [&](int k) {
        if (k > 0) {
            double km = k - 1.0;
            v *= (a + km) / (double(k) * double(k) * w);
            d = d * (a1 + km) + p;
            p *= a1 + km;
            psi_k1 += 1.0 / double(k);
            psi_a += 1.0 / (a + km);
        }
        return v * (r * p * (2.0 * psi_k1 - psi_a + lmw) - r * d - r_psi * p);
    };
    Summed s = run_series(term, budget, "hyp_degenerate");
    return {pre * s.sum, std::abs(pre) * s.err + 4.0 * kEps * std::abs(pre * s.sum)};
}

ComplexValue hyp_oracle(const HypArgs& args, const SeriesBudget& budget) {
    const cplx w = args.w.z();
    if (!(w.imag() == 0.0 && w.real() <= 0.0)) throw DomainError("hyp_oracle needs real w <= 0");
    const double x = w.real() / (w.real() - 1.0);
    HypArgs t{args.a, args.c - args.b, args.c, ComplexValue(x)};
    ComplexValue inner = hyp_series(t, budget);
    cplx pre = std::exp(-args.a.z() * std::log(1.0 - w.real()));
    return {pre * inner.z(), std::abs(pre) * inner.err};
}

std::pair<ComplexValue, ComplexValue> ab_terms(const ComplexValue& a_in, const ComplexValue& c_in, double w,
                                               const ComplexValue& delta_in, int k) {
    const cplx a = a_in.z(), c = c_in.z(), d = delta_in.z();
    if (std::abs(d) >= 0.5) throw DomainError("ab_terms needs |delta| < 1/2");
    if (!(w < -1.0)) throw DomainError("ab_terms needs real w < -1");
    if (k < 0) throw DomainError("ab_terms needs k >= 0");
    require_c(c);
    const double lmw = std::log(-w);
    const cplx gc = raw::gamma(c);
    cplx ra = 1.0, rb = 1.0;
    for (int j = 0; j < k; ++j) {
        double jd = j;
        ra *= (a + jd) * (a - c + 1.0 + jd) / ((jd + 1.0) * (1.0 - d + jd) * w);
        rb *= (a + d + jd) * (a - c + 1.0 + d + jd) / ((jd + 1.0) * (1.0 + d + jd) * w);
    }
    cplx A = ra * std::exp(-a * lmw) * gc * raw::rgamma(a + d) * raw::rgamma(c - a);
    cplx B = rb * std::exp(-(d + a) * lmw) * gc * raw::rgamma(a) * raw::rgamma(c - a - d);
    double e = 64.0 * kEps * (k + 1.0);
    return {ComplexValue(A, e * std::abs(A)), ComplexValue(B, e * std::abs(B))};
}

ComplexValue hyp_delta_limit(const ComplexValue& a, const ComplexValue& c, double w, double delta0,
                             const SeriesBudget& budget) {
    auto f = [&](double d) {
        return hyp_continuation({a, a + ComplexValue(d), c, ComplexValue(w)}, budget).z();
    };
    cplx f0 = f(delta0), f1 = f(0.5 * delta0), f2 = f(0.25 * delta0);
    cplx r1 = 2.0 * f1 - f0;
    cplx r2 = 2.0 * f2 - f1;
    cplx limit = (4.0 * r2 - r1) / 3.0;
    return {limit, std::abs(limit - r2)};
}

}  // namespace twistlab
