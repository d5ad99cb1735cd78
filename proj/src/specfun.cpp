#include "twistlab/specfun.hpp"

#include "twistlab/errors.hpp"

#include <boost/math/special_functions/bernoulli.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>

namespace twistlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string show(cplx z) {
    return "(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")";
}

// Godfrey's coefficients for g = 607/128.
constexpr double kLanczosG = 4.7421875;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5};

// B_{2j}/(2j)! for j = 1..10, the Euler-Maclaurin weights.
const std::array<double, 11>& em_weights() {
    static const std::array<double, 11> w = [] {
        std::array<double, 11> out{};
        double fact = 1.0;
        for (int j = 1; j <= 10; ++j) {
            fact *= (2.0 * j - 1.0) * (2.0 * j);
            out[j] = boost::math::bernoulli_b2n<double>(j) / fact;
        }
        return out;
    }();
    return w;
}

const std::array<double, 11>& bernoulli_even() {
    static const std::array<double, 11> b = [] {
        std::array<double, 11> out{};
        for (int j = 0; j <= 10; ++j) out[j] = boost::math::bernoulli_b2n<double>(j);
        return out;
    }();
    return b;
}

// sin(πz) and cos(πz) with z reduced by the nearest integer first.
cplx sin_pi(cplx z) {
    double n = std::round(z.real());
    cplx v = std::sin(kPi * (z - n));
    return std::fmod(n, 2.0) == 0.0 ? v : -v;
}

cplx cos_pi(cplx z) {
    double n = std::round(z.real());
    cplx v = std::cos(kPi * (z - n));
    return std::fmod(n, 2.0) == 0.0 ? v : -v;
}

cplx lanczos_gamma(cplx z) {
    z -= 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 15; ++i) x += kLanczos[i] / (z + double(i));
    cplx t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * kPi) * std::exp((z + 0.5) * std::log(t) - t) * x;
}

}  // namespace

ComplexValue operator+(const ComplexValue& a, const ComplexValue& b) {
    cplx r = a.z() + b.z();
    return {r, a.err + b.err + kEps * std::abs(r)};
}

ComplexValue operator-(const ComplexValue& a, const ComplexValue& b) {
    cplx r = a.z() - b.z();
    return {r, a.err + b.err + kEps * std::abs(r)};
}

ComplexValue operator-(const ComplexValue& a) { return {-a.z(), a.err}; }

ComplexValue operator*(const ComplexValue& a, const ComplexValue& b) {
    cplx r = a.z() * b.z();
    return {r, a.abs() * b.err + b.abs() * a.err + 2 * kEps * std::abs(r)};
}

ComplexValue operator/(const ComplexValue& a, const ComplexValue& b) {
    cplx r = a.z() / b.z();
    double bb = b.abs();
    return {r, (a.err + std::abs(r) * b.err) / bb + 2 * kEps * std::abs(r)};
}

namespace raw {

long nonpositive_integer_near(cplx z, double tol) {
    if (z.real() > 0.5 || std::abs(z.imag()) >= tol) return 1;
    double n = std::round(z.real());
    if (std::abs(z - cplx(n, 0.0)) < tol) return static_cast<long>(n);
    return 1;
}

cplx gamma(cplx z) {
    if (nonpositive_integer_near(z) <= 0)
        throw PoleAtNonPositiveInteger("gamma at " + show(z));
    if (z.real() < 0.5) return kPi / (sin_pi(z) * lanczos_gamma(1.0 - z));
    return lanczos_gamma(z);
}

cplx rgamma(cplx z) {
    if (z.real() < 0.5) return sin_pi(z) / kPi * lanczos_gamma(1.0 - z);
    return 1.0 / lanczos_gamma(z);
}

cplx rgamma_digamma(cplx z) {
    if (z.real() >= 0.5) return digamma(z) / lanczos_gamma(z);
    // 1/Γ(z) = sin(πz) Γ(1-z)/π and Ψ(z) = Ψ(1-z) - π cot(πz).
    cplx g1 = lanczos_gamma(1.0 - z);
    return sin_pi(z) * g1 * digamma(1.0 - z) / kPi - cos_pi(z) * g1;
}

cplx log_gamma(cplx z) {
    if (z.real() < 0.5) throw DomainError("log_gamma needs Re z >= 1/2");
    z -= 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 15; ++i) x += kLanczos[i] / (z + double(i));
    cplx t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx digamma(cplx z) {
    if (nonpositive_integer_near(z) <= 0)
        throw PoleAtNonPositiveInteger("digamma at " + show(z));
    if (z.real() < 0.5) {
        return digamma(1.0 - z) - kPi * cos_pi(z) / sin_pi(z);
    }
    cplx acc = 0.0;
    while (z.real() < 15.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    const auto& b = bernoulli_even();
    cplx inv2 = 1.0 / (z * z);
    cplx p = inv2;
    cplx series = 0.0;
    for (int k = 1; k <= 10; ++k) {
        series += b[k] / (2.0 * k) * p;
        p *= inv2;
    }
    return acc + std::log(z) - 0.5 / z - series;
}

cplx pochhammer(cplx a, int k) {
    cplx r = 1.0;
    for (int i = 0; i < k; ++i) r *= a + double(i);
    return r;
}

cplx gamma_r(cplx s) { return std::exp(-0.5 * s * std::log(kPi)) * gamma(0.5 * s); }

cplx gamma_r_logderiv(cplx s) { return -0.5 * std::log(kPi) + 0.5 * digamma(0.5 * s); }

cplx hurwitz_zeta(cplx s, double x) {
    if (!(x > 0.0 && x <= 1.0)) throw DomainError("hurwitz_zeta needs 0 < x <= 1");
    if (std::abs(s - 1.0) < kPoleTol) throw PoleAtOne("hurwitz_zeta at s = 1");
    const double target = 10.0 + std::abs(s.imag());
    long m = std::max(10L, static_cast<long>(std::ceil(target - s.real())));
    while (std::abs(s + double(m)) < target) ++m;
    cplx sum = 0.0;
    for (long n = 0; n < m; ++n) sum += std::exp(-s * std::log(double(n) + x));
    const double w = double(m) + x;
    const double lw = std::log(w);
    cplx ws = std::exp(-s * lw);
    sum += ws * w / (s - 1.0) + 0.5 * ws;
    const auto& em = em_weights();
    cplx poch = s;
    cplx wp = ws / w;
    for (int j = 1; j <= 10; ++j) {
        sum += em[j] * poch * wp;
        poch *= (s + double(2 * j - 1)) * (s + double(2 * j));
        wp /= w * w;
    }
    return sum;
}

}  // namespace raw

ComplexValue gamma(const ComplexValue& z) {
    cplx v = raw::gamma(z.z());
    double deriv = std::abs(v * raw::digamma(z.z()));
    return {v, 1e-14 * std::abs(v) + deriv * z.err};
}

ComplexValue digamma(const ComplexValue& z) {
    cplx v = raw::digamma(z.z());
    double scale = std::abs(v) + 1.0 / std::max(std::abs(z.z()), 1e-300);
    return {v, 1e-14 * scale};
}

ComplexValue pochhammer(const ComplexValue& a, int k) {
    if (k < 0) throw DomainError("pochhammer needs k >= 0");
    cplx v = raw::pochhammer(a.z(), k);
    double rel = 0.0;
    for (int i = 0; i < k; ++i) rel += a.err / std::max(std::abs(a.z() + double(i)), 1e-300);
    return {v, std::abs(v) * (rel + k * kEps)};
}

PochhammerExpansion pochhammer_expansion(const Rational& a, int k) {
    if (k < 0) throw DomainError("pochhammer_expansion needs k >= 0");
    std::vector<Rational> poly{Rational(1)};
    for (int n = 0; n < k; ++n) {
        Rational c = a + n;
        if (c == 0) throw ZeroFactor("a + " + std::to_string(n) + " = 0");
        std::vector<Rational> next(poly.size() + 1, Rational(0));
        for (std::size_t m = 0; m < poly.size(); ++m) {
            next[m] += c * poly[m];
            next[m + 1] += poly[m];
        }
        poly = std::move(next);
    }
    PochhammerExpansion out;
    out.base = ComplexValue(to_double(a));
    out.k = k;
    for (const auto& c : poly) {
        Rational h = c / poly[0];
        out.exact.push_back(h);
        out.coeffs.emplace_back(to_double(h), 0.0, std::abs(to_double(h)) * kEps);
    }
    return out;
}

ComplexValue gamma_r(const ComplexValue& s) {
    if (raw::nonpositive_integer_near(0.5 * s.z()) <= 0)
        throw PoleAtNonPositiveInteger("gamma_r at " + show(s.z()));
    cplx v = raw::gamma_r(s.z());
    double deriv = std::abs(v * raw::gamma_r_logderiv(s.z()));
    return {v, 1e-14 * std::abs(v) + deriv * s.err};
}

ComplexValue hurwitz_zeta(const ComplexValue& s, double x) {
    cplx v = raw::hurwitz_zeta(s.z(), x);
    return {v, 1e-13 * (1.0 + std::abs(v))};
}

double bessel_k0(double u, double tol) {
    if (u == 0.0) throw ZeroArgument("bessel_k0 at u = 0");
    u = std::abs(u);
    if (u > 740.0) return 0.0;
    // K_0(u) = ∫_0^∞ exp(-u cosh v) dv; the integrand decays double exponentially.
    const double vmax = std::acosh(std::max(1.0, 745.0 / u)) + 1.0;
    auto f = [u](double v) { return std::exp(-u * std::cosh(v)); };
    double h = 0.5;
    double sum = 0.5 * f(0.0);
    for (double v = h; v <= vmax; v += h) sum += f(v);
    double estimate = h * sum;
    for (int level = 0; level < 24; ++level) {
        double odd = 0.0;
        for (double v = 0.5 * h; v <= vmax; v += h) odd += f(v);
        sum += odd;
        h *= 0.5;
        double next = h * sum;
        bool done = level >= 1 && std::abs(next - estimate) <= tol * std::abs(next);
        estimate = next;
        if (done) break;
    }
    return estimate;
}

const GaussLegendre& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussLegendre g;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        g.nodes[i] = -x;
        g.weights[i] = w;
        g.nodes[n - 1 - i] = x;
        g.weights[n - 1 - i] = w;
    }
    return cache.emplace(n, std::move(g)).first->second;
}

}  // namespace twistlab
