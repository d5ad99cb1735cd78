#include "twistlab/converse.hpp"

#include "twistlab/errors.hpp"
#include "twistlab/hyp2f1.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace twistlab {

namespace {

constexpr double kSqrtPi = 1.77245385090551602730;

Rational rpow_neg(const Rational& x, int t) {
    Rational r = 1;
    for (int i = 0; i < t; ++i) r /= x;
    return r;
}

using Wide = boost::multiprecision::cpp_bin_float_50;

// sum_i v_i lambda_i^{-t0} log lambda_i, evaluated at 50 digits.
Wide to_wide(const Rational& x) {
    return Wide(boost::multiprecision::numerator(x)) / Wide(boost::multiprecision::denominator(x));
}

Wide wide_log_sum(const std::vector<Rational>& v, const std::vector<Rational>& nodes, int t0) {
    Wide sum = 0;
    for (std::size_t i = 0; i < v.size(); ++i) sum += to_wide(v[i] * rpow_neg(nodes[i], t0)) * log(to_wide(nodes[i]));
    return sum;
}

// Exact Gaussian elimination; the matrix is square and nonsingular.
std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw DegenerateParameters("singular Vandermonde system");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
    return b;
}

std::vector<Rational> solve_kronecker(const std::vector<Rational>& lambdas, const std::vector<Rational>& rhs) {
    const std::size_t m = lambdas.size();
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m));
    for (std::size_t t = 0; t < m; ++t)
        for (std::size_t j = 0; j < m; ++j) a[t][j] = rpow_neg(lambdas[j], int(t));
    return solve_exact(std::move(a), rhs);
}

void check_nodes(const std::vector<Rational>& lambdas, int t0) {
    if (t0 < 0 || std::size_t(t0) >= lambdas.size())
        throw T0OutOfRange("t0 = " + std::to_string(t0) + " needs 0 <= t0 < M = " + std::to_string(lambdas.size()));
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (lambdas[i] <= 0) throw DomainError("Vandermonde nodes must be positive");
        for (std::size_t j = i + 1; j < lambdas.size(); ++j)
            if (lambdas[i] == lambdas[j]) throw DuplicateNode(to_string(lambdas[i]));
    }
}

bool near_digamma_pole(cplx z) { return raw::nonpositive_integer_near(z, 1e-10) != 1; }

struct GJArgs {
    cplx x1, x2, x3;
};

GJArgs gj_args(int eps, cplx s) {
    return {(s + double(eps)) / 2.0, (s - double(eps) + 1.0) / 2.0, (1.0 + double(eps) - s) / 2.0};
}

cplx g_raw(const GJFactors& gj, cplx s) {
    const GJArgs x = gj_args(gj.epsilon, s);
    return raw::pochhammer(x.x1, gj.k) * raw::pochhammer(x.x2, gj.k) * raw::rgamma(x.x1) * raw::rgamma(x.x3);
}

cplx jg_raw(const GJFactors& gj, cplx s) {
    const GJArgs x = gj_args(gj.epsilon, s);
    const int k = gj.k;
    const cplx p1 = raw::pochhammer(x.x1, k);
    const cplx p2 = raw::pochhammer(x.x2, k);
    const cplx rg1 = raw::rgamma(x.x1);
    const cplx rg3 = raw::rgamma(x.x3);
    cplx v = 2.0 * raw::digamma(cplx(k + 1.0)) * p1 * p2 * rg1 * rg3;
    v -= p1 * p1 * p2 * rg3 * raw::rgamma_digamma(x.x1 + double(k));
    // (Psi(x2 + k) - Psi(x2)) G_k = sum_j prod_{i != j} (x2 + i) (x1)_k / (Gamma(x1) Gamma(x3))
    cplx partial = 0.0;
    for (int j = 0; j < k; ++j) {
        cplx prod = 1.0;
        for (int i = 0; i < k; ++i)
            if (i != j) prod *= x.x2 + double(i);
        partial += prod;
    }
    v -= partial * p1 * rg1 * rg3;
    v -= p1 * p2 * rg1 * raw::rgamma_digamma(x.x3);
    return v;
}

// Value and first derivative of an entire function at p from a Cauchy circle.
std::pair<cplx, cplx> taylor1(const std::function<cplx(cplx)>& f, cplx p) {
    constexpr int n = 48;
    constexpr double r = 0.25;
    cplx v = 0.0, d = 0.0;
    for (int j = 0; j < n; ++j) {
        const cplx u = std::polar(1.0, 2.0 * kPi * j / n);
        const cplx fv = f(p + r * u);
        v += fv;
        d += fv / u;
    }
    return {v / double(n), d / (double(n) * r)};
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

std::pair<cplx, double> gk15(const std::function<cplx(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const cplx fc = f(c);
    cplx kron = fc * kWgk[7];
    cplx gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const cplx fsum = f(c - h * kXgk[j]) + f(c + h * kXgk[j]);
        kron += kWgk[j] * fsum;
        if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
    }
    return {kron * h, std::abs((kron - gauss) * h)};
}

cplx gk15_recurse(const std::function<cplx(double)>& f, double a, double b, double tol, int depth) {
    auto [v, e] = gk15(f, a, b);
    if (e <= tol || e <= 1e-15 * std::abs(v)) return v;
    if (depth <= 0) throw QuadratureFailure("adaptive Gauss-Kronrod did not converge on [" + std::to_string(a) +
                                            ", " + std::to_string(b) + "]");
    const double m = 0.5 * (a + b);
    return gk15_recurse(f, a, m, 0.5 * tol, depth - 1) + gk15_recurse(f, m, b, 0.5 * tol, depth - 1);
}

}  // namespace

TBetaSet build_tbeta(long u, long v, long level, int count) {
    if (v <= 0 || count < 1 || level < 1) throw DomainError("build_tbeta needs v > 0, level >= 1 and count >= 1");
    if (u == 0 || gcd_l(std::labs(u), v) != 1) throw DomainError("build_tbeta needs u nonzero and gcd(u, v) = 1");
    TBetaSet out{u, v, level, {}, {}};
    const long target = ((u % v) + v) % v;
    long limit = 1024;
    long scanned = 2;
    std::vector<bool> sieve;
    while (int(out.primes.size()) < count) {
        sieve.assign(std::size_t(limit + 1), true);
        sieve[0] = sieve[1] = false;
        for (long p = 2; p * p <= limit; ++p)
            if (sieve[p])
                for (long m = p * p; m <= limit; m += p) sieve[m] = false;
        for (long p = scanned + 1; p <= limit && int(out.primes.size()) < count; ++p) {
            if (!sieve[p] || p == 2 || p % v != target || level % p == 0) continue;
            out.primes.push_back(p);
            out.members.push_back(Rational(p) / Rational(u));
        }
        scanned = limit;
        limit *= 2;
    }
    if (u < 0) std::reverse(out.members.begin(), out.members.end());
    return out;
}

std::vector<cplx> VandermondeWeights::complex_weights() const {
    std::vector<cplx> out;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        cplx c = to_double(weights[i]);
        if (lambda0) c += kappa * to_double(kernel[i]);
        out.push_back(c);
    }
    if (lambda0) out.push_back(kappa * to_double(kernel.back()));
    return out;
}

Rational VandermondeWeights::kronecker_residual() const {
    std::vector<Rational> nodes = lambdas;
    if (lambda0) nodes.push_back(*lambda0);
    Rational worst = 0;
    for (int t = 0; t < int(lambdas.size()); ++t) {
        Rational base = 0, null = 0;
        for (std::size_t i = 0; i < lambdas.size(); ++i) base += weights[i] * rpow_neg(lambdas[i], t);
        base -= (t == t0) ? 1 : 0;
        if (lambda0)
            for (std::size_t i = 0; i < nodes.size(); ++i) null += kernel[i] * rpow_neg(nodes[i], t);
        const Rational ab = abs(base), an = abs(null);
        if (ab > worst) worst = ab;
        if (an > worst) worst = an;
    }
    return worst;
}

double VandermondeWeights::log_residual() const {
    if (!extended_log_target) return 0.0;
    std::vector<Rational> nodes = lambdas;
    nodes.push_back(*lambda0);
    std::vector<Rational> base = weights;
    base.push_back(0);
    const Wide b = wide_log_sum(base, nodes, t0), d = wide_log_sum(kernel, nodes, t0);
    const Wide re = b + Wide(kappa.real()) * d - Wide(extended_log_target->re);
    const Wide im = Wide(kappa.imag()) * d - Wide(extended_log_target->im);
    return std::hypot(re.convert_to<double>(), im.convert_to<double>());
}

VandermondeWeights solve_vandermonde(const std::vector<Rational>& lambdas, int t0) {
    check_nodes(lambdas, t0);
    std::vector<Rational> rhs(lambdas.size(), Rational(0));
    rhs[std::size_t(t0)] = 1;
    VandermondeWeights out;
    out.lambdas = lambdas;
    out.t0 = t0;
    out.weights = solve_kronecker(lambdas, rhs);
    return out;
}

VandermondeWeights solve_vandermonde_extended(const std::vector<Rational>& lambdas, int t0, const ComplexValue& z,
                                              const TBetaSet& pool) {
    VandermondeWeights out = solve_vandermonde(lambdas, t0);
    out.extended_log_target = z;
    const Wide base_log = wide_log_sum(out.weights, lambdas, t0);

    for (const Rational& cand : pool.members) {
        if (cand <= 0 || std::find(lambdas.begin(), lambdas.end(), cand) != lambdas.end()) continue;
        // Kernel direction d with d_{lambda0} = 1 and sum_lambda d_lambda lambda^{-t} = -lambda0^{-t}.
        std::vector<Rational> rhs;
        for (int t = 0; t < int(lambdas.size()); ++t) rhs.push_back(-rpow_neg(cand, t));
        std::vector<Rational> d = solve_kronecker(lambdas, rhs);
        d.push_back(1);
        std::vector<Rational> nodes = lambdas;
        nodes.push_back(cand);
        const Wide wdet = wide_log_sum(d, nodes, t0);
        const double det = wdet.convert_to<double>();
        if (std::abs(det) <= 1e-12) continue;
        out.lambda0 = cand;
        out.kernel = std::move(d);
        out.determinant = det;
        out.kappa = cplx(((Wide(z.re) - base_log) / wdet).convert_to<double>(), (Wide(z.im) / wdet).convert_to<double>());
        return out;
    }
    throw PoolExhausted("no pool member gives a nonsingular extended system");
}

void GJFactors::validate() const {
    if (epsilon != 0 && epsilon != 1) throw DomainError("epsilon must be 0 or 1");
    if (k < 0) throw DomainError("k must be nonnegative");
}

ComplexValue g_factor(const GJFactors& gj, const ComplexValue& s) {
    gj.validate();
    const cplx v = g_raw(gj, s.z());
    return ComplexValue(v, 1e-14 * std::max(1.0, std::abs(v)));
}

ComplexValue j_factor(const GJFactors& gj, const ComplexValue& s) {
    gj.validate();
    const GJArgs x = gj_args(gj.epsilon, s.z());
    const int k = gj.k;
    for (cplx a : {x.x1 + double(k), x.x2 + double(k), x.x2, x.x3})
        if (near_digamma_pole(a)) throw DigammaPole("J_k has a digamma pole at this s; use jg_product");
    const cplx v = 2.0 * raw::digamma(cplx(k + 1.0)) - raw::digamma(x.x1 + double(k)) -
                   raw::digamma(x.x2 + double(k)) + raw::digamma(x.x2) - raw::digamma(x.x3);
    return ComplexValue(v, 1e-13 * std::max(1.0, std::abs(v)));
}

ComplexValue jg_product(const GJFactors& gj, const ComplexValue& s) {
    gj.validate();
    const cplx v = jg_raw(gj, s.z());
    return ComplexValue(v, 1e-13 * std::max(1.0, std::abs(v)));
}

std::pair<ComplexValue, ComplexValue> residue_integrals(const FunctionalEquationData& fe, const GJFactors& gj,
                                                        const Rational& alpha,
                                                        const std::vector<PoleDatum>& pole_data) {
    gj.validate();
    if (alpha <= 0) throw DomainError("alpha must be positive");
    for (const PoleDatum& p : pole_data)
        if (std::abs(p.point) > 1e-12 && std::abs(p.point - 1.0) > 1e-12)
            throw IncompletePoleData("pole at s = " + std::to_string(p.point) + " lies outside {0, 1}");
    for (const PoleDatum& p : fe.poles) {
        const bool listed = std::any_of(pole_data.begin(), pole_data.end(),
                                        [&](const PoleDatum& q) { return std::abs(q.point - p.point) < 1e-12; });
        if (!listed) throw IncompletePoleData("pole of Lambda_f at s = " + std::to_string(p.point) + " not supplied");
    }
    const double a = to_double(alpha);
    const double la = std::log(a);
    auto scaled = [&](const std::function<cplx(cplx)>& core) {
        return [&, core](cplx s) { return core(s) * std::exp((0.5 - s) * la); };
    };
    const auto g = scaled([&](cplx s) { return g_raw(gj, s); });
    const auto jg = scaled([&](cplx s) { return jg_raw(gj, s); });
    cplx plain = 0.0, tilde = 0.0;
    for (const PoleDatum& p : pole_data) {
        auto [gv, gd] = taylor1(g, p.point);
        auto [jv, jd] = taylor1(jg, p.point);
        plain += p.r1 * gv + p.r2 * gd;
        tilde += p.r1 * jv + p.r2 * jd;
    }
    const double pref = (gj.k % 2 ? -1.0 : 1.0) * kSqrtPi / (factorial(gj.k) * factorial(gj.k));
    plain *= pref;
    tilde *= pref;
    return {ComplexValue(plain, 1e-13 * std::max(1.0, std::abs(plain))),
            ComplexValue(tilde, 1e-13 * std::max(1.0, std::abs(tilde)))};
}

long whittaker_truncation(double y) {
    if (!(y > 0.0)) throw DomainError("y must be positive");
    return long(std::ceil(40.0 / (2.0 * kPi * y)));
}

WhittakerValue whittaker_series(const CoefficientSeries& series, int epsilon, const MaassEvalPoint& z,
                                const std::vector<PoleDatum>& pole_data, long truncation) {
    if (!(z.y > 0.0)) throw DomainError("evaluation point must lie in the upper half-plane");
    if (epsilon != 0 && epsilon != 1) throw DomainError("epsilon must be 0 or 1");
    if (2.0 * kPi * double(truncation) * z.y < 40.0)
        throw TruncationInsufficient("whittaker_series needs 2 pi T y >= 40");
    if (std::size_t(truncation) > series.length())
        throw TruncationInsufficient("truncation exceeds the stored coefficients");

    WhittakerValue out;
    const double sy = std::sqrt(z.y);
    cplx c0 = 0.0;
    for (const PoleDatum& p : pole_data)
        if (std::abs(p.point) < 1e-12) c0 += -p.r1 * sy + p.r2 * sy * std::log(z.y);
    out.constant = ComplexValue(c0, 1e-15 * std::abs(c0));

    cplx sum = 0.0;
    double mag = 0.0;
    const double sign = epsilon ? -1.0 : 1.0;
    for (long n = 1; n <= truncation; ++n) {
        const cplx an = series.a(n);
        if (an == 0.0) continue;
        const double k0 = bessel_k0(2.0 * kPi * n * z.y);
        const double th = 2.0 * kPi * n * z.x;
        const cplx e = std::polar(1.0, th) + sign * std::polar(1.0, -th);
        const cplx term = 2.0 * an * sy * k0 * e;
        sum += term;
        mag += std::abs(term);
    }
    const double next = double(truncation + 1);
    const double tail = 4.0 * series.growth_constant() * std::pow(next, series.growth_sigma) * sy *
                        bessel_k0(2.0 * kPi * next * z.y) / (1.0 - std::exp(-2.0 * kPi * z.y));
    out.nonconstant = ComplexValue(sum, tail + 1e-15 * mag);
    return out;
}

double check_modularity(const CoefficientSeries& f, const CoefficientSeries& g, const FunctionalEquationData& fe,
                        const std::vector<MaassEvalPoint>& points) {
    const cplx w = fe.root_constant.z();
    CoefficientSeries b = g;
    for (cplx& c : b.coeffs) c *= w;
    std::vector<PoleDatum> g_poles = fe.dual_poles;
    for (PoleDatum& p : g_poles) {
        p.r1 *= w;
        p.r2 *= w;
    }
    double worst = 0.0;
    for (const MaassEvalPoint& z : points) {
        const cplx zz(z.x, z.y);
        const cplx image = -1.0 / (double(fe.level) * zz);
        const MaassEvalPoint zi{image.real(), image.imag()};
        const cplx lhs = whittaker_series(f, fe.parity, z, fe.poles, whittaker_truncation(z.y)).total().z();
        const cplx rhs = whittaker_series(b, fe.parity, zi, g_poles, whittaker_truncation(zi.y)).total().z();
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

ComplexValue expansion_lhs(int epsilon, const ComplexValue& s, double alpha, double y) {
    const ComplexValue a = (s + ComplexValue(double(epsilon))) / ComplexValue(2.0);
    const ComplexValue f = hyp_degenerate(a, ComplexValue(0.5 + epsilon), -1.0 / (y * y));
    const cplx scale = std::pow(2.0 / y, double(epsilon)) * std::exp((0.5 - s.z()) * std::log(alpha * y));
    return f * ComplexValue(scale);
}

namespace {

cplx expansion_term(int epsilon, cplx s, double y, int k) {
    const GJFactors gj{epsilon, k};
    const double kf = factorial(k);
    return (k % 2 ? -1.0 : 1.0) * std::pow(y, 2.0 * k + 0.5) / (kf * kf) *
           (-2.0 * std::log(y) * g_raw(gj, s) + jg_raw(gj, s));
}

}  // namespace

ComplexValue expansion_rhs(int epsilon, const ComplexValue& s, double alpha, double y, int ell0) {
    cplx sum = 0.0;
    for (int k = 0; k < ell0; ++k) sum += expansion_term(epsilon, s.z(), y, k);
    const cplx v = kSqrtPi * std::exp((0.5 - s.z()) * std::log(alpha)) * sum;
    return ComplexValue(v, 1e-14 * std::max(1.0, std::abs(v)));
}

ExpansionCheck check_expansion_identity(int epsilon, const ComplexValue& s, const Rational& alpha,
                                        const std::vector<double>& y_values, int ell0) {
    if (epsilon != 0 && epsilon != 1) throw DomainError("epsilon must be 0 or 1");
    if (ell0 < 1) throw DomainError("ell0 must be positive");
    const double a = to_double(alpha);
    ExpansionCheck out;
    for (double y : y_values) {
        if (!(y > 0.0 && y < 1.0)) throw DomainError("expansion identity needs 0 < y < 1");
        const cplx r = expansion_lhs(epsilon, s, a, y).z() - expansion_rhs(epsilon, s, a, y, ell0).z();
        out.residual = std::max(out.residual, std::abs(r));
        double env = 0.0;
        for (int k = ell0; k < ell0 + 20; ++k) env += std::abs(expansion_term(epsilon, s.z(), y, k));
        out.envelope = std::max(out.envelope, kSqrtPi * std::pow(a, 0.5 - s.re) * env);
    }
    return out;
}

double remainder_order(int epsilon, const ComplexValue& s, const Rational& alpha, double y, int ell0) {
    const double r1 = check_expansion_identity(epsilon, s, alpha, {y}, ell0).residual;
    const double r2 = check_expansion_identity(epsilon, s, alpha, {y / 2.0}, ell0).residual;
    return std::log2((r1 / std::abs(std::log(y))) / (r2 / std::abs(std::log(y / 2.0))));
}

cplx adaptive_gk15(const std::function<cplx(double)>& f, double a, double b, double tol, int max_depth) {
    return gk15_recurse(f, a, b, tol, max_depth);
}

double check_bessel_mellin(const Rational& alpha, const ComplexValue& s) {
    if (alpha <= 0) throw DomainError("alpha must be positive");
    if (!(s.re > 0.0)) throw DomainError("Bessel-Mellin identity needs Re s > 0");
    const double a = to_double(alpha);
    const cplx sz = s.z();
    // y = e^x; the integrand is 4 K0(2 pi alpha e^x) e^{s x}.
    auto f = [&](double x) { return 4.0 * bessel_k0(2.0 * kPi * a * std::exp(x)) * std::exp(sz * x); };
    const double split = std::log(1.0 / a);
    double left = 40.0;
    while (std::exp(-s.re * left) * (left + std::abs(split) + 2.0) > 1e-16) left *= 1.25;
    const double right = split + std::log(760.0 / (2.0 * kPi));
    cplx total = 0.0;
    const double width = 2.0;
    for (double lo = split - left; lo < split; lo += width)
        total += adaptive_gk15(f, lo, std::min(split, lo + width), 1e-13);
    for (double lo = split; lo < right; lo += width) total += adaptive_gk15(f, lo, std::min(right, lo + width), 1e-13);
    const cplx exact = std::exp(-sz * std::log(a)) * raw::gamma_r(sz) * raw::gamma_r(sz);
    return std::abs(total - exact);
}

cplx rectangle_contour(const std::function<cplx(cplx)>& f, double re_lo, double re_hi, double im_lo, double im_hi,
                       int n) {
    const GaussLegendre& gl = gauss_legendre(n);
    const std::array<cplx, 5> corners = {cplx(re_lo, im_lo), cplx(re_hi, im_lo), cplx(re_hi, im_hi),
                                         cplx(re_lo, im_hi), cplx(re_lo, im_lo)};
    cplx total = 0.0;
    for (int side = 0; side < 4; ++side) {
        const cplx a = corners[side], b = corners[side + 1];
        const cplx half = 0.5 * (b - a), mid = 0.5 * (a + b);
        cplx acc = 0.0;
        for (int i = 0; i < n; ++i) acc += gl.weights[i] * f(mid + half * gl.nodes[i]);
        total += acc * half;
    }
    return total / cplx(0.0, 2.0 * kPi);
}

cplx residue_integrand(const std::function<cplx(cplx)>& lambda_f, const GJFactors& gj, double alpha, bool tilde,
                       cplx s) {
    const double kf = factorial(gj.k);
    const double pref = (gj.k % 2 ? -1.0 : 1.0) * kSqrtPi / (kf * kf);
    const cplx core = tilde ? jg_raw(gj, s) : g_raw(gj, s);
    return pref * lambda_f(s) * core * std::exp((0.5 - s) * std::log(alpha));
}

}  // namespace twistlab
