#include "twistlab/lfun.hpp"

#include "twistlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace twistlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
const cplx kI(0.0, 1.0);

DirichletCharacter trivial_character() { return enumerate_characters(1).front(); }

cplx ipow(int r) {
    switch (((r % 4) + 4) % 4) {
        case 0: return 1.0;
        case 1: return kI;
        case 2: return -1.0;
        default: return -kI;
    }
}

double sign_pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

// w (-1)^(eps - eps_psi) chi(q) psi(N) tau(psi)^2/q (q^2 N)^(1/2-s).
ComplexValue fe_factor(const FunctionalEquationData& fe, const DirichletCharacter& psi, const ComplexValue& s) {
    const int q = psi.modulus;
    const double qq = double(q) * q * fe.level;
    ComplexValue tau = gauss_sum(psi);
    cplx chi_q = fe.nebentypus(q);
    cplx pre = sign_pow(fe.parity - psi.parity) * chi_q * psi(fe.level) / double(q);
    ComplexValue power(std::exp((0.5 - s.z()) * std::log(qq)));
    return fe.root_constant * ComplexValue(pre) * tau * tau * power;
}

void require_coprime(const DirichletCharacter& psi, const FunctionalEquationData& fe) {
    if (std::gcd(psi.modulus, fe.level) != 1) throw DomainError("twist modulus must be coprime to the level");
}

std::shared_ptr<const CoefficientSeries> share(const CoefficientSeries& s) {
    return std::make_shared<const CoefficientSeries>(s);
}

}  // namespace

double CoefficientSeries::growth_constant() const {
    double c = 0.0;
    for (std::size_t n = 1; n <= coeffs.size(); ++n)
        c = std::max(c, std::abs(coeffs[n - 1]) / std::pow(double(n), growth_sigma));
    return c;
}

void FunctionalEquationData::validate() const {
    if (level < 1) throw DomainError("level must be >= 1");
    if (parity != 0 && parity != 1) throw DomainError("parity must be 0 or 1");
    if (std::abs(root_constant.abs() - 1.0) > 1e-10) throw NotUnitModulus("|root_constant| != 1");
    if (!std::is_sorted(gamma_shifts.begin(), gamma_shifts.end()))
        throw DomainError("gamma_shifts must be sorted");
    if (level % nebentypus.modulus != 0) throw DomainError("nebentypus modulus must divide the level");
}

TwistSpec TwistSpec::cos(long a, long q, int r) {
    TwistSpec t;
    t.numerator = a;
    t.denominator = q;
    t.kind = TwistKind::Cos;
    t.r = r;
    return t;
}

TwistSpec TwistSpec::sin(long a, long q) {
    TwistSpec t = cos(a, q, 0);
    t.kind = TwistKind::Sin;
    return t;
}

TwistSpec TwistSpec::by_character(const DirichletCharacter& psi) {
    TwistSpec t;
    t.kind = TwistKind::Character;
    t.character = psi;
    t.denominator = psi.modulus;
    return t;
}

void TwistSpec::validate() const {
    if (kind == TwistKind::Character) {
        if (!character) throw DomainError("character twist without a character");
        return;
    }
    if (character) throw DomainError("additive twist must not carry a character");
    if (denominator < 1) throw DomainError("twist denominator must be >= 1");
    if (denominator > 1 && std::gcd(numerator, denominator) != 1) throw BadResidue("gcd(a, q) != 1");
    if (r < 0) throw DomainError("r must be >= 0");
}

int parity_bracket(int k) { return ((k % 2) + 2) % 2; }

CoefficientSeries twist_coefficients(const CoefficientSeries& series, const TwistSpec& spec) {
    spec.validate();
    CoefficientSeries out;
    out.growth_sigma = series.growth_sigma;
    out.coeffs.resize(series.coeffs.size());
    const long q = spec.denominator, a = spec.numerator;
    for (std::size_t i = 0; i < series.coeffs.size(); ++i) {
        long n = long(i) + 1;
        cplx w;
        if (spec.kind == TwistKind::Character) {
            w = (*spec.character)(n);
        } else {
            long num = ((n % q) * (a % q)) % q;
            if (num < 0) num += q;
            double x = 2.0 * kPi * double(num) / double(q);
            w = spec.kind == TwistKind::Sin ? std::sin(x) : cos_deriv(spec.r, x);
            if (std::abs(w.real()) < 1e-15) w = 0.0;
        }
        out.coeffs[i] = w * series.coeffs[i];
    }
    if (spec.kind == TwistKind::Character && series.eisenstein) {
        out.eisenstein = EisensteinFactors{character_product(*spec.character, series.eisenstein->chi1),
                                           character_product(*spec.character, series.eisenstein->chi2)};
    }
    return out;
}

ComplexValue eval_dirichlet_L(const DirichletCharacter& psi, const ComplexValue& s_in) {
    const cplx s = s_in.z();
    const int q = psi.modulus;
    const bool principal = psi.is_principal();
    if (principal && std::abs(s - 1.0) < kPoleTol) throw PoleAtOne("L(s, psi) at s = 1 for principal psi");
    if (!principal && std::abs(s - 1.0) < 0.02) {
        // The a/q Hurwitz poles cancel; evaluate by a Cauchy integral on |z - 1| = 0.1.
        constexpr int kNodes = 32;
        constexpr double kRadius = 0.1;
        cplx acc = 0.0;
        double err = 0.0;
        for (int k = 0; k < kNodes; ++k) {
            cplx e = std::exp(kI * (2.0 * kPi * (k + 0.5) / kNodes));
            cplx z = 1.0 + kRadius * e;
            ComplexValue f = eval_dirichlet_L(psi, ComplexValue(z));
            cplx wgt = kRadius * e / (z - s);
            acc += f.z() * wgt;
            err += f.err * std::abs(wgt);
        }
        return {acc / double(kNodes), err / kNodes + 1e-14 * std::abs(acc / double(kNodes))};
    }
    const cplx scale = std::exp(-s * std::log(double(q)));
    cplx sum = 0.0;
    double err = 0.0;
    for (int a = 1; a <= q; ++a) {
        cplx v = psi(a);
        if (v == 0.0) continue;
        cplx z = raw::hurwitz_zeta(s, double(a) / q);
        sum += v * z;
        err += 1e-13 * (1.0 + std::abs(z));
    }
    double mag = std::abs(scale);
    return {scale * sum, mag * err + 4.0 * kEps * std::abs(scale * sum)};
}

ComplexValue eval_dirichlet_completed(const DirichletCharacter& psi, const ComplexValue& s) {
    const cplx z = s.z() + double(psi.parity);
    const double k = std::round(z.real());
    const bool at_gamma_pole = k <= 0.0 && std::abs(z - cplx(k, 0.0)) < 1e-12;
    if (at_gamma_pole && psi.primitive && !psi.is_principal()) {
        // The trivial zero cancels the pole; reflect to 1 - s.
        const double q = psi.modulus;
        cplx eps = gauss_sum(psi).z() / std::sqrt(q);
        if (psi.parity) eps *= cplx(0.0, -1.0);
        ComplexValue other = eval_dirichlet_completed(psi.conj(), ComplexValue(1.0) - s);
        cplx f = eps * std::exp((0.5 - s.z()) * std::log(q));
        cplx v = f * other.z();
        return ComplexValue(v, other.err * std::abs(f) + 1e-15 * std::abs(v));
    }
    return gamma_product({psi.parity}, s) * eval_dirichlet_L(psi, s);
}

ComplexValue eval_L_direct(const CoefficientSeries& series, const ComplexValue& s_in) {
    const cplx s = s_in.z();
    const double sig = series.growth_sigma;
    if (!(s.real() > 1.0 + sig)) throw UnsupportedLane("direct summation needs Re s > 1 + sigma");
    const std::size_t M = series.length();
    if (M == 0) throw TruncationInsufficient("empty coefficient series");
    cplx sum = 0.0;
    double abs_sum = 0.0;
    for (std::size_t n = M; n >= 1; --n) {
        cplx a = series.coeffs[n - 1];
        if (a == 0.0) continue;
        cplx t = a * std::exp(-s * std::log(double(n)));
        sum += t;
        abs_sum += std::abs(t);
    }
    const double x = s.real() - 1.0 - sig;
    const double tail = series.growth_constant() * std::pow(double(M), -x) / x;
    return {sum, tail + 4.0 * kEps * abs_sum};
}

ComplexValue gamma_product(const std::vector<int>& shifts, const ComplexValue& s) {
    ComplexValue out(1.0);
    for (int mu : shifts) {
        ComplexValue w = s + ComplexValue(double(mu));
        if (raw::nonpositive_integer_near(0.5 * w.z()) <= 0)
            throw GammaPole("Gamma_R(s + " + std::to_string(mu) + ") has a pole");
        out = out * gamma_r(w);
    }
    return out;
}

std::vector<int> twisted_shifts(const FunctionalEquationData& fe, int e) {
    std::vector<int> out = fe.gamma_shifts;
    if (e % 2 == 0) return out;
    for (int& mu : out) mu = parity_bracket(mu + 1);
    std::sort(out.begin(), out.end());
    return out;
}

FunctionalEquationData dual_fe(const FunctionalEquationData& fe, std::shared_ptr<const CoefficientSeries> series) {
    FunctionalEquationData d = fe;
    d.nebentypus = fe.nebentypus.conj();
    cplx w = fe.root_constant.z();
    d.root_constant = ComplexValue(1.0 / w, fe.root_constant.err);
    d.dual = std::move(series);
    std::swap(d.poles, d.dual_poles);
    return d;
}

ComplexValue eval_completed(const CoefficientSeries& series, const FunctionalEquationData& fe,
                            const std::optional<TwistSpec>& twist, const ComplexValue& s) {
    if (twist) twist->validate();
    if (twist && twist->kind == TwistKind::Sin) {
        TwistSpec c = TwistSpec::cos(twist->numerator, twist->denominator, 1);
        return -eval_completed(series, fe, c, s);
    }
    if (!twist || twist->kind == TwistKind::Character) {
        const DirichletCharacter psi = twist ? *twist->character : trivial_character();
        const std::vector<int> shifts = twisted_shifts(fe, psi.parity);
        if (series.eisenstein) {
            ComplexValue l1 = eval_dirichlet_L(character_product(psi, series.eisenstein->chi1), s);
            ComplexValue l2 = eval_dirichlet_L(character_product(psi, series.eisenstein->chi2), s);
            return gamma_product(shifts, s) * l1 * l2;
        }
        if (s.re > 1.0 + series.growth_sigma) {
            CoefficientSeries t = psi.modulus == 1 ? series : twist_coefficients(series, TwistSpec::by_character(psi));
            return gamma_product(shifts, s) * eval_L_direct(t, s);
        }
        if (fe.dual && psi.primitive && std::gcd(psi.modulus, fe.level) == 1 && s.re < -fe.dual->growth_sigma) {
            FunctionalEquationData d = dual_fe(fe, share(series));
            ComplexValue one_minus = ComplexValue(1.0) - s;
            return fe_factor(fe, psi, s) *
                   eval_completed(*fe.dual, d, TwistSpec::by_character(psi.conj()), one_minus);
        }
        throw UnsupportedLane("no evaluation lane for this series at this s");
    }
    // Additive twist by cos^(r)(2 pi n a/q).
    const long a = twist->numerator, q = twist->denominator;
    const int r = twist->r;
    if (r > 1) {
        // cos'' = -cos and cos''' = -cos'.
        return -eval_completed(series, fe, TwistSpec::cos(a, q, r - 2), s);
    }
    if (q == 1) {
        if (r == 1) return ComplexValue(0.0);
        return eval_completed(series, fe, std::nullopt, s);
    }
    if (!series.eisenstein && s.re > 1.0 + series.growth_sigma) {
        CoefficientSeries t = twist_coefficients(series, *twist);
        return gamma_product(twisted_shifts(fe, r), s) * eval_L_direct(t, s);
    }
    if (!is_prime(q)) throw UnsupportedLane("additive twists are assembled for prime denominators only");
    ComplexValue sum(0.0);
    for (const auto& psi : enumerate_characters(int(q))) {
        if (psi.is_principal() || psi.parity != r) continue;
        ComplexValue term = gauss_sum(psi.conj()) * ComplexValue(psi(a)) *
                            eval_completed(series, fe, TwistSpec::by_character(psi), s);
        sum = sum + term;
    }
    ComplexValue out = ComplexValue(ipow(r) / double(q - 1)) * sum;
    if (r == 0) {
        ComplexValue full = eval_completed(series, fe, std::nullopt, s);
        ComplexValue princ = eval_completed(series, fe, TwistSpec::by_character(principal_character(int(q))), s);
        out = out + full - ComplexValue(double(q) / double(q - 1)) * princ;
    }
    return out;
}

double check_fe_residual(const CoefficientSeries& series, const FunctionalEquationData& fe,
                         const DirichletCharacter& psi, const std::vector<ComplexValue>& samples) {
    if (!psi.primitive) throw NotPrimitive("check_fe_residual needs a primitive character");
    require_coprime(psi, fe);
    if (!fe.dual) throw DomainError("functional equation data has no dual series");
    FunctionalEquationData d = dual_fe(fe, share(series));
    double worst = 0.0;
    for (const auto& s : samples) {
        ComplexValue lhs = eval_completed(series, fe, TwistSpec::by_character(psi), s);
        ComplexValue rhs = fe_factor(fe, psi, s) *
                           eval_completed(*fe.dual, d, TwistSpec::by_character(psi.conj()), ComplexValue(1.0) - s);
        worst = std::max(worst, std::abs(lhs.z() - rhs.z()));
    }
    return worst;
}

ComplexValue prop34_rhs(const CoefficientSeries& series, const FunctionalEquationData& fe, long a, long q, int r,
                        const ComplexValue& s) {
    if (!fe.dual) throw DomainError("functional equation data has no dual series");
    if (q < 1) throw DomainError("q must be >= 1");
    if (std::gcd(q, long(fe.level)) != 1) throw DomainError("q must be coprime to the level");
    if (q > 1 && std::gcd(a, q) != 1) throw BadResidue("gcd(a, q) != 1");
    if (r != 0 && r != 1) throw DomainError("r must be 0 or 1");
    FunctionalEquationData d = dual_fe(fe, share(series));
    const ComplexValue one_minus = ComplexValue(1.0) - s;
    if (q == 1) {
        if (r == 1) return ComplexValue(0.0);
        DirichletCharacter one = trivial_character();
        return fe_factor(fe, one, s) * eval_completed(*fe.dual, d, std::nullopt, one_minus);
    }
    if (!is_prime(q)) throw DomainError("prop34_rhs needs a prime denominator");
    ComplexValue sum(0.0);
    for (const auto& psi : enumerate_characters(int(q))) {
        if (psi.is_principal() || psi.parity != r) continue;
        ComplexValue term = ComplexValue(psi(long(fe.level) * a)) * gauss_sum(psi) *
                            eval_completed(*fe.dual, d, TwistSpec::by_character(psi.conj()), one_minus);
        sum = sum + term;
    }
    const double qq = double(q) * q * fe.level;
    cplx pre = sign_pow(fe.parity) * ipow(r) * std::exp((0.5 - s.z()) * std::log(qq)) * fe.nebentypus(q) /
               double(q - 1);
    ComplexValue out = ComplexValue(pre) * fe.root_constant * sum;
    if (r == 0) {
        ComplexValue full = eval_completed(series, fe, std::nullopt, s);
        ComplexValue princ = eval_completed(series, fe, TwistSpec::by_character(principal_character(int(q))), s);
        out = out + full - ComplexValue(double(q) / double(q - 1)) * princ;
    }
    return out;
}

double check_prop34_residual(const CoefficientSeries& series, const FunctionalEquationData& fe, long a, long q,
                             int r, const std::vector<ComplexValue>& samples) {
    double worst = 0.0;
    for (const auto& s : samples) {
        ComplexValue lhs = eval_completed(series, fe, TwistSpec::cos(a, q, r), s);
        ComplexValue rhs = prop34_rhs(series, fe, a, q, r, s);
        worst = std::max(worst, std::abs(lhs.z() - rhs.z()));
    }
    return worst;
}

std::vector<cplx> dirichlet_convolve(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    const std::size_t M = std::min(a.size(), b.size());
    std::vector<cplx> c(M, 0.0);
    for (std::size_t d = 1; d <= M; ++d) {
        if (a[d - 1] == 0.0) continue;
        for (std::size_t e = 1; d * e <= M; ++e) c[d * e - 1] += a[d - 1] * b[e - 1];
    }
    return c;
}

std::vector<int> moebius_table(std::size_t n) {
    std::vector<int> mu(n + 1, 1);
    std::vector<bool> composite(n + 1, false);
    mu[0] = 0;
    for (std::size_t p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        for (std::size_t m = p; m <= n; m += p) {
            if (m > p) composite[m] = true;
            mu[m] = -mu[m];
        }
        for (std::size_t m = p * p; m <= n; m += p * p) mu[m] = 0;
    }
    return mu;
}

CoefficientSeries dirichlet_divide(const CoefficientSeries& numer) {
    const std::size_t M = numer.length();
    std::vector<int> mu = moebius_table(M);
    std::vector<cplx> m(M);
    for (std::size_t n = 1; n <= M; ++n) m[n - 1] = double(mu[n]);
    CoefficientSeries out;
    out.coeffs = dirichlet_convolve(m, numer.coeffs);
    out.growth_sigma = numer.growth_sigma;
    return out;
}

namespace {

struct LineTerms {
    std::vector<double> log_n;
    std::vector<cplx> a;
};

LineTerms line_terms(const CoefficientSeries& s) {
    LineTerms t;
    for (std::size_t n = 1; n <= s.length(); ++n) {
        if (s.coeffs[n - 1] == 0.0) continue;
        t.log_n.push_back(std::log(double(n)));
        t.a.push_back(s.coeffs[n - 1]);
    }
    return t;
}

cplx dirichlet_sum(const LineTerms& t, cplx w) {
    cplx sum = 0.0;
    for (std::size_t i = 0; i < t.a.size(); ++i) sum += t.a[i] * std::exp(-w * t.log_n[i]);
    return sum;
}

double gamma_abs(const std::vector<int>& shifts, double x) {
    double g = 1.0;
    for (int mu : shifts) g *= std::abs(raw::gamma_r(cplx(x + mu, 0.0)));
    return g;
}

}  // namespace

ComplexValue smoothed_eval(const CoefficientSeries& series, const FunctionalEquationData& fe, const ComplexValue& s,
                           const SmoothingParams& params) {
    if (!fe.dual) throw DomainError("smoothed_eval needs the dual series");
    if (std::abs(s.im) > 30.0) throw DomainError("smoothed_eval needs |Im s| <= 30");
    if (!(params.kernel_a > 0.0) || !(params.step > 0.0)) throw DomainError("bad smoothing parameters");
    const CoefficientSeries& dual = *fe.dual;
    const double A = params.kernel_a;
    const double sr = s.re;
    const double sig_f = series.growth_sigma, sig_g = dual.growth_sigma;
    const double cf = series.growth_constant(), cg = dual.growth_constant();
    const double Mf = double(series.length()), Mg = double(dual.length());
    if (Mf < 1 || Mg < 1) throw TruncationInsufficient("empty coefficient series");
    const double logN = std::log(double(fe.level));

    // Each coefficient enters through K(n) = (1/2 pi i) int gamma(s+z) n^{-s-z} e^{A z^2} dz/z, which
    // does not depend on the line; bounding it on the best line gives the truncation estimate.
    auto kernel_bound = [&](double n, double re, double scale_log) {
        double best = std::numeric_limits<double>::infinity();
        const int mu_min = fe.gamma_shifts.empty() ? 0 : fe.gamma_shifts.front();
        for (double x = std::max(0.25, 0.25 - re - mu_min); x <= 60.0 - re; x += 0.25) {
            double v = std::log(gamma_abs(fe.gamma_shifts, re + x)) - (re + x) * std::log(n) + A * x * x -
                       std::log(x) + scale_log * x;
            best = std::min(best, v);
        }
        return std::exp(best) * std::sqrt(kPi / A) / (2.0 * kPi);
    };
    auto tail = [&](double M, double C, double sig, double re, double scale_log, double pre) {
        double total = 0.0;
        for (int k = 0; k < 200; ++k) {
            double lo = M * std::pow(2.0, k);
            double block = C * std::pow(2.0 * lo, sig) * lo * pre * kernel_bound(lo, re, scale_log);
            total += block;
            if (block < 1e-30 * (1.0 + total) && k > 2) break;
        }
        return total;
    };
    const double est = tail(Mf, cf, sig_f, sr, 0.0, 1.0) +
                       tail(Mg, cg, sig_g, 1.0 - sr, logN, std::exp((0.5 - sr) * logN));
    if (!(est <= params.max_error))
        throw TruncationInsufficient("smoothed_eval truncation estimate " + std::to_string(est) + " exceeds " +
                                     std::to_string(params.max_error));
    // The two lines must enclose every pole of Lambda(s + z).
    double c = params.line > 0.0 ? params.line : 1.0;
    for (const auto& p : fe.poles) c = std::max(c, std::abs(p.point - sr) + 0.5);

    const LineTerms tf = line_terms(series), tg = line_terms(dual);
    const double T = std::sqrt(c * c + 40.0 / A);
    const double h = params.step;
    const cplx sv = s.z();
    const cplx w_root = fe.root_constant.z() * sign_pow(fe.parity);
    cplx right = 0.0, left = 0.0;
    double abs_acc = 0.0;
    for (double t = -T; t <= T + 0.5 * h; t += h) {
        cplx zr(c, t), zl(-c, t);
        cplx wr = sv + zr;
        cplx gr = 1.0;
        for (int mu : fe.gamma_shifts) gr *= raw::gamma_r(wr + double(mu));
        cplx ir = gr * dirichlet_sum(tf, wr) * std::exp(A * zr * zr) / zr;
        cplx wl = 1.0 - (sv + zl);
        cplx gl = 1.0;
        for (int mu : fe.gamma_shifts) gl *= raw::gamma_r(wl + double(mu));
        cplx lam_l = w_root * std::exp((0.5 - (sv + zl)) * logN) * gl * dirichlet_sum(tg, wl);
        cplx il = lam_l * std::exp(A * zl * zl) / zl;
        right += ir;
        left += il;
        abs_acc += std::abs(ir) + std::abs(il);
    }
    const double scale = h / (2.0 * kPi);
    cplx value = scale * (right - left);
    for (const auto& p : fe.poles) {
        cplx z0 = p.point - sv;
        if (std::abs(z0) < 1e-9) throw DomainError("smoothed_eval at a pole");
        cplx phi = std::exp(A * z0 * z0) / z0;
        cplx dphi = std::exp(A * z0 * z0) * (2.0 * A - 1.0 / (z0 * z0));
        value -= p.r1 * phi + p.r2 * dphi;
    }
    return {value, est + 1e-14 * scale * abs_acc};
}

std::vector<ComplexValue> standard_grid() {
    return {cplx(0.3, 0.0), cplx(0.3, 1.5),  cplx(0.3, -4.0), cplx(0.5, 1.5),  cplx(0.5, -1.5),
            cplx(0.5, 4.0), cplx(0.5, -4.0), cplx(0.7, 0.0),  cplx(0.7, -1.5), cplx(0.7, 4.0)};
}

namespace {

std::vector<cplx> eisenstein_coeffs(const DirichletCharacter& c1, const DirichletCharacter& c2, std::size_t M) {
    std::vector<cplx> a(M), b(M);
    for (std::size_t n = 1; n <= M; ++n) {
        a[n - 1] = c1(long(n));
        b[n - 1] = c2(long(n));
    }
    return dirichlet_convolve(a, b);
}

}  // namespace

LFunctionPair make_eisenstein_pair(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                                   std::size_t length) {
    if (!chi1.primitive || !chi2.primitive) throw NotPrimitive("Eisenstein pair needs primitive characters");
    if (chi1.parity != chi2.parity) throw DomainError("Eisenstein pair needs characters of equal parity");
    if (length < 1) throw DomainError("length must be >= 1");
    const int q1 = chi1.modulus, q2 = chi2.modulus;
    const int N = q1 * q2;
    const int eps = chi1.parity;

    CoefficientSeries f;
    f.coeffs = eisenstein_coeffs(chi1, chi2, length);
    f.eisenstein = EisensteinFactors{chi1, chi2};
    CoefficientSeries g;
    g.coeffs = eisenstein_coeffs(chi1.conj(), chi2.conj(), length);
    g.eisenstein = EisensteinFactors{chi1.conj(), chi2.conj()};

    std::vector<cplx> neb(static_cast<std::size_t>(N), 0.0);
    for (int n = 0; n < N; ++n)
        if (std::gcd(n, N) == 1) neb[n] = chi1(n) * chi2(n);

    FunctionalEquationData fe;
    fe.level = N;
    fe.nebentypus = make_character(N, std::move(neb));
    fe.parity = eps;
    fe.gamma_shifts = {eps, eps};
    fe.root_constant = gauss_sum(chi1) * gauss_sum(chi2) / ComplexValue(std::sqrt(double(N)));
    fe.dual = share(g);

    const bool t1 = q1 == 1, t2 = q2 == 1;
    if (t1 && t2) {
        // xi(s) = 1/(s-1) + (gamma - log 4 pi)/2 + O(s-1), and xi(s) = xi(1-s).
        const double c0 = kEulerGamma - std::log(4.0 * kPi);
        fe.poles = {{0.0, -c0, 1.0}, {1.0, c0, 1.0}};
        fe.dual_poles = fe.poles;
    } else if (t1 || t2) {
        const DirichletCharacter& chi = t1 ? chi2 : chi1;
        auto residues = [](const DirichletCharacter& c) {
            cplx at1 = eval_dirichlet_completed(c, ComplexValue(1.0)).z();
            cplx at0 = eval_dirichlet_completed(c, ComplexValue(0.0)).z();
            return std::vector<PoleDatum>{{0.0, -at0, 0.0}, {1.0, at1, 0.0}};
        };
        fe.poles = residues(chi);
        fe.dual_poles = residues(chi.conj());
    }
    return {share(f), fe};
}

LFunctionPair make_zeta_pair(std::size_t length) {
    DirichletCharacter one = trivial_character();
    return make_eisenstein_pair(one, one, length);
}

namespace {

nlohmann::json cplx_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

cplx json_cplx(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SchemaError("complex values must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json coeffs_json(const std::vector<cplx>& c) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& z : c) out.push_back(cplx_json(z));
    return out;
}

std::vector<cplx> json_coeffs(const nlohmann::json& j) {
    if (!j.is_array()) throw SchemaError("coefficients must be an array");
    std::vector<cplx> out;
    for (const auto& e : j) out.push_back(json_cplx(e));
    return out;
}

nlohmann::json poles_json(const std::vector<PoleDatum>& poles) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : poles) out.push_back({{"point", p.point}, {"r1", cplx_json(p.r1)}, {"r2", cplx_json(p.r2)}});
    return out;
}

std::vector<PoleDatum> json_poles(const nlohmann::json& j) {
    if (!j.is_array()) throw SchemaError("poles must be an array");
    std::vector<PoleDatum> out;
    for (const auto& e : j) {
        if (!e.is_object() || !e.contains("point") || !e["point"].is_number())
            throw SchemaError("pole entries need a numeric point");
        PoleDatum p;
        p.point = e["point"].get<double>();
        if (e.contains("r1")) p.r1 = json_cplx(e["r1"]);
        if (e.contains("r2")) p.r2 = json_cplx(e["r2"]);
        out.push_back(p);
    }
    return out;
}

template <class T>
T required(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw SchemaError(std::string("missing field ") + key);
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw SchemaError(std::string("bad type for field ") + key);
    }
}

}  // namespace

nlohmann::json fe_to_json(const std::string& name, const CoefficientSeries& series,
                          const FunctionalEquationData& fe) {
    nlohmann::json j;
    j["name"] = name;
    j["level"] = fe.level;
    j["parity"] = fe.parity;
    j["gamma_shifts"] = fe.gamma_shifts;
    j["root_constant"] = cplx_json(fe.root_constant.z());
    j["nebentypus"] = to_json(fe.nebentypus);
    j["coefficients"] = coeffs_json(series.coeffs);
    j["dual_coefficients"] = fe.dual ? coeffs_json(fe.dual->coeffs) : nlohmann::json::array();
    j["growth_sigma"] = series.growth_sigma;
    if (series.eisenstein)
        j["eisenstein"] = {{"chi1", to_json(series.eisenstein->chi1)}, {"chi2", to_json(series.eisenstein->chi2)}};
    if (!fe.poles.empty()) j["poles"] = poles_json(fe.poles);
    if (!fe.dual_poles.empty()) j["dual_poles"] = poles_json(fe.dual_poles);
    return j;
}

LFunctionPair fe_from_json(const nlohmann::json& j, std::string* name) {
    if (!j.is_object()) throw SchemaError("functional-equation JSON must be an object");
    if (name) *name = j.value("name", std::string());
    CoefficientSeries f, g;
    f.coeffs = json_coeffs(j.contains("coefficients") ? j["coefficients"] : throw SchemaError("missing coefficients"));
    g.coeffs = json_coeffs(j.contains("dual_coefficients") ? j["dual_coefficients"]
                                                           : throw SchemaError("missing dual_coefficients"));
    if (j.contains("growth_sigma")) f.growth_sigma = g.growth_sigma = required<double>(j, "growth_sigma");
    if (j.contains("eisenstein")) {
        const auto& e = j["eisenstein"];
        if (!e.is_object() || !e.contains("chi1") || !e.contains("chi2"))
            throw SchemaError("eisenstein needs chi1 and chi2");
        DirichletCharacter c1 = character_from_json(e["chi1"]), c2 = character_from_json(e["chi2"]);
        f.eisenstein = EisensteinFactors{c1, c2};
        g.eisenstein = EisensteinFactors{c1.conj(), c2.conj()};
    }
    FunctionalEquationData fe;
    fe.level = required<int>(j, "level");
    fe.parity = required<int>(j, "parity");
    fe.gamma_shifts = required<std::vector<int>>(j, "gamma_shifts");
    if (!j.contains("root_constant")) throw SchemaError("missing root_constant");
    fe.root_constant = ComplexValue(json_cplx(j["root_constant"]));
    if (!j.contains("nebentypus")) throw SchemaError("missing nebentypus");
    fe.nebentypus = character_from_json(j["nebentypus"]);
    if (j.contains("poles")) fe.poles = json_poles(j["poles"]);
    if (j.contains("dual_poles")) fe.dual_poles = json_poles(j["dual_poles"]);
    fe.dual = share(g);
    fe.validate();
    return {share(f), fe};
}

namespace {

double theta(double t) {
    if (t >= 8.0) {
        return 0.5 * t * std::log(t / (2.0 * kPi)) - 0.5 * t - kPi / 8.0 + 1.0 / (48.0 * t) +
               7.0 / (5760.0 * t * t * t);
    }
    // Im log Gamma(1/4 + i t/2) - (t/2) log pi, continuous in t.
    cplx z(0.25, 0.5 * t);
    return (raw::log_gamma(z + 1.0) - std::log(z)).imag() - 0.5 * t * std::log(kPi);
}

}  // namespace

double hardy_z(double t) {
    cplx z = std::exp(kI * theta(t)) * raw::hurwitz_zeta(cplx(0.5, t), 1.0);
    return z.real();
}

std::vector<double> zeta_zeros(double t_min, double t_max, double step) {
    if (!(t_min >= 0.0) || !(t_max <= 100.0) || !(t_min < t_max)) throw DomainError("zero scan needs 0 <= t_min < t_max <= 100");
    if (!(step > 0.0)) throw DomainError("step must be positive");
    std::vector<double> out;
    double t0 = t_min, z0 = hardy_z(t0);
    const long n = long(std::ceil((t_max - t_min) / step));
    for (long i = 1; i <= n; ++i) {
        double t1 = std::min(t_max, t_min + double(i) * step);
        double z1 = hardy_z(t1);
        if (z0 == 0.0) {
            out.push_back(t0);
        } else if ((z0 < 0.0) != (z1 < 0.0) && z1 != 0.0) {
            double lo = t0, hi = t1, zlo = z0;
            while (hi - lo > 1e-8) {
                double mid = 0.5 * (lo + hi);
                double zm = hardy_z(mid);
                if ((zm < 0.0) == (zlo < 0.0)) {
                    lo = mid;
                    zlo = zm;
                } else {
                    hi = mid;
                }
            }
            out.push_back(0.5 * (lo + hi));
        }
        t0 = t1;
        z0 = z1;
    }
    if (z0 == 0.0) out.push_back(t0);
    return out;
}

}  // namespace twistlab
