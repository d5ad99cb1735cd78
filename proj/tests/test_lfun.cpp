#include "doctest.h"

#include "twistlab/errors.hpp"
#include "twistlab/lfun.hpp"

#include <cmath>
#include <random>

using namespace twistlab;

namespace {

DirichletCharacter char_with(int q, long n, cplx value) {
    for (const auto& c : enumerate_characters(q))
        if (std::abs(c(n) - value) < 1e-12) return c;
    throw std::runtime_error("no such character");
}

DirichletCharacter trivial() { return enumerate_characters(1).front(); }

// Basel value by partial sum plus the Euler-Maclaurin tail of sum_{n>N} n^{-2}.
double basel_oracle() {
    const int N = 1000;
    double s = 0.0;
    for (int n = N; n >= 1; --n) s += 1.0 / (double(n) * n);
    return s + 1.0 / N - 0.5 / (double(N) * N) + 1.0 / (6.0 * N * N * N);
}

// The level-25 pair built on the odd character with chi(2) = i and its conjugate.
const LFunctionPair& level25() {
    static const LFunctionPair p = [] {
        DirichletCharacter chi = char_with(5, 2, cplx(0.0, 1.0));
        return make_eisenstein_pair(chi, chi.conj(), 3000);
    }();
    return p;
}

const LFunctionPair& zeta_pair() {
    static const LFunctionPair p = make_zeta_pair(3000);
    return p;
}

double dist(const ComplexValue& a, const ComplexValue& b) { return std::abs(a.z() - b.z()); }

}  // namespace

TEST_CASE("parity bracket") {
    for (int k = -6; k <= 6; ++k) {
        int b = parity_bracket(k);
        CHECK((b == 0 || b == 1));
        CHECK((k - b) % 2 == 0);
    }
}

TEST_CASE("Dirichlet L-values") {
    CHECK(std::abs(eval_dirichlet_L(trivial(), 2.0).re - basel_oracle()) < 1e-12);
    CHECK(std::abs(eval_dirichlet_L(trivial(), 2.0).re - kPi * kPi / 6) < 1e-13);
    DirichletCharacter q5 = char_with(5, 2, cplx(-1.0));
    ComplexValue half = eval_dirichlet_L(q5, 0.5);
    CHECK(std::abs(half.im) < 1e-14);
    CHECK(std::abs(half.re - 0.231750947504015755883) < 1e-12);
    ComplexValue v = eval_dirichlet_L(char_with(5, 2, cplx(0.0, 1.0)), cplx(0.7, 2.0));
    CHECK(std::abs(v.z() - cplx(1.36614676348297252009, 0.49341989327308221113)) < 1e-12);
    CHECK(v.err >= std::abs(v.z() - cplx(1.36614676348297252009, 0.49341989327308221113)));

    // Values at s = 1 through the Cauchy lane against closed forms.
    CHECK(std::abs(eval_dirichlet_L(q5, 1.0).re - 2 * std::log((1 + std::sqrt(5.0)) / 2) / std::sqrt(5.0)) < 1e-12);
    CHECK(std::abs(eval_dirichlet_L(primitive_characters(3)[0], 1.0).re - kPi / (3 * std::sqrt(3.0))) < 1e-12);
    CHECK(std::abs(eval_dirichlet_L(primitive_characters(4)[0], 1.0).re - kPi / 4) < 1e-12);
    // The Cauchy lane joins the Hurwitz lane continuously.
    cplx edge(1.0205, 0.0), inside(1.0195, 0.0);
    ComplexValue a = eval_dirichlet_L(q5, edge), b = eval_dirichlet_L(q5, inside);
    CHECK(std::abs(a.re - b.re) < 1e-3);
    CHECK(std::abs((a.re - b.re) / 0.001 - (eval_dirichlet_L(q5, 1.0205).re - eval_dirichlet_L(q5, 1.0215).re) / -0.001) < 1e-3);

    // L(0, psi) = -(1/q) sum a psi(a) for odd primitive psi.
    for (int q : {3, 4, 5, 7, 11}) {
        for (const auto& psi : primitive_characters(q)) {
            if (psi.parity != 1) continue;
            cplx b1 = 0.0;
            for (int r = 1; r < q; ++r) b1 += double(r) * psi(r);
            CHECK(std::abs(eval_dirichlet_L(psi, 0.0).z() + b1 / double(q)) < 1e-12);
        }
    }
    // Even psi at s = 0: Lambda(0, psi) = 2 L'(0, psi) = 2 sum psi(a) log Gamma(a/q).
    for (int q : {5, 13}) {
        for (const auto& psi : primitive_characters(q)) {
            if (psi.parity != 0) continue;
            cplx lg = 0.0;
            for (int a = 1; a < q; ++a) lg += psi(a) * std::lgamma(double(a) / q);
            CHECK(std::abs(eval_dirichlet_completed(psi, 0.0).z() - 2.0 * lg) < 1e-12);
        }
    }
    CHECK_THROWS_AS(eval_dirichlet_L(trivial(), 1.0), PoleAtOne);
    CHECK_THROWS_AS(eval_dirichlet_L(principal_character(3), 1.0), PoleAtOne);
}

TEST_CASE("Dirichlet functional equation") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ur(0.2, 0.8), ui(-20.0, 20.0);
    std::vector<cplx> pts;
    for (int i = 0; i < 20; ++i) pts.emplace_back(ur(rng), ui(rng));
    for (int q : {3, 4, 5}) {
        for (const auto& psi : primitive_characters(q)) {
            double worst = 0.0;
            ComplexValue tau = gauss_sum(psi);
            cplx ie = psi.parity ? cplx(0.0, -1.0) : cplx(1.0);
            for (cplx s : pts) {
                cplx lhs = eval_dirichlet_completed(psi, s).z();
                cplx rhs = ie * tau.z() / std::sqrt(double(q)) * std::exp((0.5 - s) * std::log(double(q))) *
                           eval_dirichlet_completed(psi.conj(), 1.0 - s).z();
                worst = std::max(worst, std::abs(lhs - rhs));
            }
            CHECK(worst <= 1e-9);
        }
    }
}

TEST_CASE("twist_coefficients") {
    const auto& z = *zeta_pair().series;
    CoefficientSeries half = twist_coefficients(z, TwistSpec::sin(1, 2));
    for (const auto& a : half.coeffs) CHECK(a == cplx(0.0));
    CoefficientSeries one = twist_coefficients(z, TwistSpec::cos(1, 1, 0));
    for (std::size_t i = 0; i < 200; ++i) CHECK(one.coeffs[i] == z.coeffs[i]);
    CoefficientSeries s3 = twist_coefficients(z, TwistSpec::sin(1, 3));
    CoefficientSeries c3 = twist_coefficients(z, TwistSpec::cos(1, 3, 1));
    for (std::size_t i = 0; i < 200; ++i) CHECK(std::abs(s3.coeffs[i] + c3.coeffs[i]) < 1e-15);
    CHECK(s3.growth_sigma == z.growth_sigma);

    // Linearity over coefficient addition.
    CoefficientSeries a, b, sum;
    for (int n = 1; n <= 60; ++n) {
        a.coeffs.emplace_back(n % 7, -n % 3);
        b.coeffs.emplace_back(1.0 / n, 0.5);
        sum.coeffs.push_back(a.coeffs.back() + b.coeffs.back());
    }
    for (const auto& spec : {TwistSpec::cos(2, 5, 0), TwistSpec::cos(3, 7, 1), TwistSpec::sin(1, 4),
                             TwistSpec::by_character(primitive_characters(5)[0])}) {
        CoefficientSeries ta = twist_coefficients(a, spec), tb = twist_coefficients(b, spec),
                          ts = twist_coefficients(sum, spec);
        for (std::size_t i = 0; i < 60; ++i) CHECK(std::abs(ts.coeffs[i] - ta.coeffs[i] - tb.coeffs[i]) < 1e-14);
    }
}

TEST_CASE("completed values of the Eisenstein lane") {
    const auto& zp = zeta_pair();
    ComplexValue v = eval_completed(*zp.series, zp.fe, std::nullopt, 2.0);
    double oracle = std::pow(basel_oracle() / kPi, 2);
    CHECK(std::abs(v.re - kPi * kPi / 36) < 1e-12);
    CHECK(std::abs(v.re - oracle) < 1e-12);
    ComplexValue same = eval_completed(*zp.series, zp.fe, TwistSpec::cos(1, 1, 0), 2.0);
    CHECK(same.re == v.re);

    const auto& p = level25();
    ComplexValue w = eval_completed(*p.series, p.fe, std::nullopt, cplx(0.7, 2.0));
    CHECK(std::isfinite(w.re));
    CHECK(std::isfinite(w.im));
    CHECK(w.err <= 1e-9);
    CHECK(std::abs(p.fe.root_constant.z() + 1.0) < 1e-13);

    // The Eisenstein lane agrees with direct summation where both apply.
    CoefficientSeries plain = *p.series;
    plain.eisenstein.reset();
    for (cplx s : {cplx(3.0, 0.0), cplx(2.5, 7.0)}) {
        ComplexValue e = eval_completed(*p.series, p.fe, std::nullopt, s);
        ComplexValue d = eval_completed(plain, p.fe, std::nullopt, s);
        CHECK(dist(e, d) <= e.err + d.err);
        CHECK(dist(e, d) < 1e-10);
    }
    CHECK_THROWS_AS(eval_completed(plain, p.fe, std::nullopt, cplx(0.5, 1.0)), UnsupportedLane);
    CHECK_THROWS_AS(eval_completed(*zp.series, zp.fe, std::nullopt, -2.0), GammaPole);
}

TEST_CASE("additive twists assembled from characters") {
    const auto& p = level25();
    CoefficientSeries plain = *p.series;
    plain.eisenstein.reset();
    for (int q : {3, 7}) {
        for (int r : {0, 1}) {
            for (long a : {1L, 2L}) {
                for (cplx s : {cplx(3.0, 0.5), cplx(2.6, -3.0)}) {
                    ComplexValue assembled = eval_completed(*p.series, p.fe, TwistSpec::cos(a, q, r), s);
                    ComplexValue direct = eval_completed(plain, p.fe, TwistSpec::cos(a, q, r), s);
                    CHECK(dist(assembled, direct) < 1e-10);
                }
            }
        }
    }
    ComplexValue sn = eval_completed(*p.series, p.fe, TwistSpec::sin(2, 7), cplx(0.4, 1.0));
    ComplexValue c1 = eval_completed(*p.series, p.fe, TwistSpec::cos(2, 7, 1), cplx(0.4, 1.0));
    CHECK(sn.re == -c1.re);
    CHECK(sn.im == -c1.im);
    CHECK_THROWS_AS(eval_completed(*p.series, p.fe, TwistSpec::cos(1, 9, 0), cplx(0.4, 1.0)), UnsupportedLane);

    // Character twists rebuilt from completed additive twists.
    const std::vector<ComplexValue> pts = {cplx(0.3, 0.0), cplx(0.5, 1.5), cplx(0.7, -4.0), cplx(0.5, 4.0),
                                           cplx(0.3, -1.5)};
    for (int q : {3, 5, 7}) {
        for (const auto& psi : primitive_characters(q)) {
            ComplexValue tau = gauss_sum(psi);
            cplx pre = (psi.parity ? cplx(0.0, -1.0) : cplx(1.0)) * tau.z() / double(q);
            double worst = 0.0;
            for (const auto& s : pts) {
                cplx acc = 0.0;
                for (long b = 1; b < q; ++b)
                    acc += std::conj(psi(-b)) *
                           eval_completed(*p.series, p.fe, TwistSpec::cos(b, q, psi.parity), s).z();
                ComplexValue direct = eval_completed(*p.series, p.fe, TwistSpec::by_character(psi), s);
                worst = std::max(worst, std::abs(pre * acc - direct.z()));
            }
            CHECK(worst <= 1e-8);
        }
    }
}

TEST_CASE("degree-2 functional equation") {
    const auto grid = standard_grid();
    CHECK(grid.size() == 10);
    const auto& p = level25();
    for (int q : {3, 4, 7, 11}) {
        for (const auto& psi : primitive_characters(q)) {
            double r = check_fe_residual(*p.series, p.fe, psi, grid);
            CHECK(r <= 1e-8);
        }
    }
    const auto& zp = zeta_pair();
    CHECK(check_fe_residual(*zp.series, zp.fe, trivial(), grid) <= 1e-9);
    for (const auto& psi : primitive_characters(5)) CHECK(check_fe_residual(*zp.series, zp.fe, psi, grid) <= 1e-9);

    FunctionalEquationData bad = p.fe;
    bad.root_constant = ComplexValue(-bad.root_constant.z());
    CHECK(check_fe_residual(*p.series, bad, primitive_characters(3)[0], {cplx(0.3, 0.0)}) >= 0.1);
    CHECK_THROWS_AS(check_fe_residual(*p.series, p.fe, principal_character(3), grid), NotPrimitive);
    CHECK_THROWS_AS(check_fe_residual(*p.series, p.fe, primitive_characters(5)[0], grid), DomainError);

    // One trivial factor: real even primitive characters mod 5 and mod 13 give simple poles.
    auto one_trivial = make_eisenstein_pair(trivial(), char_with(13, 2, cplx(-1.0)), 1000);
    CHECK(one_trivial.fe.poles.size() == 2);
    CHECK(check_fe_residual(*one_trivial.series, one_trivial.fe, primitive_characters(3)[0], grid) <= 1e-9);
}

TEST_CASE("additive-twist functional equation") {
    const auto grid = standard_grid();
    const auto& p = level25();
    for (int q : {3, 7}) {
        for (int r : {0, 1}) {
            for (long a = 1; a < q; ++a) CHECK(check_prop34_residual(*p.series, p.fe, a, q, r, grid) <= 1e-7);
        }
    }
    const auto& zp = zeta_pair();
    CHECK(check_prop34_residual(*zp.series, zp.fe, 2, 5, 0, grid) <= 1e-7);
    CHECK(check_prop34_residual(*zp.series, zp.fe, 1, 3, 1, grid) <= 1e-7);
    // q = 1 is the untwisted functional equation.
    CHECK(check_prop34_residual(*p.series, p.fe, 3, 1, 0, grid) <= 1e-9);
    CHECK(std::abs(check_prop34_residual(*p.series, p.fe, 3, 1, 0, grid) -
                   check_fe_residual(*p.series, p.fe, trivial(), grid)) < 1e-12);

    // For r odd nothing beyond the character sum survives: scaling the sum by
    // zero leaves exactly zero.
    FunctionalEquationData zero = p.fe;
    zero.root_constant = ComplexValue(1e-300);
    CHECK(prop34_rhs(*p.series, zero, 1, 3, 1, cplx(0.5, 1.0)).abs() < 1e-250);

    FunctionalEquationData bad = p.fe;
    bad.root_constant = ComplexValue(-bad.root_constant.z());
    CHECK(check_prop34_residual(*p.series, bad, 1, 3, 1, grid) >= 0.1);
    CHECK(check_prop34_residual(*p.series, bad, 1, 7, 0, grid) >= 0.1);
}

TEST_CASE("dirichlet_divide") {
    const std::size_t M = 500;
    CoefficientSeries dn;
    dn.coeffs = make_zeta_pair(M).series->coeffs;
    CoefficientSeries q = dirichlet_divide(dn);
    for (const auto& a : q.coeffs) CHECK(a == cplx(1.0));
    CoefficientSeries ones;
    ones.coeffs.assign(M, 1.0);
    CoefficientSeries unit = dirichlet_divide(ones);
    CHECK(unit.coeffs[0] == cplx(1.0));
    for (std::size_t n = 2; n <= M; ++n) CHECK(unit.coeffs[n - 1] == cplx(0.0));

    // Round trip through multiplication by zeta.
    CoefficientSeries b;
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> ui(-9, 9);
    for (std::size_t n = 1; n <= M; ++n) b.coeffs.emplace_back(ui(rng), ui(rng));
    std::vector<cplx> back = dirichlet_convolve(dirichlet_divide(b).coeffs, ones.coeffs);
    for (std::size_t n = 0; n < M; ++n) CHECK(back[n] == b.coeffs[n]);
    auto mu = moebius_table(30);
    CHECK(mu[1] == 1);
    CHECK(mu[6] == 1);
    CHECK(mu[12] == 0);
    CHECK(mu[30] == -1);
}

TEST_CASE("smoothed lane") {
    const auto& zp = zeta_pair();
    ComplexValue v2 = smoothed_eval(*zp.series, zp.fe, 2.0);
    CHECK(std::abs(v2.re - kPi * kPi / 36) < 1e-6);
    const auto& p = level25();
    for (cplx s : {cplx(0.3, 0.0), cplx(0.5, 1.5), cplx(0.7, -4.0), cplx(0.5, 4.0), cplx(0.3, -1.5)}) {
        ComplexValue a = smoothed_eval(*p.series, p.fe, s);
        ComplexValue b = eval_completed(*p.series, p.fe, std::nullopt, s);
        CHECK(dist(a, b) < 1e-6);
        CHECK(dist(a, b) <= a.err + b.err);
        ComplexValue za = smoothed_eval(*zp.series, zp.fe, s);
        ComplexValue zb = eval_completed(*zp.series, zp.fe, std::nullopt, s);
        CHECK(dist(za, zb) < 1e-6);
        CHECK(dist(za, zb) <= za.err + zb.err);
    }
    // Kernel independence.
    SmoothingParams wide;
    wide.kernel_a = 0.25;
    CHECK(dist(smoothed_eval(*p.series, p.fe, cplx(0.5, 2.0)), smoothed_eval(*p.series, p.fe, cplx(0.5, 2.0), wide)) <
          1e-9);

    // A degree-3 shape with only a handful of coefficients.
    CoefficientSeries few;
    few.coeffs = {1.0, -1.0, 0.0, 1.0, 0.0};
    FunctionalEquationData fe3;
    fe3.level = 229;
    fe3.nebentypus = principal_character(1);
    fe3.gamma_shifts = {0, 1, 1};
    fe3.dual = std::make_shared<const CoefficientSeries>(few);
    CHECK_THROWS_AS(smoothed_eval(few, fe3, cplx(0.5, 14.0)), TruncationInsufficient);
}

TEST_CASE("Functional-equation JSON round trip") {
    const auto& p = level25();
    nlohmann::json j = fe_to_json("eisenstein-25", *p.series, p.fe);
    std::string name;
    LFunctionPair back = fe_from_json(j, &name);
    CHECK(name == "eisenstein-25");
    CHECK(back.fe.level == 25);
    CHECK(back.series->coeffs.size() == p.series->coeffs.size());
    CHECK(back.series->eisenstein.has_value());
    CHECK(check_fe_residual(*back.series, back.fe, primitive_characters(3)[0], standard_grid()) <= 1e-8);
    nlohmann::json broken = j;
    broken.erase("dual_coefficients");
    CHECK_THROWS_AS(fe_from_json(broken), SchemaError);
    broken = j;
    broken["root_constant"] = {2.0, 0.0};
    CHECK_THROWS_AS(fe_from_json(broken), NotUnitModulus);
}

TEST_CASE("zeta zeros by sign changes of Z") {
    auto z1 = zeta_zeros(10, 15, 0.1);
    REQUIRE(z1.size() == 1);
    CHECK(std::abs(z1[0] - 14.134725141734693) < 1e-7);
    auto z2 = zeta_zeros(20, 26, 0.1);
    REQUIRE(z2.size() == 2);
    CHECK(std::abs(z2[0] - 21.022039638771555) < 1e-7);
    CHECK(std::abs(z2[1] - 25.010857580145689) < 1e-7);
    CHECK(zeta_zeros(0, 5, 0.1).empty());
    CHECK(std::abs(raw::hurwitz_zeta(cplx(0.5, 14.0), 1.0) - cplx(0.0222411426099935892, -0.1032581232664500579)) <
          1e-11);
}
