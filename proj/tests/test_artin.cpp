#include "doctest.h"

#include "twistlab/artin.hpp"
#include "twistlab/errors.hpp"
#include "twistlab/lmfdb.hpp"

#include "httplib.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

using namespace twistlab;
namespace fs = std::filesystem;

namespace {

const char* const kLabel = "3.229.4t5.a.a";

std::string fixture_text() {
    std::ifstream in(std::string(TWISTLAB_DATA_DIR) + "/" + kLabel + ".json");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const EulerFactorTable& fixture() {
    static const EulerFactorTable t = ingest_euler_factors(fixture_text());
    return t;
}

std::vector<long> primes_upto(long n) {
    std::vector<long> out;
    for (long p = 2; p <= n; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

// phi = 1 + chi1 + chi2 as a direct sum of Dirichlet characters.
EulerFactorTable abelian_sum(const DirichletCharacter& c1, const DirichletCharacter& c2, long bound) {
    EulerFactorTable t;
    t.dimension = 3;
    t.conductor = c1.conductor * c2.conductor;
    t.p_plus = 1 + (c1.parity == 0) + (c2.parity == 0);
    t.m_minus = 3 - t.p_plus;
    for (long p : primes_upto(bound)) {
        std::vector<cplx> poly{1.0, -1.0};
        for (const auto* c : {&c1, &c2}) {
            cplx v = (*c)(p);
            std::vector<cplx> next(poly.size() + 1, 0.0);
            for (std::size_t k = 0; k < poly.size(); ++k) {
                next[k] += poly[k];
                next[k + 1] -= v * poly[k];
            }
            poly = next;
        }
        while (poly.size() > 1 && std::abs(poly.back()) == 0.0) poly.pop_back();
        if (t.conductor % p == 0) t.bad_primes.push_back(p);
        t.factors[p] = poly;
    }
    return t;
}

EulerFactorTable trivial_cube(long bound) {
    EulerFactorTable t;
    t.dimension = 3;
    t.conductor = 1;
    t.p_plus = 3;
    for (long p : primes_upto(bound)) t.factors[p] = {1.0, -3.0, 3.0, -1.0};
    return t;
}

long divisor_count(long n, int k) {
    if (k == 1) return 1;
    long s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) s += divisor_count(n / d, k - 1);
    return s;
}

DirichletCharacter legendre229() {
    for (const auto& c : primitive_characters(229)) {
        bool real = true;
        for (cplx v : c.values) real = real && std::abs(v.imag()) < 1e-12;
        if (real) return c;
    }
    throw std::runtime_error("no quadratic character mod 229");
}

}  // namespace

TEST_CASE("ingesting the 3.229.4t5.a.a table") {
    const auto& t = fixture();
    CHECK(t.dimension == 3);
    CHECK(t.conductor == 229);
    CHECK(t.p_plus == 1);
    CHECK(t.m_minus == 2);
    CHECK(t.p_plus + t.m_minus == 3);
    REQUIRE(t.bad_primes == std::vector<long>{229});
    CHECK(t.factors.at(229).size() == 3);
    double worst = 0.0;
    for (const auto& [p, poly] : t.factors) {
        if (p > 2000 || t.is_bad(p)) continue;
        for (cplx r : polynomial_roots(poly)) worst = std::max(worst, std::abs(std::abs(r) - 1.0));
    }
    CHECK(worst <= 1e-8);
    EulerFactorTable back = table_from_json(table_to_json(t));
    CHECK(back.factors == t.factors);
}

TEST_CASE("ingest guards") {
    nlohmann::json doc = table_to_json(trivial_cube(50));
    EulerFactorTable ok = table_from_json(doc);
    long good = 0;
    for (const auto& [p, poly] : ok.factors) good += !ok.is_bad(p);
    CHECK(good == 15);

    nlohmann::json bad = doc;
    bad["factors"]["7"][0] = {1.0 + 1e-3, 0.0};
    try {
        table_from_json(bad);
        FAIL("expected InvariantViolation");
    } catch (const InvariantViolation& e) {
        CHECK(std::string(e.what()).find("7") != std::string::npos);
    }
    bad = doc;
    bad["factors"]["11"] = {{1, 0}, {-2.5, 0}, {1, 0}, {0, 0}};
    CHECK_THROWS_AS(table_from_json(bad), InvariantViolation);
    bad = doc;
    bad["p_plus"] = 2;
    CHECK_THROWS_AS(table_from_json(bad), InvariantViolation);
    bad = doc;
    bad.erase("factors");
    CHECK_THROWS_AS(table_from_json(bad), SchemaError);
    bad = doc;
    bad["factors"]["9"] = doc["factors"]["7"];
    CHECK_THROWS_AS(table_from_json(bad), SchemaError);
    CHECK_THROWS_AS(ingest_euler_factors("{not json"), SchemaError);
}

TEST_CASE("polynomial roots") {
    auto r = polynomial_roots({1.0, 1.0, 1.0, 1.0});
    REQUIRE(r.size() == 3);
    for (cplx z : r) CHECK(std::abs(1.0 + z + z * z + z * z * z) < 1e-14);
    for (cplx z : polynomial_roots({1.0, -3.0, 3.0, -1.0})) CHECK(std::abs(z - 1.0) < 1e-12);
    for (cplx z : polynomial_roots({1.0, 1.0, -1.0, -1.0})) CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
}

TEST_CASE("coefficient expansion") {
    CoefficientSeries t3 = expand_coefficients(trivial_cube(200), 200);
    CHECK(t3.coeffs[0] == cplx(1.0));
    CHECK(t3.coeffs[3] == cplx(6.0));
    for (long n = 1; n <= 200; ++n) CHECK(t3.coeffs[n - 1] == cplx(double(divisor_count(n, 3))));
    CHECK(t3.growth_sigma == 0.1);

    CoefficientSeries b = expand_coefficients(fixture(), 900);
    CHECK(b.coeffs[0] == cplx(1.0));
    for (long m = 1; m <= 30; ++m)
        for (long n = 1; n <= 30; ++n)
            if (std::gcd(m, n) == 1) CHECK(std::abs(b.a(m * n) - b.a(m) * b.a(n)) < 1e-12);
    // Traces of Frobenius: a_p = -F_p[1].
    for (long p : primes_upto(200)) CHECK(b.a(p) == -fixture().factors.at(p)[1]);

    EulerFactorTable gap = trivial_cube(50);
    gap.factors.erase(31);
    CHECK_THROWS_AS(expand_coefficients(gap, 40), MissingPrime);
    CHECK_NOTHROW(expand_coefficients(gap, 30));
}

TEST_CASE("quotient profiles and the gamma cancellation table") {
    QuotientProfile z = quotient_profile(trivial_cube(100), 100);
    CHECK(z.quotient_gamma == std::vector<int>{0, 0});
    REQUIRE(z.epsilon.has_value());
    CHECK(*z.epsilon == 0);
    CHECK(z.coefficients.coeffs[3] == cplx(3.0));
    for (long n = 1; n <= 100; ++n) CHECK(z.coefficients.a(n) == cplx(double(divisor_count(n, 2))));

    const std::vector<std::vector<int>> table = {{1, 1}, {0, 1}, {0, 0}};
    for (int p = 1; p <= 3; ++p) {
        EulerFactorTable t = trivial_cube(10);
        t.p_plus = p;
        t.m_minus = 3 - p;
        QuotientProfile q = quotient_profile(t, 10);
        CHECK(q.quotient_gamma == table[p - 1]);
        CHECK(q.epsilon.has_value() == (p != 2));
        if (q.epsilon) CHECK(*q.epsilon == (3 - p) / 2);
    }
    QuotientProfile f = quotient_profile(fixture(), 50);
    CHECK(f.quotient_gamma == std::vector<int>{1, 1});
    CHECK(*f.epsilon == 1);

    EulerFactorTable none = trivial_cube(10);
    none.p_plus = 0;
    none.m_minus = 3;
    CHECK_THROWS_AS(quotient_profile(none, 10), HypothesisViolation);
}

TEST_CASE("dirichlet_divide round trip on the Artin table") {
    const std::size_t M = 500;
    CoefficientSeries b = expand_coefficients(fixture(), M);
    QuotientProfile q = quotient_profile(fixture(), M);
    std::vector<cplx> ones(M, 1.0);
    std::vector<cplx> back = dirichlet_convolve(q.coefficients.coeffs, ones);
    for (std::size_t n = 0; n < M; ++n) CHECK(back[n] == b.coeffs[n]);
}

TEST_CASE("primitivity proxy") {
    DirichletCharacter chi;
    for (const auto& c : primitive_characters(5))
        if (std::abs(c(2) - cplx(0.0, 1.0)) < 1e-12) chi = c;
    EulerFactorTable sum = abelian_sum(chi, chi.conj(), 100);
    CHECK(table_from_json(table_to_json(sum)).conductor == 25);
    PrimitivityResult r = primitivity_proxy(sum, 100);
    CHECK_FALSE(r.found);
    CHECK_FALSE(r.prime.has_value());
    CHECK(r.margin < 1e-12);
    for (long p : primes_upto(100)) {
        PrimitivityResult one = primitivity_proxy(sum, p);
        CHECK_FALSE(one.found);
    }
    EulerFactorTable quad = abelian_sum(primitive_characters(3)[0], primitive_characters(4)[0], 100);
    CHECK_FALSE(primitivity_proxy(quad, 100).found);

    PrimitivityResult a = primitivity_proxy(fixture(), 50);
    CHECK(a.found);
    REQUIRE(a.prime.has_value());
    CHECK(*a.prime <= 50);
    CHECK(a.margin > 1e-8);

    EulerFactorTable toy;
    toy.dimension = 3;
    toy.conductor = 1;
    toy.p_plus = 1;
    toy.m_minus = 2;
    toy.factors[2] = {1.0, 1.0, 1.0, 1.0};
    PrimitivityResult t = primitivity_proxy(toy, 2);
    CHECK(t.found);
    CHECK(*t.prime == 2);
    CHECK(t.margin == 4.0);
}

TEST_CASE("assembling the quotient functional equation") {
    CHECK(fea_sign_factor(2, 1) == 1);
    CHECK(fea_sign_factor(2, 0) == -1);
    CHECK(fea_sign_factor(0, 0) == 1);
    CHECK(fea_sign_factor(0, 1) == -1);
    CHECK_THROWS_AS(assemble_fe(fixture(), ComplexValue(2.0), legendre229(), 100), NotUnitModulus);

    // The trivial analog reproduces the zeta pair.
    const std::size_t M = 3000;
    FunctionalEquationData fe = assemble_fe(trivial_cube(M), ComplexValue(1.0), principal_character(1), M);
    CHECK(fe.level == 1);
    CHECK(fe.parity == 0);
    CHECK(fe.gamma_shifts == std::vector<int>{0, 0});
    LFunctionPair zp = make_zeta_pair(M);
    for (std::size_t n = 0; n < M; ++n) CHECK(fe.dual->coeffs[n] == zp.series->coeffs[n]);
    // Same coefficients; the zeta-pair copy carries the factorization its evaluation lane needs.
    fe.dual = zp.series;
    for (int q : {3, 4, 5, 7})
        for (const auto& psi : primitive_characters(q))
            CHECK(check_fe_residual(*zp.series, fe, psi, standard_grid()) <= 1e-9);
    FunctionalEquationData wrong = fe;
    wrong.root_constant = ComplexValue(-1.0);
    CHECK(check_fe_residual(*zp.series, wrong, primitive_characters(3)[0], standard_grid()) >= 0.1);

    FunctionalEquationData a = assemble_fe(fixture(), ComplexValue(-1.0), legendre229(), 200);
    CHECK(a.level == 229);
    CHECK(a.parity == 1);
    CHECK(a.gamma_shifts == std::vector<int>{1, 1});
    CHECK(a.root_constant.re == -1.0);
}

TEST_CASE("root number of 3.229.4t5.a.a by kernel independence") {
    const DirichletCharacter chi = legendre229();
    CHECK(chi(2) == cplx(-1.0));
    CHECK(chi(3) == cplx(1.0));
    SmoothingParams a, b;
    b.kernel_a = 0.2;
    for (double w : {1.0, -1.0}) {
        LFunctionPair f = artin_twist_pair(fixture(), ComplexValue(w), chi, principal_character(1), 8000);
        CHECK(f.fe.gamma_shifts == std::vector<int>{0, 1, 1});
        double diff = 0.0;
        for (cplx s : {cplx(0.5, 0.0), cplx(0.5, 3.0), cplx(0.3, -2.0)})
            diff = std::max(diff, std::abs(smoothed_eval(*f.series, f.fe, s, a).z() - smoothed_eval(*f.series, f.fe, s, b).z()));
        if (w > 0)
            CHECK(diff <= 1e-9);
        else
            CHECK(diff >= 1e-5);
    }
    // The twist by the character mod 3 pins chi(3) w together.
    SmoothingParams c, d;
    c.kernel_a = 0.03;
    d.kernel_a = 0.05;
    c.max_error = d.max_error = 1e-4;
    for (double w : {1.0, -1.0}) {
        LFunctionPair f = artin_twist_pair(fixture(), ComplexValue(w), chi, primitive_characters(3)[0], 20000);
        CHECK(f.fe.level == 229 * 27);
        ComplexValue x = smoothed_eval(*f.series, f.fe, 0.5, c), y = smoothed_eval(*f.series, f.fe, 0.5, d);
        double diff = std::abs(x.z() - y.z());
        if (w > 0) {
            CHECK(diff <= 1e-7);
            CHECK(diff <= x.err + y.err);
        } else {
            CHECK(diff >= 1e-5);
        }
    }
}

TEST_CASE("LMFDB labels and offline cache") {
    CHECK(valid_artin_label(kLabel));
    CHECK_FALSE(valid_artin_label("xyz"));
    CHECK_FALSE(valid_artin_label("3.229.4t5.a"));
    LmfdbOptions off;
    off.offline = true;
    off.cache_dir = TWISTLAB_DATA_DIR;
    CHECK_THROWS_AS(fetch_lmfdb("xyz", 100, off), UnknownLabel);
    CHECK(fetch_lmfdb(kLabel, 100, off) == fixture_text());
    CHECK_THROWS_AS(fetch_lmfdb("2.5.2t1.a.a", 100, off), CacheMiss);
}

TEST_CASE("LMFDB fetch against a local server") {
    nlohmann::json conj = nlohmann::json::object();
    nlohmann::json local = nlohmann::json::array();
    for (const auto& [p, poly] : fixture().factors) {
        if (p > 100) break;
        nlohmann::json row = nlohmann::json::array();
        for (cplx c : poly) row.push_back(int(c.real()));
        local.push_back(row);
    }
    conj["LocalFactors"] = local;
    nlohmann::json record = {{"Baselabel", "3.229.4t5.a"}, {"Dim", 3}, {"Conductor", "229"},
                             {"BadPrimes", {229}},         {"TraceComplexConjugation", -1},
                             {"GaloisConjugates", {conj}}};

    httplib::Server server;
    server.Get("/api/artin_reps/", [&](const httplib::Request& req, httplib::Response& res) {
        nlohmann::json body = {{"data", nlohmann::json::array()}};
        if (req.get_param_value("Baselabel") == "3.229.4t5.a") body["data"].push_back(record);
        res.set_content(body.dump(), "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread th([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    const fs::path cache = fs::temp_directory_path() / ("twistlab-cache-" + std::to_string(port));
    fs::remove_all(cache);
    LmfdbOptions on;
    on.base_url = "http://127.0.0.1:" + std::to_string(port);
    on.cache_dir = cache.string();
    std::string doc = fetch_lmfdb(kLabel, 100, on);
    EulerFactorTable t = ingest_euler_factors(doc);
    CHECK(t.conductor == 229);
    CHECK(t.p_plus == 1);
    CHECK(t.m_minus == 2);
    CHECK(t.factors.size() == 25);
    for (const auto& [p, poly] : t.factors) CHECK(poly == fixture().factors.at(p));
    CHECK(primitivity_proxy(t, 50).found);

    LmfdbOptions off = on;
    off.offline = true;
    CHECK(fetch_lmfdb(kLabel, 100, off) == doc);
    CHECK_THROWS_AS(fetch_lmfdb("3.229.4t5.b.a", 100, on), UnknownLabel);
    CHECK_THROWS_AS(fetch_lmfdb("3.229.4t5.a.b", 100, on), UnknownLabel);

    server.stop();
    th.join();
    fs::remove_all(cache);

    LmfdbOptions dead = on;
    dead.timeout_seconds = 2;
    CHECK_THROWS_AS(fetch_lmfdb(kLabel, 100, dead), NetworkError);
}
