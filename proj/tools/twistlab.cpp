#include "twistlab/artin.hpp"
#include "twistlab/converse.hpp"
#include "twistlab/errors.hpp"
#include "twistlab/hyp2f1.hpp"
#include "twistlab/lfun.hpp"
#include "twistlab/lmfdb.hpp"
#include "twistlab/report.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace twistlab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Globals {
    std::optional<double> tol;
    std::string out;
    bool offline = false;
    std::string cache_dir;
};

// A usage or data problem reported with exit code 2.
struct UsageError : std::runtime_error {
    std::string kind;
    UsageError(std::string k, const std::string& msg) : std::runtime_error(msg), kind(std::move(k)) {}
};

double tol_or(const Globals& g, double fallback) { return g.tol.value_or(fallback); }

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("FileNotFound", "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json cplx_list(const std::vector<cplx>& v, std::size_t count) {
    json out = json::array();
    for (std::size_t i = 0; i < std::min(count, v.size()); ++i) out.push_back(value_json(v[i]));
    return out;
}

json character_json(const DirichletCharacter& psi) {
    json values = json::array();
    for (const cplx& v : psi.values) values.push_back(value_json(v));
    return {{"modulus", psi.modulus}, {"conductor", psi.conductor}, {"parity", psi.parity},
            {"primitive", psi.primitive}, {"values", values}};
}

DirichletCharacter pick_primitive(int q, int index) {
    const auto chars = primitive_characters(q);
    if (index < 0 || std::size_t(index) >= chars.size())
        throw UsageError("DomainError", "modulus " + std::to_string(q) + " has " + std::to_string(chars.size()) +
                                            " primitive characters; index out of range");
    return chars[std::size_t(index)];
}

// --- pairs -----------------------------------------------------------------

struct PairArgs {
    std::string pair = "zeta";
    int q = 5;
    int index = 0;
    std::string input;
    std::size_t length = 3000;
};

void add_pair_options(CLI::App* cmd, PairArgs& p) {
    cmd->add_option("--pair", p.pair, "zeta | eisenstein")->check(CLI::IsMember({"zeta", "eisenstein"}));
    cmd->add_option("--q", p.q, "modulus of the character psi for the pair (psi, conj psi)");
    cmd->add_option("--index", p.index, "index among the primitive characters mod q");
    cmd->add_option("--input", p.input, "pair in functional-equation JSON form");
    cmd->add_option("--length", p.length, "number of coefficients");
}

LFunctionPair build_pair(const PairArgs& p, json& inputs) {
    inputs["length"] = p.length;
    if (!p.input.empty()) {
        inputs["input"] = p.input;
        return fe_from_json(json::parse(read_text(p.input)));
    }
    inputs["pair"] = p.pair;
    if (p.pair == "zeta") return make_zeta_pair(p.length);
    inputs["q"] = p.q;
    inputs["index"] = p.index;
    const DirichletCharacter psi = pick_primitive(p.q, p.index);
    return make_eisenstein_pair(psi, psi.conj(), p.length);
}

// --- Artin tables ----------------------------------------------------------

DirichletCharacter quadratic_character(int q) {
    for (const auto& c : primitive_characters(q)) {
        bool real = true;
        for (const cplx& v : c.values) real = real && std::abs(v.imag()) < 1e-12;
        if (real) return c;
    }
    throw UsageError("DomainError", "no primitive quadratic character mod " + std::to_string(q));
}

// 1 + chi_5 + chi_13 with both quadratic characters, conductor 65.
EulerFactorTable reducible_demo(long bound) {
    const DirichletCharacter a = quadratic_character(5), b = quadratic_character(13);
    EulerFactorTable t;
    t.dimension = 3;
    t.conductor = 65;
    t.p_plus = 3;
    t.m_minus = 0;
    t.bad_primes = {5, 13};
    for (long p = 2; p <= bound; ++p) {
        if (!is_prime(p)) continue;
        std::vector<cplx> poly{1.0, -1.0};
        for (const cplx r : {a(p), b(p)}) {
            if (r == 0.0) continue;
            std::vector<cplx> next(poly.size() + 1, 0.0);
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i] += poly[i];
                next[i + 1] -= r * poly[i];
            }
            poly = next;
        }
        t.factors[p] = poly;
    }
    return t;
}

EulerFactorTable load_table(const std::string& source, long bound, const Globals& g, json& inputs) {
    inputs["artin"] = source;
    if (source == "demo") return reducible_demo(bound);
    if (fs::exists(source)) return ingest_euler_factors(read_text(source));
    if (!valid_artin_label(source)) throw UsageError("FileNotFound", "no file or Artin label " + source);
    LmfdbOptions opts;
    opts.offline = g.offline;
    opts.cache_dir = g.cache_dir;
    return ingest_euler_factors(fetch_lmfdb(source, bound, opts));
}

// det phi(Frob_p) = (-1)^d c_d at good primes, matched to a character mod the conductor.
DirichletCharacter determinant_character(const EulerFactorTable& t) {
    for (const auto& chi : enumerate_characters(t.conductor)) {
        bool ok = true;
        for (const auto& [p, poly] : t.factors) {
            if (t.is_bad(p) || int(poly.size()) != t.dimension + 1) continue;
            const cplx det = (t.dimension % 2 ? -1.0 : 1.0) * poly.back();
            if (std::abs(det - chi(p)) > 1e-8) {
                ok = false;
                break;
            }
        }
        if (ok) return chi;
    }
    throw UsageError("InvariantViolation", "determinant is not a character mod the conductor");
}

// --- commands --------------------------------------------------------------

struct HypArgsCli {
    double a = 0, c = 0, w = 0;
    std::optional<double> b;
};

Report cmd_hyp(const HypArgsCli& h, const Globals& g) {
    Report r{"hyp"};
    const double b = h.b.value_or(h.a);
    r.inputs = {{"a", h.a}, {"b", b}, {"c", h.c}, {"w", h.w}};
    const HypArgs args{h.a, b, h.c, h.w};
    const double tol = tol_or(g, 1e-9);
    ComplexValue value;
    std::string route;
    if (std::abs(h.w) < 1.0) {
        route = "series";
        value = hyp_series(args);
    } else if (h.w < -1.0 && b == h.a) {
        route = "degenerate";
        value = hyp_degenerate(h.a, h.c, h.w);
    } else if (h.w < -1.0) {
        route = "continuation";
        value = hyp_continuation(args);
    } else {
        throw UsageError("DomainError", "w must satisfy |w| < 1 or w < -1");
    }
    r.results["route"] = route;
    r.results["value"] = value_json(value);
    if (h.w < 0.0) {
        const ComplexValue oracle = hyp_oracle(args);
        r.results["oracle"] = value_json(oracle);
        r.add_check("oracle", std::abs(value.z() - oracle.z()) / std::max(1.0, oracle.abs()), tol);
    }
    return r;
}

Report cmd_char(int q, const Globals& g) {
    Report r{"char"};
    r.inputs = {{"q", q}};
    const double tol = tol_or(g, 1e-10);
    json list = json::array();
    double worst_abs = 0.0, worst_pair = 0.0;
    for (const auto& psi : primitive_characters(q)) {
        const ComplexValue tau = gauss_sum(psi);
        const ComplexValue tau_bar = gauss_sum(psi.conj());
        json item = character_json(psi);
        item["gauss_sum"] = value_json(tau);
        list.push_back(item);
        worst_abs = std::max(worst_abs, std::abs(std::norm(tau.z()) - q));
        worst_pair = std::max(worst_pair, std::abs(tau.z() * tau_bar.z() - psi(-1) * double(q)));
    }
    r.results["primitive"] = list;
    r.add_check("|tau|^2 = q", worst_abs, tol);
    r.add_check("tau(psi) tau(conj psi) = psi(-1) q", worst_pair, tol);
    return r;
}

struct EvalArgs {
    double re = 0.5, im = 0.0;
    std::optional<int> twist_q;
    int twist_index = 0;
    std::optional<long> add_a;
    long add_q = 1;
    int add_r = 0;
};

Report cmd_lfun_eval(const PairArgs& p, const EvalArgs& e, const Globals&) {
    Report r{"lfun-eval"};
    const LFunctionPair pair = build_pair(p, r.inputs);
    r.inputs["s"] = value_json(cplx(e.re, e.im));
    std::optional<TwistSpec> twist;
    if (e.twist_q) {
        twist = TwistSpec::by_character(pick_primitive(*e.twist_q, e.twist_index));
        r.inputs["twist"] = {{"q", *e.twist_q}, {"index", e.twist_index}};
    } else if (e.add_a) {
        twist = TwistSpec::cos(*e.add_a, e.add_q, e.add_r);
        r.inputs["additive"] = {{"a", *e.add_a}, {"q", e.add_q}, {"r", e.add_r}};
    }
    r.results["completed"] = value_json(eval_completed(*pair.series, pair.fe, twist, ComplexValue(e.re, e.im)));
    return r;
}

Report cmd_twist_verify(const PairArgs& p, const std::vector<int>& moduli, const Globals& g) {
    Report r{"twist-verify"};
    const LFunctionPair pair = build_pair(p, r.inputs);
    r.inputs["moduli"] = moduli;
    const double tol = tol_or(g, 1e-7);
    const auto grid = standard_grid();
    json rows = json::array();
    for (int q : moduli) {
        if (std::gcd(q, pair.fe.level) != 1) throw UsageError("DomainError", "twist modulus shares a factor with the level");
        double fe_worst = 0.0, add_worst = 0.0, flipped = 1e300;
        for (const auto& psi : primitive_characters(q)) {
            fe_worst = std::max(fe_worst, check_fe_residual(*pair.series, pair.fe, psi, grid));
            FunctionalEquationData wrong = pair.fe;
            wrong.root_constant = -wrong.root_constant;
            flipped = std::min(flipped, check_fe_residual(*pair.series, wrong, psi, grid));
        }
        if (is_prime(q))
            for (long a = 1; a < q; ++a)
                for (int rr : {0, 1}) add_worst = std::max(add_worst, check_prop34_residual(*pair.series, pair.fe, a, q, rr, grid));
        rows.push_back({{"q", q}, {"character_fe", fe_worst}, {"additive_fe", add_worst}, {"flipped_root", flipped}});
        r.add_check("character twist FE mod " + std::to_string(q), fe_worst, tol);
        if (is_prime(q)) r.add_check("additive twist FE mod " + std::to_string(q), add_worst, tol);
    }
    r.results["residuals"] = rows;
    return r;
}

Report cmd_artin_ingest(const std::string& source, long bound, const Globals& g) {
    Report r{"artin-ingest"};
    const EulerFactorTable t = load_table(source, bound, g, r.inputs);
    r.inputs["prime_bound"] = bound;
    r.results["dimension"] = t.dimension;
    r.results["conductor"] = t.conductor;
    r.results["p_plus"] = t.p_plus;
    r.results["m_minus"] = t.m_minus;
    r.results["bad_primes"] = t.bad_primes;
    r.results["primes"] = t.factors.size();
    const PrimitivityResult prim = primitivity_proxy(t, std::min<long>(bound, 50));
    r.results["primitivity_proxy"] = {{"found", prim.found}, {"margin", prim.margin}};
    if (prim.prime) r.results["primitivity_proxy"]["prime"] = *prim.prime;
    r.results["nebentypus"] = character_json(determinant_character(t));
    r.results["coefficients"] = cplx_list(expand_coefficients(t, 30).coeffs, 30);
    return r;
}

Report cmd_artin_quotient(const std::string& source, std::size_t length, const Globals& g) {
    Report r{"artin-quotient"};
    const EulerFactorTable t = load_table(source, long(length), g, r.inputs);
    r.inputs["length"] = length;
    const CoefficientSeries full = expand_coefficients(t, length);
    const QuotientProfile q = quotient_profile(t, length);
    r.results["quotient_gamma"] = q.quotient_gamma;
    r.results["epsilon"] = q.epsilon ? json(*q.epsilon) : json(nullptr);
    r.results["coefficients"] = cplx_list(q.coefficients.coeffs, 30);
    const std::vector<cplx> ones(length, 1.0);
    const std::vector<cplx> back = dirichlet_convolve(q.coefficients.coeffs, ones);
    double worst = 0.0;
    for (std::size_t n = 0; n < length; ++n) worst = std::max(worst, std::abs(back[n] - full.coeffs[n]));
    r.add_check("zeta * quotient = L(phi)", worst, tol_or(g, 1e-9));
    return r;
}

Report cmd_zeros(double t_min, double t_max, double step, bool plot, const Globals&) {
    Report r{"zeros"};
    r.inputs = {{"t_min", t_min}, {"t_max", t_max}, {"step", step}};
    if (!(t_min >= 0.0 && t_max <= 100.0 && t_min < t_max && step > 0.0))
        throw UsageError("DomainError", "zero scan needs 0 <= t_min < t_max <= 100 and step > 0");
    r.results["zeros"] = zeta_zeros(t_min, t_max, step);
    if (plot) {
        json samples = json::array();
        for (double t = t_min; t <= t_max + 1e-12; t += step) samples.push_back({t, hardy_z(t)});
        r.results["hardy_z"] = samples;
    }
    return r;
}

Report cmd_vandermonde(long u, long v, long level, int m, int t0, std::optional<double> z_re, double z_im,
                       const Globals& g) {
    Report r{"converse-vandermonde"};
    r.inputs = {{"u", u}, {"v", v}, {"level", level}, {"M", m}, {"t0", t0}};
    const TBetaSet t = build_tbeta(u, v, level, m + 8);
    const std::vector<Rational> nodes(t.members.begin(), t.members.begin() + m);
    const TBetaSet pool{u, v, level, {}, {t.members.begin() + m, t.members.end()}};
    VandermondeWeights w = z_re ? solve_vandermonde_extended(nodes, t0, ComplexValue(*z_re, z_im), pool)
                                : solve_vandermonde(nodes, t0);
    json lam = json::array(), wts = json::array();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        lam.push_back(to_string(nodes[i]));
        wts.push_back(to_string(w.weights[i]));
    }
    r.results["lambdas"] = lam;
    r.results["weights"] = wts;
    r.add_check("Kronecker rows (exact)", to_double(w.kronecker_residual()), 0.0);
    if (z_re) {
        r.inputs["z"] = value_json(cplx(*z_re, z_im));
        json kernel = json::array();
        for (const Rational& d : w.kernel) kernel.push_back(to_string(d));
        r.results["lambda0"] = to_string(*w.lambda0);
        r.results["kernel"] = kernel;
        r.results["kappa"] = value_json(w.kappa);
        r.results["determinant"] = w.determinant;
        r.add_check("log row", w.log_residual(), tol_or(g, 1e-10));
    }
    return r;
}

std::string bessel_label(long a, const ComplexValue& s) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "Bessel-Mellin alpha=%ld s=%g%+gi", a, s.re, s.im);
    return buf;
}

Report cmd_converse_check(const Globals& g) {
    Report r{"converse-check"};
    const LFunctionPair zp = make_zeta_pair(3000);
    DirichletCharacter chi;
    for (const auto& c : primitive_characters(5))
        if (std::abs(c(2) - cplx(0.0, 1.0)) < 1e-12) chi = c;
    const LFunctionPair l25 = make_eisenstein_pair(chi, chi.conj(), 3000);

    const std::vector<MaassEvalPoint> zpts = {{0.1, 0.2},  {-0.3, 0.25}, {0.45, 0.3}, {0.0, 0.5},  {0.25, 0.6},
                                              {-0.4, 0.8}, {0.3, 1.0},   {-0.15, 1.2}, {0.5, 0.9}, {0.05, 2.0}};
    const std::vector<MaassEvalPoint> lpts = {{0.0, 0.2},   {0.03, 0.15}, {-0.05, 0.18}, {0.08, 0.16}, {-0.08, 0.14},
                                              {0.02, 0.22}, {0.1, 0.15},  {-0.1, 0.15},  {0.05, 0.12}, {0.0, 0.25}};
    r.add_check("modularity zeta pair", check_modularity(*zp.series, *zp.fe.dual, zp.fe, zpts), tol_or(g, 1e-7));
    r.add_check("modularity level 25", check_modularity(*l25.series, *l25.fe.dual, l25.fe, lpts), tol_or(g, 1e-6));

    for (int eps : {0, 1}) {
        const ComplexValue s = eps ? ComplexValue(0.5, 1.0) : ComplexValue(0.6);
        const ExpansionCheck c = check_expansion_identity(eps, s, 1, {0.2}, 6);
        r.results["expansion_envelope_eps" + std::to_string(eps)] = c.envelope;
        r.results["remainder_order_eps" + std::to_string(eps)] = remainder_order(eps, s, 1, 0.4, 6);
        r.add_check("expansion identity eps " + std::to_string(eps), c.residual, tol_or(g, 1e-7));
    }
    for (long a : {1L, 3L})
        for (const ComplexValue& s : {ComplexValue(2.0), ComplexValue(0.5), ComplexValue(1.0, 1.0)})
            r.add_check(bessel_label(a, s), check_bessel_mellin(Rational(a), s), tol_or(g, 1e-7));

    auto lambda = [&](cplx s) { return eval_completed(*zp.series, zp.fe, std::nullopt, ComplexValue(s)).z(); };
    for (bool tilde : {false, true}) {
        const GJFactors gj{0, 0};
        auto [plain, tw] = residue_integrals(zp.fe, gj, 1, zp.fe.poles);
        const cplx q = rectangle_contour([&](cplx s) { return residue_integrand(lambda, gj, 1.0, tilde, s); }, -0.5,
                                         1.5, -2.0, 2.0);
        const ComplexValue res = tilde ? tw : plain;
        r.results[tilde ? "I_tilde_0" : "I_0"] = value_json(res);
        r.add_check(std::string(tilde ? "I~_0" : "I_0") + " residues vs contour", std::abs(res.z() - q),
                    tol_or(g, 1e-7));
    }
    return r;
}

std::vector<double> read_zeros(const std::string& path) {
    const json j = json::parse(read_text(path));
    const json* arr = &j;
    if (j.is_object()) {
        if (j.contains("results") && j["results"].contains("zeros"))
            arr = &j["results"]["zeros"];
        else if (j.contains("zeros"))
            arr = &j["zeros"];
    }
    if (!arr->is_array()) throw UsageError("SchemaError", "zeros file must hold an array of ordinates");
    return arr->get<std::vector<double>>();
}

Report cmd_cancellation(const std::string& source, const std::string& zeros_path, std::size_t length,
                        double root_number, double kernel_a, const Globals& g) {
    Report r{"cancellation-demo"};
    const std::vector<double> zeros = read_zeros(zeros_path);
    const EulerFactorTable t = load_table(source, long(length), g, r.inputs);
    r.inputs["zeros"] = zeros_path;
    r.inputs["coeff_length"] = length;
    r.inputs["root_number"] = root_number;
    r.inputs["kernel_a"] = kernel_a;
    r.results["label"] = "HEURISTIC: smoothed evaluation without certified truncation";

    const PrimitivityResult prim = primitivity_proxy(t, 50);
    r.results["primitivity_proxy"] = prim.found;
    const DirichletCharacter neb = determinant_character(t);
    // w_{<inf} = w(phi) / i^m.
    const cplx i_m = std::pow(cplx(0.0, 1.0), t.m_minus);
    const ComplexValue finite(root_number / i_m);
    const FunctionalEquationData fe = assemble_fe(t, finite, neb, length);
    const QuotientProfile q = quotient_profile(t, length);

    // Two kernels; their spread joins the error budget of the normalized value L = Lambda / gamma.
    SmoothingParams wide, narrow;
    wide.kernel_a = kernel_a;
    narrow.kernel_a = kernel_a / 5.0;
    json rows = json::array();
    for (double gamma : zeros) {
        json row = {{"t", gamma}};
        const ComplexValue s(0.5, gamma);
        try {
            const ComplexValue v1 = smoothed_eval(q.coefficients, fe, s, wide);
            const ComplexValue v2 = smoothed_eval(q.coefficients, fe, s, narrow);
            const double g_abs = gamma_product(fe.gamma_shifts, s).abs();
            const cplx lval = v2.z() / gamma_product(fe.gamma_shifts, s).z();
            const double err = std::max({v1.err, v2.err, std::abs(v1.z() - v2.z())}) / g_abs;
            row["completed"] = value_json(v2);
            row["kernel_spread"] = std::abs(v1.z() - v2.z()) / g_abs;
            row["value"] = value_json(ComplexValue(lval, err));
            row["non_shared"] = std::abs(lval) > 3.0 * err;
        } catch (const TruncationInsufficient& e) {
            row["skipped"] = e.detail();
        }
        rows.push_back(row);
    }
    r.results["zeros"] = rows;
    return r;
}

void emit(const json& j, const Globals& g) {
    const std::string text = dump_json(j);
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out, std::ios::binary);
    if (!out) throw UsageError("FileNotFound", "cannot write " + g.out);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twistlab: hypergeometric continuation, L-function twists and converse-theorem checks"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--tol", g.tol, "tolerance applied to every check");
    app.add_option("--out", g.out, "write the JSON report here instead of stdout");
    app.add_flag("--offline", g.offline, "never touch the network; read Artin data from the cache");
    app.add_option("--cache-dir", g.cache_dir, "cache directory (default $TWISTLAB_CACHE_DIR or ./cache)");

    std::function<Report()> run;

    HypArgsCli hyp;
    auto* c_hyp = app.add_subcommand("hyp", "2F1(a, b; c; w) for real w");
    c_hyp->add_option("--a", hyp.a)->required();
    c_hyp->add_option("--b", hyp.b);
    c_hyp->add_option("--c", hyp.c)->required();
    c_hyp->add_option("--w", hyp.w)->required();
    c_hyp->callback([&] { run = [&] { return cmd_hyp(hyp, g); }; });

    int char_q = 5;
    auto* c_char = app.add_subcommand("char", "primitive characters mod q with Gauss sums");
    c_char->add_option("--q", char_q)->required();
    c_char->callback([&] { run = [&] { return cmd_char(char_q, g); }; });

    PairArgs eval_pair;
    EvalArgs eval;
    auto* c_eval = app.add_subcommand("lfun-eval", "completed L-value of a test pair or its twist");
    add_pair_options(c_eval, eval_pair);
    c_eval->add_option("--re", eval.re);
    c_eval->add_option("--im", eval.im);
    c_eval->add_option("--twist-q", eval.twist_q, "twist by a primitive character mod this modulus");
    c_eval->add_option("--twist-index", eval.twist_index);
    c_eval->add_option("--additive-a", eval.add_a, "additive twist numerator");
    c_eval->add_option("--additive-q", eval.add_q);
    c_eval->add_option("--additive-r", eval.add_r);
    c_eval->callback([&] { run = [&] { return cmd_lfun_eval(eval_pair, eval, g); }; });

    PairArgs tv_pair;
    std::vector<int> tv_moduli{3, 7};
    auto* c_tv = app.add_subcommand("twist-verify", "functional-equation residuals on the standard grid");
    add_pair_options(c_tv, tv_pair);
    c_tv->add_option("--moduli", tv_moduli, "twist moduli");
    c_tv->callback([&] { run = [&] { return cmd_twist_verify(tv_pair, tv_moduli, g); }; });

    std::string ingest_src;
    long ingest_bound = 1000;
    auto* c_ing = app.add_subcommand("artin-ingest", "load and validate Euler factors");
    c_ing->add_option("--artin", ingest_src, "JSON file, LMFDB label, or 'demo'")->required();
    c_ing->add_option("--prime-bound", ingest_bound);
    c_ing->callback([&] { run = [&] { return cmd_artin_ingest(ingest_src, ingest_bound, g); }; });

    std::string quot_src;
    std::size_t quot_len = 500;
    auto* c_quot = app.add_subcommand("artin-quotient", "coefficients and gamma data of L(s, phi)/zeta(s)");
    c_quot->add_option("--artin", quot_src)->required();
    c_quot->add_option("--length", quot_len);
    c_quot->callback([&] { run = [&] { return cmd_artin_quotient(quot_src, quot_len, g); }; });

    double z_min = 0.0, z_max = 30.0, z_step = 0.05;
    bool z_plot = false;
    auto* c_zeros = app.add_subcommand("zeros", "critical-line zeros of zeta by sign changes of Z(t)");
    c_zeros->add_option("--t-min", z_min);
    c_zeros->add_option("--t-max", z_max);
    c_zeros->add_option("--step", z_step);
    c_zeros->add_flag("--plot", z_plot, "include (t, Z(t)) samples");
    c_zeros->callback([&] { run = [&] { return cmd_zeros(z_min, z_max, z_step, z_plot, g); }; });

    long vu = 1, vv = 4, vlevel = 1;
    int vm = 4, vt0 = 0;
    std::optional<double> vz_re;
    double vz_im = 0.0;
    auto* c_van = app.add_subcommand("converse-vandermonde", "exact weights on the first M members of T_beta");
    c_van->add_option("--u", vu);
    c_van->add_option("--v", vv);
    c_van->add_option("--level", vlevel);
    c_van->add_option("--M", vm);
    c_van->add_option("--t0", vt0);
    c_van->add_option("--z-re", vz_re, "solve the extended system with log target z");
    c_van->add_option("--z-im", vz_im);
    c_van->callback([&] { run = [&] { return cmd_vandermonde(vu, vv, vlevel, vm, vt0, vz_re, vz_im, g); }; });

    auto* c_conv = app.add_subcommand("converse-check", "modularity, expansion, Bessel-Mellin and residue checks");
    c_conv->callback([&] { run = [&] { return cmd_converse_check(g); }; });

    std::string cd_src, cd_zeros;
    std::size_t cd_len = 8000;
    double cd_root = 1.0, cd_a = 0.1;
    auto* c_cd = app.add_subcommand("cancellation-demo", "HEURISTIC: quotient values at zeta zeros");
    c_cd->add_option("--artin", cd_src)->required();
    c_cd->add_option("--zeros", cd_zeros, "JSON array of ordinates or a zeros report")->required();
    c_cd->add_option("--coeff-length", cd_len);
    c_cd->add_option("--root-number", cd_root, "w(phi), +1 or -1");
    c_cd->add_option("--kernel-a", cd_a);
    c_cd->callback([&] { run = [&] { return cmd_cancellation(cd_src, cd_zeros, cd_len, cd_root, cd_a, g); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const Report report = run();
        emit(report.to_json(), g);
        return report.all_pass() ? 0 : 1;
    } catch (const UsageError& e) {
        emit(error_json(command, e.kind, e.what()), g);
    } catch (const Error& e) {
        emit(error_json(command, e.kind(), e.detail()), g);
    } catch (const json::exception& e) {
        emit(error_json(command, "SchemaError", e.what()), g);
    } catch (const std::exception& e) {
        emit(error_json(command, "Error", e.what()), g);
    }
    return 2;
}
