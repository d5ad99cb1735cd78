#include "twistlab/lmfdb.hpp"

#include "twistlab/dirichlet.hpp"
#include "twistlab/errors.hpp"

#include "httplib.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace twistlab {

namespace fs = std::filesystem;

namespace {

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v && *v ? std::string(v) : fallback;
}

long as_long(const nlohmann::json& j, const char* field) {
    if (j.is_number_integer()) return j.get<long>();
    if (j.is_string()) {
        try {
            return std::stol(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw SchemaError(std::string("LMFDB field ") + field + " is not an integer");
}

nlohmann::json coefficient(const nlohmann::json& c) {
    if (c.is_number()) return {c.get<double>(), 0.0};
    if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) return c;
    throw SchemaError("LMFDB local factor coefficients must be numbers or [re, im] pairs");
}

// Index of the Galois conjugate named by the last label component: a, b, ..., z, ba, ...
std::size_t conjugate_index(const std::string& tag) {
    std::size_t k = 0;
    for (char ch : tag) k = k * 26 + std::size_t(ch - 'a');
    return k;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

bool valid_artin_label(const std::string& label) {
    static const std::regex re(R"(^[1-9][0-9]*\.[1-9][0-9]*\.[1-9][0-9]*t[1-9][0-9]*\.[a-z]+\.[a-z]+$)");
    return std::regex_match(label, re);
}

nlohmann::json lmfdb_record_to_schema(const nlohmann::json& record, const std::string& label, long prime_bound) {
    if (!record.is_object()) throw SchemaError("LMFDB record must be an object");
    for (const char* key : {"Dim", "Conductor", "BadPrimes", "GaloisConjugates", "TraceComplexConjugation"})
        if (!record.contains(key)) throw SchemaError(std::string("LMFDB record lacks ") + key);
    const long dim = as_long(record["Dim"], "Dim");
    const long conductor = as_long(record["Conductor"], "Conductor");
    const long trace_c = as_long(record["TraceComplexConjugation"], "TraceComplexConjugation");
    if ((dim + trace_c) % 2 != 0 || std::labs(trace_c) > dim)
        throw SchemaError("TraceComplexConjugation is inconsistent with Dim");

    nlohmann::json bad = nlohmann::json::array();
    for (const auto& p : record["BadPrimes"]) bad.push_back(as_long(p, "BadPrimes"));

    const auto& conj = record["GaloisConjugates"];
    const std::size_t idx = conjugate_index(label.substr(label.rfind('.') + 1));
    if (!conj.is_array() || idx >= conj.size()) throw UnknownLabel(label);
    const auto& local = conj[idx].value("LocalFactors", nlohmann::json::array());
    if (!local.is_array()) throw SchemaError("LocalFactors must be an array");

    nlohmann::json factors = nlohmann::json::object();
    std::size_t i = 0;
    for (long p = 2; p <= prime_bound && i < local.size(); ++p) {
        if (!is_prime(p)) continue;
        nlohmann::json poly = nlohmann::json::array();
        for (const auto& c : local[i++]) poly.push_back(coefficient(c));
        factors[std::to_string(p)] = poly;
    }
    return {{"dimension", dim},
            {"conductor", conductor},
            {"p_plus", (dim + trace_c) / 2},
            {"m_minus", (dim - trace_c) / 2},
            {"bad_primes", bad},
            {"factors", factors}};
}

std::string fetch_lmfdb(const std::string& label, long prime_bound, const LmfdbOptions& options) {
    if (!valid_artin_label(label)) throw UnknownLabel(label);
    const fs::path dir = options.cache_dir.empty() ? fs::path(env_or("TWISTLAB_CACHE_DIR", "cache"))
                                                   : fs::path(options.cache_dir);
    const fs::path cached = dir / (label + ".json");
    if (options.offline) {
        if (!fs::exists(cached)) throw CacheMiss(cached.string());
        return read_file(cached);
    }

    const std::string base =
        options.base_url.empty() ? env_or("TWISTLAB_LMFDB_URL", "https://www.lmfdb.org") : options.base_url;
    const std::string baselabel = label.substr(0, label.rfind('.'));
    httplib::Client client(base);
    client.set_connection_timeout(options.timeout_seconds, 0);
    client.set_read_timeout(options.timeout_seconds, 0);
    client.set_follow_location(true);
    auto res = client.Get("/api/artin_reps/?Baselabel=" + baselabel + "&_format=json");
    if (!res) throw NetworkError("request to " + base + " failed: " + httplib::to_string(res.error()));
    if (res->status == 404) throw UnknownLabel(label);
    if (res->status != 200) throw NetworkError("HTTP status " + std::to_string(res->status) + " from " + base);

    nlohmann::json body;
    try {
        body = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception&) {
        throw SchemaError("LMFDB response is not JSON");
    }
    const auto& data = body.contains("data") ? body["data"] : body;
    if (!data.is_array() || data.empty()) throw UnknownLabel(label);
    const std::string doc = lmfdb_record_to_schema(data[0], label, prime_bound).dump() + "\n";

    std::error_code ec;
    fs::create_directories(dir, ec);
    std::ofstream out(cached, std::ios::binary);
    out << doc;
    return doc;
}

}  // namespace twistlab
