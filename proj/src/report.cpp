#include "twistlab/report.hpp"

#include <cmath>
#include <cstdio>

namespace twistlab {

namespace {

std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

void dump_into(const nlohmann::json& j, int indent, std::string& out) {
    const std::string pad(std::size_t(indent + 2), ' ');
    const std::string close(std::size_t(indent), ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            // nlohmann's default object is an ordered std::map, so keys come sorted.
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad + nlohmann::json(it.key()).dump() + ": ";
                dump_into(it.value(), indent + 2, out);
            }
            out += "\n" + close + "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += pad;
                dump_into(j[i], indent + 2, out);
            }
            out += "\n" + close + "]";
            return;
        }
        case nlohmann::json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    }
}

}  // namespace

void Report::add_check(const std::string& name, double residual, double tolerance) {
    checks.push_back({name, residual, tolerance});
}

bool Report::all_pass() const {
    for (const Check& c : checks)
        if (!c.pass()) return false;
    return true;
}

nlohmann::json Report::to_json() const {
    nlohmann::json cs = nlohmann::json::array();
    for (const Check& c : checks)
        cs.push_back({{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass()}});
    return {{"command", command}, {"inputs", inputs}, {"results", results}, {"checks", cs}, {"pass", all_pass()}};
}

nlohmann::json value_json(const ComplexValue& v) { return {{"re", v.re}, {"im", v.im}, {"err", v.err}}; }

nlohmann::json value_json(cplx v) { return {{"re", v.real()}, {"im", v.imag()}}; }

std::string dump_json(const nlohmann::json& j) {
    std::string out;
    dump_into(j, 0, out);
    out += "\n";
    return out;
}

nlohmann::json error_json(const std::string& command, const std::string& kind, const std::string& message) {
    return {{"command", command}, {"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace twistlab
