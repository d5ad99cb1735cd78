#pragma once

#include "twistlab/specfun.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace twistlab {

struct Check {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass() const { return residual <= tolerance; }
};

/// Output of one CLI command: inputs echoed, structured results and checks.
struct Report {
    std::string command;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json results = nlohmann::json::object();
    std::vector<Check> checks;

    void add_check(const std::string& name, double residual, double tolerance);
    bool all_pass() const;
    nlohmann::json to_json() const;
};

/// {"re", "im", "err"} object.
nlohmann::json value_json(const ComplexValue& v);
nlohmann::json value_json(cplx v);

/// Deterministic serialization: object keys sorted, numbers as %.17g,
/// non-finite numbers as null, two-space indentation.
std::string dump_json(const nlohmann::json& j);

/// {"command", "error": {"kind", "message"}} for exit code 2.
nlohmann::json error_json(const std::string& command, const std::string& kind, const std::string& message);

}  // namespace twistlab
