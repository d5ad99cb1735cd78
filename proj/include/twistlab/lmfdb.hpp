#pragma once

#include "json.hpp"

#include <string>

namespace twistlab {

struct LmfdbOptions {
    std::string base_url;   // empty: TWISTLAB_LMFDB_URL, else https://www.lmfdb.org
    std::string cache_dir;  // empty: TWISTLAB_CACHE_DIR, else ./cache
    bool offline = false;
    int timeout_seconds = 20;
};

/// Labels of the form <dim>.<conductor>.<n>t<k>.<orbit>.<conjugate>.
bool valid_artin_label(const std::string& label);

/// Converts one record of the artin_reps API to the Euler-factor schema,
/// keeping factors at primes <= prime_bound.
nlohmann::json lmfdb_record_to_schema(const nlohmann::json& record, const std::string& label, long prime_bound);

/// Euler-factor document for an Artin representation. Online fetches are
/// written to <cache_dir>/<label>.json; offline mode serves that file verbatim.
std::string fetch_lmfdb(const std::string& label, long prime_bound, const LmfdbOptions& options = {});

}  // namespace twistlab
