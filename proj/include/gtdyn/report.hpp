#pragma once

#include <string>

#include <json.hpp>

namespace gtdyn {

/// Typed analysis result. Canonical serialization drops the timing field so
/// equal inputs produce byte-identical reports.
struct AnalysisReport {
    std::string analysis;
    nlohmann::json verdicts = nlohmann::json::object();
    nlohmann::json witnesses = nlohmann::json::object();
    double scale = 0.0;
    bool unknown = false;
    double timing_ms = 0.0;

    nlohmann::json to_json(bool include_timing = true) const {
        nlohmann::json j;
        j["analysis"] = analysis;
        j["verdicts"] = verdicts;
        j["witnesses"] = witnesses;
        j["scale"] = scale;
        j["unknown"] = unknown;
        if (include_timing) j["timing_ms"] = timing_ms;
        return j;
    }

    std::string canonical() const { return to_json(false).dump(2); }
};

}  // namespace gtdyn
