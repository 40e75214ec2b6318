#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gtdyn/structured.hpp"

namespace gtdyn {

/// Instance file schema, format_version "1":
/// { "format_version": "1", "universe": n, "sets": [[...],...],
///   "map": [...], "metric": [[...],...] | null, "labels": [...] }
inline StructuredSystem parse_instance(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw ParseError("instance is not an object");
        if (j.value("format_version", "") != "1")
            throw ParseError("unsupported format_version");
        int n = j.at("universe").get<int>();
        if (n <= 0) throw ParseError("universe must be positive");
        std::vector<std::vector<int>> sets = j.at("sets").get<std::vector<std::vector<int>>>();
        for (const auto& s : sets)
            for (int m : s)
                if (m < 0 || m >= n) throw OutOfRange("set member out of range");
        std::vector<int> map = j.at("map").get<std::vector<int>>();
        std::optional<MetricTable> metric;
        if (j.contains("metric") && !j.at("metric").is_null()) {
            auto rows = j.at("metric").get<std::vector<std::vector<double>>>();
            if (static_cast<int>(rows.size()) != n) throw MetricShape("metric rows");
            std::vector<double> flat;
            flat.reserve(static_cast<std::size_t>(n) * n);
            for (const auto& r : rows) {
                if (static_cast<int>(r.size()) != n) throw MetricShape("metric cols");
                flat.insert(flat.end(), r.begin(), r.end());
            }
            metric = MetricTable(n, std::move(flat));
        }
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        return build(n, std::move(map), SetSystem::of(n, sets), std::move(metric),
                     std::move(labels));
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("malformed instance: ") + e.what());
    }
}

inline StructuredSystem parse_instance_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON");
    return parse_instance(j);
}

inline StructuredSystem load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance_text(ss.str());
}

/// Canonical emission: normalized sets, metric written back verbatim.
inline nlohmann::json emit_instance(const StructuredSystem& s) {
    nlohmann::json j;
    j["format_version"] = "1";
    j["universe"] = s.universe_size();
    nlohmann::json sets = nlohmann::json::array();
    for (const auto& set : s.structuring.sets) sets.push_back(set.members());
    j["sets"] = sets;
    j["map"] = s.dev.generator();
    if (s.metric) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < s.metric->n; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int k = 0; k < s.metric->n; ++k) row.push_back((*s.metric)(i, k));
            rows.push_back(row);
        }
        j["metric"] = rows;
    } else {
        j["metric"] = nullptr;
    }
    j["labels"] = s.labels;
    return j;
}

inline std::string emit_instance_text(const StructuredSystem& s) {
    return emit_instance(s).dump(2);
}

inline void save_instance(const StructuredSystem& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << emit_instance_text(s) << "\n";
}

}  // namespace gtdyn
