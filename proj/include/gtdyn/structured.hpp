#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtdyn/development.hpp"
#include "gtdyn/metric.hpp"
#include "gtdyn/set_system.hpp"

namespace gtdyn {

/// A development together with the structuring it is analyzed against, plus
/// an optional distance table. The central value of the library.
struct StructuredSystem {
    Development dev;
    SetSystem structuring;
    std::optional<MetricTable> metric;
    std::vector<std::string> labels;

    int universe_size() const { return dev.universe_size(); }
    bool bijective() const { return dev.bijective(); }

    const MetricTable& metric_or_throw() const {
        if (!metric) throw NoMetric("analysis needs a distance table");
        return *metric;
    }
};

/// Validating constructor; classifies bijectivity and rejects non-covering
/// structurings and malformed metrics.
inline StructuredSystem build(int universe_size, std::vector<int> generator_table,
                              SetSystem structuring,
                              std::optional<MetricTable> metric = std::nullopt,
                              std::vector<std::string> labels = {}) {
    if (static_cast<int>(generator_table.size()) != universe_size)
        throw OutOfRange("generator table length != universe size");
    Development dev(std::move(generator_table));
    if (structuring.universe_size != universe_size)
        throw CoverViolation("structuring universe mismatch");
    if (!structuring.covers()) throw CoverViolation("structuring does not cover the universe");
    if (metric) {
        if (metric->n != universe_size) throw MetricShape("metric size mismatch");
        if (!metric->symmetric) throw MetricShape("metric not symmetric");
        for (int i = 0; i < universe_size; ++i)
            if ((*metric)(i, i) != 0.0) throw MetricShape("metric diagonal not zero");
        if (!metric->diag_minimal) throw MetricShape("diagonal minimality violated");
    }
    return StructuredSystem{std::move(dev), std::move(structuring), std::move(metric),
                            std::move(labels)};
}

/// Restriction of a system to a forward-invariant region, states renumbered
/// in increasing order of the original indices.
inline StructuredSystem restrict_system(const StructuredSystem& s, const Subset& region) {
    auto states = region.members();
    const int m = static_cast<int>(states.size());
    std::vector<int> local(s.universe_size(), -1);
    for (int i = 0; i < m; ++i) local[states[i]] = i;
    for (int z : states)
        if (local[s.dev.step(z)] < 0) throw NotInvariant("region not invariant under generator");
    std::vector<int> gen(m);
    for (int i = 0; i < m; ++i) gen[i] = local[s.dev.step(states[i])];
    std::vector<Subset> trace;
    for (const auto& a : s.structuring.sets) {
        Subset t(m);
        bool any = false;
        a.for_each([&](int z) {
            if (local[z] >= 0) {
                t.insert(local[z]);
                any = true;
            }
        });
        if (any) trace.push_back(t);
    }
    std::optional<MetricTable> metric;
    if (s.metric) metric = s.metric->restrict_to(states);
    return StructuredSystem{Development(std::move(gen)),
                            SetSystem(m, std::move(trace)), std::move(metric), s.labels};
}

}  // namespace gtdyn
