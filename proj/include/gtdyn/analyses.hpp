#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gtdyn/coloc.hpp"
#include "gtdyn/comanence.hpp"
#include "gtdyn/hierarchy.hpp"
#include "gtdyn/intrinsic.hpp"
#include "gtdyn/metric_sensitivity.hpp"
#include "gtdyn/report.hpp"

namespace gtdyn {

struct AnalyzeOptions {
    int t_cap = kDefaultTimeCap;
    int depth_cap = 4;
    double scale = 0.0;  // 0: use the attained grid scale
};

namespace detail {

inline nlohmann::json subset_json(const Subset& s) { return s.members(); }

inline double field_value_json_safe(double v) {
    return std::isfinite(v) ? v : -1.0e308;  // JSON has no -inf
}

}  // namespace detail

/// Per-trajectory-region probe of the resolution field: spread versus region
/// diameter, at grid scale. An empirical probe only, never a theorem claim.
inline AnalysisReport max_sensitivity_probe(const StructuredSystem& s,
                                            AnalyzeOptions opts = {}) {
    AnalysisReport rep;
    rep.analysis = "probe";
    s.metric_or_throw();  // fail early when no distance table is present
    std::vector<Subset> regions;
    if (s.bijective()) {
        for (const auto& h : trajectory_hulls(s).hulls) regions.push_back(h);
    } else {
        for (const auto& c : s.dev.weak_components())
            regions.push_back(closure(s.structuring, c));
    }
    nlohmann::json out = nlohmann::json::array();
    for (const auto& region : regions) {
        StructuredSystem sub = restrict_system(s, region);
        const MetricTable& m = sub.metric_or_throw();
        double h = opts.scale > 0 ? opts.scale : m.grid_scale();
        nlohmann::json r;
        r["region"] = detail::subset_json(region);
        if (!std::isfinite(h) || sub.universe_size() < 2) {
            r["applicable"] = false;
            out.push_back(r);
            continue;
        }
        ResolutionField f = resolution_field(sub.dev, m, m, h);
        double lo = std::numeric_limits<double>::infinity(), hi = kNegInf;
        int singular = 0;
        for (double v : f.value) {
            if (v == kNegInf) {
                ++singular;
                continue;
            }
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        double diam = m.diameter();
        bool applicable = singular < sub.universe_size();
        r["applicable"] = applicable;
        r["scale"] = h;
        r["diameter"] = diam;
        r["singular_states"] = singular;
        if (applicable) {
            r["field_min"] = lo;
            r["field_max"] = hi;
            r["constant_at_scale"] = (singular == 0) && (hi - lo <= h);
            bool eq = singular == 0;
            for (double v : f.value) eq = eq && std::abs(v - diam) <= 2 * h;
            r["equals_diameter_at_scale"] = eq;
        }
        out.push_back(r);
        rep.scale = h;
    }
    rep.verdicts["kind"] = "conjecture_probe";
    rep.verdicts["regions"] = out;
    return rep;
}

/// Dispatch for the named analyses of the command line.
inline AnalysisReport analyze(const StructuredSystem& s, const std::string& which,
                              AnalyzeOptions opts = {}) {
    auto start = std::chrono::steady_clock::now();
    AnalysisReport rep;
    rep.analysis = which;
    const int n = s.universe_size();

    if (which == "closure") {
        rep.verdicts["covering"] = s.structuring.covers();
        rep.verdicts["deterministic"] = is_deterministic(s.structuring);
        rep.verdicts["hausdorff_separation"] = has_hausdorff_separation(s.structuring);
        nlohmann::json halos = nlohmann::json::array();
        for (int z = 0; z < n; ++z) halos.push_back(detail::subset_json(halo(s.structuring, z)));
        rep.witnesses["halos"] = halos;
        if (n <= kDefaultBruteForceCap) {
            nlohmann::json cs = nlohmann::json::array();
            for (const auto& c : closed_sets(s.structuring))
                cs.push_back(detail::subset_json(c));
            rep.witnesses["closed_sets"] = cs;
        }
    } else if (which == "commutator") {
        PowerScan ps = power_scan(s.dev, opts.t_cap);
        rep.unknown = ps.capped;
        nlohmann::json ws = nlohmann::json::array();
        bool any = false;
        for (int t = 1; t < ps.count(); ++t) {
            auto w = witness_for_map(s.structuring, ps.maps[t], s.bijective());
            if (w) {
                any = true;
                nlohmann::json e;
                e["time"] = t;
                e["set"] = detail::subset_json(s.structuring.sets[w->set_index]);
                e["direction"] = w->direction;
                e["complement_form"] = w->complement_form;
                e["image"] = detail::subset_json(w->witness_image);
                ws.push_back(e);
            }
        }
        rep.verdicts["witness_found"] = any;
        rep.witnesses["localizations"] = ws;
    } else if (which == "cantor") {
        PowerScan ps = power_scan(s.dev, opts.t_cap);
        rep.unknown = ps.capped;
        bool all = true;
        long long first_bad = -1;
        for (int t = 0; t < ps.count(); ++t)
            if (!cantor_continuous(s.structuring, ps.maps[t])) {
                all = false;
                if (first_bad < 0) first_bad = t;
            }
        rep.verdicts["cantor_continuous_at_all_t"] = all;
        rep.verdicts["first_discontinuous_t"] = first_bad;
    } else if (which == "setwise") {
        SetwiseVerdict v = setwise_sensitivity(s, opts.t_cap);
        rep.verdicts["grade0"] = v.grade0;
        rep.verdicts["unbounded"] = v.unbounded;
        rep.unknown = v.unknown;
        nlohmann::json ws = nlohmann::json::array();
        for (const auto& w : v.witnesses) {
            nlohmann::json e;
            e["time"] = w.time;
            e["set_index"] = w.set_index;
            e["direction"] = w.direction;
            e["complement_form"] = w.complement_form;
            e["confirming_set"] = detail::subset_json(w.confirming_set);
            ws.push_back(e);
        }
        rep.witnesses["witnesses"] = ws;
    } else if (which == "sord") {
        OrderVerdict v = s_ord(s, {opts.t_cap, opts.depth_cap});
        rep.verdicts["sensitive"] = v.sensitive;
        rep.verdicts["order"] = v.order;
        rep.unknown = v.capped;
    } else if (which == "fixed") {
        nlohmann::json per = nlohmann::json::array();
        bool any = false;
        for (int z = 0; z < n; ++z) {
            FixedSensitivityVerdict v = fixed_sensitive_at(s, z);
            per.push_back(v.sensitive);
            if (v.sensitive && !any) {
                any = true;
                nlohmann::json w;
                w["state"] = z;
                w["pair"] = {detail::subset_json(s.structuring.sets[v.pair_first]),
                             detail::subset_json(s.structuring.sets[v.pair_second])};
                nlohmann::json entries = nlohmann::json::array();
                for (const auto& e : v.witnesses)
                    entries.push_back({{"localization", e.localization},
                                       {"x", e.x},
                                       {"y", e.y},
                                       {"time", e.time}});
                w["per_localization"] = entries;
                rep.witnesses["first"] = w;
            }
        }
        rep.verdicts["sensitive_anywhere"] = any;
        rep.verdicts["per_state"] = per;
    } else if (which == "quantified") {
        nlohmann::json per = nlohmann::json::array();
        bool any = false;
        for (int z = 0; z < n; ++z) {
            QuantifiedVerdict v = quantified_sensitive_at(s, PairDistanceKind::Hausdorff, z);
            per.push_back({{"sensitive", v.sensitive}, {"delta", v.delta}});
            any = any || v.sensitive;
        }
        rep.verdicts["sensitive_anywhere"] = any;
        rep.verdicts["per_state"] = per;
    } else if (which == "intrinsic") {
        nlohmann::json per = nlohmann::json::array();
        for (int z = 0; z < n; ++z) {
            IntrinsicVerdict v = intrinsic_sensitivity(s.dev, z);
            per.push_back({{"fixed", v.fixed},
                           {"unfixed", v.unfixed},
                           {"fiber_time", v.fiber_time},
                           {"fiber_period", v.fiber_period}});
        }
        rep.verdicts["per_state"] = per;
    } else if (which == "coloc") {
        ColocSets c = coloc_sets(s);
        rep.verdicts["coloc"] = detail::subset_json(c.coloc);
        rep.verdicts["coloc0"] = detail::subset_json(c.coloc0);
        rep.verdicts["coloc_plus"] = detail::subset_json(c.coloc_plus);
        nlohmann::json ws = nlohmann::json::array();
        for (const auto& v : c.plus_witnesses) {
            nlohmann::json e;
            e["omega"] = v.omega;
            e["z"] = v.z;
            e["y"] = v.y;
            e["separator_z"] = detail::subset_json(s.structuring.sets[v.separator_z]);
            e["separator_y"] = detail::subset_json(s.structuring.sets[v.separator_y]);
            nlohmann::json times = nlohmann::json::array();
            for (const auto& tw : v.times)
                times.push_back({{"localization", tw.localization},
                                 {"residue", tw.residue},
                                 {"modulus", tw.modulus}});
            e["times"] = times;
            ws.push_back(e);
        }
        rep.witnesses["plus"] = ws;
        EquivalenceReport eq = equivalence_classes(s);
        rep.verdicts["is_equivalence"] = eq.is_equivalence;
        rep.verdicts["reflexivity_domain"] = detail::subset_json(eq.reflexivity_domain);
        nlohmann::json classes = nlohmann::json::array();
        for (const auto& cl : eq.classes) classes.push_back(detail::subset_json(cl));
        rep.verdicts["classes"] = classes;
        rep.verdicts["ultimate"] = ultimate_sensitivity(s);
        rep.verdicts["dissociation"] = to_string(dissociation_report(s));
    } else if (which == "statewise") {
        Subset plain = statewise_sensitive_states(s, false, opts.t_cap);
        Subset separated = statewise_sensitive_states(s, true, opts.t_cap);
        rep.verdicts["states"] = detail::subset_json(plain);
        rep.verdicts["states_separated"] = detail::subset_json(separated);
        nlohmann::json ws = nlohmann::json::array();
        plain.for_each([&](int omega) {
            auto w = statewise_sensitive_at(s, omega, false, opts.t_cap);
            if (!w) return;
            nlohmann::json e;
            e["omega"] = w->omega;
            e["uniform_time"] = w->uniform_time;
            e["uniform_localization"] = w->uniform_localization;
            nlohmann::json ps = nlohmann::json::array();
            for (const auto& p : w->pairs)
                ps.push_back({{"localization", p.localization}, {"z", p.z}, {"y", p.y}});
            e["pairs"] = ps;
            ws.push_back(e);
        });
        rep.witnesses["states"] = ws;
    } else if (which == "comanence") {
        const MetricTable& m = s.metric_or_throw();
        rep.verdicts["internally_comanent"] = internally_comanent(s);
        auto scales = m.scales();
        std::vector<double> deltas;
        for (std::size_t i = 0; i < scales.size();
             i += std::max<std::size_t>(1, scales.size() / 4))
            deltas.push_back(scales[i]);
        std::vector<long long> ts = {0, 1, 2, 4};
        nlohmann::json table = nlohmann::json::array();
        for (double del : deltas)
            for (long long t : ts) {
                double b = comanence_value(s.dev, m, m, del, t);
                table.push_back({{"delta", del},
                                 {"t", t},
                                 {"value", detail::field_value_json_safe(b)}});
            }
        rep.verdicts["comanent"] = is_comanent(s.dev, m, m, deltas, ts);
        rep.witnesses["table"] = table;
    } else if (which == "converse") {
        rep.verdicts["converse_comanent_gaussian"] =
            conversely_comanent(s, gaussian_distance());
        rep.verdicts["converse_comanent_hausdorff"] =
            conversely_comanent(s, hausdorff_distance());
    } else if (which == "probe") {
        rep = max_sensitivity_probe(s, opts);
    } else {
        throw BadParams("unknown analysis: " + which);
    }

    if (s.metric) rep.scale = s.metric->grid_scale();
    auto end = std::chrono::steady_clock::now();
    rep.timing_ms = std::chrono::duration<double, std::milli>(end - start).count();
    return rep;
}

/// Replays the typed witnesses of a report through the core operations;
/// reports are self-verifying. Returns false on any mismatch.
inline bool verify_report(const StructuredSystem& s, const AnalysisReport& rep) {
    try {
        if (rep.analysis == "setwise") {
            for (const auto& w : rep.witnesses.value("witnesses", nlohmann::json::array())) {
                long long t = w.at("time").get<long long>();
                Subset x = Subset::of(s.universe_size(),
                                      w.at("confirming_set").get<std::vector<int>>());
                int qi = w.at("set_index").get<int>();
                if (qi >= 0) {
                    int dir = w.at("direction").get<int>();
                    bool comp = w.value("complement_form", false);
                    auto phi = power_table(s.dev, t);
                    Subset base = comp ? s.structuring.sets[qi].complement()
                                       : s.structuring.sets[qi];
                    Subset img = dir > 0 ? map_image(phi, base) : map_preimage(phi, base);
                    bool ok = comp ? !is_closed(s.structuring, img)
                                   : is_localization_free(s.structuring, img);
                    if (!ok) return false;
                }
                if (commutator_apply(s, t, x).empty()) return false;
            }
            return true;
        }
        if (rep.analysis == "fixed") {
            if (!rep.witnesses.contains("first")) return true;
            const auto& w = rep.witnesses.at("first");
            Subset X = Subset::of(s.universe_size(), w.at("pair")[0].get<std::vector<int>>());
            Subset Y = Subset::of(s.universe_size(), w.at("pair")[1].get<std::vector<int>>());
            if (X.intersects(Y)) return false;
            for (const auto& e : w.at("per_localization")) {
                long long t = e.at("time").get<long long>();
                if (!X.contains(s.dev.evolve(e.at("x").get<int>(), t))) return false;
                if (!Y.contains(s.dev.evolve(e.at("y").get<int>(), t))) return false;
            }
            return true;
        }
        if (rep.analysis == "coloc") {
            for (const auto& e : rep.witnesses.value("plus", nlohmann::json::array())) {
                int z = e.at("z").get<int>(), y = e.at("y").get<int>();
                for (const auto& tw : e.at("times")) {
                    const Subset& l =
                        s.structuring
                            .sets[static_cast<std::size_t>(tw.at("localization").get<int>())];
                    long long r = tw.at("residue").get<long long>();
                    long long m = tw.at("modulus").get<long long>();
                    for (long long k : {-1LL, 0LL, 1LL}) {
                        if (!l.contains(s.dev.evolve(z, r + k * m))) return false;
                        if (!l.contains(s.dev.evolve(y, r + k * m))) return false;
                    }
                }
            }
            return true;
        }
        if (rep.analysis == "statewise") {
            for (const auto& e : rep.witnesses.value("states", nlohmann::json::array())) {
                long long t = e.at("uniform_time").get<long long>();
                int li = e.at("uniform_localization").get<int>();
                const Subset& lstar = s.structuring.sets[static_cast<std::size_t>(li)];
                if (!lstar.contains(s.dev.evolve(e.at("omega").get<int>(), t))) return false;
                for (const auto& p : e.at("pairs")) {
                    if (lstar.contains(s.dev.evolve(p.at("z").get<int>(), t))) return false;
                    if (lstar.contains(s.dev.evolve(p.at("y").get<int>(), t))) return false;
                }
            }
            return true;
        }
        return true;  // analyses without typed witnesses
    } catch (const nlohmann::json::exception&) {
        return false;
    }
}

/// CSV projection of a report: analysis-specific key/value rows.
inline std::string report_to_csv(const AnalysisReport& rep) {
    std::string out = "key,value\n";
    out += "analysis," + rep.analysis + "\n";
    std::function<void(const std::string&, const nlohmann::json&)> walk =
        [&](const std::string& prefix, const nlohmann::json& j) {
            if (j.is_object()) {
                for (auto it = j.begin(); it != j.end(); ++it)
                    walk(prefix.empty() ? it.key() : prefix + "." + it.key(), it.value());
            } else if (j.is_array()) {
                for (std::size_t i = 0; i < j.size(); ++i)
                    walk(prefix + "[" + std::to_string(i) + "]", j[i]);
            } else {
                out += prefix + "," + j.dump() + "\n";
            }
        };
    walk("", rep.verdicts);
    out += "unknown," + std::string(rep.unknown ? "true" : "false") + "\n";
    return out;
}

}  // namespace gtdyn
