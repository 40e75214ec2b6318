#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gtdyn/structured.hpp"

namespace gtdyn {

inline Subset map_image(const std::vector<int>& m, const Subset& x) {
    Subset out(static_cast<int>(m.size()));
    x.for_each([&](int z) { out.insert(m[z]); });
    return out;
}

inline Subset map_preimage(const std::vector<int>& m, const Subset& x) {
    Subset out(static_cast<int>(m.size()));
    for (int z = 0; z < static_cast<int>(m.size()); ++z)
        if (x.contains(m[z])) out.insert(z);
    return out;
}

inline constexpr int kDefaultTimeCap = 4096;

/// The distinct powers of the generator, as state maps. For invertible
/// generators the power sequence is a pure cycle of length cycle_lcm; in
/// general it is eventually periodic. Maps with index >= preperiod recur at
/// arbitrarily large times.
struct PowerScan {
    std::vector<std::vector<int>> maps;  // maps[t] = table of the t-th power
    int preperiod = 0;
    int period = 1;
    bool capped = false;

    int count() const { return static_cast<int>(maps.size()); }
    bool recurrent(int t) const { return t >= preperiod; }
};

inline PowerScan power_scan(const Development& d, int cap = kDefaultTimeCap) {
    PowerScan ps;
    const int n = d.universe_size();
    std::vector<int> cur(n);
    for (int i = 0; i < n; ++i) cur[i] = i;
    std::map<std::vector<int>, int> seen;
    for (int t = 0;; ++t) {
        auto it = seen.find(cur);
        if (it != seen.end()) {
            ps.preperiod = it->second;
            ps.period = t - it->second;
            return ps;
        }
        if (t >= cap) {
            ps.capped = true;
            ps.preperiod = t;
            ps.period = 1;
            return ps;
        }
        seen.emplace(cur, t);
        ps.maps.push_back(cur);
        std::vector<int> next(n);
        for (int i = 0; i < n; ++i) next[i] = d.step(cur[i]);
        cur = std::move(next);
    }
}

/// Table of the map ξ^t. Negative t needs an invertible generator.
inline std::vector<int> power_table(const Development& d, long long t) {
    const int n = d.universe_size();
    if (t < 0 && !d.bijective())
        throw NegativeTimeUnsupported("negative power of a non-invertible generator");
    std::vector<int> m(n);
    for (int z = 0; z < n; ++z) m[z] = d.evolve(z, t);
    return m;
}

/// Cantor continuity of a map against a structuring: every nonempty
/// localization's preimage houses a nonempty localization.
inline bool cantor_continuous(const SetSystem& a, const std::vector<int>& phi) {
    for (const auto& p : a.sets) {
        if (p.empty()) continue;
        Subset pre = map_preimage(phi, p);
        bool found = false;
        for (const auto& q : a.sets)
            if (!q.empty() && q.is_subset_of(pre)) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

inline bool is_cantor_continuous(const StructuredSystem& s, long long t) {
    return cantor_continuous(s.structuring, power_table(s.dev, t));
}

/// Cantor continuity of the restriction of phi^e (e = +1 the map itself,
/// e = -1 its set-valued inverse) to L, evaluated against the trace
/// structuring A | L. The inverse direction's preimages are forward images.
inline bool restricted_cantor_continuous(const SetSystem& a, const std::vector<int>& phi,
                                         int e, const Subset& l) {
    for (const auto& raw : a.sets) {
        Subset p = raw & l;
        if (p.empty()) continue;
        Subset pre = (e > 0 ? map_preimage(phi, p) : map_image(phi, p)) & l;
        bool found = false;
        for (const auto& raw_q : a.sets) {
            Subset q = raw_q & l;
            if (!q.empty() && q.is_subset_of(pre)) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

/// Closure/flow commutator at time t applied to X:
/// cl(phi X) symmetric-difference phi(cl X).
inline Subset commutator_apply(const StructuredSystem& s, long long t, const Subset& x) {
    auto phi = power_table(s.dev, t);
    Subset lhs = closure(s.structuring, map_image(phi, x));
    Subset rhs = map_image(phi, closure(s.structuring, x));
    return lhs ^ rhs;
}

struct LocalizationWitness {
    int set_index;         // Q in the structuring
    int direction;         // +1: the image side, -1: the preimage side
    bool complement_form;  // see below
    Subset witness_image;
};

inline bool is_closed(const SetSystem& a, const Subset& x) { return closure(a, x) == x; }

/// Search for a witness against closure/flow commutation at one time step.
/// Primary form: a localization whose image or preimage is localization-
/// free. That form is not complete on arbitrary coverings: commutation of an
/// invertible map is equivalent to the map permuting the closed sets, and a
/// complement of a localization can lose closedness while every localization
/// image still houses localizations. The complement form covers exactly the
/// remaining cases, so for invertible generators witness-or-none decides
/// commutation.
inline std::optional<LocalizationWitness> witness_for_map(const SetSystem& a,
                                                          const std::vector<int>& phi,
                                                          bool invertible) {
    auto un_form = [&]() -> std::optional<LocalizationWitness> {
        for (int qi = 0; qi < static_cast<int>(a.sets.size()); ++qi) {
            const Subset& q = a.sets[qi];
            if (q.empty()) continue;
            for (int dir : {+1, -1}) {
                Subset w = dir > 0 ? map_image(phi, q) : map_preimage(phi, q);
                if (is_localization_free(a, w))
                    return LocalizationWitness{qi, dir, false, w};
            }
        }
        return std::nullopt;
    };
    if (!invertible) return un_form();
    // exact decision: commutation fails iff some complement member loses
    // closedness under the map or its inverse
    std::optional<LocalizationWitness> comp;
    for (int qi = 0; qi < static_cast<int>(a.sets.size()) && !comp; ++qi) {
        Subset d = a.sets[qi].complement();
        if (d.empty()) continue;  // the excluded empty complement member
        for (int dir : {+1, -1}) {
            Subset w = dir > 0 ? map_image(phi, d) : map_preimage(phi, d);
            if (!is_closed(a, w)) {
                comp = LocalizationWitness{qi, dir, true, w};
                break;
            }
        }
    }
    if (!comp) return std::nullopt;
    if (auto u = un_form()) return u;  // report the stronger shape when it exists
    return comp;
}

inline std::optional<LocalizationWitness> find_sensitive_localization(
    const StructuredSystem& s, long long t) {
    return witness_for_map(s.structuring, power_table(s.dev, t), s.bijective());
}

struct TrajectoryHulls {
    std::vector<Subset> hulls;        // deduplicated closures of trajectories
    std::vector<int> hull_of;         // basis index -> hull index
    bool partition = false;
    std::vector<bool> isolated;       // hull meets no other hull
};

/// Closure of every trajectory. The hull family partitions the state space
/// exactly when the flow is everywhere commutation-free; isolated hulls are
/// the ones that meet no other hull.
inline TrajectoryHulls trajectory_hulls(const StructuredSystem& s) {
    if (!s.bijective())
        throw NegativeTimeUnsupported("trajectory hulls need two-sided trajectories");
    TrajectoryHulls out;
    for (const auto& tau : s.dev.trajectories()) {
        Subset h = closure(s.structuring, tau);
        int idx = -1;
        for (int i = 0; i < static_cast<int>(out.hulls.size()); ++i)
            if (out.hulls[i] == h) idx = i;
        if (idx < 0) {
            idx = static_cast<int>(out.hulls.size());
            out.hulls.push_back(h);
        }
        out.hull_of.push_back(idx);
    }
    SetSystem fam(s.universe_size(), out.hulls);
    out.partition = is_partition(fam, Subset::full_set(s.universe_size()));
    out.isolated.assign(out.hulls.size(), true);
    for (std::size_t i = 0; i < out.hulls.size(); ++i)
        for (std::size_t j = 0; j < out.hulls.size(); ++j)
            if (i != j && out.hulls[i].intersects(out.hulls[j])) out.isolated[i] = false;
    return out;
}

/// Every localization once met by an orbit is met again at arbitrarily
/// large times in both directions. Decided on orbit cycles.
inline bool is_poincare(const StructuredSystem& s) {
    if (!s.bijective()) throw NotADevelopment("recurrence predicate needs a development");
    for (int z = 0; z < s.universe_size(); ++z) {
        Subset orbit(s.universe_size());
        for (int c : s.dev.orbit(z).cycle) orbit.insert(c);
        for (const auto& l : s.structuring.sets) {
            if (!l.intersects(orbit)) continue;
            if (s.dev.time_preimage(z, l).eventually_empty()) return false;
        }
    }
    return true;
}

/// Additionally every nonempty localization is met by every orbit,
/// infinitely often.
inline bool is_global_poincare(const StructuredSystem& s) {
    if (!is_poincare(s)) return false;
    for (int z = 0; z < s.universe_size(); ++z)
        for (const auto& l : s.structuring.sets) {
            if (l.empty()) continue;
            if (s.dev.time_preimage(z, l).eventually_empty()) return false;
        }
    return true;
}

}  // namespace gtdyn
