#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "gtdyn/flow_analysis.hpp"
#include "gtdyn/periodic_set.hpp"
#include "gtdyn/structured.hpp"

namespace gtdyn {

inline constexpr long long kDilationComboCap = 200000;

/// Orbit segment { xi(z, s) : s between 0 and t }.
inline Subset orbit_segment(const Development& d, int z, long long t) {
    Subset seg(d.universe_size());
    long long lo = std::min<long long>(0, t), hi = std::max<long long>(0, t);
    for (long long s = lo; s <= hi; ++s) seg.insert(d.evolve(z, s));
    return seg;
}

/// The t-dilated neighbourhoods of z: unions of one localization choice per
/// segment state. Only inclusion-minimal unions are enumerated; every
/// general covering union contains one of them, so universally quantified
/// uses are unaffected.
inline std::vector<Subset> dilated_neighborhoods(const StructuredSystem& s, int z,
                                                 long long t) {
    Subset seg = orbit_segment(s.dev, z, t);
    std::vector<std::vector<const Subset*>> choices;
    long long combos = 1;
    seg.for_each([&](int st) {
        choices.emplace_back();
        for (const auto& a : s.structuring.sets)
            if (a.contains(st)) choices.back().push_back(&a);
        combos *= static_cast<long long>(choices.back().size());
        if (combos > kDilationComboCap || combos <= 0) combos = kDilationComboCap + 1;
    });
    if (combos > kDilationComboCap)
        throw CapExceeded("dilated neighbourhoods: too many covering selections");
    std::vector<Subset> unions;
    std::vector<std::size_t> idx(choices.size(), 0);
    while (true) {
        Subset u(s.universe_size());
        for (std::size_t i = 0; i < choices.size(); ++i) u = u | *choices[i][idx[i]];
        unions.push_back(u);
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    std::sort(unions.begin(), unions.end());
    unions.erase(std::unique(unions.begin(), unions.end()), unions.end());
    std::vector<Subset> minimal;
    for (const auto& u : unions) {
        bool dominated = false;
        for (const auto& v : unions)
            if (!(v == u) && v.is_subset_of(u)) {
                dominated = true;
                break;
            }
        if (!dominated) minimal.push_back(u);
    }
    return minimal;
}

/// Internal comanence: every dilated neighbourhood of every state admits a
/// localization of the state whose whole t-sweep stays inside it. Decided
/// over the horizon, beyond which segments and sweeps repeat.
inline bool internally_comanent(const StructuredSystem& s) {
    const long long t_max = s.dev.horizon();
    for (int z = 0; z < s.universe_size(); ++z) {
        for (long long t = 1; t <= t_max; ++t) {
            auto dilated = dilated_neighborhoods(s, z, t);
            for (const auto& lp : dilated) {
                bool found = false;
                for (const auto& l : s.structuring.sets) {
                    if (!l.contains(z)) continue;
                    Subset sweep(s.universe_size());
                    l.for_each([&](int y) { sweep = sweep | orbit_segment(s.dev, y, t); });
                    if (sweep.is_subset_of(lp)) {
                        found = true;
                        break;
                    }
                }
                if (!found) return false;
            }
        }
    }
    return true;
}

/// Finite convergence semantics: a sequence converges to y when it
/// eventually stays inside every localization of y, i.e. inside the halo.
/// A finite list is read by its tail.
inline bool converges(const SetSystem& a, const std::vector<int>& sequence, int y) {
    if (sequence.empty()) return false;
    return halo(a, y).contains(sequence.back());
}

/// A set distance on integer time sets, evaluated on a symmetric window.
/// The window parameter lets the moderation scan widen clip and evaluation
/// together, which is what makes escalation observable.
struct SetDistance {
    std::function<double(const PeriodicIntSet&, const PeriodicIntSet&, int)> eval;
    int standard_window = 64;

    double operator()(const PeriodicIntSet& x, const PeriodicIntSet& y) const {
        return eval(x, y, standard_window);
    }
};

inline SetDistance gaussian_distance(int window = 64) {
    return {[](const PeriodicIntSet& x, const PeriodicIntSet& y, int w) {
                return gaussian_set_distance(x, y, w);
            },
            window};
}

inline SetDistance hausdorff_distance(int window = 64) {
    return {[](const PeriodicIntSet& x, const PeriodicIntSet& y, int w) {
                return hausdorff_set_distance(x, y, w);
            },
            window};
}

/// X restricted to [-a, a]. Two-sided sets are re-expressed on a wheel long
/// enough that the wrapped copies stay outside every window the evaluators
/// look at.
inline PeriodicIntSet clip_to_window(const PeriodicIntSet& x, int a, int guard = 2048) {
    if (!x.is_two_sided()) {
        std::vector<bool> bits(static_cast<std::size_t>(a) + 1, false);
        for (long long t : x.members_in(0, a)) bits[static_cast<std::size_t>(t)] = true;
        return PeriodicIntSet::forward(std::move(bits), 1, {false});
    }
    int period = std::max(guard, 8 * a + 64);
    std::vector<bool> wheel(static_cast<std::size_t>(period), false);
    for (long long t : x.members_in(-a, a))
        wheel[static_cast<std::size_t>(((t % period) + period) % period)] = true;
    return PeriodicIntSet::two_sided(period, std::move(wheel));
}

struct ModerationFlags {
    bool monotone = true;
    bool continuous = true;
    bool non_escalated = true;
    bool moderate() const { return monotone && continuous && non_escalated; }
};

/// Property scan for a set distance over sample pairs.
///   monotone:      D(X ∩ Z, Y ∩ Z) <= D(X, Y) for window clips Z;
///   continuous:    insensitivity to the time-axis closure, which on the
///                  discrete axis is the identity (the exact skeleton);
///   non_escalated: values on jointly widened clip + evaluation windows
///                  stabilize at the standard-window value.
inline ModerationFlags distance_moderation_check(
    const SetDistance& dist,
    const std::vector<std::pair<PeriodicIntSet, PeriodicIntSet>>& samples,
    double tol = 1e-9) {
    ModerationFlags flags;
    const int w = dist.standard_window;
    for (const auto& [x, y] : samples) {
        double full = dist(x, y);
        for (int a : {w / 8, w / 4, w / 2}) {
            double clipped = dist(clip_to_window(x, a), clip_to_window(y, a));
            if (clipped > full + tol) flags.monotone = false;
        }
        if (std::abs(dist(x, y) - full) > 0.0) flags.continuous = false;
        double v1 = dist.eval(clip_to_window(x, 2 * w), clip_to_window(y, 2 * w), 2 * w);
        double v2 = dist.eval(clip_to_window(x, 4 * w), clip_to_window(y, 4 * w), 4 * w);
        if (std::abs(v1 - full) > tol || std::abs(v2 - v1) > tol)
            flags.non_escalated = false;
    }
    return flags;
}

/// Converse comanence, collapsed to finite semantics: halo-mates must have
/// return-time sets at distance zero for every localization.
inline bool conversely_comanent(const StructuredSystem& s, const SetDistance& d2,
                                double tol = 1e-12) {
    if (!s.bijective())
        throw NegativeTimeUnsupported("return-time comparison needs two-sided sets");
    for (int y = 0; y < s.universe_size(); ++y) {
        Subset h = halo(s.structuring, y);
        for (int x : h.members()) {
            for (const auto& a : s.structuring.sets) {
                if (d2(s.dev.time_preimage(x, a), s.dev.time_preimage(y, a)) > tol)
                    return false;
            }
        }
    }
    return true;
}

/// Run persistence: the time set contains a run of run_length consecutive
/// integers; the unbounded variant demands such runs beyond every bound.
inline bool run_persistence(const PeriodicIntSet& x, int run_length, bool unbounded) {
    return unbounded ? x.has_unbounded_runs(run_length) : x.has_run(run_length);
}

/// Every maximal run of the set is at least run_length long.
inline bool total_run_persistence(const PeriodicIntSet& x, int run_length) {
    return x.all_runs_at_least(run_length);
}

}  // namespace gtdyn
