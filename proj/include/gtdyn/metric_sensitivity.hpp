#pragma once

#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "gtdyn/flow_analysis.hpp"
#include "gtdyn/structured.hpp"

namespace gtdyn {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Times at which a joint condition on a state pair is evaluated.
/// Recurrence: only the joint eventual cycle counts (hits there repeat at
/// arbitrarily large times). Horizon: transient plus one joint cycle, the
/// full window of distinguishable behaviour on a finite grid.
enum class TimeMode { Recurrence, Horizon };

template <class Pred>
bool exists_joint_time(const Development& d, int x, int y, TimeMode mode, Pred pred) {
    const auto& ox = d.orbit(x);
    const auto& oy = d.orbit(y);
    long long p = std::lcm<long long>(ox.period(), oy.period());
    long long start = 0;
    if (mode == TimeMode::Recurrence && !d.bijective())
        start = std::max(ox.preperiod, oy.preperiod);
    long long end = std::max(ox.preperiod, oy.preperiod) + p;
    if (d.bijective()) {
        start = 0;
        end = p;
    }
    for (long long t = start; t < end; ++t)
        if (pred(d.evolve(x, t), d.evolve(y, t), t)) return true;
    return false;
}

/// Largest distance the pair (x, y) attains along the evaluated window.
inline double pair_separation(const Development& d, const MetricTable& dist, int x, int y,
                              TimeMode mode = TimeMode::Horizon) {
    double best = 0.0;
    exists_joint_time(d, x, y, mode, [&](int a, int b, long long) {
        best = std::max(best, dist(a, b));
        return false;
    });
    return best;
}

/// Grid reading of pointwise metric sensitivity: a fixed separation beyond
/// the grid scale h is reached from inside every ball around x. Because the
/// balls grow with the scale, the binding ball is the smallest one, so the
/// certified separation is the best separation reachable from the nearest
/// neighbours. Sensitive iff that exceeds h.
struct PointwiseSensitivity {
    bool sensitive = false;
    double epsilon = 0.0;  // largest grid-certified separation
    double scale = 0.0;    // h
};

inline PointwiseSensitivity metric_pointwise_sensitive(const Development& d,
                                                       const MetricTable& dist, int x,
                                                       bool two_sided = false) {
    if (two_sided && !d.bijective())
        throw NegativeTimeUnsupported("two-sided sensitivity needs an invertible generator");
    PointwiseSensitivity out;
    out.scale = dist.grid_scale();
    if (!std::isfinite(out.scale)) return out;  // single point or zero table
    double v = 0.0;
    dist.ball(x, out.scale).for_each([&](int y) {
        v = std::max(v, pair_separation(d, dist, x, y));
    });
    out.epsilon = v;
    out.sensitive = v > out.scale;
    return out;
}

/// Per-state resolution field at evaluation scale h: the supremum of
/// separations certified against every ball scale >= h, or -inf when the
/// admissible set is empty. At grid scale the value collapses to the best
/// separation reachable from the h-ball; values not exceeding h are below
/// resolution and read as -inf.
struct ResolutionField {
    std::vector<double> value;  // -inf or the certified separation
    double h = 0.0;

    bool sensitive_at(int x) const { return value[static_cast<std::size_t>(x)] > 0; }

    /// The admissible-delta set is the open interval (0, value).
    bool admissible(int x, double delta) const {
        return delta > 0 && delta < value[static_cast<std::size_t>(x)];
    }
};

inline ResolutionField resolution_field(const Development& d, const MetricTable& dA,
                                        const MetricTable& dB, double h) {
    double resolution = dA.grid_scale();
    if (std::isfinite(resolution) && h < resolution)
        throw ScaleBelowResolution("evaluation scale below the attained distance grid");
    ResolutionField f;
    f.h = h;
    const int n = d.universe_size();
    f.value.assign(n, kNegInf);
    // smallest attained ball scale >= h; the min over all larger scales is
    // attained here since balls are nested
    double eps = h;
    for (double s : dA.scales())
        if (s >= h) {
            eps = s;
            break;
        }
    for (int x = 0; x < n; ++x) {
        double v = 0.0;
        dA.ball(x, eps).for_each([&](int y) {
            v = std::max(v, pair_separation(d, dB, x, y));
        });
        if (v > h) f.value[static_cast<std::size_t>(x)] = v;
    }
    return f;
}

inline ResolutionField resolution_field(const StructuredSystem& s, double h) {
    const MetricTable& m = s.metric_or_throw();
    return resolution_field(s.dev, m, m, h);
}

/// Comanence function B(delta, t): the largest starting distance that keeps
/// every pair within delta over the whole window [-t, t] (forward window for
/// non-invertible generators). Exact supremum over attained distances plus
/// zero; -inf when even coincident pairs escape.
inline double comanence_value(const Development& d, const MetricTable& dA,
                              const MetricTable& dB, double delta, long long t) {
    if (delta <= 0) throw BadParams("comanence threshold must be positive");
    if (t < 0) throw BadParams("comanence window must be nonnegative");
    const int n = d.universe_size();
    // q qualifies iff no pair within starting distance q escapes delta over
    // the window, i.e. iff q is below the closest escaping pair
    double min_bad = std::numeric_limits<double>::infinity();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (dA(x, y) >= min_bad) continue;
            double sep = 0.0;
            for (long long th = (d.bijective() ? -t : 0); th <= t; ++th) {
                sep = std::max(sep, dB(d.evolve(x, th), d.evolve(y, th)));
                if (sep > delta) break;
            }
            if (sep > delta) min_bad = dA(x, y);
        }
    double best = kNegInf;
    if (0.0 < min_bad) best = 0.0;
    for (double q : dA.scales())
        if (q < min_bad) best = std::max(best, q);
    return best;
}

/// Comanent iff the comanence function is defined (> -inf) on the whole
/// tested grid.
inline bool is_comanent(const Development& d, const MetricTable& dA, const MetricTable& dB,
                        const std::vector<double>& deltas, const std::vector<long long>& ts) {
    for (double delta : deltas)
        for (long long t : ts)
            if (comanence_value(d, dA, dB, delta, t) == kNegInf) return false;
    return true;
}

}  // namespace gtdyn
