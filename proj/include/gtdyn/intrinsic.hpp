#pragma once

#include <optional>

#include "gtdyn/development.hpp"
#include "gtdyn/metric.hpp"
#include "gtdyn/periodic_set.hpp"

namespace gtdyn {

/// Active pseudocommutator of the flow at (z, t): transport a time set onto
/// the trajectory of z, evolve it by t, and pull it back to the time axis.
inline PeriodicIntSet active_pseudocommutator(const Development& d, int z, long long t,
                                              const PeriodicIntSet& x) {
    const auto& o = d.orbit(z);
    // states reached from z at times in x: a forward scan over one joint
    // period beyond both transients covers every residue combination (for
    // two-sided x negative times revisit the same cycle states)
    Subset reached(d.universe_size());
    long long joint = std::lcm<long long>(o.period(), x.period());
    long long horizon = std::max<long long>(o.preperiod, x.transient_bound()) + joint;
    for (long long s = 0; s < horizon; ++s)
        if (x.contains_or_absent(s)) reached.insert(d.evolve(z, s));
    Subset evolved(d.universe_size());
    reached.for_each([&](int u) { evolved.insert(d.evolve(u, t)); });
    return d.time_preimage(z, evolved);
}

/// Phasic pseudocommutator: the active one against the plainly translated
/// time set.
inline PeriodicIntSet phasic_pseudocommutator(const Development& d, int z, long long t,
                                              const PeriodicIntSet& x) {
    return active_pseudocommutator(d, z, t, x).symmetric_difference(x.translate(t));
}

struct IntrinsicVerdict {
    bool fixed = false;
    bool unfixed = false;
    long long fiber_time = -1;   // witness time whose fiber is non-singleton
    long long fiber_period = 0;  // the fiber recurs with this period
};

/// Discrete intrinsic sensitivity of the trajectory through x: with integer
/// time the defining limit collapses to non-injectivity of the time map, so
/// any cyclic orbit is fixed intrinsically sensitive. The unfixed variant
/// asks for expanding fibers along an accumulation-free time sequence, which
/// eventually periodic orbits never provide.
inline IntrinsicVerdict intrinsic_sensitivity(const Development& d, int x) {
    IntrinsicVerdict v;
    const auto& o = d.orbit(x);
    if (o.period() >= 1) {
        // the fiber over any cycle state is an arithmetic progression
        v.fixed = true;
        v.fiber_time = o.preperiod;
        v.fiber_period = o.period();
    }
    v.unfixed = false;
    return v;
}

/// Chart systems have injective time windows: every fiber is a singleton.
inline IntrinsicVerdict intrinsic_sensitivity(const ChartSystem&, int) {
    return IntrinsicVerdict{};
}

/// The flow is additive (a group/monoid action): always true for generators
/// iterated over integer time; kept as an explicit check for tests.
inline bool is_additive(const Development& d) {
    long long hor = std::min<long long>(d.horizon(), 64);
    for (int z = 0; z < d.universe_size(); ++z)
        for (long long a = 0; a <= hor; ++a)
            for (long long b = 0; b <= hor - a; ++b)
                if (d.evolve(z, a + b) != d.evolve(d.evolve(z, a), b)) return false;
    return true;
}

}  // namespace gtdyn
