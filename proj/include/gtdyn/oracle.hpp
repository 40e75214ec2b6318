#pragma once

#include <optional>

#include "gtdyn/coloc.hpp"
#include "gtdyn/hierarchy.hpp"

namespace gtdyn {

inline constexpr int kOracleCap = 12;

/// Exhaustive ground truth for cross-checking the fast paths. Quantifiers
/// are evaluated by direct simulation over wide time windows rather than by
/// residue arithmetic, so the two routes share no decision logic.

struct OracleCommutator {
    bool noncommutative = false;
    long long time = -1;
    Subset witness_set;
};

/// Scan all 2^Y subsets at every distinct power for a nonempty commutator.
inline OracleCommutator oracle_commutator(const StructuredSystem& s,
                                          int t_cap = kDefaultTimeCap) {
    const int n = s.universe_size();
    if (n > kOracleCap) throw CapExceeded("oracle: universe too large for 2^Y scan");
    PowerScan ps = power_scan(s.dev, t_cap);
    if (ps.capped) throw CapExceeded("oracle: time scan capped");
    OracleCommutator out{false, -1, Subset(n)};
    for (int t = 1; t < ps.count(); ++t) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
            Subset x(n);
            for (int i = 0; i < n; ++i)
                if ((mask >> i) & 1) x.insert(i);
            Subset lhs = closure(s.structuring, map_image(ps.maps[t], x));
            Subset rhs = map_image(ps.maps[t], closure(s.structuring, x));
            if (!(lhs == rhs)) {
                out.noncommutative = true;
                out.time = t;
                out.witness_set = x;
                return out;
            }
        }
    }
    return out;
}

/// Fixed sensitivity by direct simulation: the unbounded-time clause is
/// checked on a window of two extra global periods, where every recurring
/// hit must show up.
inline bool oracle_fixed_sensitive_at(const StructuredSystem& s, int alpha) {
    const int n = s.universe_size();
    if (n > kOracleCap) throw CapExceeded("oracle: universe too large");
    if (!s.bijective()) throw NotADevelopment("oracle handles two-sided time only");
    const auto& sets = s.structuring.sets;
    long long l = s.dev.cycle_lcm();
    auto recurring = [&](auto pred) {
        // hits beyond 2l recur at arbitrarily large |t| by periodicity
        for (long long t = 2 * l; t < 3 * l; ++t)
            if (pred(t) || pred(-t)) return true;
        return false;
    };
    for (const auto& X : sets) {
        if (X.empty()) continue;
        for (const auto& Y : sets) {
            if (Y.empty() || X.intersects(Y)) continue;
            bool all = true;
            for (const auto& A : sets) {
                if (!A.contains(alpha)) continue;
                bool found = false;
                for (int x : A.members()) {
                    for (int y : A.members()) {
                        if (recurring([&](long long t) {
                                return X.contains(s.dev.evolve(x, t)) &&
                                       Y.contains(s.dev.evolve(y, t));
                            })) {
                            found = true;
                            break;
                        }
                    }
                    if (found) break;
                }
                if (!found) {
                    all = false;
                    break;
                }
            }
            if (all) return true;
        }
    }
    return false;
}

/// Ultracolocalization by direct simulation over a wide two-sided window.
inline bool oracle_ultracolocalizes(const StructuredSystem& s, int z, int y, int omega) {
    if (s.universe_size() > kOracleCap) throw CapExceeded("oracle: universe too large");
    if (!s.bijective()) throw NotADevelopment("oracle handles two-sided time only");
    long long l = s.dev.cycle_lcm();
    for (const auto& u : s.structuring.sets) {
        if (!u.contains(omega)) continue;
        bool pos = false, neg = false;
        for (long long t = 2 * l; t < 3 * l; ++t) {
            if (u.contains(s.dev.evolve(z, t)) && u.contains(s.dev.evolve(y, t))) pos = true;
            if (u.contains(s.dev.evolve(z, -t)) && u.contains(s.dev.evolve(y, -t))) neg = true;
        }
        if (!pos || !neg) return false;
    }
    return true;
}

inline Subset oracle_coloc(const StructuredSystem& s) {
    const int n = s.universe_size();
    Subset out(n);
    for (int omega = 0; omega < n; ++omega) {
        bool hit = false;
        for (int z = 0; z < n && !hit; ++z)
            for (int y = 0; y < n && !hit; ++y) hit = oracle_ultracolocalizes(s, z, y, omega);
        if (hit) out.insert(omega);
    }
    return out;
}

}  // namespace gtdyn
