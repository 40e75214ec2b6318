#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "gtdyn/flow_analysis.hpp"
#include "gtdyn/hierarchy.hpp"
#include "gtdyn/structured.hpp"

namespace gtdyn {

struct ColocVerdict {
    int omega = -1;
    int z = -1, y = -1;
    /// per containing localization: one residue class (time, modulus) at
    /// which both orbits sit inside it, recurring both ways
    struct TimeWitness {
        int localization;
        long long residue;
        long long modulus;
    };
    std::vector<TimeWitness> times;
    int separator_z = -1, separator_y = -1;  // set indices, -1 when unused
};

/// z and y ultracolocalize in omega: every localization of omega hosts both
/// orbits simultaneously at arbitrarily large positive and negative times.
/// Decided exactly on the joint cycle of the pair.
inline std::optional<ColocVerdict> ultracolocalizes(const StructuredSystem& s, int z, int y,
                                                    int omega) {
    if (!s.bijective())
        throw NegativeTimeUnsupported("ultracolocalization needs two-sided unbounded times");
    const auto& sets = s.structuring.sets;
    ColocVerdict v;
    v.omega = omega;
    v.z = z;
    v.y = y;
    long long modulus = std::lcm<long long>(s.dev.orbit(z).period(), s.dev.orbit(y).period());
    for (int li = 0; li < static_cast<int>(sets.size()); ++li) {
        if (!sets[li].contains(omega)) continue;
        long long hit = -1;
        for (long long t = 0; t < modulus; ++t) {
            if (sets[li].contains(s.dev.evolve(z, t)) && sets[li].contains(s.dev.evolve(y, t))) {
                hit = t;
                break;
            }
        }
        if (hit < 0) return std::nullopt;
        v.times.push_back({li, hit, modulus});
    }
    return v;
}

struct ColocSets {
    Subset coloc;
    Subset coloc0;
    Subset coloc_plus;
    std::vector<ColocVerdict> plus_witnesses;  // one per member of coloc_plus
};

/// The three ultracolocalization state sets: witnesses from any pair, from
/// distinct pairs, and from pairs that the structuring separates. Pair
/// search order is lexicographic so recorded witnesses are reproducible.
inline ColocSets coloc_sets(const StructuredSystem& s) {
    const int n = s.universe_size();
    ColocSets out{Subset(n), Subset(n), Subset(n), {}};
    const auto& sets = s.structuring.sets;
    for (int omega = 0; omega < n; ++omega) {
        bool in_coloc = false, in_coloc0 = false;
        std::optional<ColocVerdict> plus;
        for (int z = 0; z < n && !plus; ++z) {
            for (int y = 0; y < n; ++y) {
                if (in_coloc && in_coloc0 && plus) break;
                auto v = ultracolocalizes(s, z, y, omega);
                if (!v) continue;
                in_coloc = true;
                if (z != y) in_coloc0 = true;
                if (!plus) {
                    // separation witnesses: L(z) around z avoiding y and
                    // vice versa
                    int lz = -1, ly = -1;
                    for (int i = 0; i < static_cast<int>(sets.size()); ++i) {
                        if (lz < 0 && sets[i].contains(z) && !sets[i].contains(y)) lz = i;
                        if (ly < 0 && sets[i].contains(y) && !sets[i].contains(z)) ly = i;
                    }
                    if (lz >= 0 && ly >= 0) {
                        v->separator_z = lz;
                        v->separator_y = ly;
                        plus = v;
                    }
                }
            }
        }
        if (in_coloc) out.coloc.insert(omega);
        if (in_coloc0) out.coloc0.insert(omega);
        if (plus) {
            out.coloc_plus.insert(omega);
            out.plus_witnesses.push_back(*plus);
        }
    }
    return out;
}

struct StatewiseWitness {
    int omega;
    struct PerLocalization {
        int localization;  // L in the family around omega
        int z, y;          // pair ultracolocalizing in the L-coarsened system
    };
    std::vector<PerLocalization> pairs;
    long long uniform_time;    // t with xi^t(omega) in L* and all pairs outside
    int uniform_localization;  // L*
};

/// Generalized state-wise sensitivity via coarsened ultracolocalization.
/// The localization family around omega is the full selection (its
/// intersection is the halo); each member is coarsened onto and must host a
/// colocalizing pair drawn from inside it, with one uniform escape witness
/// for all pairs. Pairs are taken inside their localization: that is the
/// shape the set-wise/state-wise equivalence proof constructs, and it is
/// what makes state-wise sensitivity imply the grade-0 set-wise kind.
inline std::optional<StatewiseWitness> statewise_sensitive_at(const StructuredSystem& s,
                                                              int omega, bool separated,
                                                              int t_cap = kDefaultTimeCap) {
    if (!s.bijective())
        throw NegativeTimeUnsupported("state-wise sensitivity needs two-sided times");
    const auto& sets = s.structuring.sets;
    std::vector<int> family;
    for (int i = 0; i < static_cast<int>(sets.size()); ++i)
        if (sets[i].contains(omega)) family.push_back(i);
    // candidate pairs per localization of the family
    std::vector<std::vector<std::pair<int, int>>> candidates(family.size());
    for (std::size_t fi = 0; fi < family.size(); ++fi) {
        StructuredSystem coarse{s.dev, coarsen(s.structuring, sets[family[fi]]), std::nullopt,
                                {}};
        auto members = sets[family[fi]].members();
        for (int z : members)
            for (int y : members) {
                if (separated) {
                    bool sz = false, sy = false;
                    for (const auto& l : sets) {
                        if (l.contains(z) && !l.contains(y)) sz = true;
                        if (l.contains(y) && !l.contains(z)) sy = true;
                    }
                    if (!sz || !sy) continue;
                }
                if (ultracolocalizes(coarse, z, y, omega)) candidates[fi].emplace_back(z, y);
            }
        if (candidates[fi].empty()) return std::nullopt;
    }
    // uniform witness: a time t and a localization of xi^t(omega) that all
    // chosen pairs miss; pairs are chosen greedily per localization
    long long ord = std::min<long long>(s.dev.cycle_lcm(), t_cap);
    for (long long t = 0; t < ord; ++t) {
        int target = s.dev.evolve(omega, t);
        for (int li = 0; li < static_cast<int>(sets.size()); ++li) {
            if (!sets[li].contains(target)) continue;
            StatewiseWitness w;
            w.omega = omega;
            w.uniform_time = t;
            w.uniform_localization = li;
            bool ok = true;
            for (std::size_t fi = 0; fi < family.size() && ok; ++fi) {
                bool found = false;
                for (auto [z, y] : candidates[fi]) {
                    if (!sets[li].contains(s.dev.evolve(z, t)) &&
                        !sets[li].contains(s.dev.evolve(y, t))) {
                        w.pairs.push_back({family[fi], z, y});
                        found = true;
                        break;
                    }
                }
                ok = found;
            }
            if (ok) return w;
        }
    }
    return std::nullopt;
}

inline Subset statewise_sensitive_states(const StructuredSystem& s, bool separated = false,
                                         int t_cap = kDefaultTimeCap) {
    Subset out(s.universe_size());
    for (int omega = 0; omega < s.universe_size(); ++omega)
        if (statewise_sensitive_at(s, omega, separated, t_cap)) out.insert(omega);
    return out;
}

struct EquivalenceReport {
    std::vector<Subset> classes;      // connected blocks of the relation
    Subset reflexivity_domain;
    bool is_equivalence = false;
    // certified violation when not transitive: x ~ y, y ~ z, not x ~ z
    int bad_x = -1, bad_y = -1, bad_z = -1;
};

/// The ultracolocalization relation on its reflexivity domain: classes,
/// and whether it is an equivalence there.
inline EquivalenceReport equivalence_classes(const StructuredSystem& s) {
    const int n = s.universe_size();
    EquivalenceReport rep{{}, Subset(n), false, -1, -1, -1};
    std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
    for (int z = 0; z < n; ++z)
        for (int y = z; y < n; ++y) {
            bool related = false;
            for (int omega = 0; omega < n && !related; ++omega)
                related = ultracolocalizes(s, z, y, omega).has_value();
            rel[z][y] = rel[y][z] = related;  // the defining pattern is symmetric
        }
    for (int z = 0; z < n; ++z)
        if (rel[z][z]) rep.reflexivity_domain.insert(z);
    // transitivity on the domain
    bool transitive = true;
    for (int x = 0; x < n && transitive; ++x) {
        if (!rel[x][x]) continue;
        for (int y = 0; y < n && transitive; ++y) {
            if (!rel[y][y] || !rel[x][y]) continue;
            for (int z = 0; z < n; ++z) {
                if (!rel[z][z]) continue;
                if (rel[y][z] && !rel[x][z]) {
                    transitive = false;
                    rep.bad_x = x;
                    rep.bad_y = y;
                    rep.bad_z = z;
                    break;
                }
            }
        }
    }
    // reflexivity and symmetry hold on the domain by construction
    rep.is_equivalence = transitive;
    // connected blocks of the relation restricted to the domain
    std::vector<int> comp(n, -1);
    int nc = 0;
    for (int z = 0; z < n; ++z) {
        if (!rel[z][z] || comp[z] >= 0) continue;
        std::vector<int> stack = {z};
        comp[z] = nc;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < n; ++v)
                if (rel[v][v] && rel[u][v] && comp[v] < 0) {
                    comp[v] = nc;
                    stack.push_back(v);
                }
        }
        ++nc;
    }
    rep.classes.assign(nc, Subset(n));
    for (int z = 0; z < n; ++z)
        if (comp[z] >= 0) rep.classes[comp[z]].insert(z);
    return rep;
}

/// Every pair of states re-enters every nonempty localization simultaneously
/// at arbitrarily large times in both directions.
inline bool ultimate_sensitivity(const StructuredSystem& s) {
    if (!s.bijective())
        throw NegativeTimeUnsupported("ultimate sensitivity needs two-sided times");
    const int n = s.universe_size();
    for (const auto& l : s.structuring.sets) {
        if (l.empty()) continue;
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                bool hit = exists_joint_time(s.dev, a, b, TimeMode::Recurrence,
                                             [&](int ea, int eb, long long) {
                                                 return l.contains(ea) && l.contains(eb);
                                             });
                if (!hit) return false;
            }
    }
    return true;
}

enum class Dissociation { Total, TrajectoryWise, HullWise, None };

inline std::string to_string(Dissociation d) {
    switch (d) {
        case Dissociation::Total: return "total";
        case Dissociation::TrajectoryWise: return "trajectory";
        case Dissociation::HullWise: return "hull";
        default: return "none";
    }
}

/// How far the ultracolocalization classes disperse: all singletons, inside
/// single trajectories, inside single trajectory hulls, or wider.
inline Dissociation dissociation_report(const StructuredSystem& s) {
    EquivalenceReport rep = equivalence_classes(s);
    bool total = true;
    for (const auto& c : rep.classes) total = total && c.count() <= 1;
    if (total) return Dissociation::Total;
    auto trajectories = s.dev.trajectories();
    auto within = [&](const std::vector<Subset>& regions) {
        for (const auto& c : rep.classes) {
            bool inside = false;
            for (const auto& r : regions)
                if (c.is_subset_of(r)) inside = true;
            if (!inside) return false;
        }
        return true;
    };
    if (within(trajectories)) return Dissociation::TrajectoryWise;
    if (within(trajectory_hulls(s).hulls)) return Dissociation::HullWise;
    return Dissociation::None;
}

}  // namespace gtdyn
