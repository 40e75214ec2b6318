#pragma once

#include <algorithm>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gtdyn/subset.hpp"

namespace gtdyn {

/// A finite family of subsets of a fixed universe. When the union of the
/// family is the whole universe it qualifies as a structuring; raw
/// (non-covering) families are allowed as values, e.g. complement systems.
///
/// Canonical form: members sorted lexicographically, duplicates removed, so
/// equality of systems is structural.
struct SetSystem {
    int universe_size = 0;
    std::vector<Subset> sets;

    SetSystem() = default;
    SetSystem(int n, std::vector<Subset> raw) : universe_size(n), sets(std::move(raw)) {
        normalize();
    }

    static SetSystem of(int n, const std::vector<std::vector<int>>& families) {
        std::vector<Subset> raw;
        raw.reserve(families.size());
        for (const auto& f : families) raw.push_back(Subset::of(n, f));
        return SetSystem(n, std::move(raw));
    }

    void normalize() {
        std::sort(sets.begin(), sets.end());
        sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    }

    Subset union_all() const {
        Subset u(universe_size);
        for (const auto& s : sets) u = u | s;
        return u;
    }

    bool covers() const { return union_all() == Subset::full_set(universe_size); }

    bool operator==(const SetSystem& o) const {
        return universe_size == o.universe_size && sets == o.sets;
    }
};

/// {Y\S : S in A}. The output is a raw family; it need not cover.
inline SetSystem complement_system(const SetSystem& a) {
    std::vector<Subset> out;
    out.reserve(a.sets.size());
    for (const auto& s : a.sets) out.push_back(s.complement());
    return SetSystem(a.universe_size, std::move(out));
}

/// Hull of Z: intersection of all nonempty complement-system members
/// containing Z. An empty intersection yields the full universe.
inline Subset closure(const SetSystem& a, const Subset& z) {
    Subset acc = Subset::full_set(a.universe_size);
    for (const auto& s : a.sets) {
        Subset c = s.complement();
        if (!c.empty() && z.is_subset_of(c)) acc = acc & c;
    }
    return acc;
}

inline constexpr int kDefaultBruteForceCap = 16;

/// Image of the closure operator over all 2^Y subsets.
inline std::vector<Subset> closed_sets(const SetSystem& a, int cap = kDefaultBruteForceCap) {
    int n = a.universe_size;
    if (n > cap) throw CapExceeded("closed_sets: universe " + std::to_string(n));
    std::unordered_set<Subset, SubsetHash> seen;
    std::vector<Subset> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        Subset z(n);
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1) z.insert(i);
        Subset c = closure(a, z);
        if (seen.insert(c).second) out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// The X-selection: members of A meeting X.
inline SetSystem selection(const SetSystem& a, const Subset& x) {
    std::vector<Subset> out;
    for (const auto& s : a.sets)
        if (s.intersects(x)) out.push_back(s);
    return SetSystem(a.universe_size, std::move(out));
}

inline SetSystem selection_of_state(const SetSystem& a, int z) {
    return selection(a, Subset::of(a.universe_size, {z}));
}

/// True iff X houses no nonempty member of A, i.e. X belongs to the system
/// of localization-free sets.
inline bool is_localization_free(const SetSystem& a, const Subset& x) {
    for (const auto& s : a.sets)
        if (!s.empty() && s.is_subset_of(x)) return false;
    return true;
}

/// All ordered pairs of disjoint members. Empty members are excluded: they
/// cannot separate anything.
inline std::vector<std::pair<Subset, Subset>> disjoint_pairs(const SetSystem& a) {
    std::vector<std::pair<Subset, Subset>> out;
    for (const auto& s : a.sets) {
        if (s.empty()) continue;
        for (const auto& t : a.sets) {
            if (t.empty() || s.intersects(t)) continue;
            out.emplace_back(s, t);
        }
    }
    return out;
}

/// Generalized Hausdorff separation: two states are distinct exactly when a
/// disjoint member pair separates them.
inline bool has_hausdorff_separation(const SetSystem& a) {
    auto pairs = disjoint_pairs(a);
    int n = a.universe_size;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            bool separated = false;
            for (const auto& [s, t] : pairs) {
                if (s.contains(x) && t.contains(y)) {
                    separated = true;
                    break;
                }
            }
            if (separated != (x != y)) return false;
        }
    }
    return true;
}

/// Intersection of all members containing z.
inline Subset halo(const SetSystem& a, int z) {
    Subset acc = Subset::full_set(a.universe_size);
    bool any = false;
    for (const auto& s : a.sets) {
        if (s.contains(z)) {
            acc = acc & s;
            any = true;
        }
    }
    if (!any) return Subset::full_set(a.universe_size);
    return acc;
}

/// Pointwise localizability everywhere: every halo is a singleton.
inline bool is_deterministic(const SetSystem& a) {
    for (int z = 0; z < a.universe_size; ++z) {
        Subset h = halo(a, z);
        if (h.count() != 1 || !h.contains(z)) return false;
    }
    return true;
}

/// Coarsening onto X: members meeting X absorb X, members disjoint from X
/// stay as they are.
inline SetSystem coarsen(const SetSystem& a, const Subset& x) {
    std::vector<Subset> out;
    out.reserve(a.sets.size());
    for (const auto& s : a.sets) out.push_back(s.intersects(x) ? (s | x) : s);
    return SetSystem(a.universe_size, std::move(out));
}

/// Nonempty, pairwise disjoint, union = Y.
inline bool is_partition(const SetSystem& p, const Subset& y) {
    Subset u(p.universe_size);
    for (const auto& s : p.sets) {
        if (s.empty()) return false;
        if (s.intersects(u)) return false;
        u = u | s;
    }
    return u == y;
}

/// Trace system A | L = { S ∩ L : S in A }, kept on the ambient universe.
inline SetSystem trace_system(const SetSystem& a, const Subset& l) {
    std::vector<Subset> out;
    out.reserve(a.sets.size());
    for (const auto& s : a.sets) out.push_back(s & l);
    return SetSystem(a.universe_size, std::move(out));
}

}  // namespace gtdyn
