#pragma once

#include <vector>

#include "gtdyn/set_system.hpp"

namespace gtdyn {

/// A finite topology given as the list of its open sets. Must contain the
/// empty set and the whole space and be closed under union and intersection.
struct FiniteTopology {
    SetSystem opens;

    explicit FiniteTopology(SetSystem sys) : opens(std::move(sys)) { validate(); }

    static FiniteTopology of(int n, const std::vector<std::vector<int>>& sets) {
        return FiniteTopology(SetSystem::of(n, sets));
    }

    /// Closure of a generating family under union and intersection, plus the
    /// trivial opens.
    static FiniteTopology generated(int n, const std::vector<std::vector<int>>& base) {
        std::vector<Subset> work;
        for (const auto& b : base) work.push_back(Subset::of(n, b));
        work.push_back(Subset(n));
        work.push_back(Subset::full_set(n));
        bool grew = true;
        while (grew) {
            grew = false;
            std::size_t sz = work.size();
            for (std::size_t i = 0; i < sz; ++i)
                for (std::size_t j = i + 1; j < sz; ++j)
                    for (const Subset& c : {work[i] | work[j], work[i] & work[j]}) {
                        bool seen = false;
                        for (const auto& w : work)
                            if (w == c) {
                                seen = true;
                                break;
                            }
                        if (!seen) {
                            work.push_back(c);
                            grew = true;
                        }
                    }
        }
        return FiniteTopology(SetSystem(n, std::move(work)));
    }

    int universe_size() const { return opens.universe_size; }

    /// Smallest open set containing x; exists in every finite topology and
    /// generates the neighbourhood filter of x.
    Subset minimal_neighborhood(int x) const {
        Subset acc = Subset::full_set(universe_size());
        for (const auto& u : opens.sets)
            if (u.contains(x)) acc = acc & u;
        return acc;
    }

  private:
    void validate() const {
        const int n = opens.universe_size;
        bool has_empty = false, has_full = false;
        Subset full = Subset::full_set(n);
        for (const auto& u : opens.sets) {
            if (u.empty()) has_empty = true;
            if (u == full) has_full = true;
        }
        if (!has_empty || !has_full)
            throw NotATopology("missing empty set or whole space");
        for (const auto& a : opens.sets)
            for (const auto& b : opens.sets) {
                if (!member(a | b)) throw NotATopology("not closed under union");
                if (!member(a & b)) throw NotATopology("not closed under intersection");
            }
    }

    bool member(const Subset& s) const {
        for (const auto& u : opens.sets)
            if (u == s) return true;
        return false;
    }
};

/// Pointwise continuity of f at x between two finite topologies.
inline bool continuous_at(const std::vector<int>& f, const FiniteTopology& t1,
                          const FiniteTopology& t2, int x) {
    Subset v = t1.minimal_neighborhood(x);
    Subset target = t2.minimal_neighborhood(f[x]);
    bool ok = true;
    v.for_each([&](int y) { ok = ok && target.contains(f[y]); });
    return ok;
}

/// Continuity of the restriction f|R at every point of R, with the trace
/// topology on the domain side.
inline bool restriction_continuous(const std::vector<int>& f, const FiniteTopology& t1,
                                   const FiniteTopology& t2, const Subset& r) {
    bool ok = true;
    r.for_each([&](int x) {
        Subset v = t1.minimal_neighborhood(x) & r;
        Subset target = t2.minimal_neighborhood(f[x]);
        v.for_each([&](int y) { ok = ok && target.contains(f[y]); });
    });
    return ok;
}

/// Order of intermittent discontinuity of f at x, capped. 0 when f is
/// continuous at x or discontinuous without the intermittency witness;
/// n >= 1 per the recursion: intermittent points isolate at order 1, higher
/// orders accumulate lower-order points in every neighbourhood. Finite
/// topologies make "every/some neighbourhood" exact via minimal open sets.
inline int intermittent_order(const std::vector<int>& f, const FiniteTopology& t1,
                              const FiniteTopology& t2, int x, int max_order = 8) {
    const int n = t1.universe_size();
    if (static_cast<int>(f.size()) != n) throw OutOfRange("map table length");
    for (int v : f)
        if (v < 0 || v >= t2.universe_size()) throw OutOfRange("map value");

    std::vector<bool> disc(n), intermittent(n);
    for (int z = 0; z < n; ++z) disc[z] = !continuous_at(f, t1, t2, z);
    for (int z = 0; z < n; ++z) {
        if (!disc[z]) {
            intermittent[z] = false;
            continue;
        }
        // in every neighbourhood of z (so in the minimal one) a point y with
        // a sub-neighbourhood on which f restricts continuously
        Subset u = t1.minimal_neighborhood(z);
        bool witness = false;
        u.for_each([&](int y) {
            Subset uy = t1.minimal_neighborhood(y);
            if (uy.is_subset_of(u) && restriction_continuous(f, t1, t2, uy))
                witness = true;
        });
        intermittent[z] = witness;
    }

    if (!intermittent[x]) return 0;

    // grade sets: I1 = isolated intermittent points; I_n accumulates I_{n-1}
    std::vector<bool> current(n);
    for (int z = 0; z < n; ++z) {
        if (!intermittent[z]) continue;
        Subset u = t1.minimal_neighborhood(z);
        bool other = false;
        u.for_each([&](int y) {
            if (y != z && intermittent[y]) other = true;
        });
        current[z] = !other;
    }
    if (current[x]) return 1;
    std::vector<bool> next(n);
    for (int order = 2; order <= max_order; ++order) {
        for (int z = 0; z < n; ++z) {
            next[z] = false;
            if (!disc[z]) continue;
            Subset u = t1.minimal_neighborhood(z);
            u.for_each([&](int y) {
                if (y != z && current[y]) next[z] = true;
            });
        }
        if (next[x]) return order;
        current = next;
    }
    return 0;
}

}  // namespace gtdyn
