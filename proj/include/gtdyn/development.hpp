#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "gtdyn/periodic_set.hpp"
#include "gtdyn/subset.hpp"

namespace gtdyn {

/// Discrete-time development: a total self-map of a finite universe driven
/// by integer time. Bijective generators admit two-sided time; otherwise
/// only forward evolution is defined and set-valued preimages stand in for
/// the inverse.
class Development {
  public:
    Development() = default;

    explicit Development(std::vector<int> generator) : g_(std::move(generator)) {
        const int n = static_cast<int>(g_.size());
        for (int v : g_)
            if (v < 0 || v >= n) throw OutOfRange("generator entry out of range");
        std::vector<int> hits(n, 0);
        for (int v : g_) ++hits[v];
        bijective_ = std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
        if (bijective_) {
            inv_.assign(n, 0);
            for (int i = 0; i < n; ++i) inv_[g_[i]] = i;
        }
        compute_orbits();
    }

    static Development identity(int n) {
        std::vector<int> g(n);
        std::iota(g.begin(), g.end(), 0);
        return Development(std::move(g));
    }

    static Development rotation(int n, int k) {
        std::vector<int> g(n);
        for (int i = 0; i < n; ++i) g[i] = ((i + k) % n + n) % n;
        return Development(std::move(g));
    }

    int universe_size() const { return static_cast<int>(g_.size()); }
    bool bijective() const { return bijective_; }
    const std::vector<int>& generator() const { return g_; }

    int step(int z) const { return g_[z]; }

    struct Orbit {
        int preperiod = 0;          // 0 for bijective generators
        std::vector<int> cycle;     // states on the eventual cycle, in order
        std::vector<int> tail;      // transient states, starting at z itself
        int period() const { return static_cast<int>(cycle.size()); }
    };

    const Orbit& orbit(int z) const {
        check(z);
        return orbits_[z];
    }

    /// Largest preperiod + lcm of all cycle lengths: beyond this horizon the
    /// pointwise dynamics repeats.
    long long horizon() const { return max_preperiod_ + cycle_lcm_; }
    long long cycle_lcm() const { return cycle_lcm_; }
    int max_preperiod() const { return max_preperiod_; }

    int evolve(int z, long long t) const {
        check(z);
        const Orbit& o = orbits_[z];
        if (t >= 0) {
            if (t < o.preperiod) return o.tail[static_cast<std::size_t>(t)];
            long long k = (t - o.preperiod) % o.period();
            return o.cycle[static_cast<std::size_t>(k)];
        }
        if (!bijective_)
            throw NegativeTimeUnsupported("negative time on a non-invertible generator");
        long long k = ((t % o.period()) + o.period()) % o.period();
        return o.cycle[static_cast<std::size_t>(k)];
    }

    Subset image(const Subset& x) const {
        Subset out(universe_size());
        x.for_each([&](int z) { out.insert(g_[z]); });
        return out;
    }

    Subset preimage(const Subset& x) const {
        Subset out(universe_size());
        for (int z = 0; z < universe_size(); ++z)
            if (x.contains(g_[z])) out.insert(z);
        return out;
    }

    /// Apply the q-th power of the one-step map to a set: image for q > 0,
    /// set preimage for q < 0.
    Subset apply_power(const Subset& x, long long q) const {
        Subset cur = x;
        for (long long i = 0; i < std::llabs(q); ++i)
            cur = (q > 0) ? image(cur) : preimage(cur);
        return cur;
    }

    /// Return-time set { t : evolve(z, t) in A }, exact via orbit
    /// periodicity. Two-sided for bijective generators.
    PeriodicIntSet time_preimage(int z, const Subset& a) const {
        check(z);
        const Orbit& o = orbits_[z];
        const int p = o.period();
        std::vector<bool> residues(p, false);
        if (bijective_) {
            for (int k = 0; k < p; ++k) residues[k] = a.contains(o.cycle[k]);
            return PeriodicIntSet::two_sided(p, std::move(residues));
        }
        std::vector<bool> transient(o.preperiod, false);
        for (int t = 0; t < o.preperiod; ++t) transient[t] = a.contains(o.tail[t]);
        for (int k = 0; k < p; ++k) {
            long long t = o.preperiod + k;
            residues[static_cast<std::size_t>(t % p)] = a.contains(o.cycle[k]);
        }
        return PeriodicIntSet::forward(std::move(transient), p, std::move(residues));
    }

    /// Lowest state of every trajectory, in increasing order. Two-sided
    /// trajectories only.
    std::vector<int> initial_basis() const {
        require_bijective();
        std::vector<int> basis;
        std::vector<char> seen(universe_size(), 0);
        for (int z = 0; z < universe_size(); ++z) {
            if (seen[z]) continue;
            basis.push_back(z);
            for (int c : orbits_[z].cycle) seen[c] = 1;
        }
        return basis;
    }

    /// Maps each state to its trajectory's basis representative.
    std::vector<int> representative_map() const {
        require_bijective();
        std::vector<int> rep(universe_size(), -1);
        for (int b : initial_basis())
            for (int c : orbits_[b].cycle) rep[c] = b;
        return rep;
    }

    /// Trajectory membership as state sets (bijective: the cycles).
    std::vector<Subset> trajectories() const {
        require_bijective();
        std::vector<Subset> out;
        for (int b : initial_basis()) {
            Subset s(universe_size());
            for (int c : orbits_[b].cycle) s.insert(c);
            out.push_back(s);
        }
        return out;
    }

    /// Weakly connected components of the one-step graph. Coincides with
    /// trajectories for bijective generators; the natural region notion for
    /// merging forward dynamics.
    std::vector<Subset> weak_components() const {
        const int n = universe_size();
        std::vector<int> comp(n, -1);
        std::vector<std::vector<int>> back(n);
        for (int z = 0; z < n; ++z) back[g_[z]].push_back(z);
        int nc = 0;
        for (int z = 0; z < n; ++z) {
            if (comp[z] >= 0) continue;
            std::vector<int> stack = {z};
            comp[z] = nc;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                auto visit = [&](int v) {
                    if (comp[v] < 0) {
                        comp[v] = nc;
                        stack.push_back(v);
                    }
                };
                visit(g_[u]);
                for (int v : back[u]) visit(v);
            }
            ++nc;
        }
        std::vector<Subset> out(nc, Subset(n));
        for (int z = 0; z < n; ++z) out[comp[z]].insert(z);
        return out;
    }

    /// Q * g * Q^{-1} for a relabeling bijection Q.
    Development conjugate(const std::vector<int>& q) const {
        const int n = universe_size();
        if (static_cast<int>(q.size()) != n) throw NotABijection("wrong table length");
        std::vector<int> qinv(n, -1);
        for (int i = 0; i < n; ++i) {
            if (q[i] < 0 || q[i] >= n || qinv[q[i]] != -1)
                throw NotABijection("table is not a bijection");
            qinv[q[i]] = i;
        }
        std::vector<int> h(n);
        for (int i = 0; i < n; ++i) h[i] = q[g_[qinv[i]]];
        return Development(std::move(h));
    }

    /// Verifies the closed-form recovery of Q^{-1} from this development and
    /// its conjugate: every time the conjugated flow started at Q(x) reaches
    /// v, the original flow started at x sits at Q^{-1}(v).
    bool recover_inverse_check(const std::vector<int>& q) const {
        Development conj = conjugate(q);
        const int n = universe_size();
        std::vector<int> qinv(n);
        for (int i = 0; i < n; ++i) qinv[q[i]] = i;
        for (int x = 0; x < n; ++x) {
            long long hor = horizon();
            for (long long t = 0; t < hor; ++t) {
                int v = conj.evolve(q[x], t);
                if (evolve(x, t) != qinv[v]) return false;
            }
        }
        return true;
    }

  private:
    void check(int z) const {
        if (z < 0 || z >= universe_size()) throw OutOfRange("state " + std::to_string(z));
    }

    void require_bijective() const {
        if (!bijective_) throw NotADevelopment("operation needs an invertible generator");
    }

    void compute_orbits() {
        const int n = universe_size();
        orbits_.assign(n, {});
        max_preperiod_ = 0;
        cycle_lcm_ = 1;
        for (int z = 0; z < n; ++z) {
            std::vector<int> path;
            std::vector<int> pos(n, -1);
            int cur = z;
            while (pos[cur] < 0) {
                pos[cur] = static_cast<int>(path.size());
                path.push_back(cur);
                cur = g_[cur];
            }
            Orbit o;
            o.preperiod = pos[cur];
            o.tail.assign(path.begin(), path.begin() + o.preperiod);
            o.cycle.assign(path.begin() + o.preperiod, path.end());
            max_preperiod_ = std::max(max_preperiod_, o.preperiod);
            cycle_lcm_ = std::lcm(cycle_lcm_, static_cast<long long>(o.cycle.size()));
            orbits_[z] = std::move(o);
        }
    }

    std::vector<int> g_;
    std::vector<int> inv_;
    bool bijective_ = false;
    std::vector<Orbit> orbits_;
    int max_preperiod_ = 0;
    long long cycle_lcm_ = 1;
};

}  // namespace gtdyn
