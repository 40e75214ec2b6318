#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "gtdyn/errors.hpp"

namespace gtdyn {

/// Eventually periodic set of integers: explicit bits on the transient
/// window [0, B), then residue classes mod `period` from B on. Two-sided
/// sets (return-time sets of invertible developments) are purely periodic
/// over all of Z and carry an empty transient window.
class PeriodicIntSet {
  public:
    PeriodicIntSet() : period_(1), residues_(1, false) {}

    static PeriodicIntSet forward(std::vector<bool> transient, int period,
                                  std::vector<bool> residues) {
        PeriodicIntSet s;
        s.two_sided_ = false;
        s.transient_ = std::move(transient);
        s.period_ = period;
        s.residues_ = std::move(residues);
        s.validate();
        s.reduce();
        return s;
    }

    static PeriodicIntSet two_sided(int period, std::vector<bool> residues) {
        PeriodicIntSet s;
        s.two_sided_ = true;
        s.period_ = period;
        s.residues_ = std::move(residues);
        s.validate();
        s.reduce();
        return s;
    }

    static PeriodicIntSet two_sided_residues(int period, const std::vector<int>& rs) {
        std::vector<bool> bits(period, false);
        for (int r : rs) bits[((r % period) + period) % period] = true;
        return two_sided(period, std::move(bits));
    }

    /// Finite forward set given by explicit nonnegative members.
    static PeriodicIntSet finite(const std::vector<long long>& members) {
        long long hi = 0;
        for (auto m : members) {
            if (m < 0) throw OutOfRange("finite(): negative member in forward set");
            hi = std::max(hi, m + 1);
        }
        std::vector<bool> bits(static_cast<std::size_t>(hi), false);
        for (auto m : members) bits[static_cast<std::size_t>(m)] = true;
        return forward(std::move(bits), 1, {false});
    }

    static PeriodicIntSet empty_forward() { return PeriodicIntSet(); }

    bool is_two_sided() const { return two_sided_; }
    int period() const { return period_; }
    long long transient_bound() const { return static_cast<long long>(transient_.size()); }
    const std::vector<bool>& residues() const { return residues_; }

    /// Membership over the declared time domain (Z for two-sided sets,
    /// N otherwise).
    bool contains(long long t) const {
        if (t < 0 && !two_sided_)
            throw NegativeTimeUnsupported("membership query at t < 0 on a forward set");
        return eval(t);
    }

    /// Membership with out-of-domain times reading as absent; used by the
    /// windowed distance evaluators.
    bool contains_or_absent(long long t) const {
        if (t < 0 && !two_sided_) return false;
        return eval(t);
    }

    bool empty() const {
        for (bool b : transient_)
            if (b) return false;
        for (bool b : residues_)
            if (b) return false;
        return true;
    }

    bool eventually_empty() const {
        for (bool b : residues_)
            if (b) return false;
        return true;
    }

    PeriodicIntSet set_union(const PeriodicIntSet& o) const {
        return combine(o, [](bool a, bool b) { return a || b; });
    }
    PeriodicIntSet set_intersection(const PeriodicIntSet& o) const {
        return combine(o, [](bool a, bool b) { return a && b; });
    }
    PeriodicIntSet set_difference(const PeriodicIntSet& o) const {
        return combine(o, [](bool a, bool b) { return a && !b; });
    }
    PeriodicIntSet symmetric_difference(const PeriodicIntSet& o) const {
        return combine(o, [](bool a, bool b) { return a != b; });
    }

    /// { t + d : t in this }. Forward sets clip at 0 when d < 0.
    PeriodicIntSet translate(long long d) const {
        PeriodicIntSet s;
        s.two_sided_ = two_sided_;
        s.period_ = period_;
        s.residues_.assign(period_, false);
        if (two_sided_) {
            for (int i = 0; i < period_; ++i)
                s.residues_[static_cast<std::size_t>(mod(i + d, period_))] = residues_[i];
            // two-sided sets stay purely periodic
        } else {
            long long b = transient_bound();
            long long nb = std::max<long long>(0, b + d);
            // keep one extra period of explicit bits so phases line up
            nb += period_;
            s.transient_.assign(static_cast<std::size_t>(nb), false);
            for (long long t = 0; t < nb; ++t)
                s.transient_[static_cast<std::size_t>(t)] = (t - d >= 0) && eval(t - d);
            for (int i = 0; i < period_; ++i)
                s.residues_[static_cast<std::size_t>(mod(i + d, period_))] = residues_[i];
        }
        s.reduce();
        return s;
    }

    bool operator==(const PeriodicIntSet& o) const {
        return two_sided_ == o.two_sided_ && transient_ == o.transient_ &&
               period_ == o.period_ && residues_ == o.residues_;
    }
    bool operator!=(const PeriodicIntSet& o) const { return !(*this == o); }

    /// Contains a run of at least L consecutive integers somewhere.
    bool has_run(int run_length) const {
        if (run_length <= 0) throw OutOfRange("run length must be >= 1");
        if (cyclic_run(residues_) >= run_length) return true;
        // runs through the transient window and across the boundary
        long long lo = two_sided_ ? -(2LL * period_ + run_length) : 0;
        long long hi = transient_bound() + 2LL * period_ + run_length;
        int run = 0;
        for (long long t = lo; t < hi; ++t) {
            run = eval(t) ? run + 1 : 0;
            if (run >= run_length) return true;
        }
        return false;
    }

    /// Runs of length >= L persist beyond every bound (both directions for
    /// two-sided sets). Decided on the residue pattern.
    bool has_unbounded_runs(int run_length) const {
        if (run_length <= 0) throw OutOfRange("run length must be >= 1");
        return cyclic_run(residues_) >= run_length;
    }

    /// Every maximal run of the set has length >= L; the discrete reading of
    /// "every piece is thick". Vacuous on the empty set.
    bool all_runs_at_least(int run_length) const {
        if (run_length <= 0) throw OutOfRange("run length must be >= 1");
        if (empty()) return true;
        bool wheel_all = true, wheel_none = true;
        for (bool b : residues_) (b ? wheel_none : wheel_all) = false;
        long long hi = transient_bound() + 2LL * period_ + 1;
        if (wheel_all && two_sided_) return true;  // the set is all of Z
        // choose scan endpoints sitting on absent positions so every run in
        // between is a genuine maximal run
        long long lo = 0;
        if (two_sided_) {
            lo = -(2LL * period_ + 1);
            while (eval(lo) && lo > -(4LL * period_ + 2)) --lo;
            if (eval(lo)) return true;  // no absent position: all of Z
        }
        if (!wheel_none && !wheel_all) {
            while (eval(hi) && hi < transient_bound() + 4LL * period_ + 2) ++hi;
        }
        int run = 0;
        for (long long t = lo; t < hi; ++t) {
            bool in = eval_or_absent(t);
            if (in) {
                ++run;
            } else {
                if (run > 0 && run < run_length) return false;
                run = 0;
            }
        }
        // a run still open at hi either ends at an absent hi (checked) or
        // continues into an all-true wheel (infinite, fine)
        if (run > 0 && run < run_length && !eval(hi)) return false;
        return true;
    }

    std::vector<long long> members_in(long long lo, long long hi) const {
        std::vector<long long> out;
        for (long long t = lo; t <= hi; ++t)
            if (eval_or_absent(t)) out.push_back(t);
        return out;
    }

    std::string to_string() const {
        std::string s = two_sided_ ? "Z:" : "N:";
        s += "[";
        for (std::size_t i = 0; i < transient_.size(); ++i) s += transient_[i] ? '1' : '0';
        s += "](";
        for (int i = 0; i < period_; ++i) s += residues_[i] ? '1' : '0';
        s += ") mod " + std::to_string(period_);
        return s;
    }

  private:
    static long long mod(long long a, long long m) { return ((a % m) + m) % m; }

    bool eval(long long t) const {
        if (t >= 0 && t < transient_bound())
            return transient_[static_cast<std::size_t>(t)];
        return residues_[static_cast<std::size_t>(mod(t, period_))];
    }

    bool eval_or_absent(long long t) const {
        if (t < 0 && !two_sided_) return false;
        return eval(t);
    }

    void validate() const {
        if (period_ <= 0) throw OutOfRange("period must be positive");
        if ((int)residues_.size() != period_) throw OutOfRange("residue bits != period");
        if (two_sided_ && !transient_.empty())
            throw OutOfRange("two-sided sets are purely periodic");
    }

    /// Longest cyclic run of set bits; period_ + run marks an all-true wheel.
    static int cyclic_run(const std::vector<bool>& bits) {
        int p = (int)bits.size();
        bool all = true;
        for (bool b : bits) all = all && b;
        if (all) return 2 * p + 64;  // effectively unbounded
        int best = 0, run = 0;
        for (int i = 0; i < 2 * p; ++i) {
            run = bits[i % p] ? run + 1 : 0;
            best = std::max(best, run);
        }
        return best;
    }

    /// Canonical form: minimal period, transient folded into the wheel.
    void reduce() {
        for (int d = 1; d <= period_ / 2; ++d) {
            if (period_ % d) continue;
            bool ok = true;
            for (int i = 0; i < period_ && ok; ++i) ok = residues_[i] == residues_[i % d];
            if (ok) {
                residues_.assign(residues_.begin(), residues_.begin() + d);
                period_ = d;
                break;
            }
        }
        while (!transient_.empty()) {
            long long t = transient_bound() - 1;
            if (transient_.back() == residues_[static_cast<std::size_t>(mod(t, period_))])
                transient_.pop_back();
            else
                break;
        }
    }

    template <class Op>
    PeriodicIntSet combine(const PeriodicIntSet& o, Op op) const {
        PeriodicIntSet s;
        s.two_sided_ = two_sided_ && o.two_sided_;
        s.period_ = std::lcm(period_, o.period_);
        long long b = std::max(transient_bound(), o.transient_bound());
        s.residues_.assign(s.period_, false);
        for (int i = 0; i < s.period_; ++i) {
            long long t = b + i;  // evaluate in the joint periodic regime
            s.residues_[static_cast<std::size_t>(mod(t, s.period_))] =
                op(eval(t), o.eval(t));
        }
        if (!s.two_sided_) {
            s.transient_.assign(static_cast<std::size_t>(b), false);
            for (long long t = 0; t < b; ++t)
                s.transient_[static_cast<std::size_t>(t)] =
                    op(eval_or_absent(t), o.eval_or_absent(t));
        }
        s.reduce();
        return s;
    }

    bool two_sided_ = false;
    std::vector<bool> transient_;
    int period_ = 1;
    std::vector<bool> residues_;
};

/// Gaussian-weighted symmetric-difference distance on integer sets,
/// truncated to a symmetric window. Point masses e^{-k^2/2}/sqrt(2*pi); the
/// default window's tail mass is far below double precision.
inline double gaussian_set_distance(const PeriodicIntSet& x, const PeriodicIntSet& y,
                                    int window = 64) {
    constexpr double inv_sqrt_2pi = 0.3989422804014326779;
    double acc = 0.0;
    for (long long k = -window; k <= window; ++k) {
        if (x.contains_or_absent(k) != y.contains_or_absent(k))
            acc += inv_sqrt_2pi * std::exp(-0.5 * double(k) * double(k));
    }
    return acc;
}

/// Two-sided Hausdorff distance between the window traces of two integer
/// sets under |a-b|. Empty-vs-nonempty traces read as infinitely far apart.
inline double hausdorff_set_distance(const PeriodicIntSet& x, const PeriodicIntSet& y,
                                     int window = 64) {
    auto xs = x.members_in(-window, window);
    auto ys = y.members_in(-window, window);
    if (xs.empty() && ys.empty()) return 0.0;
    if (xs.empty() || ys.empty()) return std::numeric_limits<double>::infinity();
    auto side = [](const std::vector<long long>& from, const std::vector<long long>& to) {
        long long worst = 0;
        for (long long a : from) {
            long long best = std::numeric_limits<long long>::max();
            for (long long b : to) best = std::min(best, std::llabs(a - b));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return double(std::max(side(xs, ys), side(ys, xs)));
}

}  // namespace gtdyn
