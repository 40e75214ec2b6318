#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "gtdyn/development.hpp"
#include "gtdyn/errors.hpp"
#include "gtdyn/subset.hpp"

namespace gtdyn {

/// Symmetric nonnegative distance table over the universe. Distance
/// functions in the widest sense are admitted; the flags record which
/// metric axioms actually hold.
struct MetricTable {
    int n = 0;
    std::vector<double> d;  // row-major n*n

    bool symmetric = false;
    bool identifying = false;   // d(x,y) = 0 iff x = y
    bool triangle = false;
    bool diag_minimal = false;  // d(x,x) <= d(x,y)

    MetricTable() = default;
    MetricTable(int size, std::vector<double> values) : n(size), d(std::move(values)) {
        if (static_cast<int>(d.size()) != n * n) throw MetricShape("table is not n*n");
        for (double v : d)
            if (!(v >= 0.0)) throw MetricShape("negative or NaN distance");
        classify();
    }

    double operator()(int i, int j) const { return d[static_cast<std::size_t>(i) * n + j]; }

    void classify() {
        symmetric = identifying = triangle = diag_minimal = true;
        for (int i = 0; i < n; ++i) {
            if ((*this)(i, i) != 0.0) identifying = false;
            for (int j = 0; j < n; ++j) {
                if ((*this)(i, j) != (*this)(j, i)) symmetric = false;
                if ((*this)(i, i) > (*this)(i, j)) diag_minimal = false;
                if (i != j && (*this)(i, j) == 0.0) identifying = false;
            }
        }
        for (int i = 0; i < n && triangle; ++i)
            for (int j = 0; j < n && triangle; ++j)
                for (int k = 0; k < n; ++k)
                    if ((*this)(i, j) + (*this)(j, k) < (*this)(i, k) - 1e-12) {
                        triangle = false;
                        break;
                    }
    }

    bool is_metric() const { return symmetric && identifying && triangle; }

    /// Smallest positive pairwise distance: the grid scale h.
    double grid_scale() const {
        double h = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if ((*this)(i, j) > 0.0) h = std::min(h, (*this)(i, j));
        return h;
    }

    /// Sorted distinct positive distances: the scale grid.
    std::vector<double> scales() const {
        std::vector<double> s;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if ((*this)(i, j) > 0.0) s.push_back((*this)(i, j));
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return s;
    }

    double diameter() const {
        double m = 0.0;
        for (double v : d) m = std::max(m, v);
        return m;
    }

    double diameter_of(const Subset& region) const {
        double m = 0.0;
        auto ms = region.members();
        for (int a : ms)
            for (int b : ms) m = std::max(m, (*this)(a, b));
        return m;
    }

    /// Closed ball {y : d(y,x) <= r}.
    Subset ball(int x, double r) const {
        Subset b(n);
        for (int y = 0; y < n; ++y)
            if ((*this)(y, x) <= r) b.insert(y);
        return b;
    }

    MetricTable restrict_to(const std::vector<int>& states) const {
        int m = static_cast<int>(states.size());
        std::vector<double> v(static_cast<std::size_t>(m) * m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                v[static_cast<std::size_t>(i) * m + j] = (*this)(states[i], states[j]);
        return MetricTable(m, std::move(v));
    }

    static MetricTable circle(int n) {
        std::vector<double> v(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                int g = std::abs(i - j);
                g = std::min(g, n - g);
                v[static_cast<std::size_t>(i) * n + j] = double(g) / double(n);
            }
        return MetricTable(n, std::move(v));
    }

    static MetricTable discrete(int n) {
        std::vector<double> v(static_cast<std::size_t>(n) * n, 1.0);
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 0.0;
        return MetricTable(n, std::move(v));
    }
};

/// Trajectory-chart state space: `charts` disjoint trajectories, each
/// parametrized injectively by phases 0..window-1. State = chart*window +
/// phase. The injective phase maps are what a cyclic development cannot
/// provide; this is the shape on which a product metric can be transferred.
struct ChartSystem {
    int charts = 1;
    int window = 1;

    int states() const { return charts * window; }
    int chart_of(int state) const { return state / window; }
    int phase_of(int state) const { return state % window; }
};

/// Product metric d((i,p),(j,q)) = eta(dX(i,j), d1(p,q)) built from a chart
/// metric, an integer-time metric on phases and a plane norm. The result is
/// checked to be a metric.
inline MetricTable transfer_metric(const ChartSystem& cs, const MetricTable& chart_metric,
                                   const std::function<double(int, int)>& time_metric,
                                   const std::function<double(double, double)>& eta) {
    if (chart_metric.n != cs.charts) throw MetricShape("chart metric size mismatch");
    if (!chart_metric.is_metric()) throw MetricShape("chart metric is not a metric");
    const int n = cs.states();
    std::vector<double> v(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            v[static_cast<std::size_t>(a) * n + b] =
                eta(chart_metric(cs.chart_of(a), cs.chart_of(b)),
                    time_metric(cs.phase_of(a), cs.phase_of(b)));
    MetricTable out(n, std::move(v));
    if (!out.is_metric()) throw MetricShape("transferred table violates metric axioms");
    return out;
}

inline double eta_max(double a, double b) { return std::max(a, b); }
inline double eta_sum(double a, double b) { return a + b; }

/// Entry point taking a development. Finite developments always close into
/// cycles, so their per-state time maps are never injective and the product
/// transfer must be refused.
inline MetricTable transfer_metric(const Development& d, const MetricTable& chart_metric,
                                   const std::function<double(int, int)>& time_metric,
                                   const std::function<double(double, double)>& eta) {
    for (int z = 0; z < d.universe_size(); ++z)
        if (d.orbit(z).period() >= 1)
            throw CyclicOrbitUnsupported("time map is not injective through a cycle");
    // unreachable for nonempty universes; kept for the degenerate case
    ChartSystem cs{std::max(1, d.universe_size()), 1};
    return transfer_metric(cs, chart_metric, time_metric, eta);
}

}  // namespace gtdyn
