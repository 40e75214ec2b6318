#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gtdyn/structured.hpp"

namespace gtdyn {

struct GenerateParams {
    int n = 6;          // universe size for random kinds
    int sets = 4;       // family size for random covers
    int grid = 256;     // N for grid kinds
    int shift = 1;      // rotation step
    std::uint64_t seed = 0;
};

inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) {
        std::uniform_int_distribution<int> u(0, i);
        std::swap(p[i], p[u(rng)]);
    }
    return p;
}

inline SetSystem random_cover(int n, int k, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> member(0, 2);  // ~1/3 inclusion
    std::vector<std::vector<int>> sets(k);
    Subset covered(n);
    for (auto& s : sets)
        for (int z = 0; z < n; ++z)
            if (member(rng) == 0) {
                s.push_back(z);
                covered.insert(z);
            }
    // patch uncovered states into random sets so the family structures
    for (int z = 0; z < n; ++z)
        if (!covered.contains(z)) {
            std::uniform_int_distribution<int> pick(0, k - 1);
            sets[pick(rng)].push_back(z);
        }
    return SetSystem::of(n, sets);
}

inline SetSystem ball_structuring(const MetricTable& m, double radius) {
    std::vector<Subset> balls;
    for (int c = 0; c < m.n; ++c) {
        Subset b(m.n);
        for (int y = 0; y < m.n; ++y)
            if (m(y, c) < radius) b.insert(y);
        balls.push_back(b);
    }
    return SetSystem(m.n, std::move(balls));
}

/// Rebuild the structuring as the partition into unions of trajectories,
/// merged along the incidence components of the original sets. The result
/// is an invariant partition of the state space.
inline StructuredSystem invariant_block_system(const StructuredSystem& raw) {
    const int n = raw.universe_size();
    auto trajectories = raw.dev.trajectories();
    const int m = static_cast<int>(trajectories.size());
    std::vector<int> comp(m);
    for (int i = 0; i < m; ++i) comp[i] = i;
    std::function<int(int)> find = [&](int i) {
        return comp[i] == i ? i : comp[i] = find(comp[i]);
    };
    for (const auto& set : raw.structuring.sets)
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                if (set.intersects(trajectories[i]) && set.intersects(trajectories[j]))
                    comp[find(i)] = find(j);
    std::vector<Subset> blocks;
    for (int i = 0; i < m; ++i) {
        if (find(i) != i) continue;
        Subset b(n);
        for (int j = 0; j < m; ++j)
            if (find(j) == i) b = b | trajectories[j];
        blocks.push_back(b);
    }
    return StructuredSystem{raw.dev, SetSystem(n, std::move(blocks)), std::nullopt, raw.labels};
}

/// Deterministic instance generators. Curated kinds pin the fixtures the
/// acceptance suite replays.
inline StructuredSystem generate(const std::string& kind, const GenerateParams& p) {
    std::mt19937_64 rng(p.seed);
    if (kind == "random_perm") {
        if (p.n < 1 || p.sets < 1) throw BadParams("need n >= 1 and sets >= 1");
        return build(p.n, random_permutation(p.n, rng), random_cover(p.n, p.sets, rng));
    }
    if (kind == "random_map") {
        if (p.n < 1 || p.sets < 1) throw BadParams("need n >= 1 and sets >= 1");
        std::uniform_int_distribution<int> u(0, p.n - 1);
        std::vector<int> g(p.n);
        for (auto& v : g) v = u(rng);
        return build(p.n, std::move(g), random_cover(p.n, p.sets, rng));
    }
    if (kind == "deterministic_cover") {
        // random cover refined to pointwise localizability: halos are split
        // down to singletons by extra sets rather than by adding singleton
        // members wholesale, which would collapse the closure operator to
        // the identity and trivialize every commutator
        if (p.n < 1 || p.sets < 1) throw BadParams("need n >= 1 and sets >= 1");
        SetSystem cover = random_cover(p.n, p.sets, rng);
        std::vector<Subset> sets = cover.sets;
        std::uniform_int_distribution<int> coin(0, 1);
        for (int z = 0; z < p.n; ++z) {
            for (int guard = 0; guard < 8 * p.n; ++guard) {
                Subset h = halo(SetSystem(p.n, sets), z);
                if (h.count() == 1) break;
                int w = -1;
                h.for_each([&](int m) {
                    if (m != z && w < 0) w = m;
                });
                Subset split(p.n);
                split.insert(z);
                for (int u = 0; u < p.n; ++u)
                    if (u != w && coin(rng)) split.insert(u);
                split.erase(w);
                sets.push_back(split);
            }
        }
        return build(p.n, random_permutation(p.n, rng), SetSystem(p.n, std::move(sets)));
    }
    if (kind == "partition_cover") {
        if (p.n < 1 || p.sets < 1) throw BadParams("need n >= 1 and sets >= 1");
        std::uniform_int_distribution<int> pick(0, p.sets - 1);
        std::vector<std::vector<int>> blocks(p.sets);
        for (int z = 0; z < p.n; ++z) blocks[pick(rng)].push_back(z);
        blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                    [](const auto& b) { return b.empty(); }),
                     blocks.end());
        return build(p.n, random_permutation(p.n, rng), SetSystem::of(p.n, blocks));
    }
    if (kind == "grid_rotation") {
        if (p.grid < 3) throw BadParams("grid needs at least 3 points");
        MetricTable m = MetricTable::circle(p.grid);
        return build(p.grid, Development::rotation(p.grid, p.shift).generator(),
                     ball_structuring(m, 2.0 / p.grid), m, {"grid_rotation"});
    }
    if (kind == "grid_doubling") {
        if (p.grid < 3) throw BadParams("grid needs at least 3 points");
        MetricTable m = MetricTable::circle(p.grid);
        std::vector<int> g(p.grid);
        for (int i = 0; i < p.grid; ++i) g[i] = (2 * i) % p.grid;
        return build(p.grid, std::move(g), ball_structuring(m, 2.0 / p.grid), m,
                     {"grid_doubling"});
    }
    if (kind == "two_cycles_coloc") {
        return build(6, {1, 2, 0, 4, 5, 3},
                     SetSystem::of(6, {{1, 4}, {0, 4}, {3}, {2, 5}}), std::nullopt,
                     {"two_cycles_coloc"});
    }
    throw BadParams("unknown instance kind: " + kind);
}

}  // namespace gtdyn
