#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gtdyn/coloc.hpp"
#include "gtdyn/comanence.hpp"
#include "gtdyn/generate.hpp"

using namespace gtdyn;

namespace {

StructuredSystem rot4_chain() {
    return build(4, Development::rotation(4, 1).generator(),
                 SetSystem::of(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
}

}  // namespace

TEST_CASE("dilated neighbourhoods") {
    StructuredSystem s = rot4_chain();
    // t = 0: minimal covering unions of the single-state segment are the
    // localizations containing the state
    auto d0 = dilated_neighborhoods(s, 0, 0);
    REQUIRE(d0.size() == 2);
    CHECK(d0[0] == Subset::of(4, {0, 1}));
    CHECK(d0[1] == Subset::of(4, {0, 3}));

    // t = 1: segment {0,1}; minimal covering unions include the single
    // localization {0,1}
    auto d1 = dilated_neighborhoods(s, 0, 1);
    bool has01 = false;
    for (const auto& u : d1) has01 = has01 || u == Subset::of(4, {0, 1});
    CHECK(has01);
    for (const auto& u : d1) CHECK(orbit_segment(s.dev, 0, 1).is_subset_of(u));
}

TEST_CASE("internal comanence") {
    // identity: segments are points; some localization always fits
    StructuredSystem id =
        build(3, {0, 1, 2}, SetSystem::of(3, {{0, 1}, {1, 2}, {2, 0}}));
    CHECK(internally_comanent(id));

    // singleton structurings sweep exactly the segment, which sits inside
    // every covering union
    StructuredSystem singles =
        build(3, {1, 2, 0}, SetSystem::of(3, {{0}, {1}, {2}}));
    CHECK(internally_comanent(singles));

    // blocks cut across the rotation: the minimal covering union {0,1} of
    // the segment of 0 cannot absorb any block's one-step sweep
    StructuredSystem blocks =
        build(4, Development::rotation(4, 1).generator(), SetSystem::of(4, {{0, 1}, {2, 3}}));
    CHECK_FALSE(internally_comanent(blocks));

    // expanding map with fat localizations: ball sweeps outgrow the
    // minimal covering unions
    GenerateParams p;
    p.grid = 16;
    CHECK_FALSE(internally_comanent(generate("grid_doubling", p)));
}

TEST_CASE("finite convergence semantics") {
    SetSystem blocks = SetSystem::of(4, {{0, 1}, {2, 3}});
    CHECK(converges(blocks, {0}, 0));      // constant at the state itself
    CHECK(converges(blocks, {1}, 0));      // halo mate
    CHECK_FALSE(converges(blocks, {2}, 0));
    CHECK_FALSE(converges(blocks, {}, 0));
    CHECK(converges(blocks, {2, 3, 1}, 0));  // read by its tail

    // refining the structuring can only shrink the convergent constants
    SetSystem refined = SetSystem::of(4, {{0, 1}, {2, 3}, {0}, {2}});
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x)
            if (converges(refined, {x}, y)) CHECK(converges(blocks, {x}, y));
}

TEST_CASE("converse comanence") {
    // deterministic structuring: halos are singletons, nothing to compare
    StructuredSystem singles =
        build(3, {1, 2, 0}, SetSystem::of(3, {{0}, {1}, {2}}));
    CHECK(conversely_comanent(singles, gaussian_distance()));

    // halo mates with different return sets break it
    StructuredSystem blocks =
        build(4, Development::rotation(4, 1).generator(), SetSystem::of(4, {{0, 1}, {2, 3}}));
    CHECK_FALSE(conversely_comanent(blocks, gaussian_distance()));

    // duplicated phase: states 0 and 1 travel together, identical returns
    StructuredSystem twin =
        build(4, {2, 3, 0, 1}, SetSystem::of(4, {{0, 1}, {2, 3}}));
    CHECK(conversely_comanent(twin, gaussian_distance()));
    CHECK(conversely_comanent(twin, hausdorff_distance()));

    StructuredSystem merge{Development({1, 1}), SetSystem::of(2, {{0, 1}}), std::nullopt, {}};
    CHECK_THROWS_AS(conversely_comanent(merge, gaussian_distance()),
                    NegativeTimeUnsupported);
}

TEST_CASE("run persistence entry points") {
    auto runs = PeriodicIntSet::two_sided_residues(4, {0, 1});
    CHECK(run_persistence(runs, 2, false));
    CHECK(run_persistence(runs, 2, true));
    CHECK_FALSE(run_persistence(runs, 3, true));
    CHECK(total_run_persistence(runs, 2));
    CHECK_FALSE(total_run_persistence(PeriodicIntSet::finite({0, 1, 5}), 2));
    CHECK_THROWS_AS(run_persistence(runs, 0, false), OutOfRange);
}

TEST_CASE("transitivity precondition detector") {
    // when every return-time set of the curated instance is unbounded
    // run-persistent and the system is conversely comanent, the relation on the
    // reflexivity domain is an equivalence
    GenerateParams p;
    p.grid = 4;
    StructuredSystem rot = generate("grid_rotation", p);
    bool all_persistent = true;
    for (int z = 0; z < rot.universe_size(); ++z)
        for (const auto& a : rot.structuring.sets)
            all_persistent =
                all_persistent && rot.dev.time_preimage(z, a).has_unbounded_runs(1);
    CHECK(all_persistent);
    CHECK(conversely_comanent(rot, gaussian_distance()));
    CHECK(equivalence_classes(rot).is_equivalence);
}
