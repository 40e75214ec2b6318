#include <catch2/catch_amalgamated.hpp>

#include "gtdyn/intermittency.hpp"

using namespace gtdyn;

TEST_CASE("finite topology validation") {
    CHECK_NOTHROW(FiniteTopology::of(2, {{}, {0}, {0, 1}}));
    CHECK_THROWS_AS(FiniteTopology::of(2, {{0}, {0, 1}}), NotATopology);      // no empty set
    CHECK_THROWS_AS(FiniteTopology::of(3, {{}, {0}, {1}, {0, 1, 2}}), NotATopology);
    CHECK_NOTHROW(FiniteTopology::generated(3, {{0}, {1}}));
}

TEST_CASE("minimal neighbourhoods") {
    FiniteTopology t = FiniteTopology::generated(3, {{0, 1}, {1}});
    CHECK(t.minimal_neighborhood(0) == Subset::of(3, {0, 1}));
    CHECK(t.minimal_neighborhood(1) == Subset::of(3, {1}));
    CHECK(t.minimal_neighborhood(2) == Subset::full_set(3));
}

TEST_CASE("continuity between finite topologies") {
    FiniteTopology discrete3 = FiniteTopology::generated(3, {{0}, {1}, {2}});
    FiniteTopology merged = FiniteTopology::generated(3, {{1}, {2}, {0, 1}});
    std::vector<int> id = {0, 1, 2};
    // identity into the discrete target is continuous exactly at points
    // with singleton minimal neighbourhoods
    CHECK_FALSE(continuous_at(id, merged, discrete3, 0));
    CHECK(continuous_at(id, merged, discrete3, 1));
    CHECK(continuous_at(id, merged, discrete3, 2));
}

TEST_CASE("intermittent discontinuity orders") {
    // merged-partition construction on three states: the blocks {1}, {2}
    // survive, {0} is merged into {0,1}; the identity into the discrete
    // topology is discontinuous at 0 but continuous on the sub-block {1}
    FiniteTopology t1 = FiniteTopology::generated(3, {{1}, {2}, {0, 1}});
    FiniteTopology t2 = FiniteTopology::generated(3, {{0}, {1}, {2}});
    std::vector<int> id = {0, 1, 2};
    CHECK(intermittent_order(id, t1, t2, 0) == 1);
    CHECK(intermittent_order(id, t1, t2, 1) == 0);  // continuous there
    CHECK(intermittent_order(id, t1, t2, 2) == 0);

    // chain of two merges: 1 is order-1 inside {1,2}, and 0 accumulates it
    FiniteTopology chain = FiniteTopology::generated(4, {{2}, {3}, {1, 2}, {0, 1, 2}});
    FiniteTopology target = FiniteTopology::generated(4, {{0}, {1}, {2}, {3}});
    std::vector<int> id4 = {0, 1, 2, 3};
    CHECK(intermittent_order(id4, chain, target, 1) == 1);
    CHECK(intermittent_order(id4, chain, target, 0) == 2);

    // discontinuity without the witness: no sub-neighbourhood restricts
    // continuously inside the minimal neighbourhood of 0
    FiniteTopology coarse = FiniteTopology::generated(2, {{0, 1}});
    FiniteTopology fine = FiniteTopology::generated(2, {{0}, {1}});
    std::vector<int> swap_map = {1, 0};
    CHECK(intermittent_order(swap_map, coarse, fine, 0) == 0);
}

TEST_CASE("order caps") {
    FiniteTopology chain = FiniteTopology::generated(4, {{2}, {3}, {1, 2}, {0, 1, 2}});
    FiniteTopology target = FiniteTopology::generated(4, {{0}, {1}, {2}, {3}});
    std::vector<int> id4 = {0, 1, 2, 3};
    CHECK(intermittent_order(id4, chain, target, 0, 1) == 0);  // capped below its order
}
