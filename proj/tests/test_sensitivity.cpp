#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gtdyn/generate.hpp"
#include "gtdyn/hierarchy.hpp"
#include "gtdyn/metric_sensitivity.hpp"
#include "gtdyn/oracle.hpp"

using namespace gtdyn;

namespace {

StructuredSystem doubling(int n = 256) {
    GenerateParams p;
    p.grid = n;
    return generate("grid_doubling", p);
}

StructuredSystem rotation(int n = 256, int k = 1) {
    GenerateParams p;
    p.grid = n;
    p.shift = k;
    return generate("grid_rotation", p);
}

StructuredSystem two_cycles() { return generate("two_cycles_coloc", {}); }

StructuredSystem rot4_blocks(int k) {
    return build(4, Development::rotation(4, k).generator(), SetSystem::of(4, {{0, 1}, {2, 3}}));
}

}  // namespace

TEST_CASE("pointwise metric sensitivity on the grids") {
    StructuredSystem d = doubling();
    for (int x : {0, 1, 37, 128, 255}) {
        auto v = metric_pointwise_sensitive(d.dev, *d.metric, x);
        CHECK(v.sensitive);
        CHECK(v.epsilon >= 0.25);
    }
    StructuredSystem r = rotation();
    for (int x : {0, 17, 201}) CHECK_FALSE(metric_pointwise_sensitive(r.dev, *r.metric, x).sensitive);
    StructuredSystem r3 = rotation(64, 3);
    CHECK_FALSE(metric_pointwise_sensitive(r3.dev, *r3.metric, 5).sensitive);

    Development id = Development::identity(8);
    MetricTable circle8 = MetricTable::circle(8);
    CHECK_FALSE(metric_pointwise_sensitive(id, circle8, 0).sensitive);

    CHECK_THROWS_AS(metric_pointwise_sensitive(doubling(8).dev, MetricTable::circle(8), 0, true),
                    NegativeTimeUnsupported);
}

TEST_CASE("resolution field on the grids") {
    StructuredSystem d = doubling();
    ResolutionField fd = resolution_field(d, 1.0 / 256);
    for (int x = 0; x < 256; ++x) {
        CHECK(fd.sensitive_at(x));
        CHECK(fd.value[x] >= 0.25);
    }

    StructuredSystem r = rotation();
    ResolutionField fr = resolution_field(r, 1.0 / 256);
    for (int x = 0; x < 256; ++x) CHECK(fr.value[x] == kNegInf);

    // single state: no distinct neighbour exists
    StructuredSystem one = build(1, {0}, SetSystem::of(1, {{0}}), MetricTable(1, {0.0}));
    ResolutionField f1 = resolution_field(one, 1.0);
    CHECK(f1.value[0] == kNegInf);

    CHECK_THROWS_AS(resolution_field(d, 1.0 / 1024), ScaleBelowResolution);
}

TEST_CASE("admissible set is the open interval below the field value") {
    StructuredSystem d = doubling(64);
    ResolutionField f = resolution_field(d, 1.0 / 64);
    for (int x = 0; x < 64; ++x) {
        if (f.value[x] == kNegInf) {
            CHECK_FALSE(f.admissible(x, 0.1));
        } else {
            CHECK(f.admissible(x, f.value[x] / 2));
            CHECK_FALSE(f.admissible(x, f.value[x]));
            CHECK_FALSE(f.admissible(x, 0.0));
        }
    }
}

TEST_CASE("resolution field links to the commutator witness on grids") {
    // a state with a finite field value admits a ball and a time with a
    // nonempty commutator against the ball structuring
    for (int n : {32, 64}) {
        StructuredSystem d = doubling(n);
        ResolutionField f = resolution_field(d, 1.0 / n);
        bool any_finite = false;
        for (int x = 0; x < n; ++x) any_finite = any_finite || f.value[x] > 0;
        REQUIRE(any_finite);
        CHECK(setwise_sensitivity(d).grade0);
    }
    // vacuous on the singular side: nothing to witness for the isometry
    StructuredSystem r = rotation(32, 1);
    ResolutionField fr = resolution_field(r, 1.0 / 32);
    for (double v : fr.value) CHECK(v == kNegInf);
}

TEST_CASE("comanence function") {
    StructuredSystem r = rotation();
    // isometries: the largest safe starting distance equals the threshold
    for (double delta : {1.0 / 256, 8.0 / 256, 64.0 / 256})
        for (long long t : {0LL, 1LL, 4LL, 16LL})
            CHECK(comanence_value(r.dev, *r.metric, *r.metric, delta, t) ==
                  Catch::Approx(delta).margin(1e-12));

    // thresholds beyond the diameter admit every starting distance
    CHECK(comanence_value(r.dev, *r.metric, *r.metric, 0.75, 3) ==
          Catch::Approx(r.metric->diameter()));

    // expansion: the safe distance shrinks like 2^{-t}, clamped to the grid
    StructuredSystem d = doubling();
    double b0 = comanence_value(d.dev, *d.metric, *d.metric, 16.0 / 256, 0);
    double b2 = comanence_value(d.dev, *d.metric, *d.metric, 16.0 / 256, 2);
    CHECK(b0 == Catch::Approx(16.0 / 256));
    CHECK(b2 == Catch::Approx(4.0 / 256));

    CHECK(is_comanent(d.dev, *d.metric, *d.metric, {4.0 / 256, 32.0 / 256}, {0, 1, 2}));
    CHECK_THROWS_AS(comanence_value(r.dev, *r.metric, *r.metric, 0.0, 1), BadParams);
}

TEST_CASE("a comanent system can be pointwise sensitive") {
    StructuredSystem d = doubling();
    const MetricTable& m = *d.metric;
    std::vector<double> deltas = {1.0 / 256, 16.0 / 256, 0.5};
    std::vector<long long> ts = {0, 1, 2, 4, 8};
    CHECK(is_comanent(d.dev, m, m, deltas, ts));
    CHECK(metric_pointwise_sensitive(d.dev, m, 0).sensitive);
}

TEST_CASE("fixed sensitivity") {
    // the two-cycle fixture: every localization of state 1 hosts a pair
    // reaching a disjoint localization pair at matching residues
    auto v = fixed_sensitive_at(two_cycles(), 1);
    CHECK(v.sensitive);
    REQUIRE_FALSE(v.witnesses.empty());

    // Cantor-continuous systems are nowhere fixed sensitive
    StructuredSystem r2 = rot4_blocks(2);
    for (int z = 0; z < 4; ++z) CHECK_FALSE(fixed_sensitive_at(r2, z).sensitive);

    // singleton universe: no disjoint pair exists
    StructuredSystem one = build(1, {0}, SetSystem::of(1, {{0}}));
    CHECK_FALSE(fixed_sensitive_at(one, 0).sensitive);
}

TEST_CASE("fixed sensitivity equals the simulation oracle") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 60; ++trial) {
        GenerateParams p;
        p.n = 2 + static_cast<int>(rng() % 5);
        p.sets = 2 + static_cast<int>(rng() % 3);
        p.seed = rng();
        StructuredSystem s = generate("random_perm", p);
        for (int z = 0; z < s.universe_size(); ++z)
            CHECK(fixed_sensitive_at(s, z).sensitive == oracle_fixed_sensitive_at(s, z));
    }
}

TEST_CASE("protosensitivity") {
    StructuredSystem tc = two_cycles();
    for (int z = 0; z < 6; ++z) {
        // fixed implies first kind implies second kind
        if (fixed_sensitive_at(tc, z).sensitive) CHECK(protosensitive(tc, z, ProtoKind::I));
        if (protosensitive(tc, z, ProtoKind::I)) CHECK(protosensitive(tc, z, ProtoKind::II));
    }

    // a separated structuring with moving states escapes every fixed set
    StructuredSystem singles = build(3, {1, 2, 0}, SetSystem::of(3, {{0}, {1}, {2}}));
    CHECK(has_hausdorff_separation(singles.structuring));
    for (int z = 0; z < 3; ++z) CHECK(protosensitive(singles, z, ProtoKind::II));

    // the whole universe as the only localization absorbs everything
    StructuredSystem whole = build(3, {1, 2, 0}, SetSystem::of(3, {{0, 1, 2}}));
    CHECK_FALSE(protosensitive(whole, 0, ProtoKind::I));
    CHECK_FALSE(protosensitive(whole, 0, ProtoKind::II));
}

TEST_CASE("implication chain on random instances") {
    std::mt19937_64 rng(505);
    for (int trial = 0; trial < 80; ++trial) {
        GenerateParams p;
        p.n = 2 + static_cast<int>(rng() % 5);
        p.sets = 2 + static_cast<int>(rng() % 3);
        p.seed = rng();
        StructuredSystem s = generate("random_perm", p);
        for (int z = 0; z < s.universe_size(); ++z) {
            if (fixed_sensitive_at(s, z).sensitive) CHECK(protosensitive(s, z, ProtoKind::I));
            if (protosensitive(s, z, ProtoKind::I)) CHECK(protosensitive(s, z, ProtoKind::II));
        }
    }
}

TEST_CASE("setwise sensitivity") {
    SetwiseVerdict v1 = setwise_sensitivity(rot4_blocks(1));
    CHECK(v1.grade0);
    CHECK(v1.unbounded);
    REQUIRE_FALSE(v1.witnesses.empty());

    SetwiseVerdict v2 = setwise_sensitivity(rot4_blocks(2));
    CHECK_FALSE(v2.grade0);

    StructuredSystem id{Development::identity(4), SetSystem::of(4, {{0, 1}, {2, 3}}),
                        std::nullopt, {}};
    SetwiseVerdict v3 = setwise_sensitivity(id);
    CHECK_FALSE(v3.grade0);
    CHECK_FALSE(v3.unbounded);
}

TEST_CASE("sensitivity order") {
    // no witness anywhere: order 0 without sensitivity
    OrderVerdict v2 = s_ord(rot4_blocks(2));
    CHECK_FALSE(v2.sensitive);
    CHECK(v2.order == 0);

    // the doubling grid certifies order >= 1 (the restriction of the
    // collapsed power to a ball is continuous on its trace)
    OrderVerdict vd = s_ord(doubling(64), {kDefaultTimeCap, 1});
    CHECK(vd.sensitive);
    CHECK(vd.order >= 1);

    // rotation grids certify nothing
    OrderVerdict vr = s_ord(rotation(64, 1), {kDefaultTimeCap, 2});
    CHECK_FALSE(vr.sensitive);
    CHECK(vr.order == 0);

    // depth cap reached reports a capped verdict
    OrderVerdict capped = s_ord(doubling(32), {kDefaultTimeCap, 1});
    if (capped.order >= 1) CHECK(capped.capped);
}

TEST_CASE("capped time scans report unknown instead of guessing") {
    StructuredSystem r1 = rot4_blocks(1);
    SetwiseVerdict capped = setwise_sensitivity(r1, /*t_cap=*/2);
    CHECK(capped.unknown);
    CHECK_THROWS_AS(protosensitive(r1, 0, ProtoKind::I, /*t_cap=*/2), CapExceeded);
    PowerScan ps = power_scan(r1.dev, 2);
    CHECK(ps.capped);
    CHECK(power_scan(r1.dev).count() == 4);
}

TEST_CASE("quantified sensitivity on the grids") {
    StructuredSystem d = doubling(64);
    StructuredSystem r = rotation(64, 1);
    for (int alpha : {0, 3, 40}) {
        auto qd = quantified_sensitive_at(d, PairDistanceKind::Hausdorff, alpha);
        auto md = metric_pointwise_sensitive(d.dev, *d.metric, alpha);
        CHECK(qd.sensitive == md.sensitive);
        auto qr = quantified_sensitive_at(r, PairDistanceKind::Hausdorff, alpha);
        auto mr = metric_pointwise_sensitive(r.dev, *r.metric, alpha);
        CHECK(qr.sensitive == mr.sensitive);
        CHECK_FALSE(qr.sensitive);
    }

    StructuredSystem whole =
        build(3, {1, 2, 0}, SetSystem::of(3, {{0, 1, 2}}), MetricTable::circle(3));
    CHECK_FALSE(quantified_sensitive_at(whole, PairDistanceKind::Hausdorff, 0).sensitive);

    StructuredSystem nometric = rot4_blocks(1);
    CHECK_THROWS_AS(quantified_sensitive_at(nometric, PairDistanceKind::Hausdorff, 0), NoMetric);
}

TEST_CASE("chaotic order of restrictions") {
    StructuredSystem tc = two_cycles();
    // full universe: equals the system order
    OrderVerdict whole = chaotic_order(tc, Subset::full_set(6));
    OrderVerdict direct = s_ord(tc);
    CHECK(whole.order == direct.order);
    CHECK(whole.sensitive == direct.sensitive);

    // one trajectory is invariant; restriction is a plain 3-cycle
    OrderVerdict cyc = chaotic_order(tc, Subset::of(6, {0, 1, 2}));
    CHECK_FALSE(cyc.sensitive);

    CHECK_THROWS_AS(chaotic_order(tc, Subset::of(6, {0, 3, 4})), NotInvariant);
}
