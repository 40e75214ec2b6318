#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gtdyn/comanence.hpp"
#include "gtdyn/periodic_set.hpp"

using namespace gtdyn;

namespace {

PeriodicIntSet random_set(std::mt19937_64& rng, bool two_sided) {
    int period = 1 + static_cast<int>(rng() % 6);
    std::vector<bool> residues(period);
    for (int i = 0; i < period; ++i) residues[i] = rng() % 2;
    if (two_sided) return PeriodicIntSet::two_sided(period, std::move(residues));
    int b = static_cast<int>(rng() % 5);
    std::vector<bool> transient(b);
    for (int i = 0; i < b; ++i) transient[i] = rng() % 2;
    return PeriodicIntSet::forward(std::move(transient), period, std::move(residues));
}

}  // namespace

TEST_CASE("membership and domains") {
    auto evens = PeriodicIntSet::two_sided_residues(2, {0});
    CHECK(evens.contains(0));
    CHECK(evens.contains(-4));
    CHECK_FALSE(evens.contains(3));

    auto fwd = PeriodicIntSet::finite({1, 4});
    CHECK(fwd.contains(4));
    CHECK_FALSE(fwd.contains(0));
    CHECK_THROWS_AS(fwd.contains(-1), NegativeTimeUnsupported);
    CHECK_FALSE(fwd.contains_or_absent(-1));
}

TEST_CASE("canonical form reduces periods and transients") {
    auto redundant = PeriodicIntSet::two_sided(4, {true, false, true, false});
    CHECK(redundant.period() == 2);
    CHECK(redundant == PeriodicIntSet::two_sided_residues(2, {0}));

    auto padded = PeriodicIntSet::forward({true, false, true}, 2, {true, false});
    CHECK(padded.transient_bound() == 0);  // transient agrees with the wheel
}

TEST_CASE("set algebra matches pointwise evaluation") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        bool two = rng() % 2;
        auto x = random_set(rng, two);
        auto y = random_set(rng, two);
        auto u = x.set_union(y);
        auto i = x.set_intersection(y);
        auto s = x.symmetric_difference(y);
        long long lo = two ? -30 : 0;
        for (long long t = lo; t <= 30; ++t) {
            CHECK(u.contains(t) == (x.contains(t) || y.contains(t)));
            CHECK(i.contains(t) == (x.contains(t) && y.contains(t)));
            CHECK(s.contains(t) == (x.contains(t) != y.contains(t)));
        }
    }
}

TEST_CASE("translation") {
    auto evens = PeriodicIntSet::two_sided_residues(2, {0});
    CHECK(evens.translate(1) == PeriodicIntSet::two_sided_residues(2, {1}));
    auto quarters = PeriodicIntSet::two_sided_residues(4, {0});
    CHECK(quarters.translate(1) == PeriodicIntSet::two_sided_residues(4, {1}));
    CHECK(quarters.translate(-1) == PeriodicIntSet::two_sided_residues(4, {3}));
    auto fwd = PeriodicIntSet::finite({0, 3});
    auto moved = fwd.translate(2);
    CHECK(moved.contains(2));
    CHECK(moved.contains(5));
    CHECK_FALSE(moved.contains(0));
    // clipping at the domain edge
    auto back = fwd.translate(-1);
    CHECK(back.contains(2));
    CHECK_FALSE(back.contains_or_absent(0));
}

TEST_CASE("runs and persistence") {
    auto pairs = PeriodicIntSet::two_sided_residues(4, {0, 1});
    CHECK(run_persistence(pairs, 2, true));
    CHECK(run_persistence(pairs, 2, false));
    CHECK_FALSE(run_persistence(pairs, 3, true));

    auto spread = PeriodicIntSet::two_sided_residues(4, {0, 2});
    CHECK_FALSE(run_persistence(spread, 2, false));
    CHECK(run_persistence(spread, 1, true));  // periodicity alone gives 1-runs

    auto all = PeriodicIntSet::two_sided_residues(1, {0});
    CHECK(run_persistence(all, 50, true));

    // a long transient run that never recurs
    auto burst = PeriodicIntSet::finite({5, 6, 7, 8});
    CHECK(run_persistence(burst, 4, false));
    CHECK_FALSE(run_persistence(burst, 1, true));
}

TEST_CASE("run persistence is monotone decreasing in the run length") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        auto x = random_set(rng, rng() % 2);
        for (int l = 1; l < 6; ++l) {
            if (run_persistence(x, l + 1, false)) CHECK(run_persistence(x, l, false));
            if (run_persistence(x, l + 1, true)) CHECK(run_persistence(x, l, true));
        }
    }
}

TEST_CASE("total run_persistence checks every maximal run") {
    CHECK(total_run_persistence(PeriodicIntSet::two_sided_residues(4, {0, 1}), 2));
    CHECK_FALSE(total_run_persistence(PeriodicIntSet::two_sided_residues(4, {0, 2}), 2));
    CHECK(total_run_persistence(PeriodicIntSet::empty_forward(), 3));
    CHECK_FALSE(total_run_persistence(PeriodicIntSet::finite({0, 1, 5}), 2));
}

TEST_CASE("gaussian distance") {
    auto evens = PeriodicIntSet::two_sided_residues(2, {0});
    CHECK(gaussian_set_distance(evens, evens) == 0.0);

    auto odds = PeriodicIntSet::two_sided_residues(2, {1});
    // on [-2, 2] the symmetric difference is everything: all five weights
    double w = 0.3989422804014326779;
    double expected = w * (1 + 2 * std::exp(-0.5) + 2 * std::exp(-2.0));
    CHECK(gaussian_set_distance(evens, odds, 2) == Catch::Approx(expected).epsilon(1e-12));
}

TEST_CASE("far tails: gaussian forgives, hausdorff does not") {
    // pinned pair: support beyond the numeric reach of the gaussian weights
    auto x = PeriodicIntSet::finite({60});
    auto y = PeriodicIntSet::finite({64});
    CHECK(gaussian_set_distance(x, y) == 0.0);
    CHECK(hausdorff_set_distance(x, y) == 4.0);
}

TEST_CASE("moderation flags") {
    std::mt19937_64 rng(20260809);
    std::vector<std::pair<PeriodicIntSet, PeriodicIntSet>> samples;
    for (int i = 0; i < 1000; ++i) {
        bool two = rng() % 2;
        samples.emplace_back(random_set(rng, two), random_set(rng, two));
    }
    ModerationFlags g = distance_moderation_check(gaussian_distance(), samples);
    CHECK(g.monotone);
    CHECK(g.continuous);
    CHECK(g.non_escalated);
    CHECK(g.moderate());

    // pinned escalation: periodic tails keep raising the hausdorff value
    std::vector<std::pair<PeriodicIntSet, PeriodicIntSet>> pinned = {
        {PeriodicIntSet::finite({0}), PeriodicIntSet::two_sided_residues(10, {0})}};
    ModerationFlags h = distance_moderation_check(hausdorff_distance(), pinned);
    CHECK_FALSE(h.non_escalated);

    // the zero distance is trivially moderate
    SetDistance zero{[](const PeriodicIntSet&, const PeriodicIntSet&, int) { return 0.0; }, 64};
    CHECK(distance_moderation_check(zero, samples).moderate());
}
