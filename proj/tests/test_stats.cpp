#include <cmath>
#include <vector>

#include "doctest.h"
#include "pairwalk/stats.hpp"

using namespace pairwalk;

namespace {

Trajectory make_traj(PairState start, std::vector<Jump> jumps, double horizon) {
  Trajectory tr;
  tr.start = start;
  tr.jumps = std::move(jumps);
  tr.horizon = horizon;
  return tr;
}

}  // namespace

TEST_CASE("first passage time") {
  const PairState target{2, 3};
  const Trajectory never = make_traj({1, 2}, {{1.0, {1, 3}}, {2.0, {1, 4}}}, 25.0);
  CHECK_FALSE(first_passage_time(never, target).has_value());

  const Trajectory hits =
      make_traj({1, 2}, {{1.0, {1, 3}}, {3.2, {2, 3}}, {4.0, {1, 3}}}, 25.0);
  CHECK(first_passage_time(hits, target) == 3.2);
  CHECK_FALSE(first_passage_time(hits, target, 3.2).has_value());  // open window
  CHECK(first_passage_time(hits, target, 3.3) == 3.2);

  // Presence at t=0 does not count; a revisit does.
  const Trajectory revisit =
      make_traj({1, 2}, {{0.5, {1, 3}}, {1.5, {1, 2}}}, 25.0);
  CHECK(first_passage_time(revisit, {1, 2}) == 1.5);
  const Trajectory stays = make_traj({1, 2}, {}, 25.0);
  CHECK_FALSE(first_passage_time(stays, {1, 2}).has_value());
}

TEST_CASE("sojourn time") {
  const PairState target{2, 3};
  const Trajectory two_visits = make_traj(
      {1, 2},
      {{1.0, {2, 3}}, {1.5, {1, 3}}, {2.0, {2, 3}}, {2.25, {2, 4}}}, 25.0);
  CHECK(sojourn_time(two_visits, target) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(sojourn_time(two_visits, {6, 7}) == 0.0);

  // Visit still open at the horizon counts up to the horizon only.
  const Trajectory open_visit = make_traj({1, 2}, {{24.9, {2, 3}}}, 25.0);
  CHECK(sojourn_time(open_visit, target) == doctest::Approx(0.1).epsilon(1e-9));

  // Truncation by an explicit window.
  CHECK(sojourn_time(two_visits, target, 1.25) == doctest::Approx(0.25));
  CHECK(sojourn_time(two_visits, target, 1.0) == 0.0);

  // Initial holding interval counts when the walk starts at the target.
  const Trajectory from_target = make_traj({2, 3}, {{0.6, {1, 3}}}, 25.0);
  CHECK(sojourn_time(from_target, target) == doctest::Approx(0.6));
}

TEST_CASE("passage records tie the pieces together") {
  const PairState target{2, 3};
  const Trajectory hit =
      make_traj({1, 2}, {{1.0, {2, 3}}, {1.5, {1, 3}}}, 25.0);
  const PassageRecord rec = passage_record(hit, target, 25.0, 7);
  CHECK(rec.traj_index == 7);
  CHECK(rec.hit);
  CHECK(rec.first_passage == 1.0);
  CHECK(rec.sojourn == doctest::Approx(0.5));
  CHECK(*rec.sojourn > 0.0);

  const PassageRecord miss = passage_record(make_traj({1, 2}, {}, 25.0), target, 25.0, 8);
  CHECK_FALSE(miss.hit);
  CHECK_FALSE(miss.first_passage.has_value());
  CHECK_FALSE(miss.sojourn.has_value());
}

TEST_CASE("empirical CDF") {
  const EmpiricalCDF cdf({3.0, 1.0, 4.0, 2.0});
  CHECK(cdf.size() == 4);
  CHECK(cdf(-100.0) == 0.0);
  CHECK(cdf(0.999) == 0.0);
  CHECK(cdf(1.0) == 0.25);   // right continuity: jump value attained at the atom
  CHECK(cdf(2.5) == 0.5);
  CHECK(cdf(100.0) == 1.0);
  CHECK(cdf.mean() == doctest::Approx(2.5));
  CHECK(cdf.median() == doctest::Approx(2.5));
  CHECK(cdf.quantile(0.25) == doctest::Approx(1.75));
  CHECK(cdf.quantile(0.75) == doctest::Approx(3.25));
  CHECK(cdf.iqr() == doctest::Approx(1.5));
  CHECK(cdf.quantile(0.0) == 1.0);
  CHECK(cdf.quantile(1.0) == 4.0);
  CHECK_THROWS_AS(EmpiricalCDF(std::vector<double>{}), EmptySubsample);
  CHECK_THROWS_AS(cdf.quantile(1.5), std::invalid_argument);
}

TEST_CASE("conditional statistics over the hitting subsample") {
  const PairState target{2, 3};
  const std::vector<Trajectory> sample{
      make_traj({1, 2}, {{1.0, {2, 3}}, {2.0, {1, 3}}}, 25.0),
      make_traj({1, 2}, {{0.4, {1, 3}}}, 25.0),                    // miss
      make_traj({1, 2}, {{3.0, {2, 3}}}, 25.0),                    // sojourn 22
  };
  const ConditionalStats cs = conditional_cdfs(sample, target, 25.0);
  CHECK(cs.hits == 2);
  CHECK(cs.hit_fraction == doctest::Approx(2.0 / 3.0));
  CHECK(cs.fpt.size() == 2);
  CHECK(cs.fpt.mean() == doctest::Approx(2.0));
  CHECK(cs.sojourn.mean() == doctest::Approx((1.0 + 22.0) / 2.0));

  const std::vector<Trajectory> all_miss{make_traj({1, 2}, {}, 25.0)};
  CHECK_THROWS_AS(conditional_cdfs(all_miss, target, 25.0), EmptySubsample);
}

TEST_CASE("bootstrap difference intervals") {
  std::vector<double> high;
  std::vector<double> low;
  for (int i = 0; i < 60; ++i) {
    high.push_back(10.0 + 0.05 * (i % 7));
    low.push_back(1.0 + 0.04 * (i % 5));
  }
  const BootstrapInterval ci =
      bootstrap_difference(high, low, mean_of, 500, 0.99, 2024);
  CHECK(ci.point == doctest::Approx(mean_of(high) - mean_of(low)));
  CHECK(ci.lo > 8.0);
  CHECK(ci.hi < 10.0);
  CHECK(ci.lo <= ci.point);
  CHECK(ci.point <= ci.hi);

  const BootstrapInterval again =
      bootstrap_difference(high, low, mean_of, 500, 0.99, 2024);
  CHECK(ci.lo == again.lo);  // deterministic in the seed
  CHECK(ci.hi == again.hi);

  const BootstrapInterval flipped =
      bootstrap_difference(low, high, mean_of, 500, 0.99, 2024);
  CHECK(flipped.hi < 0.0);
}

TEST_CASE("iqr_of matches the CDF quartiles") {
  std::vector<double> v{4.0, 1.0, 3.0, 2.0};
  CHECK(iqr_of(v) == doctest::Approx(1.5));
  std::vector<double> single{3.3};
  CHECK(iqr_of(single) == 0.0);
}
