#include "doctest.h"

#include <cmath>

#include "corrent/correlation.hpp"
#include "corrent/entropy.hpp"
#include "corrent/interval_maps.hpp"
#include "corrent/subshift.hpp"
#include "corrent/word.hpp"

using namespace corrent;

namespace {

TrajectoryBuffer periodic01(std::size_t states, std::size_t extra = 40) {
  const auto seq = SymbolSequence::periodic(Word::from_digits("01", 2));
  return TrajectoryBuffer::from_symbols(seq.buffer(states + extra), states, 1, 0, "(01)^inf");
}

}  // namespace

TEST_CASE("shift_radius_index brackets eps into [2^-k, 2^-(k-1))") {
  CHECK(shift_radius_index(1.0) == 0);
  CHECK(shift_radius_index(2.0) == 0);
  CHECK(shift_radius_index(0.5) == 1);
  CHECK(shift_radius_index(0.51) == 1);
  CHECK(shift_radius_index(0.25) == 2);
  CHECK(shift_radius_index(0.49) == 2);
  CHECK(shift_radius_index(std::ldexp(1.0, -17)) == 17);
  CHECK_THROWS_AS(shift_radius_index(0.0), std::invalid_argument);
}

TEST_CASE("bowen_distance basics") {
  const auto traj = TrajectoryBuffer::from_reals({0.0, 0.5, 0.25, 0.9, 0.1}, "t");
  CHECK(bowen_distance(traj, 0, 3, 1) == 0.9);           // m = 1 is the plain metric
  CHECK(bowen_distance(traj, 2, 2, 3) == 0.0);           // i = j
  CHECK(bowen_distance(traj, 0, 1, 2) == doctest::Approx(0.5));
  CHECK_THROWS_WITH_AS(bowen_distance(traj, 3, 0, 3), doctest::Contains("window exceeds"),
                       std::out_of_range);

  const auto cst = TrajectoryBuffer::from_reals(std::vector<double>(10, 0.7), "const");
  CHECK(bowen_distance(cst, 1, 7, 3) == 0.0);
}

TEST_CASE("correlation_sum: fixed point orbit is saturated") {
  const auto traj = TrajectoryBuffer::from_reals(std::vector<double>(12, 0.3), "fp");
  for (std::size_t m : {1, 2, 3}) {
    const auto c = correlation_sum(traj, m, 8, 1e-9);
    CHECK(c.count == 64);
  }
}

TEST_CASE("correlation_sum: eps at the diameter saturates") {
  const auto traj = orbit_segment(tent_map().f, 0.3123, 24, "tent24");
  const double diam = diameter_estimate(traj);
  const auto c = correlation_sum(traj, 2, 20, diam);
  CHECK(c.count == 400);
}

TEST_CASE("correlation_sum: (01)^inf with m=1, n=4, eps=1/2 counts same-parity pairs") {
  const auto traj = periodic01(8);
  const auto c = correlation_sum(traj, 1, 4, 0.5);
  CHECK(c.count == 8);
  CHECK(c.exact() == BigRational(1, 2));
}

TEST_CASE("correlation_sum_fast: (01)^inf with m=2 reduces to radius 1/4") {
  const auto traj = periodic01(8);
  const auto c2 = correlation_sum_fast(traj, 2, 4, 0.5);
  CHECK(c2.used_fast);
  CHECK(c2.sum.count == 8);
  const auto c1 = correlation_sum(traj, 1, 4, 0.25);
  CHECK(c1.count == c2.sum.count);
}

TEST_CASE("subshift window identity: C_m(eps) == C_1(2^-(k+m-1)) exactly") {
  Rng rng(911);
  for (int rep = 0; rep < 40; ++rep) {
    const int p = 2 + static_cast<int>(rng.next_below(3));
    std::vector<double> pi(static_cast<std::size_t>(p), 1.0 / p);
    const auto seq = bernoulli_sample(BernoulliSpec::make(pi, rng.next_u64()));
    const std::size_t n = 16 + rng.next_below(48);
    const std::size_t m = 1 + rng.next_below(4);
    const int k = static_cast<int>(rng.next_below(5));
    // eps anywhere in [2^-k, 2^-(k-1))
    const double eps = std::ldexp(1.0 + rng.next_unit() * 0.999, -k - 1) * 2.0 * (1 - 1e-12);
    const int kk = shift_radius_index(eps);
    REQUIRE(kk == k);
    const auto traj = TrajectoryBuffer::from_symbols(seq.buffer(n + m + k + 16), n + m + k, 1, 0, "b");
    const auto lhs = correlation_sum(traj, m, n, eps);
    const auto rhs = correlation_sum(traj, 1, n, std::ldexp(1.0, -(k + static_cast<int>(m) - 1)));
    CHECK(lhs.count == rhs.count);
  }
}

TEST_CASE("fast path equals naive path exactly on random inputs") {
  Rng rng(4242);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 20 + rng.next_below(60);
    const std::size_t m = 1 + rng.next_below(4);

    // symbolic
    std::vector<double> pi{0.25, 0.35, 0.4};
    const auto seq = bernoulli_sample(BernoulliSpec::make(pi, rng.next_u64()));
    const double eps_s = std::ldexp(1.0, -static_cast<int>(rng.next_below(6)));
    const auto straj = TrajectoryBuffer::from_symbols(seq.buffer(n + m + 20), n + m + 8, 1, 0, "b3");
    CHECK(correlation_sum_fast(straj, m, n, eps_s).sum.count == correlation_sum(straj, m, n, eps_s).count);

    // real line (tent orbit, ties included)
    const auto rtraj = tent_orbit(rng.next_u64(), n + m + 4);
    const double eps_r = 0.05 + 0.4 * rng.next_unit();
    CHECK(correlation_sum_fast(rtraj, m, n, eps_r).sum.count == correlation_sum(rtraj, m, n, eps_r).count);
  }
}

TEST_CASE("fast path falls back with a flag on custom metrics") {
  std::vector<State> st{0.0, 0.3, 0.6, 0.9, 0.2, 0.7};
  auto metric = MetricSpaceHandle::custom([](const State& a, const State& b) {
    const double d = std::abs(std::get<double>(a) - std::get<double>(b));
    return std::min(d, 1.0 - d);  // circle metric
  });
  const auto traj = TrajectoryBuffer::from_states(st, metric, "circle");
  const auto fast = correlation_sum_fast(traj, 2, 4, 0.21);
  CHECK_FALSE(fast.used_fast);
  CHECK(fast.sum.count == correlation_sum(traj, 2, 4, 0.21).count);
}

TEST_CASE("correlation_profile matches per-n sums") {
  const auto traj = tent_orbit(7, 140);
  const std::vector<std::int64_t> sched{16, 32, 64, 128};
  const auto profile = correlation_profile(traj, 2, 0.125, sched);
  REQUIRE(profile.size() == 4);
  for (std::size_t i = 0; i < sched.size(); ++i) {
    const auto direct = correlation_sum(traj, 2, static_cast<std::size_t>(sched[i]), 0.125);
    CHECK(profile[i].count == direct.count);
  }
}

TEST_CASE("limit_estimate: fixed point and periodic cases") {
  const auto fp = TrajectoryBuffer::from_reals(std::vector<double>(70, 0.4), "fp");
  const auto le = limit_estimate(fp, 2, 0.01, {16, 32, 64});
  CHECK(le.lower == 1.0);
  CHECK(le.upper == 1.0);

  const auto alt = periodic01(70);
  const auto l2 = limit_estimate(alt, 1, 0.5, {16, 32, 64});
  CHECK(l2.lower == 0.5);  // exact for even n
  CHECK(l2.upper == 0.5);

  CHECK_THROWS_AS(limit_estimate(alt, 1, 0.5, {8, 32}), std::invalid_argument);  // ratio > 2
}

TEST_CASE("limit_estimate: Bernoulli(uniform 3) near 1/3 at m=1, eps=1/2") {
  const auto seq = bernoulli_sample(BernoulliSpec::make({1.0 / 3, 1.0 / 3, 1.0 / 3}, 5150));
  const std::size_t n = 20000;
  const auto traj = TrajectoryBuffer::from_symbols(seq.buffer(n + 16), n + 8, 1, 0, "b3");
  const auto le = limit_estimate(traj, 1, 0.5, default_schedule(static_cast<std::int64_t>(n)));
  // law of large numbers: within sampling error of sum of squared frequencies
  CHECK(le.lower > 1.0 / 3 - 0.01);
  CHECK(le.upper < 1.0 / 3 + 0.01);
}

TEST_CASE("local_correlation_entropy: fixed point gives 0, degenerate m_list throws") {
  const auto fp = TrajectoryBuffer::from_reals(std::vector<double>(200, 0.4), "fp");
  const auto grid = EpsilonGrid::dyadic(1, 4);
  auto [upper, lower] = local_correlation_entropy(fp, grid, {1, 2, 3, 4}, 150);
  CHECK(upper.value == 0.0);
  CHECK(lower.value == 0.0);
  CHECK_THROWS_AS(local_correlation_entropy(fp, grid, {1, 2}, 150), std::invalid_argument);
}

TEST_CASE("local_correlation_entropy: Bernoulli closed form at moderate n") {
  const auto seq = bernoulli_sample(BernoulliSpec::make({0.5, 0.5}, 777));
  const std::size_t n = 30000;
  const auto traj = TrajectoryBuffer::from_symbols(seq.buffer(n + 40), n + 20, 1, 0, "b2");
  auto [upper, lower] = local_correlation_entropy(traj, EpsilonGrid::dyadic(1, 5),
                                                  {1, 2, 3, 4, 5, 6, 7, 8}, static_cast<std::int64_t>(n));
  CHECK(upper.value == doctest::Approx(std::log(2.0)).epsilon(0.08));
  CHECK(lower.value == doctest::Approx(std::log(2.0)).epsilon(0.08));
  CHECK(upper.diagnostics.plateau_found);
}

TEST_CASE("local_correlation_dimension: degenerate cases and tent at unit dimension") {
  const auto fp = TrajectoryBuffer::from_reals(std::vector<double>(300, 0.4), "fp");
  const auto g = EpsilonGrid::dyadic(3, 8);
  const auto dim_fp = local_correlation_dimension(fp, g, 250);
  CHECK(dim_fp.upper == 0.0);
  CHECK(dim_fp.lower == 0.0);

  // two-point periodic orbit: constant correlation below the gap
  std::vector<double> two;
  for (int i = 0; i < 200; ++i) two.push_back(i % 2 == 0 ? 0.1 : 0.9);
  const auto dim2 = local_correlation_dimension(TrajectoryBuffer::from_reals(two, "2cyc"), g, 200);
  CHECK(dim2.upper == 0.0);

  const auto tent = tent_orbit(99, 4200);
  const auto dim_t = local_correlation_dimension(tent, g, 4000);
  CHECK(dim_t.upper == doctest::Approx(1.0).epsilon(0.15));

  CHECK_THROWS_AS(local_correlation_dimension(fp, EpsilonGrid::dyadic(3, 4), 250), std::invalid_argument);
}

TEST_CASE("iterate_scaling_check: fixed point flagged unreliable") {
  const auto fp = TrajectoryBuffer::from_reals(std::vector<double>(900, 0.4), "fp");
  const auto rep = iterate_scaling_check(fp, 2, EpsilonGrid::dyadic(1, 3), {1, 2, 3, 4}, 300);
  CHECK(rep.unreliable);
}

TEST_CASE("correlation_table covers the grid") {
  const auto traj = periodic01(80);
  const auto table =
      correlation_table(traj, EpsilonGrid::dyadic(1, 2), {1, 2}, {20, 40});
  CHECK(table.entries.size() == 8);
  CHECK(table.traj_label == "(01)^inf");
  for (const auto& e : table.entries) {
    CHECK(e.count >= e.n);
    CHECK(e.count <= e.n * e.n);
  }
}
