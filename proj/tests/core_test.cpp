#include "doctest.h"

#include <cmath>

#include "corrent/correlation.hpp"
#include "corrent/interval_maps.hpp"
#include "corrent/trajectory.hpp"
#include "corrent/word.hpp"

using namespace corrent;

TEST_CASE("orbit_segment: identity repeats the seed") {
  const auto traj = orbit_segment([](double x) { return x; }, 0.37, 5);
  REQUIRE(traj.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(std::get<double>(traj.state(i)) == 0.37);
}

TEST_CASE("orbit_segment: tent fixed point at 0") {
  const auto spec = tent_map();
  const auto traj = orbit_segment(spec.f, 0.0, 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::get<double>(traj.state(i)) == 0.0);
}

TEST_CASE("orbit_segment: logistic period-3 parameter closes a 3-cycle from 0") {
  const double alpha = logistic_period3_alpha();
  const auto spec = logistic_map(alpha);
  const auto traj = orbit_segment(spec.f, 0.0, 4);
  CHECK(std::get<double>(traj.state(0)) == 0.0);
  CHECK(std::get<double>(traj.state(1)) == 1.0);
  CHECK(std::get<double>(traj.state(2)) == doctest::Approx(1.0 - alpha).epsilon(1e-12));
  CHECK(std::abs(std::get<double>(traj.state(3))) < 1e-8);
}

TEST_CASE("orbit_segment: successive states follow the map") {
  const auto spec = logistic_map(1.6);
  const auto traj = orbit_segment(spec.f, 0.3, 40);
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    CHECK(std::get<double>(traj.state(i + 1)) == spec.f(std::get<double>(traj.state(i))));
  }
}

TEST_CASE("orbit_segment: escaping orbit reports the first bad index") {
  CHECK_THROWS_WITH_AS(orbit_segment([](double x) { return 3.0 * x * x + 2.0; }, 50.0, 60),
                       doctest::Contains("orbit escaped"), std::runtime_error);
}

TEST_CASE("diameter_estimate") {
  CHECK(diameter_estimate(TrajectoryBuffer::from_reals({0.5}, "pt")) == 0.0);
  CHECK(diameter_estimate(TrajectoryBuffer::from_reals({0.0, 1.0}, "pair")) == 1.0);

  // shift sequences differing already at symbol 0 have distance 1
  auto buf = std::make_shared<SymbolBuffer>();
  buf->alphabet = 2;
  buf->symbols = {0, 1, 0, 1, 0, 1, 0, 1};
  const auto traj = TrajectoryBuffer::from_symbols(buf, 4, 1, 0, "alt");
  CHECK(diameter_estimate(traj) == 1.0);

  // constant symbolic trajectory: all tails equal
  auto cbuf = std::make_shared<SymbolBuffer>();
  cbuf->alphabet = 2;
  cbuf->symbols.assign(16, 1);
  CHECK(diameter_estimate(TrajectoryBuffer::from_symbols(cbuf, 8, 1, 0, "const")) == 0.0);
}

TEST_CASE("diameter_estimate is monotone under extension") {
  std::vector<double> xs{0.2, 0.9, 0.4, 0.1, 0.95, 0.5};
  double prev = 0.0;
  for (std::size_t n = 1; n <= xs.size(); ++n) {
    const double d = diameter_estimate(
        TrajectoryBuffer::from_reals(std::vector<double>(xs.begin(), xs.begin() + n), "ext"));
    CHECK(d >= prev);
    prev = d;
  }
}

TEST_CASE("metric handle properties on sampled triples") {
  const auto m = MetricSpaceHandle::real_line();
  const State a = 0.1, b = 0.7, c = -0.4;
  CHECK(m.distance(a, a) == 0.0);
  CHECK(m.distance(a, b) == m.distance(b, a));
  CHECK(m.distance(a, c) <= m.distance(a, b) + m.distance(b, c));

  auto buf = std::make_shared<SymbolBuffer>();
  buf->alphabet = 3;
  buf->symbols = {0, 1, 2, 0, 1, 2, 1, 1, 0, 2, 2, 0};
  const auto sm = MetricSpaceHandle::shift();
  const State x = SymbolCursor{buf.get(), 0}, y = SymbolCursor{buf.get(), 3}, z = SymbolCursor{buf.get(), 5};
  CHECK(sm.distance(x, x) == 0.0);
  CHECK(sm.distance(x, y) == sm.distance(y, x));
  CHECK(sm.distance(x, z) <= sm.distance(x, y) + sm.distance(y, z));
}

TEST_CASE("EpsilonGrid validation") {
  CHECK_THROWS_AS(EpsilonGrid({0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(EpsilonGrid({0.25, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(EpsilonGrid({0.5, 0.0}), std::invalid_argument);
  const auto g = EpsilonGrid::dyadic(1, 3);
  CHECK(g.values() == std::vector<double>{0.5, 0.25, 0.125});
}

TEST_CASE("trajectory views share symbol storage") {
  auto buf = std::make_shared<SymbolBuffer>();
  buf->alphabet = 2;
  for (int i = 0; i < 64; ++i) buf->symbols.push_back(static_cast<std::uint8_t>(i % 2));
  const auto traj = TrajectoryBuffer::from_symbols(buf, 32, 1, 0, "alt");
  const auto sub = traj.subsample(2, 16, "alt^2");
  const auto sv = sub.symbolic_view();
  REQUIRE(sv.has_value());
  CHECK(sv->stride == 2);
  CHECK(sv->count == 16);
  const auto sh = traj.shifted(3, 8, "alt+3");
  CHECK(sh.symbolic_view()->offset == 3);
}
