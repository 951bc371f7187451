#include "corrent/selftest.hpp"

#include <cmath>
#include <sstream>

#include "corrent/correlation.hpp"
#include "corrent/graphs.hpp"
#include "corrent/grillenberger.hpp"
#include "corrent/interval_maps.hpp"
#include "corrent/trajectory.hpp"
#include "corrent/word.hpp"

namespace corrent {

namespace {

struct CaseContext {
  TrajectoryBuffer traj;
  bool symbolic;
  std::string desc;
};

CaseContext random_case(Rng& rng, const Word& grill_top) {
  const int sys = static_cast<int>(rng.next_below(6));
  // generous raw sizes so shifted/iterate variants stay feasible
  const std::size_t raw = 160 + rng.next_below(200);
  switch (sys) {
    case 0:
    case 1: {  // Bernoulli over p in {2,3,4}, random or uniform pi
      const int p = 2 + static_cast<int>(rng.next_below(3));
      std::vector<double> pi(static_cast<std::size_t>(p));
      if (sys == 0) {
        for (auto& v : pi) v = 1.0 / p;
      } else {
        double sum = 0.0;
        for (auto& v : pi) {
          v = 0.05 + rng.next_unit();
          sum += v;
        }
        for (auto& v : pi) v /= sum;
      }
      const auto spec = BernoulliSpec::make(pi, rng.next_u64());
      const auto buf = bernoulli_sample(spec).buffer(raw + 64);
      return {TrajectoryBuffer::from_symbols(buf, raw, 1, 0, "bernoulli"), true, "bernoulli"};
    }
    case 2: {  // periodic random word
      const int p = 2 + static_cast<int>(rng.next_below(2));
      const std::size_t len = 2 + rng.next_below(5);
      std::vector<std::uint8_t> w(len);
      for (auto& c : w) c = static_cast<std::uint8_t>(rng.next_below(static_cast<std::uint64_t>(p)));
      const auto word = Word(std::move(w), p);
      const auto buf = SymbolSequence::periodic(word).buffer(raw + 64);
      return {TrajectoryBuffer::from_symbols(buf, raw, 1, 0, "periodic"), true, "periodic"};
    }
    case 3: {  // slice of the strictly ergodic stream
      const std::size_t offset = rng.next_below(10000);
      auto buf = std::make_shared<SymbolBuffer>();
      buf->alphabet = grill_top.alphabet;
      for (std::size_t i = 0; i < raw + 64; ++i)
        buf->symbols.push_back(grill_top.symbols[(offset + i) % grill_top.size()]);
      return {TrajectoryBuffer::from_symbols(buf, raw, 1, 0, "grillenberger-slice"), true,
              "grillenberger-slice"};
    }
    case 4: {  // tent orbit (exact bitstream form)
      return {tent_orbit(rng.next_u64(), raw), false, "tent"};
    }
    default: {  // logistic orbit at the period-3 parameter
      static const double alpha = logistic_period3_alpha();
      const auto spec = logistic_map(alpha);
      return {orbit_segment(spec.f, rng.next_in(-0.99, 0.99), raw, "logistic"), false, "logistic"};
    }
  }
}

double random_eps(Rng& rng, bool symbolic) {
  if (symbolic) return std::ldexp(1.0, -static_cast<int>(rng.next_below(7)));  // 2^0 .. 2^-6
  return std::ldexp(1.0, -static_cast<int>(1 + rng.next_below(6)));
}

}  // namespace

InvariantReport run_invariant_suite(std::uint64_t seed, std::size_t cases) {
  InvariantReport rep;
  Rng rng(seed);
  const GrillenbergerStream grill(3);

  auto fail = [&](const std::string& check, const std::string& desc, const std::string& detail) {
    std::ostringstream os;
    os << check << " [" << desc << "]: " << detail;
    rep.failures.push_back(os.str());
  };
  auto tally = [&](const std::string& check) {
    ++rep.checks;
    ++rep.per_check[check];
  };

  for (std::size_t c = 0; c < cases; ++c) {
    ++rep.cases;
    CaseContext ctx = random_case(rng, grill.top_word());
    const std::size_t m = 1 + rng.next_below(4);
    const std::size_t h = 1 + rng.next_below(4);
    const std::size_t k = 2 + rng.next_below(3);  // 2..4
    const std::size_t n = 24 + rng.next_below(60);
    const double eps = random_eps(rng, ctx.symbolic);
    const double eps2 = eps * (1.5 + rng.next_unit());

    // naive counts at two radii and two m
    const CorrSum c_eps = correlation_sum(ctx.traj, m, n, eps);
    const CorrSum c_eps2 = correlation_sum(ctx.traj, m, n, eps2);
    const CorrSum c_m1 = correlation_sum(ctx.traj, m + 1, n, eps);

    tally("eps-monotonicity");
    if (c_eps.count > c_eps2.count)
      fail("eps-monotonicity", ctx.desc, "C(eps) > C(eps')");
    tally("m-monotonicity");
    if (c_m1.count > c_eps.count)
      fail("m-monotonicity", ctx.desc, "C(m+1) > C(m)");
    tally("bounds");
    if (c_eps.count < static_cast<std::int64_t>(n) ||
        c_eps.count > static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n))
      fail("bounds", ctx.desc, "count outside [n, n^2]");

    tally("diameter-saturation");
    {
      const double diam = diameter_estimate(ctx.traj);
      const CorrSum full = correlation_sum(ctx.traj, m, n, diam + 1e-9);
      if (full.count != static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n))
        fail("diameter-saturation", ctx.desc, "C != 1 at eps >= diameter");
    }

    tally("eta^m lower bound");
    {
      // greedy spanning of the visited state set at eps/2
      const std::size_t states = n + m - 1;
      const auto dist = [&](std::size_t i, std::size_t j) { return ctx.traj.distance(i, j); };
      const std::size_t r = spanning_number_indexed(states, dist, eps / 2.0);
      const double eta = 1.0 / static_cast<double>(r);
      if (c_eps.value() + 1e-15 < std::pow(eta, static_cast<double>(m)))
        fail("eta^m lower bound", ctx.desc, "C < eta^m");
    }

    tally("1/r_m lower bound");
    {
      const auto dist = [&](std::size_t i, std::size_t j) {
        return bowen_distance(ctx.traj, i, j, m);
      };
      const std::size_t rm = spanning_number_indexed(n, dist, eps / 2.0);
      if (c_eps.value() + 1e-15 < 1.0 / static_cast<double>(rm))
        fail("1/r_m lower bound", ctx.desc, "C < 1/r_m(eps/2)");
    }

    tally("shift-invariance sandwich");
    {
      const CorrSum big = correlation_sum(ctx.traj, m, n + h, eps);
      const TrajectoryBuffer shifted = ctx.traj.shifted(h, n + m - 1, ctx.desc + "-shifted");
      const CorrSum sh = correlation_sum(shifted, m, n, eps);
      const std::int64_t hh = static_cast<std::int64_t>(h);
      const std::int64_t nn = static_cast<std::int64_t>(n);
      if (!(big.count - (2 * hh * nn + hh * hh) <= sh.count && sh.count <= big.count))
        fail("shift-invariance sandwich", ctx.desc, "integer sandwich violated");
    }

    tally("fast==naive");
    {
      const FastCorrSum fast = correlation_sum_fast(ctx.traj, m, n, eps);
      if (fast.sum.count != c_eps.count)
        fail("fast==naive", ctx.desc,
             "fast " + std::to_string(fast.sum.count) + " != naive " + std::to_string(c_eps.count));
    }

    if (ctx.symbolic) {
      tally("iterate pair-counting inequality");
      // C^f_{km}(x, kn', eps) <= (k-2)/(kn') + (2/k^2) sum_h C^{f^k}_m(f^h x, n', 2 eps),
      // as integers: LHS_count <= (k-2) k n' + 2 sum_h count_h.
      const std::size_t np = 8 + rng.next_below(20);
      const double d_eps = std::ldexp(1.0, -static_cast<int>(1 + rng.next_below(6)));
      const CorrSum lhs = correlation_sum(ctx.traj, k * m, k * np, d_eps);
      std::int64_t rhs = static_cast<std::int64_t>(k - 2) * static_cast<std::int64_t>(k) *
                         static_cast<std::int64_t>(np);
      for (std::size_t hh = 0; hh < k; ++hh) {
        const TrajectoryBuffer sub =
            ctx.traj.shifted(hh, ctx.traj.size() - hh, "it").subsample(k, np + m, "it");
        const CorrSum ch = correlation_sum(sub, m, np, 2.0 * d_eps);
        rhs += 2 * ch.count;
      }
      if (lhs.count > rhs)
        fail("iterate pair-counting inequality", ctx.desc,
             "count " + std::to_string(lhs.count) + " > " + std::to_string(rhs));
    }

    if (c % 37 == 0) {
      tally("recurrence-graph admissibility");
      const std::size_t gn = 4 + rng.next_below(8);
      const int gk = 2 + static_cast<int>(rng.next_below(2));
      if (static_cast<std::size_t>(gk) * gn <= 40 &&
          ctx.traj.size() >= static_cast<std::size_t>(gk) * (gn + m)) {
        const PartitionedGraph g = recurrence_graph(ctx.traj, gk, m, gn, eps);
        if (!is_v_admissible(g)) fail("recurrence-graph admissibility", ctx.desc, "not admissible");
      }
    }
  }
  return rep;
}

}  // namespace corrent
