#include "corrent/interval_maps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "corrent/numeric.hpp"

namespace corrent {

IntervalMapSpec tent_map() {
  IntervalMapSpec spec;
  spec.kind = IntervalMapSpec::Kind::tent;
  spec.domain = {0.0, 1.0};
  spec.f = [](double x) { return 2.0 * std::min(x, 1.0 - x); };
  spec.name = "tent";
  return spec;
}

IntervalMapSpec logistic_map(double alpha) {
  IntervalMapSpec spec;
  spec.kind = IntervalMapSpec::Kind::logistic;
  spec.alpha = alpha;
  spec.domain = {-1.0, 1.0};
  spec.f = [alpha](double x) { return 1.0 - alpha * x * x; };
  spec.name = "logistic";
  return spec;
}

IntervalMapSpec identity_map() {
  IntervalMapSpec spec;
  spec.kind = IntervalMapSpec::Kind::identity;
  spec.domain = {0.0, 1.0};
  spec.f = [](double x) { return x; };
  spec.name = "identity";
  return spec;
}

double logistic_period3_alpha() {
  auto g = [](double a) { return ((a - 2.0) * a + 1.0) * a - 1.0; };  // a^3 - 2a^2 + a - 1
  double lo = 1.0, hi = 2.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

/// Constant-|slope| zigzag on [0,1] fixing both endpoints: rise to 1, k full
/// down-up sweeps, then a final down-up pair meeting (1,1). All slopes are
/// +-s, so the piece entropy is log s.
struct Zigzag {
  std::vector<double> xs, ys;  // nodes

  explicit Zigzag(double s) {
    if (!(s > 1.0)) throw std::invalid_argument("Zigzag: slope must exceed 1");
    const int k = std::max(0, static_cast<int>(std::ceil((s - 3.0) / 2.0)));
    xs.push_back(0.0);
    ys.push_back(0.0);
    xs.push_back(1.0 / s);
    ys.push_back(1.0);
    for (int i = 0; i < k; ++i) {
      xs.push_back(xs.back() + 1.0 / s);
      ys.push_back(0.0);
      xs.push_back(xs.back() + 1.0 / s);
      ys.push_back(1.0);
    }
    const double a = xs.back();
    const double d = (1.0 - a) / 2.0;
    xs.push_back(a + d);
    ys.push_back(1.0 - s * d);
    xs.push_back(1.0);
    ys.push_back(1.0);
  }

  double operator()(double u) const {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const auto it = std::upper_bound(xs.begin(), xs.end(), u);
    const std::size_t seg = static_cast<std::size_t>(it - xs.begin()) - 1;
    const double t = (u - xs[seg]) / (xs[seg + 1] - xs[seg]);
    const double y = ys[seg] + t * (ys[seg + 1] - ys[seg]);
    return std::clamp(y, 0.0, 1.0);
  }
};

}  // namespace

double countable_piece_entropy(double lambda_target, int n) {
  if (!(lambda_target > 0.0)) throw std::invalid_argument("countable_piece_entropy: lambda must be > 0");
  if (n < 1) throw std::invalid_argument("countable_piece_entropy: piece index must be >= 1");
  if (std::isinf(lambda_target)) return static_cast<double>(n);
  return lambda_target * (1.0 - 1.0 / (n + 1.0));
}

IntervalMapSpec countable_piece_map(double lambda_target, int piece_count) {
  if (!(lambda_target > 0.0)) throw std::invalid_argument("countable_piece_map: lambda must be > 0");
  if (piece_count < 1) throw std::invalid_argument("countable_piece_map: piece_count must be >= 1");

  struct Piece {
    double a, b;
    Zigzag z;
  };
  auto pieces = std::make_shared<std::vector<Piece>>();
  for (int n = 1; n <= piece_count; ++n) {
    const double s = std::exp(countable_piece_entropy(lambda_target, n));
    pieces->push_back({1.0 / (n + 1.0), 1.0 / n, Zigzag(s)});
  }
  const double floor_edge = 1.0 / (piece_count + 1.0);

  IntervalMapSpec spec;
  spec.kind = IntervalMapSpec::Kind::countable_piece;
  spec.lambda_target = lambda_target;
  spec.piece_count = piece_count;
  spec.domain = {0.0, 1.0};
  spec.name = "countable-piece";
  spec.f = [pieces, floor_edge](double x) {
    if (x <= floor_edge) return std::max(0.0, x);  // identity tail, f(0) = 0
    for (const auto& p : *pieces) {
      if (x >= p.a && x <= p.b) {
        if (x == p.a || x == p.b) return x;  // endpoints fixed exactly
        const double u = (x - p.a) / (p.b - p.a);
        return p.a + (p.b - p.a) * p.z(u);
      }
    }
    return std::min(1.0, x);
  };
  return spec;
}

TrajectoryBuffer tent_orbit(std::uint64_t seed, std::size_t n, std::string label) {
  if (n < 1) throw std::invalid_argument("tent_orbit: n must be >= 1");
  // bits b_1 b_2 ...; T(0.b1 b2 ...) = 0.(b2^b1)(b3^b1)..., so the i-th
  // orbit point reads 53 bits at offset i, each xored with the prefix parity.
  Rng rng(seed);
  const std::size_t bit_count = n + 54;
  std::vector<std::uint8_t> bits(bit_count);
  for (std::size_t i = 0; i < bit_count; ++i) bits[i] = static_cast<std::uint8_t>(rng.next_u64() & 1ULL);

  std::vector<double> xs(n);
  std::uint8_t parity = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t mant = 0;
    for (std::size_t t = 1; t <= 53; ++t) mant = (mant << 1) | (bits[i + t] ^ parity);
    xs[i] = static_cast<double>(mant) * 0x1.0p-53;
    parity ^= bits[i + 1];
  }
  return TrajectoryBuffer::from_reals(std::move(xs), std::move(label));
}

TrajectoryBuffer orbit_segment_dithered(const std::function<double(double)>& map, double x0,
                                        std::size_t n, double lo, double hi, std::string label) {
  if (n < 1) throw std::invalid_argument("orbit_segment_dithered: n must be >= 1");
  std::vector<double> xs(n);
  double x = x0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x))
      throw std::runtime_error("orbit escaped: non-finite state at index " + std::to_string(i));
    xs[i] = x;
    if (i + 1 == n) break;
    const double y = map(x);
    if (y == x || y == 0.0 || y == 1.0) {
      x = y;
      continue;
    }
    const std::uint64_t h = mix64(std::bit_cast<std::uint64_t>(x));
    const int jitter = static_cast<int>(h % 5) - 2;  // -2..2 ulps
    double z = y;
    for (int t = 0; t < std::abs(jitter); ++t)
      z = std::nextafter(z, jitter > 0 ? std::numeric_limits<double>::infinity()
                                       : -std::numeric_limits<double>::infinity());
    x = std::clamp(z, lo, hi);
  }
  return TrajectoryBuffer::from_reals(std::move(xs), std::move(label));
}

std::size_t spanning_number(std::vector<double> points, double eps) {
  if (points.empty()) throw std::invalid_argument("spanning_number: empty point set");
  if (!(eps > 0.0)) throw std::invalid_argument("spanning_number: eps must be positive");
  std::sort(points.begin(), points.end());
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < points.size()) {
    const double center = points[i];
    ++count;
    while (i < points.size() && std::abs(points[i] - center) <= eps) ++i;
  }
  return count;
}

std::size_t separated_number(std::vector<double> points, double eps) {
  if (points.empty()) throw std::invalid_argument("separated_number: empty point set");
  if (!(eps > 0.0)) throw std::invalid_argument("separated_number: eps must be positive");
  std::sort(points.begin(), points.end());
  std::size_t count = 1;
  double last = points.front();
  for (double p : points) {
    if (p - last > eps) {
      ++count;
      last = p;
    }
  }
  return count;
}

std::size_t spanning_number_indexed(std::size_t count,
                                    const std::function<double(std::size_t, std::size_t)>& dist,
                                    double eps) {
  if (count == 0) throw std::invalid_argument("spanning_number_indexed: empty set");
  std::vector<bool> covered(count, false);
  std::size_t balls = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (covered[i]) continue;
    ++balls;
    covered[i] = true;
    for (std::size_t j = i + 1; j < count; ++j) {
      if (!covered[j] && dist(i, j) <= eps) covered[j] = true;
    }
  }
  return balls;
}

std::size_t separated_number_indexed(std::size_t count,
                                     const std::function<double(std::size_t, std::size_t)>& dist,
                                     double eps) {
  if (count == 0) throw std::invalid_argument("separated_number_indexed: empty set");
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < count; ++i) {
    bool ok = true;
    for (std::size_t c : chosen) {
      if (!(dist(c, i) > eps)) {
        ok = false;
        break;
      }
    }
    if (ok) chosen.push_back(i);
  }
  return chosen.size();
}

TopEntropyEstimate topological_entropy_estimate(const IntervalMapSpec& spec, std::size_t grid_size,
                                                const std::vector<std::size_t>& m_list,
                                                const std::vector<double>& eps_list,
                                                const TopEntropyOptions& opts) {
  if (grid_size < 1000) throw std::invalid_argument("topological_entropy_estimate: grid_size must be >= 1000");
  if (m_list.size() < opts.min_fit_points)
    throw std::invalid_argument("topological_entropy_estimate: m_list too short");

  const std::size_t m_max = *std::max_element(m_list.begin(), m_list.end());
  const auto [a, b] = spec.domain;
  // orbit matrix: grid_size rows of m_max iterates
  std::vector<double> orbits(grid_size * m_max);
  for (std::size_t g = 0; g < grid_size; ++g) {
    double x = a + (b - a) * static_cast<double>(g) / static_cast<double>(grid_size - 1);
    for (std::size_t h = 0; h < m_max; ++h) {
      orbits[g * m_max + h] = x;
      x = spec.f(x);
    }
  }

  TopEntropyEstimate est;
  std::vector<std::vector<double>> fits_x(eps_list.size()), fits_y(eps_list.size());
  for (std::size_t ei = 0; ei < eps_list.size(); ++ei) {
    const double eps = eps_list[ei];
    for (std::size_t m : m_list) {
      const auto dist = [&](std::size_t i, std::size_t j) {
        double d = 0.0;
        for (std::size_t h = 0; h < m; ++h)
          d = std::max(d, std::abs(orbits[i * m_max + h] - orbits[j * m_max + h]));
        return d;
      };
      const std::size_t s = separated_number_indexed(grid_size, dist, eps);
      const bool used = s >= 2 && static_cast<double>(s) <= opts.cap_fraction * static_cast<double>(grid_size);
      est.cells.push_back({eps, m, s, used});
      if (used) {
        fits_x[ei].push_back(static_cast<double>(m));
        fits_y[ei].push_back(std::log(static_cast<double>(s)));
      }
    }
  }

  for (std::size_t ei = 0; ei < eps_list.size(); ++ei) {
    if (fits_x[ei].size() >= opts.min_fit_points) {
      est.per_eps_slopes.emplace_back(eps_list[ei], fit_line(fits_x[ei], fits_y[ei]).slope);
    }
  }
  if (est.per_eps_slopes.empty())
    throw std::runtime_error("topological_entropy_estimate: no usable (eps, m) cells");

  bool have_prev = false, have_chosen = false;
  double prev = 0.0, chosen = 0.0, chosen_eps = 0.0;
  for (const auto& [eps, slope] : est.per_eps_slopes) {
    if (have_prev && std::abs(slope - prev) <= opts.plateau_tol * std::max(std::abs(prev), opts.slope_floor)) {
      chosen = slope;
      chosen_eps = eps;
      have_chosen = true;
    }
    prev = slope;
    have_prev = true;
  }
  if (!have_chosen) {
    chosen = est.per_eps_slopes.back().second;
    chosen_eps = est.per_eps_slopes.back().first;
  }
  est.value = std::max(0.0, chosen);
  est.plateau_found = have_chosen;
  est.chosen_eps = chosen_eps;
  return est;
}

SymbolSequence itinerary(const IntervalMapSpec& spec, double x0, std::vector<double> breakpoints,
                         bool dithered, std::size_t length) {
  if (breakpoints.empty()) throw std::invalid_argument("itinerary: need at least one breakpoint");
  std::sort(breakpoints.begin(), breakpoints.end());
  const int p = static_cast<int>(breakpoints.size()) + 1;
  if (p > 10) throw std::invalid_argument("itinerary: alphabet above 10");

  const TrajectoryBuffer orbit =
      dithered ? orbit_segment_dithered(spec.f, x0, length, spec.domain.first, spec.domain.second,
                                        spec.name + "-itinerary")
               : orbit_segment(spec.f, x0, length, spec.name + "-itinerary");
  const auto* xs = orbit.real_states();
  std::vector<std::uint8_t> symbols(length);
  for (std::size_t i = 0; i < length; ++i) {
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), (*xs)[i]);
    symbols[i] = static_cast<std::uint8_t>(it - breakpoints.begin());
  }
  return SymbolSequence::finite(Word(std::move(symbols), p), spec.name + "-itinerary");
}

}  // namespace corrent
