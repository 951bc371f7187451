#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace corrent {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Closed interval [lo, hi] with outward rounding on every operation.
/// Used where a computed real must carry a rigorous two-sided bound
/// (level-growth rates, Stirling remainders).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double v) : lo(v), hi(v) {}
  Interval(double l, double h) : lo(l), hi(h) {
    if (!(l <= h)) throw std::invalid_argument("Interval: lo > hi");
  }

  static double down(double v) { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }
  static double up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }

  Interval operator+(const Interval& o) const { return {down(lo + o.lo), up(hi + o.hi)}; }
  Interval operator-(const Interval& o) const { return {down(lo - o.hi), up(hi - o.lo)}; }
  Interval operator*(const Interval& o) const {
    const double c[4] = {lo * o.lo, lo * o.hi, hi * o.lo, hi * o.hi};
    return {down(*std::min_element(c, c + 4)), up(*std::max_element(c, c + 4))};
  }
  Interval operator/(const Interval& o) const {
    if (o.lo <= 0.0 && o.hi >= 0.0) throw std::domain_error("Interval: division by interval containing 0");
    const double c[4] = {lo / o.lo, lo / o.hi, hi / o.lo, hi / o.hi};
    return {down(*std::min_element(c, c + 4)), up(*std::max_element(c, c + 4))};
  }
};

/// log of a positive big integer, as an interval.
Interval log_interval(const BigInt& v);

/// num / den for positive big-integer den, outward rounded.
Interval divide(const Interval& num, const BigInt& den);

/// Unweighted least-squares line fit; residual_ss is the sum of squared
/// residuals of ys against the fitted line.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_ss = 0.0;
  std::size_t points = 0;
};
LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

/// Deterministic random stream. The engine is std::mt19937_64 (bit-exact by
/// the standard); all derived draws go through fixed arithmetic rather than
/// std distributions, so outputs are stable across library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// uniform in [0,1), 53 mantissa bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// uniform integer in [0, n), n >= 1, via scaled unit draw.
  std::uint64_t next_below(std::uint64_t n) {
    return std::min<std::uint64_t>(static_cast<std::uint64_t>(next_unit() * static_cast<double>(n)), n - 1);
  }

  double next_in(double a, double b) { return a + (b - a) * next_unit(); }

  static const char* name() { return "mt19937_64"; }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 hash step; used as a pure deterministic bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace corrent
