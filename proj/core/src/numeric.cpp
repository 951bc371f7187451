#include "corrent/numeric.hpp"

namespace corrent {

Interval log_interval(const BigInt& v) {
  if (v <= 0) throw std::domain_error("log_interval: argument must be positive");
  const unsigned bits = boost::multiprecision::msb(v);  // floor(log2 v)
  // v = top * 2^shift + remainder with top holding the leading 53 bits,
  // so log v lies in [log top, log(top+1)] + shift*log 2.
  unsigned shift = bits > 52 ? bits - 52 : 0;
  const std::uint64_t top = static_cast<std::uint64_t>(v >> shift);
  const Interval log_top(Interval::down(Interval::down(std::log(static_cast<double>(top)))),
                         Interval::up(Interval::up(std::log(static_cast<double>(top + 1)))));
  const Interval log2(Interval::down(std::log(2.0)), Interval::up(std::log(2.0)));
  return log_top + Interval(static_cast<double>(shift)) * log2;
}

Interval divide(const Interval& num, const BigInt& den) {
  if (den <= 0) throw std::domain_error("divide: denominator must be positive");
  if (num.lo < 0) throw std::domain_error("divide: negative numerator unsupported");
  const unsigned bits = boost::multiprecision::msb(den);
  if (bits >= 1020) {
    // den >= 2^1020: the quotient underflows double precision;
    // bound it by num.hi * 2^-1020.
    return Interval(0.0, Interval::up(std::ldexp(num.hi, -1020)));
  }
  const double d = static_cast<double>(den);  // rounds to nearest
  const Interval den_iv(Interval::down(d), Interval::up(d));
  return num / den_iv;
}

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit_line: need >= 2 paired points");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate (constant x)");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = xs.size();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    fit.residual_ss += r * r;
  }
  return fit;
}

}  // namespace corrent
