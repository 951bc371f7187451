#include "corrent/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

namespace corrent {

int shift_radius_index(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("shift_radius_index: eps must be positive");
  if (eps >= 1.0) return 0;
  int k = static_cast<int>(std::ceil(-std::log2(eps)));
  while (k > 0 && std::ldexp(1.0, -(k - 1)) <= eps) --k;
  while (std::ldexp(1.0, -k) > eps) ++k;
  if (k > 4096) throw std::invalid_argument("shift_radius_index: eps below representable shift scales");
  return k;
}

double bowen_distance(const TrajectoryBuffer& traj, std::size_t i, std::size_t j, std::size_t m) {
  if (m < 1) throw std::invalid_argument("bowen_distance: m must be >= 1");
  if (i + m - 1 >= traj.size() || j + m - 1 >= traj.size())
    throw std::out_of_range("bowen_distance: window exceeds trajectory");
  double d = 0.0;
  for (std::size_t h = 0; h < m; ++h) d = std::max(d, traj.distance(i + h, j + h));
  return d;
}

namespace {

struct SymbolicWindows {
  const SymbolBuffer* buffer;
  std::size_t offset, stride;
  std::size_t window_len;  // kappa + stride*(m-1)

  std::string_view view(std::size_t i) const {
    return std::string_view(reinterpret_cast<const char*>(buffer->symbols.data()) + offset + i * stride,
                            window_len);
  }
};

/// Window layout for the shift fast path; throws when the buffer cannot
/// resolve distances at the requested radius.
SymbolicWindows symbolic_windows(const TrajectoryBuffer::SymbolicView& sv, std::size_t m,
                                 std::size_t n, double eps) {
  const std::size_t kappa = static_cast<std::size_t>(shift_radius_index(eps));
  SymbolicWindows w{sv.buffer, sv.offset, sv.stride, kappa + sv.stride * (m - 1)};
  const std::size_t need = sv.offset + (n - 1) * sv.stride + w.window_len;
  if (need > sv.buffer->symbols.size())
    throw std::invalid_argument(
        "correlation_sum: window exceeds trajectory (needs " + std::to_string(need) +
        " symbols, buffer has " + std::to_string(sv.buffer->symbols.size()) + ")");
  return w;
}

void check_preconditions(const TrajectoryBuffer& traj, std::size_t m, std::size_t n) {
  if (n < 1 || m < 1) throw std::invalid_argument("correlation_sum: n and m must be >= 1");
  if (n + m - 1 > traj.size())
    throw std::invalid_argument("correlation_sum: trajectory shorter than n + m - 1 states");
}

std::int64_t count_pairs_naive(const TrajectoryBuffer& traj, std::size_t m, std::size_t n, double eps) {
  std::int64_t count = static_cast<std::int64_t>(n);  // diagonal
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (bowen_distance(traj, i, j, m) <= eps) count += 2;
    }
  }
  return count;
}

std::int64_t count_pairs_symbolic(const SymbolicWindows& w, std::size_t n) {
  if (w.window_len == 0) return static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n);
  std::unordered_map<std::string_view, std::int64_t> counts;
  counts.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) ++counts[w.view(i)];
  std::int64_t total = 0;
  for (const auto& [_, c] : counts) total += c * c;
  return total;
}

struct SortedFirstCoord {
  std::vector<double> values;       // sorted first coordinates
  std::vector<std::size_t> index;   // original window index per sorted slot
};

SortedFirstCoord sort_first_coords(const std::vector<double>& xs, std::size_t n) {
  SortedFirstCoord s;
  s.index.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.index[i] = i;
  std::sort(s.index.begin(), s.index.end(),
            [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  s.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.values[i] = xs[s.index[i]];
  return s;
}

/// Enumerates, for each window i, the candidates within eps on the first
/// coordinate (widened by 2 ulps, then verified exactly) and calls fn(i, j)
/// for every matched unordered pair once (j > i as original indices).
template <typename Fn>
void for_each_matched_pair_real(const std::vector<double>& xs, std::size_t m, std::size_t n,
                                double eps, Fn&& fn) {
  const SortedFirstCoord s = sort_first_coords(xs, n);
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t si = 0; si < n; ++si) {
    const std::size_t i = s.index[si];
    const double v = xs[i];
    double lo = std::nextafter(std::nextafter(v - eps, -inf), -inf);
    double hi = std::nextafter(std::nextafter(v + eps, inf), inf);
    auto first = std::lower_bound(s.values.begin(), s.values.end(), lo);
    auto last = std::upper_bound(s.values.begin(), s.values.end(), hi);
    for (auto it = first; it != last; ++it) {
      const std::size_t j = s.index[static_cast<std::size_t>(it - s.values.begin())];
      if (j <= i) continue;
      bool ok = true;
      for (std::size_t h = 0; h < m; ++h) {
        if (!(std::abs(xs[i + h] - xs[j + h]) <= eps)) {
          ok = false;
          break;
        }
      }
      if (ok) fn(i, j);
    }
  }
}

}  // namespace

CorrSum correlation_sum(const TrajectoryBuffer& traj, std::size_t m, std::size_t n, double eps) {
  check_preconditions(traj, m, n);
  if (auto sv = traj.symbolic_view()) symbolic_windows(*sv, m, n, eps);  // feasibility, exactness
  return CorrSum{count_pairs_naive(traj, m, n, eps), static_cast<std::int64_t>(n)};
}

FastCorrSum correlation_sum_fast(const TrajectoryBuffer& traj, std::size_t m, std::size_t n, double eps) {
  check_preconditions(traj, m, n);
  if (auto sv = traj.symbolic_view()) {
    const SymbolicWindows w = symbolic_windows(*sv, m, n, eps);
    return {CorrSum{count_pairs_symbolic(w, n), static_cast<std::int64_t>(n)}, true};
  }
  if (const auto* xs = traj.real_states()) {
    std::int64_t count = static_cast<std::int64_t>(n);
    for_each_matched_pair_real(*xs, m, n, eps, [&](std::size_t, std::size_t) { count += 2; });
    return {CorrSum{count, static_cast<std::int64_t>(n)}, true};
  }
  return {correlation_sum(traj, m, n, eps), false};
}

std::vector<CorrSum> correlation_profile(const TrajectoryBuffer& traj, std::size_t m, double eps,
                                         const std::vector<std::int64_t>& n_schedule, bool allow_fast) {
  if (n_schedule.empty()) throw std::invalid_argument("correlation_profile: empty schedule");
  for (std::size_t i = 0; i < n_schedule.size(); ++i) {
    if (n_schedule[i] < 1) throw std::invalid_argument("correlation_profile: schedule entries must be >= 1");
    if (i > 0 && n_schedule[i] <= n_schedule[i - 1])
      throw std::invalid_argument("correlation_profile: schedule must be strictly increasing");
  }
  const std::size_t n_max = static_cast<std::size_t>(n_schedule.back());
  check_preconditions(traj, m, n_max);

  // matched_before[t]: matches of window t against windows < t; the pair
  // count at n is then n + 2 * sum_{t<n} matched_before[t].
  std::vector<std::int64_t> matched_before(n_max, 0);

  const auto sv = traj.symbolic_view();
  if (sv && allow_fast) {
    const SymbolicWindows w = symbolic_windows(*sv, m, n_max, eps);
    if (w.window_len == 0) {
      for (std::size_t t = 0; t < n_max; ++t) matched_before[t] = static_cast<std::int64_t>(t);
    } else {
      std::unordered_map<std::string_view, std::int64_t> counts;
      counts.reserve(n_max * 2);
      for (std::size_t t = 0; t < n_max; ++t) {
        auto& c = counts[w.view(t)];
        matched_before[t] = c;
        ++c;
      }
    }
  } else if (traj.real_states() && allow_fast) {
    if (sv) symbolic_windows(*sv, m, n_max, eps);
    for_each_matched_pair_real(*traj.real_states(), m, n_max, eps,
                               [&](std::size_t i, std::size_t j) { ++matched_before[std::max(i, j)]; });
  } else {
    if (sv) symbolic_windows(*sv, m, n_max, eps);  // keep naive/fast domains identical
    for (std::size_t i = 0; i < n_max; ++i)
      for (std::size_t j = i + 1; j < n_max; ++j)
        if (bowen_distance(traj, i, j, m) <= eps) ++matched_before[j];
  }

  std::vector<CorrSum> out;
  out.reserve(n_schedule.size());
  std::int64_t acc = 0;
  std::size_t next = 0;
  for (std::size_t t = 0; t < n_max; ++t) {
    acc += matched_before[t];
    while (next < n_schedule.size() && static_cast<std::size_t>(n_schedule[next]) == t + 1) {
      out.push_back(CorrSum{static_cast<std::int64_t>(t + 1) + 2 * acc, n_schedule[next]});
      ++next;
    }
  }
  return out;
}

LimitEstimate limit_estimate(const TrajectoryBuffer& traj, std::size_t m, double eps,
                             const std::vector<std::int64_t>& schedule, const LimitOptions& opts) {
  if (schedule.empty()) throw std::invalid_argument("limit_estimate: empty schedule");
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (schedule[i] > 2 * schedule[i - 1])
      throw std::invalid_argument("limit_estimate: schedule ratio above 2 (not sublacunary-like)");
  }
  const auto sums = correlation_profile(traj, m, eps, schedule, opts.allow_fast);
  LimitEstimate est;
  est.schedule = schedule;
  est.values.reserve(sums.size());
  for (const auto& s : sums) est.values.push_back(s.value());
  const std::size_t tail =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(opts.tail_fraction * est.values.size())));
  const auto begin = est.values.end() - static_cast<std::ptrdiff_t>(tail);
  est.lower = *std::min_element(begin, est.values.end());
  est.upper = *std::max_element(begin, est.values.end());
  return est;
}

CorrelationTable correlation_table(const TrajectoryBuffer& traj, const EpsilonGrid& grid,
                                   const std::vector<std::size_t>& m_list,
                                   const std::vector<std::int64_t>& n_list, bool allow_fast) {
  CorrelationTable table;
  table.traj_label = traj.origin_label();
  for (double eps : grid.values()) {
    for (std::size_t m : m_list) {
      const auto sums = correlation_profile(traj, m, eps, n_list, allow_fast);
      for (std::size_t i = 0; i < sums.size(); ++i) {
        table.entries.push_back({eps, m, n_list[i], sums[i].count, sums[i].value()});
      }
    }
  }
  return table;
}

}  // namespace corrent
