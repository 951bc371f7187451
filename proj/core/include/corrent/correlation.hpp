#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "corrent/numeric.hpp"
#include "corrent/trajectory.hpp"

namespace corrent {

/// Exact correlation-sum value count/n^2; diagonal pairs are always counted,
/// so n <= count <= n^2.
struct CorrSum {
  std::int64_t count = 0;
  std::int64_t n = 0;

  double value() const { return static_cast<double>(count) / (static_cast<double>(n) * static_cast<double>(n)); }
  BigRational exact() const { return BigRational(count, BigInt(n) * n); }
  bool operator==(const CorrSum&) const = default;
};

/// max_{0<=h<m} rho(traj[i+h], traj[j+h]).
double bowen_distance(const TrajectoryBuffer& traj, std::size_t i, std::size_t j, std::size_t m);

/// Naive O(n^2 m) pair count with Bowen distance <= eps (closed balls).
CorrSum correlation_sum(const TrajectoryBuffer& traj, std::size_t m, std::size_t n, double eps);

struct FastCorrSum {
  CorrSum sum;
  bool used_fast = true;  ///< false: unsupported metric, naive fallback taken
};

/// Accelerated pair count; exactly equals correlation_sum on supported
/// metrics (shift: equal-window counting; real line: sorted range counting
/// with exact tie handling). Unsupported metrics fall back to the naive path
/// with used_fast = false.
FastCorrSum correlation_sum_fast(const TrajectoryBuffer& traj, std::size_t m, std::size_t n, double eps);

/// Correlation sums at every n in an increasing schedule, from one pass over
/// the matched pairs of the largest n.
std::vector<CorrSum> correlation_profile(const TrajectoryBuffer& traj, std::size_t m, double eps,
                                         const std::vector<std::int64_t>& n_schedule,
                                         bool allow_fast = true);

/// Finite surrogate for liminf/limsup over n: min/max of the correlation sum
/// over the tail of an n-schedule.
struct LimitEstimate {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<std::int64_t> schedule;
  std::vector<double> values;  ///< correlation sums along the schedule
};

struct LimitOptions {
  double tail_fraction = 0.5;  ///< portion of the schedule used for min/max
  bool allow_fast = true;
};

/// Schedule must be strictly increasing with successive ratios <= 2 and last
/// entry feasible for the trajectory.
LimitEstimate limit_estimate(const TrajectoryBuffer& traj, std::size_t m, double eps,
                             const std::vector<std::int64_t>& schedule, const LimitOptions& opts = {});

/// Correlation-sum table over an (eps, m, n) grid.
struct CorrelationTable {
  struct Entry {
    double eps;
    std::size_t m;
    std::int64_t n;
    std::int64_t count;
    double value;
  };
  std::vector<Entry> entries;
  std::string traj_label;
};

CorrelationTable correlation_table(const TrajectoryBuffer& traj, const EpsilonGrid& grid,
                                   const std::vector<std::size_t>& m_list,
                                   const std::vector<std::int64_t>& n_list, bool allow_fast = true);

/// The smallest k >= 0 with 2^-k <= eps, i.e. eps in [2^-k, 2^-(k-1)).
/// Requires eps > 0; eps >= 1 gives k = 0.
int shift_radius_index(double eps);

}  // namespace corrent
