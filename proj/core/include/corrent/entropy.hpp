#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corrent/correlation.hpp"

namespace corrent {

/// Estimator knobs shared by the entropy and dimension estimators.
struct EstimatorOptions {
  /// (eps, m) cells whose correlation estimate falls below floor_factor/n are
  /// excluded from fits: at that level the count is dominated by the diagonal
  /// and carries no decay information.
  double floor_factor = 10.0;
  /// Plateau over the eps grid: slopes s, s_prev agree when
  /// |s - s_prev| <= plateau_tol * max(|s_prev|, slope_floor).
  double plateau_tol = 0.05;
  double slope_floor = 0.02;
  double tail_fraction = 0.5;     ///< n-schedule tail used for limit estimates
  std::size_t min_fit_points = 3; ///< minimum admissible m per eps cell
  double noise_floor = 0.05;      ///< entropy below this is "at noise level"
  bool allow_fast = true;
};

/// Slope estimate of -log c over m at fixed eps, plus what went into it.
struct EpsFit {
  double eps = 0.0;
  std::vector<std::size_t> m_used;
  std::vector<double> c_estimates;
  double slope = 0.0;
  double intercept = 0.0;
  double residual_ss = 0.0;
  bool usable = false;
};

struct EntropyEstimate {
  double value = 0.0;  ///< chosen slope, clamped at 0
  std::vector<std::pair<double, double>> per_eps_slopes;  ///< (eps, slope)
  std::pair<std::size_t, std::size_t> m_range;
  struct Diagnostics {
    bool plateau_found = false;
    double chosen_eps = 0.0;
    double chosen_slope_raw = 0.0;
    std::vector<EpsFit> fits;
  } diagnostics;
};

/// Default sublacunary n-schedule {n/4, n/2, 3n/4, n}.
std::vector<std::int64_t> default_schedule(std::int64_t n);

/// Local correlation entropy estimates (upper, lower) from slopes of -log c
/// versus m, with the upper entropy fit on lower (tail-min) correlation
/// estimates and the lower entropy on upper (tail-max) ones. Plateau over the
/// eps grid selects the reported value; without a plateau the smallest-eps
/// slope is reported and flagged.
std::pair<EntropyEstimate, EntropyEstimate> local_correlation_entropy(
    const TrajectoryBuffer& traj, const EpsilonGrid& grid, const std::vector<std::size_t>& m_list,
    std::int64_t n, const EstimatorOptions& opts = {},
    const std::vector<std::int64_t>* schedule = nullptr);

struct DimensionEstimate {
  double upper = 0.0;
  double lower = 0.0;
  std::vector<std::pair<double, double>> log_eps_log_c_upper;
  std::vector<std::pair<double, double>> log_eps_log_c_lower;
  double residual_ss_upper = 0.0;
  double residual_ss_lower = 0.0;
};

/// Slopes of log c1 versus log eps over the grid; requires >= 3 epsilons
/// spanning at least two octaves.
DimensionEstimate local_correlation_dimension(const TrajectoryBuffer& traj, const EpsilonGrid& grid,
                                              std::int64_t n, const EstimatorOptions& opts = {});

struct IterateScalingReport {
  std::size_t k = 0;
  double h_f = 0.0;
  double h_fk = 0.0;
  double ratio = 0.0;
  bool unreliable = false;  ///< h_f below the noise floor
  EntropyEstimate detail_f;
  EntropyEstimate detail_fk;
};

/// Compares the upper local correlation entropy of f with that of f^k on the
/// k-subsampled trajectory of the same initial point.
IterateScalingReport iterate_scaling_check(const TrajectoryBuffer& traj, std::size_t k,
                                           const EpsilonGrid& grid,
                                           const std::vector<std::size_t>& m_list, std::int64_t n,
                                           const EstimatorOptions& opts = {});

}  // namespace corrent
