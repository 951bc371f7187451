#include "corrent/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace corrent {

std::vector<std::int64_t> default_schedule(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("default_schedule: n must be >= 1");
  std::vector<std::int64_t> s{std::max<std::int64_t>(1, n / 4), std::max<std::int64_t>(1, n / 2),
                              std::max<std::int64_t>(1, (3 * n) / 4), n};
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

namespace {

struct CellEstimates {
  // limit estimates per (eps index, m index)
  std::vector<std::vector<LimitEstimate>> cells;
};

CellEstimates evaluate_cells(const TrajectoryBuffer& traj, const EpsilonGrid& grid,
                             const std::vector<std::size_t>& m_list, std::int64_t n,
                             const EstimatorOptions& opts, const std::vector<std::int64_t>* schedule) {
  std::vector<std::int64_t> sched = schedule ? *schedule : default_schedule(n);
  if (sched.back() != n) throw std::invalid_argument("entropy estimator: schedule must end at n");
  LimitOptions lopts;
  lopts.tail_fraction = opts.tail_fraction;
  lopts.allow_fast = opts.allow_fast;
  CellEstimates out;
  out.cells.resize(grid.values().size());
  for (std::size_t e = 0; e < grid.values().size(); ++e) {
    for (std::size_t mi = 0; mi < m_list.size(); ++mi) {
      out.cells[e].push_back(limit_estimate(traj, m_list[mi], grid.values()[e], sched, lopts));
    }
  }
  return out;
}

/// One side of the estimator: fit -log c over m per eps, then plateau-select
/// over the decreasing eps grid.
EntropyEstimate assemble(const EpsilonGrid& grid, const std::vector<std::size_t>& m_list,
                         std::int64_t n, const EstimatorOptions& opts, const CellEstimates& cells,
                         bool use_lower_c) {
  EntropyEstimate est;
  est.m_range = {m_list.front(), m_list.back()};
  const double floor = opts.floor_factor / static_cast<double>(n);

  for (std::size_t e = 0; e < grid.values().size(); ++e) {
    EpsFit fit;
    fit.eps = grid.values()[e];
    std::vector<double> xs, ys;
    for (std::size_t mi = 0; mi < m_list.size(); ++mi) {
      const auto& lim = cells.cells[e][mi];
      const double c = use_lower_c ? lim.lower : lim.upper;
      if (c >= floor) {
        xs.push_back(static_cast<double>(m_list[mi]));
        ys.push_back(-std::log(c));
        fit.m_used.push_back(m_list[mi]);
        fit.c_estimates.push_back(c);
      }
    }
    if (xs.size() >= opts.min_fit_points) {
      const LineFit lf = fit_line(xs, ys);
      fit.slope = lf.slope;
      fit.intercept = lf.intercept;
      fit.residual_ss = lf.residual_ss;
      fit.usable = true;
      est.per_eps_slopes.emplace_back(fit.eps, fit.slope);
    }
    est.diagnostics.fits.push_back(std::move(fit));
  }

  if (est.per_eps_slopes.empty())
    throw std::runtime_error(
        "entropy estimator: no eps has enough correlation estimates above the statistical floor");

  bool have_prev = false, have_chosen = false;
  double prev = 0.0, chosen = 0.0, chosen_eps = 0.0;
  for (const auto& [eps, slope] : est.per_eps_slopes) {  // eps decreasing
    if (have_prev &&
        std::abs(slope - prev) <= opts.plateau_tol * std::max(std::abs(prev), opts.slope_floor)) {
      chosen = slope;
      chosen_eps = eps;
      have_chosen = true;
    }
    prev = slope;
    have_prev = true;
  }
  if (!have_chosen) {
    chosen = est.per_eps_slopes.back().second;  // smallest eps
    chosen_eps = est.per_eps_slopes.back().first;
  }
  est.diagnostics.plateau_found = have_chosen;
  est.diagnostics.chosen_eps = chosen_eps;
  est.diagnostics.chosen_slope_raw = chosen;
  est.value = std::max(0.0, chosen);
  return est;
}

}  // namespace

std::pair<EntropyEstimate, EntropyEstimate> local_correlation_entropy(
    const TrajectoryBuffer& traj, const EpsilonGrid& grid, const std::vector<std::size_t>& m_list,
    std::int64_t n, const EstimatorOptions& opts, const std::vector<std::int64_t>* schedule) {
  if (m_list.size() < 3)
    throw std::invalid_argument("local_correlation_entropy: m_list needs at least 3 values");
  for (std::size_t i = 1; i < m_list.size(); ++i)
    if (m_list[i] <= m_list[i - 1])
      throw std::invalid_argument("local_correlation_entropy: m_list must be strictly increasing");
  const CellEstimates cells = evaluate_cells(traj, grid, m_list, n, opts, schedule);
  // Upper entropy pairs with lower correlation limits, and vice versa.
  EntropyEstimate upper = assemble(grid, m_list, n, opts, cells, /*use_lower_c=*/true);
  EntropyEstimate lower = assemble(grid, m_list, n, opts, cells, /*use_lower_c=*/false);
  return {std::move(upper), std::move(lower)};
}

DimensionEstimate local_correlation_dimension(const TrajectoryBuffer& traj, const EpsilonGrid& grid,
                                              std::int64_t n, const EstimatorOptions& opts) {
  const auto& eps = grid.values();
  if (eps.size() < 3)
    throw std::invalid_argument("local_correlation_dimension: grid needs at least 3 epsilons");
  if (!(eps.front() / eps.back() >= 4.0))
    throw std::invalid_argument("local_correlation_dimension: grid must span at least two octaves");
  const double floor = opts.floor_factor / static_cast<double>(n);
  LimitOptions lopts;
  lopts.tail_fraction = opts.tail_fraction;
  lopts.allow_fast = opts.allow_fast;
  const auto sched = default_schedule(n);

  DimensionEstimate out;
  std::vector<double> xs_u, ys_u, xs_l, ys_l;
  for (double e : eps) {
    const LimitEstimate lim = limit_estimate(traj, 1, e, sched, lopts);
    if (lim.lower >= floor) {
      xs_u.push_back(std::log(e));
      ys_u.push_back(std::log(lim.lower));
      out.log_eps_log_c_upper.emplace_back(std::log(e), std::log(lim.lower));
    }
    if (lim.upper >= floor) {
      xs_l.push_back(std::log(e));
      ys_l.push_back(std::log(lim.upper));
      out.log_eps_log_c_lower.emplace_back(std::log(e), std::log(lim.upper));
    }
  }
  if (xs_u.size() < 3 || xs_l.size() < 3)
    throw std::runtime_error("local_correlation_dimension: fewer than 3 usable epsilons above floor");
  const LineFit fu = fit_line(xs_u, ys_u);
  const LineFit fl = fit_line(xs_l, ys_l);
  out.upper = std::max(0.0, fu.slope);
  out.lower = std::max(0.0, fl.slope);
  out.residual_ss_upper = fu.residual_ss;
  out.residual_ss_lower = fl.residual_ss;
  return out;
}

IterateScalingReport iterate_scaling_check(const TrajectoryBuffer& traj, std::size_t k,
                                           const EpsilonGrid& grid,
                                           const std::vector<std::size_t>& m_list, std::int64_t n,
                                           const EstimatorOptions& opts) {
  if (k < 1) throw std::invalid_argument("iterate_scaling_check: k must be >= 1");
  const std::size_t m_max = *std::max_element(m_list.begin(), m_list.end());
  if (traj.size() < k * (static_cast<std::size_t>(n) + m_max))
    throw std::invalid_argument("iterate_scaling_check: trajectory shorter than k*(n + max m)");

  IterateScalingReport rep;
  rep.k = k;
  auto [upper_f, lower_f] = local_correlation_entropy(traj, grid, m_list, n, opts);
  rep.detail_f = std::move(upper_f);
  rep.h_f = rep.detail_f.value;

  const std::size_t sub_count = static_cast<std::size_t>(n) + m_max;
  const TrajectoryBuffer sub = traj.subsample(k, sub_count, traj.origin_label() + "|iterate^" + std::to_string(k));
  auto [upper_fk, lower_fk] = local_correlation_entropy(sub, grid, m_list, n, opts);
  rep.detail_fk = std::move(upper_fk);
  rep.h_fk = rep.detail_fk.value;

  if (rep.h_f < opts.noise_floor) {
    rep.unreliable = true;
    rep.ratio = rep.h_f > 0.0 ? rep.h_fk / rep.h_f : 0.0;
  } else {
    rep.ratio = rep.h_fk / rep.h_f;
  }
  return rep;
}

}  // namespace corrent
