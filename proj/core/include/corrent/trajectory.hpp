#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "corrent/word.hpp"

namespace corrent {

/// Position in a shared symbol buffer, standing for the sequence tail that
/// starts there.
struct SymbolCursor {
  const SymbolBuffer* buffer = nullptr;
  std::size_t offset = 0;
};

/// Opaque state: a point on the real line or a shift-space point.
using State = std::variant<double, SymbolCursor>;

enum class MetricFamily { real_line, shift, custom };

/// Metric evaluator over opaque states. Distances are symmetric, vanish on
/// the diagonal, and satisfy the triangle inequality (property-tested).
class MetricSpaceHandle {
 public:
  using DistanceFn = std::function<double(const State&, const State&)>;

  static MetricSpaceHandle real_line();
  /// 2^-k shift metric, k the first disagreement index; equality up to the
  /// shorter tail returns 0 (finite-horizon truncation).
  static MetricSpaceHandle shift();
  static MetricSpaceHandle custom(DistanceFn fn, std::optional<double> diameter_hint = std::nullopt);

  double distance(const State& a, const State& b) const;
  MetricFamily family() const { return family_; }
  std::optional<double> diameter_hint() const { return diameter_hint_; }

 private:
  MetricSpaceHandle(MetricFamily f, DistanceFn fn, std::optional<double> hint)
      : family_(f), custom_fn_(std::move(fn)), diameter_hint_(hint) {}
  MetricFamily family_;
  DistanceFn custom_fn_;
  std::optional<double> diameter_hint_;
};

/// Finite, immutable segment of an orbit: indexed states plus the metric they
/// live in. Symbolic trajectories are views (offset, stride) into a shared
/// symbol buffer; state i is the cursor at offset + i*stride.
class TrajectoryBuffer {
 public:
  static TrajectoryBuffer from_reals(std::vector<double> xs, std::string origin_label);
  static TrajectoryBuffer from_states(std::vector<State> states, MetricSpaceHandle space,
                                      std::string origin_label);
  static TrajectoryBuffer from_symbols(std::shared_ptr<const SymbolBuffer> buffer,
                                       std::size_t count, std::size_t stride, std::size_t offset,
                                       std::string origin_label);

  std::size_t size() const;
  State state(std::size_t i) const;
  double distance(std::size_t i, std::size_t j) const;
  const MetricSpaceHandle& space() const { return space_; }
  const std::string& origin_label() const { return origin_label_; }

  /// Real fast-path view; null when not a plain real trajectory.
  const std::vector<double>* real_states() const;

  struct SymbolicView {
    const SymbolBuffer* buffer;
    std::size_t offset;
    std::size_t stride;
    std::size_t count;
  };
  std::optional<SymbolicView> symbolic_view() const;

  /// Derived view sampling every k-th state (the f^k trajectory of the same
  /// initial point). The view shares this buffer's storage.
  TrajectoryBuffer subsample(std::size_t k, std::size_t count, std::string origin_label) const;
  /// Derived view dropping the first h states (the trajectory of f^h x).
  TrajectoryBuffer shifted(std::size_t h, std::size_t count, std::string origin_label) const;

 private:
  TrajectoryBuffer(MetricSpaceHandle space, std::string label)
      : space_(std::move(space)), origin_label_(std::move(label)) {}

  MetricSpaceHandle space_;
  std::string origin_label_;
  // exactly one of the backends is active
  std::shared_ptr<const std::vector<double>> reals_;
  std::shared_ptr<const SymbolBuffer> symbols_;
  std::size_t offset_ = 0, stride_ = 1, count_ = 0;
  std::shared_ptr<const std::vector<State>> states_;
};

/// Orbit (x0, f(x0), ..., f^{n-1}(x0)) on the real line.
/// Throws "orbit escaped" naming the first non-finite index.
TrajectoryBuffer orbit_segment(const std::function<double(double)>& map, double x0, std::size_t n,
                               std::string origin_label = "orbit");

/// Max pairwise distance over stored states; a lower bound on the diameter of
/// the underlying space. Closed-form for real (max-min) and shift (first
/// disagreement scan) families, O(n^2) otherwise.
double diameter_estimate(const TrajectoryBuffer& traj);

/// Strictly decreasing positive thresholds.
class EpsilonGrid {
 public:
  explicit EpsilonGrid(std::vector<double> values);
  /// 2^-k_min, ..., 2^-k_max (k_min <= k_max).
  static EpsilonGrid dyadic(int k_min, int k_max);
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

}  // namespace corrent
