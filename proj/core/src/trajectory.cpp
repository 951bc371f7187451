#include "corrent/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace corrent {

namespace {

double shift_cursor_distance(const SymbolCursor& a, const SymbolCursor& b) {
  if (a.buffer != b.buffer)
    throw std::invalid_argument("shift metric: states from different symbol buffers");
  const auto& s = a.buffer->symbols;
  if (a.offset == b.offset) return 0.0;
  const std::size_t horizon = s.size() - std::max(a.offset, b.offset);
  for (std::size_t t = 0; t < horizon; ++t) {
    if (s[a.offset + t] != s[b.offset + t]) return t < 1075 ? std::ldexp(1.0, -static_cast<int>(t)) : 0.0;
  }
  return 0.0;  // equal up to the horizon
}

}  // namespace

MetricSpaceHandle MetricSpaceHandle::real_line() {
  return MetricSpaceHandle(MetricFamily::real_line, nullptr, std::nullopt);
}

MetricSpaceHandle MetricSpaceHandle::shift() {
  return MetricSpaceHandle(MetricFamily::shift, nullptr, 1.0);
}

MetricSpaceHandle MetricSpaceHandle::custom(DistanceFn fn, std::optional<double> diameter_hint) {
  if (!fn) throw std::invalid_argument("MetricSpaceHandle::custom: null distance");
  return MetricSpaceHandle(MetricFamily::custom, std::move(fn), diameter_hint);
}

double MetricSpaceHandle::distance(const State& a, const State& b) const {
  switch (family_) {
    case MetricFamily::real_line:
      return std::abs(std::get<double>(a) - std::get<double>(b));
    case MetricFamily::shift:
      return shift_cursor_distance(std::get<SymbolCursor>(a), std::get<SymbolCursor>(b));
    case MetricFamily::custom:
      return custom_fn_(a, b);
  }
  throw std::logic_error("unreachable");
}

TrajectoryBuffer TrajectoryBuffer::from_reals(std::vector<double> xs, std::string origin_label) {
  if (xs.empty()) throw std::invalid_argument("TrajectoryBuffer: empty state list");
  TrajectoryBuffer t(MetricSpaceHandle::real_line(), std::move(origin_label));
  t.count_ = xs.size();
  t.reals_ = std::make_shared<const std::vector<double>>(std::move(xs));
  return t;
}

TrajectoryBuffer TrajectoryBuffer::from_states(std::vector<State> states, MetricSpaceHandle space,
                                               std::string origin_label) {
  if (states.empty()) throw std::invalid_argument("TrajectoryBuffer: empty state list");
  TrajectoryBuffer t(std::move(space), std::move(origin_label));
  t.count_ = states.size();
  t.states_ = std::make_shared<const std::vector<State>>(std::move(states));
  return t;
}

TrajectoryBuffer TrajectoryBuffer::from_symbols(std::shared_ptr<const SymbolBuffer> buffer,
                                                std::size_t count, std::size_t stride,
                                                std::size_t offset, std::string origin_label) {
  if (!buffer) throw std::invalid_argument("TrajectoryBuffer: null symbol buffer");
  if (count == 0 || stride == 0) throw std::invalid_argument("TrajectoryBuffer: count and stride must be >= 1");
  if (offset + (count - 1) * stride >= buffer->symbols.size())
    throw std::invalid_argument("TrajectoryBuffer: symbol buffer too short for requested view");
  TrajectoryBuffer t(MetricSpaceHandle::shift(), std::move(origin_label));
  t.symbols_ = std::move(buffer);
  t.offset_ = offset;
  t.stride_ = stride;
  t.count_ = count;
  return t;
}

std::size_t TrajectoryBuffer::size() const { return count_; }

State TrajectoryBuffer::state(std::size_t i) const {
  if (i >= count_) throw std::out_of_range("TrajectoryBuffer: state index out of range");
  if (reals_) return (*reals_)[i];
  if (symbols_) return SymbolCursor{symbols_.get(), offset_ + i * stride_};
  return (*states_)[i];
}

double TrajectoryBuffer::distance(std::size_t i, std::size_t j) const {
  return space_.distance(state(i), state(j));
}

const std::vector<double>* TrajectoryBuffer::real_states() const { return reals_.get(); }

std::optional<TrajectoryBuffer::SymbolicView> TrajectoryBuffer::symbolic_view() const {
  if (!symbols_) return std::nullopt;
  return SymbolicView{symbols_.get(), offset_, stride_, count_};
}

TrajectoryBuffer TrajectoryBuffer::subsample(std::size_t k, std::size_t count,
                                             std::string origin_label) const {
  if (k == 0 || count == 0) throw std::invalid_argument("subsample: k and count must be >= 1");
  if ((count - 1) * k >= count_)
    throw std::invalid_argument("subsample: not enough states for every k-th sample");
  if (symbols_) {
    TrajectoryBuffer t(space_, std::move(origin_label));
    t.symbols_ = symbols_;
    t.offset_ = offset_;
    t.stride_ = stride_ * k;
    t.count_ = count;
    return t;
  }
  if (reals_) {
    std::vector<double> xs(count);
    for (std::size_t i = 0; i < count; ++i) xs[i] = (*reals_)[i * k];
    return from_reals(std::move(xs), std::move(origin_label));
  }
  std::vector<State> st(count);
  for (std::size_t i = 0; i < count; ++i) st[i] = (*states_)[i * k];
  return from_states(std::move(st), space_, std::move(origin_label));
}

TrajectoryBuffer TrajectoryBuffer::shifted(std::size_t h, std::size_t count,
                                           std::string origin_label) const {
  if (count == 0 || h + count > count_)
    throw std::invalid_argument("shifted: not enough states after dropping prefix");
  if (symbols_) {
    TrajectoryBuffer t(space_, std::move(origin_label));
    t.symbols_ = symbols_;
    t.offset_ = offset_ + h * stride_;
    t.stride_ = stride_;
    t.count_ = count;
    return t;
  }
  if (reals_) {
    std::vector<double> xs(reals_->begin() + static_cast<std::ptrdiff_t>(h),
                           reals_->begin() + static_cast<std::ptrdiff_t>(h + count));
    return from_reals(std::move(xs), std::move(origin_label));
  }
  std::vector<State> st(states_->begin() + static_cast<std::ptrdiff_t>(h),
                        states_->begin() + static_cast<std::ptrdiff_t>(h + count));
  return from_states(std::move(st), space_, std::move(origin_label));
}

TrajectoryBuffer orbit_segment(const std::function<double(double)>& map, double x0, std::size_t n,
                               std::string origin_label) {
  if (n < 1) throw std::invalid_argument("orbit_segment: n must be >= 1");
  std::vector<double> xs(n);
  double x = x0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x))
      throw std::runtime_error("orbit escaped: non-finite state at index " + std::to_string(i));
    xs[i] = x;
    if (i + 1 < n) x = map(x);
  }
  return TrajectoryBuffer::from_reals(std::move(xs), std::move(origin_label));
}

double diameter_estimate(const TrajectoryBuffer& traj) {
  const std::size_t n = traj.size();
  if (n == 1) return 0.0;
  if (const auto* xs = traj.real_states()) {
    auto [mn, mx] = std::minmax_element(xs->begin(), xs->end());
    return *mx - *mn;
  }
  if (auto sv = traj.symbolic_view()) {
    // Sort cursors lexicographically; the minimal first-disagreement depth is
    // attained by an adjacent pair.
    const auto& s = sv->buffer->symbols;
    std::vector<std::size_t> idx(sv->count);
    for (std::size_t i = 0; i < sv->count; ++i) idx[i] = sv->offset + i * sv->stride;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      const std::size_t la = s.size() - a, lb = s.size() - b;
      const std::size_t l = std::min(la, lb);
      for (std::size_t t = 0; t < l; ++t) {
        if (s[a + t] != s[b + t]) return s[a + t] < s[b + t];
      }
      return la < lb;
    });
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
      const std::size_t a = idx[i], b = idx[i + 1];
      if (a == b) continue;
      const std::size_t horizon = s.size() - std::max(a, b);
      bool differed = false;
      for (std::size_t t = 0; t < std::min(horizon, best); ++t) {
        if (s[a + t] != s[b + t]) {
          best = t;
          differed = true;
          break;
        }
      }
      if (!differed) continue;
      if (best == 0) return 1.0;
    }
    if (best == std::numeric_limits<std::size_t>::max()) return 0.0;
    return best < 1075 ? std::ldexp(1.0, -static_cast<int>(best)) : 0.0;
  }
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) best = std::max(best, traj.distance(i, j));
  return best;
}

EpsilonGrid::EpsilonGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("EpsilonGrid: empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0)) throw std::invalid_argument("EpsilonGrid: values must be positive");
    if (i > 0 && !(values_[i] < values_[i - 1]))
      throw std::invalid_argument("EpsilonGrid: values must be strictly decreasing");
  }
}

EpsilonGrid EpsilonGrid::dyadic(int k_min, int k_max) {
  if (k_min > k_max) throw std::invalid_argument("EpsilonGrid::dyadic: k_min > k_max");
  std::vector<double> v;
  for (int k = k_min; k <= k_max; ++k) v.push_back(std::ldexp(1.0, -k));
  return EpsilonGrid(std::move(v));
}

}  // namespace corrent
