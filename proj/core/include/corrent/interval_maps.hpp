#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "corrent/trajectory.hpp"
#include "corrent/word.hpp"

namespace corrent {

/// One of the example interval systems, with its evaluator.
struct IntervalMapSpec {
  enum class Kind { tent, logistic, countable_piece, identity };
  Kind kind = Kind::identity;
  double alpha = 0.0;          ///< logistic parameter
  double lambda_target = 0.0;  ///< countable-piece entropy target (may be +inf)
  int piece_count = 0;
  std::pair<double, double> domain{0.0, 1.0};
  std::function<double(double)> f;
  std::string name;
};

IntervalMapSpec tent_map();
IntervalMapSpec logistic_map(double alpha);
IntervalMapSpec identity_map();

/// The root of 1 - alpha (1 - alpha)^2 = 0 in (1,2), i.e. of
/// a^3 - 2a^2 + a - 1, found by bisection to 1e-12.
double logistic_period3_alpha();

/// Piecewise system on [0,1]: on I_n = [1/(n+1), 1/n] a constant-|slope|
/// zigzag fixing both endpoints with slope s_n = exp(lambda (1 - 1/(n+1)))
/// (so h_top of the piece is log s_n < lambda, increasing to lambda);
/// identity below the last piece; f(0) = 0.
IntervalMapSpec countable_piece_map(double lambda_target, int piece_count);

/// Entropy of a constant-slope piece, log s_n, for test oracles.
double countable_piece_entropy(double lambda_target, int n);

/// Exact 53-bit evaluations of a true tent-map orbit: the tent map conjugates
/// to a bit shift with parity folding, so the orbit of the point whose binary
/// expansion is a seeded random bitstream can be produced without the dyadic
/// collapse that plain double iteration suffers (every double is dyadic and
/// slope 2 halves the mantissa each step, reaching the fixed point 0 within
/// 53 iterations).
TrajectoryBuffer tent_orbit(std::uint64_t seed, std::size_t n, std::string label = "tent-orbit");

/// Orbit iteration with the last mantissa bits jittered by a hash of the
/// state; escapes the dyadic degeneracies of piecewise-linear maps whose
/// slopes are powers of two. Exact fixed points (f(x) == x) and the values
/// 0 and 1 are preserved; states are clamped to [lo, hi].
TrajectoryBuffer orbit_segment_dithered(const std::function<double(double)>& map, double x0,
                                        std::size_t n, double lo, double hi,
                                        std::string label = "orbit~");

/// Greedy closed-ball cover of a 1-D point set, scanning in sorted order;
/// an upper bound on the minimal eps-spanning cardinality.
std::size_t spanning_number(std::vector<double> points, double eps);

/// Greedy eps-separated subset (strict inequality), sorted scan order;
/// a lower bound on the maximal separated cardinality.
std::size_t separated_number(std::vector<double> points, double eps);

/// Callback variants for Bowen-metric window sets; scan order is index order.
std::size_t spanning_number_indexed(std::size_t count,
                                    const std::function<double(std::size_t, std::size_t)>& dist,
                                    double eps);
std::size_t separated_number_indexed(std::size_t count,
                                     const std::function<double(std::size_t, std::size_t)>& dist,
                                     double eps);

struct TopEntropyOptions {
  double cap_fraction = 0.5;  ///< drop cells whose separated count saturates the grid
  double plateau_tol = 0.05;
  double slope_floor = 0.02;
  std::size_t min_fit_points = 3;
};

struct TopEntropyEstimate {
  double value = 0.0;
  bool plateau_found = false;
  double chosen_eps = 0.0;
  std::vector<std::pair<double, double>> per_eps_slopes;
  struct Cell {
    double eps;
    std::size_t m;
    std::size_t separated;
    bool used;
  };
  std::vector<Cell> cells;
};

/// Bowen-style estimate: seeds a uniform grid of initial points, counts
/// greedily eps-separated m-step windows, and fits the growth rate of
/// log s_m(eps) in m per eps with the shared plateau rule over eps.
TopEntropyEstimate topological_entropy_estimate(const IntervalMapSpec& spec, std::size_t grid_size,
                                                const std::vector<std::size_t>& m_list,
                                                const std::vector<double>& eps_list,
                                                const TopEntropyOptions& opts = {});

/// Branch itinerary of an orbit against sorted breakpoints, as a symbol
/// sequence over alphabet breakpoints.size()+1 (used to cross-check piece
/// entropies through word counts).
SymbolSequence itinerary(const IntervalMapSpec& spec, double x0, std::vector<double> breakpoints,
                         bool dithered, std::size_t length);

}  // namespace corrent
