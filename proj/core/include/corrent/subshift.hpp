#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "corrent/numeric.hpp"
#include "corrent/word.hpp"

namespace corrent {

/// 2^-k for the first disagreement index k < horizon; 0 when the sequences
/// agree up to the horizon (documented truncation).
double shift_metric(const SymbolSequence& x, const SymbolSequence& y, std::size_t horizon);

/// tilde-mu(k) of the Bernoulli measure: (sum_i pi_i^2)^k.
double tilde_mu_bernoulli(const BernoulliSpec& spec, std::size_t k);

/// -log(sum_i pi_i^2).
double bernoulli_correlation_entropy(const BernoulliSpec& spec);

/// (upper, lower): max/min of (-1/m) log tilde over the tail half of the
/// (m, tilde(m)) list. Values must lie in (0, 1].
std::pair<double, double> measure_entropy_from_tilde(
    const std::vector<std::pair<std::size_t, double>>& tilde, double tail_fraction = 0.5);

/// Stride-l frequency of u in v: #{i : v[il, il+|u|) = u, il+|u| <= |v|}
/// divided by floor(|v|/l). Exact rational.
BigRational word_frequency(const Word& v, const Word& u, std::size_t l);

/// Uniform-Cesaro diagnostic for the stride-l occurrence set of u in x.
struct CesaroReport {
  double density = 0.0;               ///< mean window frequency / l
  double max_window_deviation = 0.0;  ///< max |window frequency - mean| (per-slot scale)
  std::size_t window = 0;
  std::size_t offsets_tested = 0;
  BigRational density_exact;
  std::vector<BigRational> window_frequencies;  ///< per-offset slot frequencies
};

/// For each slot offset j < offsets, the stride-l frequency of u over
/// [jl, (j+window)l); density is the mean over offsets divided by l.
CesaroReport cesaro_density_check(const SymbolSequence& x, const Word& u, std::size_t l,
                                  std::size_t window, std::size_t offsets);

struct WordCountEntry {
  std::size_t n = 0;
  std::size_t distinct = 0;  ///< theta_n over the scanned prefix
  double rate = 0.0;         ///< (1/n) log theta_n
};

/// Distinct n-window counts over a scanned prefix (default scan 10^6 symbols
/// or whatever is available for finite sequences).
std::vector<WordCountEntry> word_count_entropy(const SymbolSequence& x,
                                               const std::vector<std::size_t>& n_list,
                                               std::size_t scan = 1000000);

}  // namespace corrent
