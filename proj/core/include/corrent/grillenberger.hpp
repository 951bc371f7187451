#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corrent/entropy.hpp"
#include "corrent/numeric.hpp"
#include "corrent/subshift.hpp"
#include "corrent/word.hpp"

namespace corrent {

/// One level of the recursive word-set construction
///   M_1 = {0 < 1 < ... < p-1},  M_{j+1} = M_j^{(r_j)},
///   r_{j+1} = ceil(|M_{j+1}| / l(M_{j+1})),
/// where M^{(r)} lists w_1^r pi(w_1,...,w_n) over all permutations pi,
/// identity first, the rest in lexicographic order of their image sequences.
struct ConstructionLevel {
  int j = 0;
  BigInt l;                       ///< word length, always exact
  std::optional<BigInt> m;        ///< cardinality, exact while materializable
  std::optional<BigInt> r;        ///< repetition count, exact when m is
  std::optional<Interval> log_m;  ///< log cardinality when it fits a double
  Interval lambda;                ///< log(m_j)/l_j, always maintained
  std::vector<Word> words;        ///< the ordered word list while m <= explicit_cap

  bool exact() const { return m.has_value(); }
  bool explicit_words() const { return !words.empty(); }
};

struct LevelOptions {
  BigInt explicit_cap = 10000;    ///< keep word lists while m_j <= cap
  BigInt explicit_symbol_cap = 1000000;  ///< ... and while m_j * l_j stays modest
  unsigned factorial_cap = 10000; ///< compute m! exactly while m <= cap
  int max_levels = 64;            ///< hard stop (p = 2 never loses exactness)
  bool allow_p2 = false;          ///< the p = 2 instance is degenerate (zero entropy)
};

/// Levels are produced while l_j stays exactly representable; deeper lambdas
/// switch to Stirling-interval recursion.
std::vector<ConstructionLevel> build_levels(int p, const LevelOptions& opts = {});

struct LevelCheck {
  std::string name;
  int j = 0;
  bool pass = false;
  std::string detail;
};

struct LevelPropsReport {
  std::vector<LevelCheck> checks;
  bool all_pass = true;
};

/// Arithmetic facts of the level table: m_j/l_j an even integer (j >= 2) and
/// equal to r_j; r_j > p (j >= 3); l_{j+1} > p*l_j^2 (j >= 3); the partial
/// sums of sum_{j>=4} 1/l_j stay below 1/(p*l_3^2 - 1); l_3 = (p+1)!.
LevelPropsReport verify_level_props(const std::vector<ConstructionLevel>& levels, int p);

/// (j, lambda_j) for j <= j_max; truncated=true when j_max exceeds the last
/// level with exactly representable l_j.
struct LambdaSequence {
  std::vector<std::pair<int, Interval>> values;
  bool truncated = false;
};
LambdaSequence lambda_sequence(int p, int j_max, const LevelOptions& opts = {});

/// Rigorous positive lower bound on the topological entropy of the subshift:
/// max over representable j of lambda_j - (lambda_j + 1) * S_j with S_j an
/// upper bound on sum_{k>=j} 1/l_k (exact terms plus a tail bound).
struct EntropyLowerBound {
  double value = 0.0;
  int best_j = 0;
  std::vector<std::pair<int, double>> per_level;
};
EntropyLowerBound entropy_lower_bound(int p, const LevelOptions& opts = {});

/// Exact rational (r_j - k + 1) / (2 m_j l_j), 1 <= k <= r_j; a lower bound
/// on the measure of the cylinder [wbar_j^k].
BigRational mu_cylinder_lower_bound(const std::vector<ConstructionLevel>& levels, int j, std::int64_t k);

/// The sequence x with x[0, l_j) = wbar_j for every level: materialized as
/// the cyclic repetition of the deepest constructible wbar (valid out to
/// r_J * l_J symbols, which is astronomically large already for p = 3).
class GrillenbergerStream {
 public:
  explicit GrillenbergerStream(int p, const LevelOptions& opts = {});

  int p() const { return p_; }
  const std::vector<ConstructionLevel>& levels() const { return levels_; }
  /// The deepest wbar_J materialized by the level recursion.
  const Word& top_word() const { return top_word_; }
  int top_level() const { return top_level_; }
  /// Number of symbols the cyclic repetition is justified for (r_J * l_J).
  const BigInt& repetition_bound() const { return repetition_bound_; }

  Word x_prefix(std::uint64_t length) const;
  SymbolSequence sequence() const;

 private:
  int p_;
  std::vector<ConstructionLevel> levels_;
  Word top_word_;
  int top_level_ = 0;
  BigInt repetition_bound_;
};

struct TheoremCParams {
  std::size_t prefix_length = 100000;
  std::vector<std::size_t> word_lengths{3, 24, 100, 500};  ///< tilde-surrogate probes
  int entropy_grid_kmin = 24;                              ///< eps = 2^-k ladder for the estimator
  int entropy_grid_kmax = 29;
  std::vector<std::size_t> m_list{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  double entropy_ceiling = 0.05;
  double rate_slack = 0.1;  ///< additive slack on the cylinder-rate bounds
  std::size_t cesaro_offsets = 3;
  EstimatorOptions estimator;
};

struct TheoremCReport {
  int p = 0;

  struct RateProbe {
    std::size_t word_length = 0;
    double chat = 0.0;        ///< sum over words of squared empirical frequency
    double rate = 0.0;        ///< (-1/n) log chat
    int level_j = 0;          ///< level with l_j <= n < l_{j+1}
    double bound = 0.0;       ///< cylinder-measure regime bound at that level
    bool bound_applicable = false;  ///< false below level 2
    bool pass = true;
  };
  std::vector<RateProbe> rate_probes;
  bool rates_decreasing = false;

  EntropyEstimate entropy_deep;      ///< estimator on the construction's resolving scales
  double entropy_ceiling = 0.0;
  bool entropy_below_ceiling = false;
  EntropyEstimate entropy_coarse;    ///< same estimator at eps >= 2^-6, reported for contrast;
                                     ///< reflects sub-l_3 word statistics, not the decay regime

  struct CesaroProbe {
    int level_j = 0;
    std::string word;
    BigRational expected_density;
    BigRational measured_density;
    double max_deviation = 0.0;
    bool pass = false;
  };
  std::vector<CesaroProbe> cesaro_probes;
  bool cesaro_all_exact = false;

  double entropy_lower_bound_value = 0.0;
  double log10_repetition_bound = 0.0;  ///< justifies the cyclic materialization
  bool pass = false;
};

TheoremCReport theorem_c_report(int p, const TheoremCParams& params = {});

}  // namespace corrent
