#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "corrent/numeric.hpp"

namespace corrent {

/// Finite word over the alphabet {0, ..., p-1}.
struct Word {
  std::vector<std::uint8_t> symbols;
  int alphabet = 2;

  Word() = default;
  Word(std::vector<std::uint8_t> s, int p);
  /// Parse from a digit string; alphabet must be <= 10.
  static Word from_digits(std::string_view digits, int p);

  std::size_t size() const { return symbols.size(); }
  std::uint8_t operator[](std::size_t i) const { return symbols[i]; }
  std::string to_digits() const;
  bool operator==(const Word&) const = default;
};

/// Immutable materialized run of symbols shared by trajectories and views.
struct SymbolBuffer {
  std::vector<std::uint8_t> symbols;
  int alphabet = 2;
};

/// A lazily generated one-sided sequence over {0,...,p-1}; reading extends an
/// internal prefix cache deterministically, so prefix(n) is stable.
/// Extension is single-writer; reads of already materialized symbols are safe.
class SymbolSequence {
 public:
  using Producer = std::function<void(std::vector<std::uint8_t>&, std::size_t)>;

  SymbolSequence(int alphabet, Producer extend_to, std::string label);

  int alphabet() const { return alphabet_; }
  const std::string& label() const { return label_; }

  std::uint8_t at(std::size_t i) const;
  /// Exact prefix of length n as a Word.
  Word prefix(std::size_t n) const;
  /// Materialize a prefix into a shareable buffer.
  std::shared_ptr<const SymbolBuffer> buffer(std::size_t n) const;

  void ensure(std::size_t n) const;
  std::size_t materialized() const { return cache_->size(); }

  // --- factories ---
  /// Periodic repetition of a finite word.
  static SymbolSequence periodic(const Word& w, std::string label = {});
  /// Finite sequence; reading past the end throws.
  static SymbolSequence finite(const Word& w, std::string label = {});

 private:
  int alphabet_;
  Producer extend_;
  std::shared_ptr<std::vector<std::uint8_t>> cache_;
  std::string label_;
};

/// Probability vector over {0,...,p-1} plus the seed of the sample stream.
struct BernoulliSpec {
  std::vector<double> pi;
  std::uint64_t seed = 0;

  /// Validates entries >= 0 and |sum - 1| <= 1e-12, then renormalizes exactly.
  static BernoulliSpec make(std::vector<double> pi, std::uint64_t seed);
  int alphabet() const { return static_cast<int>(pi.size()); }
};

/// Deterministic Bernoulli(pi) sample of unbounded length (lazily extended);
/// symbol draws invert the CDF on mt19937_64 unit draws.
SymbolSequence bernoulli_sample(const BernoulliSpec& spec);

}  // namespace corrent
