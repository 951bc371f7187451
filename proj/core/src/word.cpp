#include "corrent/word.hpp"

#include <stdexcept>

namespace corrent {

Word::Word(std::vector<std::uint8_t> s, int p) : symbols(std::move(s)), alphabet(p) {
  if (p < 2) throw std::invalid_argument("Word: alphabet size must be >= 2");
  for (auto c : symbols)
    if (c >= p) throw std::invalid_argument("Word: symbol out of alphabet range");
}

Word Word::from_digits(std::string_view digits, int p) {
  if (p < 2 || p > 10) throw std::invalid_argument("Word::from_digits: alphabet must be in [2,10]");
  std::vector<std::uint8_t> s;
  s.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument("Word::from_digits: non-digit character");
    s.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return Word(std::move(s), p);
}

std::string Word::to_digits() const {
  std::string out;
  out.reserve(symbols.size());
  for (auto c : symbols) out.push_back(static_cast<char>('0' + c));
  return out;
}

SymbolSequence::SymbolSequence(int alphabet, Producer extend_to, std::string label)
    : alphabet_(alphabet),
      extend_(std::move(extend_to)),
      cache_(std::make_shared<std::vector<std::uint8_t>>()),
      label_(std::move(label)) {
  if (alphabet_ < 2) throw std::invalid_argument("SymbolSequence: alphabet size must be >= 2");
}

void SymbolSequence::ensure(std::size_t n) const {
  if (cache_->size() >= n) return;
  extend_(*cache_, n);
  if (cache_->size() < n)
    throw std::out_of_range("SymbolSequence: producer could not extend prefix to " + std::to_string(n));
}

std::uint8_t SymbolSequence::at(std::size_t i) const {
  ensure(i + 1);
  return (*cache_)[i];
}

Word SymbolSequence::prefix(std::size_t n) const {
  ensure(n);
  return Word(std::vector<std::uint8_t>(cache_->begin(), cache_->begin() + static_cast<std::ptrdiff_t>(n)),
              alphabet_);
}

std::shared_ptr<const SymbolBuffer> SymbolSequence::buffer(std::size_t n) const {
  ensure(n);
  auto buf = std::make_shared<SymbolBuffer>();
  buf->symbols.assign(cache_->begin(), cache_->begin() + static_cast<std::ptrdiff_t>(n));
  buf->alphabet = alphabet_;
  return buf;
}

SymbolSequence SymbolSequence::periodic(const Word& w, std::string label) {
  if (w.size() == 0) throw std::invalid_argument("SymbolSequence::periodic: empty word");
  auto word = std::make_shared<Word>(w);
  if (label.empty()) label = "periodic(" + w.to_digits().substr(0, 24) + ")";
  return SymbolSequence(
      w.alphabet,
      [word](std::vector<std::uint8_t>& cache, std::size_t need) {
        while (cache.size() < need) cache.push_back(word->symbols[cache.size() % word->size()]);
      },
      std::move(label));
}

SymbolSequence SymbolSequence::finite(const Word& w, std::string label) {
  auto word = std::make_shared<Word>(w);
  if (label.empty()) label = "finite[" + std::to_string(w.size()) + "]";
  SymbolSequence seq(
      w.alphabet,
      [word](std::vector<std::uint8_t>& cache, std::size_t need) {
        if (need > word->size())
          throw std::out_of_range("SymbolSequence: read past end of finite sequence of length " +
                                  std::to_string(word->size()));
        if (cache.empty()) cache = word->symbols;
      },
      std::move(label));
  seq.ensure(w.size());
  return seq;
}

BernoulliSpec BernoulliSpec::make(std::vector<double> pi, std::uint64_t seed) {
  if (pi.size() < 2) throw std::invalid_argument("BernoulliSpec: need at least 2 symbols");
  double sum = 0.0;
  for (double v : pi) {
    if (v < 0.0) throw std::invalid_argument("BernoulliSpec: negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("BernoulliSpec: probabilities must sum to 1");
  for (double& v : pi) v /= sum;
  BernoulliSpec spec;
  spec.pi = std::move(pi);
  spec.seed = seed;
  return spec;
}

SymbolSequence bernoulli_sample(const BernoulliSpec& spec) {
  auto rng = std::make_shared<Rng>(spec.seed);
  // cumulative thresholds; the final entry is forced to 1 so every unit draw
  // maps to a symbol.
  auto cum = std::make_shared<std::vector<double>>();
  double acc = 0.0;
  for (double v : spec.pi) {
    acc += v;
    cum->push_back(acc);
  }
  cum->back() = 1.0;
  return SymbolSequence(
      spec.alphabet(),
      [rng, cum](std::vector<std::uint8_t>& cache, std::size_t need) {
        while (cache.size() < need) {
          const double u = rng->next_unit();
          std::uint8_t s = 0;
          while (u >= (*cum)[s]) ++s;
          cache.push_back(s);
        }
      },
      "bernoulli(seed=" + std::to_string(spec.seed) + ")");
}

}  // namespace corrent
