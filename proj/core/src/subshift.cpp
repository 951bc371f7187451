#include "corrent/subshift.hpp"

#include <cmath>
#include <stdexcept>
#include <string_view>
#include <unordered_set>

namespace corrent {

double shift_metric(const SymbolSequence& x, const SymbolSequence& y, std::size_t horizon) {
  if (horizon < 1) throw std::invalid_argument("shift_metric: horizon must be >= 1");
  for (std::size_t t = 0; t < horizon; ++t) {
    if (x.at(t) != y.at(t)) return t < 1075 ? std::ldexp(1.0, -static_cast<int>(t)) : 0.0;
  }
  return 0.0;
}

double tilde_mu_bernoulli(const BernoulliSpec& spec, std::size_t k) {
  if (k < 1) throw std::invalid_argument("tilde_mu_bernoulli: k must be >= 1");
  double s = 0.0;
  for (double v : spec.pi) s += v * v;
  return std::pow(s, static_cast<double>(k));
}

double bernoulli_correlation_entropy(const BernoulliSpec& spec) {
  double s = 0.0;
  for (double v : spec.pi) s += v * v;
  return -std::log(s);
}

std::pair<double, double> measure_entropy_from_tilde(
    const std::vector<std::pair<std::size_t, double>>& tilde, double tail_fraction) {
  if (tilde.empty()) throw std::invalid_argument("measure_entropy_from_tilde: empty list");
  std::vector<double> rates;
  for (const auto& [m, v] : tilde) {
    if (m < 1) throw std::invalid_argument("measure_entropy_from_tilde: m must be >= 1");
    if (!(v > 0.0) || v > 1.0)
      throw std::invalid_argument("measure_entropy_from_tilde: tilde values must lie in (0,1]");
    rates.push_back(-std::log(v) / static_cast<double>(m));
  }
  const std::size_t tail =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(tail_fraction * rates.size())));
  double upper = rates[rates.size() - tail], lower = upper;
  for (std::size_t i = rates.size() - tail; i < rates.size(); ++i) {
    upper = std::max(upper, rates[i]);
    lower = std::min(lower, rates[i]);
  }
  return {upper, lower};
}

BigRational word_frequency(const Word& v, const Word& u, std::size_t l) {
  if (l < 1) throw std::invalid_argument("word_frequency: stride must be >= 1");
  if (u.size() > v.size()) throw std::invalid_argument("word_frequency: |u| > |v|");
  const std::size_t slots = v.size() / l;
  if (slots == 0) throw std::invalid_argument("word_frequency: stride exceeds |v|");
  std::int64_t count = 0;
  for (std::size_t i = 0; i * l + u.size() <= v.size(); ++i) {
    bool match = true;
    for (std::size_t t = 0; t < u.size(); ++t) {
      if (v.symbols[i * l + t] != u.symbols[t]) {
        match = false;
        break;
      }
    }
    if (match) ++count;
  }
  return BigRational(count, static_cast<std::int64_t>(slots));
}

CesaroReport cesaro_density_check(const SymbolSequence& x, const Word& u, std::size_t l,
                                  std::size_t window, std::size_t offsets) {
  if (l < 1 || window < 1 || offsets < 1)
    throw std::invalid_argument("cesaro_density_check: l, window, offsets must be >= 1");
  if (u.size() == 0) throw std::invalid_argument("cesaro_density_check: empty word");
  const std::size_t need = l * (offsets + window) + u.size();
  x.ensure(need);  // throws on insufficient prefix

  CesaroReport rep;
  rep.window = window;
  rep.offsets_tested = offsets;
  BigRational sum = 0;
  for (std::size_t j = 0; j < offsets; ++j) {
    // occurrences of u at stride slots inside [jl, (j+window)l)
    std::int64_t count = 0;
    for (std::size_t i = j; i < j + window; ++i) {
      if ((i - j) * l + u.size() > window * l) break;  // not fully contained
      bool match = true;
      for (std::size_t t = 0; t < u.size(); ++t) {
        if (x.at(i * l + t) != u.symbols[t]) {
          match = false;
          break;
        }
      }
      if (match) ++count;
    }
    rep.window_frequencies.emplace_back(count, static_cast<std::int64_t>(window));
    sum += rep.window_frequencies.back();
  }
  const BigRational mean = sum / static_cast<std::int64_t>(offsets);
  rep.density_exact = mean / static_cast<std::int64_t>(l);
  rep.density = static_cast<double>(rep.density_exact);
  BigRational max_dev = 0;
  for (const auto& f : rep.window_frequencies) {
    const BigRational dev = f > mean ? f - mean : mean - f;
    if (dev > max_dev) max_dev = dev;
  }
  rep.max_window_deviation = static_cast<double>(max_dev);
  return rep;
}

std::vector<WordCountEntry> word_count_entropy(const SymbolSequence& x,
                                               const std::vector<std::size_t>& n_list,
                                               std::size_t scan) {
  if (n_list.empty()) throw std::invalid_argument("word_count_entropy: empty n_list");
  std::size_t max_n = 0;
  for (auto n : n_list) {
    if (n < 1) throw std::invalid_argument("word_count_entropy: n must be >= 1");
    max_n = std::max(max_n, n);
  }
  // scan as much as requested, or as much as a finite sequence offers
  std::size_t have = 0;
  try {
    x.ensure(scan);
    have = scan;
  } catch (const std::out_of_range&) {
    have = x.materialized();
  }
  if (have < max_n) throw std::invalid_argument("word_count_entropy: prefix shorter than max n");
  const auto buf = x.buffer(have);
  const char* base = reinterpret_cast<const char*>(buf->symbols.data());

  std::vector<WordCountEntry> out;
  for (auto n : n_list) {
    std::unordered_set<std::string_view> seen;
    seen.reserve(have);
    for (std::size_t i = 0; i + n <= have; ++i) seen.insert(std::string_view(base + i, n));
    WordCountEntry e;
    e.n = n;
    e.distinct = seen.size();
    e.rate = std::log(static_cast<double>(e.distinct)) / static_cast<double>(n);
    out.push_back(e);
  }
  return out;
}

}  // namespace corrent
