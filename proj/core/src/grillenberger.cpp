#include "corrent/grillenberger.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

#include "corrent/correlation.hpp"
#include "corrent/trajectory.hpp"

namespace corrent {

namespace {

BigInt factorial_big(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

/// M^{(r)} from an explicit ordered word list: w_1^r pi(w_1..w_n) over all
/// index permutations in lexicographic order (identity is lexicographically
/// first, matching the required enumeration).
std::vector<Word> expand_words(const std::vector<Word>& base, std::uint64_t r) {
  const std::size_t n = base.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint8_t> prefix;
  for (std::uint64_t i = 0; i < r; ++i)
    prefix.insert(prefix.end(), base[0].symbols.begin(), base[0].symbols.end());
  std::vector<Word> out;
  do {
    std::vector<std::uint8_t> w = prefix;
    for (std::size_t i : perm) w.insert(w.end(), base[i].symbols.begin(), base[i].symbols.end());
    out.emplace_back(std::move(w), base[0].alphabet);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Interval lambda_from_log(const Interval& log_m, const BigInt& l) { return divide(log_m, l); }

/// Stirling bounds: log(m!) = m log m - m + 0.5 log(2 pi m) + delta,
/// 1/(12m+1) < delta < 1/(12m).
Interval stirling_log_factorial(const Interval& m, const Interval& log_m) {
  const Interval half(0.5);
  const double l2pi = std::log(2.0 * 3.14159265358979323846);
  const Interval log_2pi(Interval::down(l2pi), Interval::up(l2pi));
  const Interval delta(0.0, Interval::up(1.0 / (12.0 * m.lo)));
  return m * log_m - m + half * (log_2pi + log_m) + delta;
}

}  // namespace

std::vector<ConstructionLevel> build_levels(int p, const LevelOptions& opts) {
  if (p < 2) throw std::invalid_argument("build_levels: alphabet size must be >= 2");
  if (p == 2 && !opts.allow_p2)
    throw std::invalid_argument("build_levels: p = 2 yields a zero-entropy instance; pass allow_p2");
  if (p > 10) throw std::invalid_argument("build_levels: alphabet sizes above 10 are not supported");

  std::vector<ConstructionLevel> levels;

  ConstructionLevel first;
  first.j = 1;
  first.l = 1;
  first.m = BigInt(p);
  first.r = BigInt(0);
  first.log_m = log_interval(*first.m);
  first.lambda = lambda_from_log(*first.log_m, first.l);
  for (int s = 0; s < p; ++s) first.words.push_back(Word({static_cast<std::uint8_t>(s)}, p));
  levels.push_back(std::move(first));

  while (static_cast<int>(levels.size()) < opts.max_levels) {
    const ConstructionLevel& prev = levels.back();
    if (!prev.exact()) break;  // l of the next level is no longer exact
    ConstructionLevel next;
    next.j = prev.j + 1;
    next.l = (*prev.m + *prev.r) * prev.l;

    if (*prev.m <= opts.factorial_cap) {
      next.m = factorial_big(static_cast<unsigned>(*prev.m));
      next.r = (*next.m + next.l - 1) / next.l;  // ceil
      next.log_m = log_interval(*next.m);
      next.lambda = lambda_from_log(*next.log_m, next.l);
      if (prev.explicit_words() && *next.m <= opts.explicit_cap &&
          *next.m * next.l <= opts.explicit_symbol_cap) {
        next.words = expand_words(prev.words, static_cast<std::uint64_t>(*prev.r));
      }
    } else {
      // m_{j+1} = m_j! is out of reach; carry lambda through the Stirling
      // recursion. With r_j = m_j/l_j exactly, l_{j+1} = m_j (l_j + 1) and
      //   lambda_{j+1} = (log m_j - 1)/(l_j + 1) + [0.5 log(2 pi m_j) + delta]/(m_j (l_j + 1)).
      if (!prev.log_m.has_value())
        break;  // cannot certify lambda any deeper
      if (*prev.r * prev.l != *prev.m)
        throw std::logic_error("build_levels: r_j != m_j/l_j in Stirling branch");
      const Interval l_prev(Interval::down(static_cast<double>(prev.l)),
                            Interval::up(static_cast<double>(prev.l)));
      const Interval one(1.0);
      const Interval main = (*prev.log_m - one) / (l_prev + one);
      // correction in [0, (0.5 log(2 pi m_j) + 1/12) / m_j (l_j+1)]
      const unsigned bits = boost::multiprecision::msb(*prev.m);
      double corr_hi;
      if (bits >= 1020) {
        corr_hi = std::ldexp(std::max(1.0, prev.log_m->hi), -1020);
      } else {
        corr_hi = Interval::up((0.5 * (1.8379 + prev.log_m->hi) + 0.084) /
                               (static_cast<double>(*prev.m) * (static_cast<double>(prev.l) + 1.0)));
      }
      next.lambda = Interval(main.lo, Interval::up(main.hi + corr_hi));
      // log_m only when it fits a double
      const Interval m_prev_d(Interval::down(static_cast<double>(*prev.m)),
                              Interval::up(static_cast<double>(*prev.m)));
      if (std::isfinite(m_prev_d.hi)) {
        next.log_m = stirling_log_factorial(m_prev_d, *prev.log_m);
      }
    }
    levels.push_back(std::move(next));
  }
  return levels;
}

LevelPropsReport verify_level_props(const std::vector<ConstructionLevel>& levels, int p) {
  LevelPropsReport rep;
  auto add = [&](std::string name, int j, bool pass, std::string detail) {
    rep.checks.push_back({std::move(name), j, pass, std::move(detail)});
    rep.all_pass = rep.all_pass && rep.checks.back().pass;
  };

  for (const auto& lv : levels) {
    if (!lv.exact()) continue;
    if (lv.j >= 2) {
      const BigInt q = *lv.m / lv.l;
      const bool divides = q * lv.l == *lv.m;
      const bool even = divides && (q % 2 == 0);
      const bool r_eq = lv.r == q;
      std::ostringstream os;
      os << "m/l=" << q << (even ? " even" : " not even") << (r_eq ? ", r=m/l" : ", r!=m/l");
      add("(a) m_j/l_j even integer and r_j = m_j/l_j", lv.j, divides && even && r_eq, os.str());
    }
    if (lv.j >= 3) {
      std::ostringstream os;
      os << "r=" << *lv.r << " vs p=" << p;
      add("(b) r_j > p", lv.j, *lv.r > p, os.str());
    }
  }
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const auto& a = levels[i];
    const auto& b = levels[i + 1];
    if (a.j >= 3) {
      std::ostringstream os;
      os << "l_{j+1}=" << b.l << " vs p*l_j^2=" << p * a.l * a.l;
      add("(d) l_{j+1} > p l_j^2", a.j, b.l > p * a.l * a.l, os.str());
    }
  }
  if (levels.size() >= 3) {
    const BigInt& l3 = levels[2].l;
    BigInt fact = factorial_big(static_cast<unsigned>(p + 1));
    add("(e) l_3 = (p+1)!", 3, l3 == fact, "l_3=" + l3.str());
    BigRational partial = 0;
    const BigRational bound(BigInt(1), p * l3 * l3 - 1);
    bool ok = true;
    for (const auto& lv : levels) {
      if (lv.j >= 4) {
        partial += BigRational(BigInt(1), lv.l);
        if (partial >= bound) ok = false;
      }
    }
    std::ostringstream os;
    os << "partial sum " << static_cast<double>(partial) << " vs bound " << static_cast<double>(bound);
    add("(e) partial sums of 1/l_j (j>=4) below 1/(p l_3^2 - 1)", 4, ok, os.str());
  }
  return rep;
}

LambdaSequence lambda_sequence(int p, int j_max, const LevelOptions& opts) {
  if (j_max < 1) throw std::invalid_argument("lambda_sequence: j_max must be >= 1");
  const auto levels = build_levels(p, opts);
  LambdaSequence seq;
  for (const auto& lv : levels) {
    if (lv.j > j_max) break;
    seq.values.emplace_back(lv.j, lv.lambda);
  }
  seq.truncated = static_cast<int>(seq.values.size()) < j_max;
  return seq;
}

EntropyLowerBound entropy_lower_bound(int p, const LevelOptions& opts) {
  if (p < 3) throw std::invalid_argument("entropy_lower_bound: requires p >= 3");
  const auto levels = build_levels(p, opts);
  const int J = levels.back().j;

  // Tail of sum 1/l_k beyond the last representable level: for k >= 3,
  // l_{k+1} > p l_k^2 >= (p l_J) l_k, so the tail is geometric with ratio
  // 1/(p l_J) and sum < 2/(p l_J^2).
  if (J < 3) throw std::runtime_error("entropy_lower_bound: need levels through j = 3");
  const BigInt& lJ = levels.back().l;
  Interval tail = divide(Interval(2.0), p * lJ * lJ);

  EntropyLowerBound out;
  out.value = -1.0;
  for (const auto& lv : levels) {
    // S_j = sum over exact terms j..J plus the tail
    Interval s = tail;
    for (const auto& t : levels) {
      if (t.j >= lv.j) s = s + divide(Interval(1.0), t.l);
    }
    const double bound = Interval::down(lv.lambda.lo - Interval::up((lv.lambda.hi + 1.0) * s.hi));
    out.per_level.emplace_back(lv.j, bound);
    if (bound > out.value) {
      out.value = bound;
      out.best_j = lv.j;
    }
  }
  return out;
}

BigRational mu_cylinder_lower_bound(const std::vector<ConstructionLevel>& levels, int j, std::int64_t k) {
  const auto it = std::find_if(levels.begin(), levels.end(),
                               [&](const ConstructionLevel& lv) { return lv.j == j; });
  if (it == levels.end() || !it->exact())
    throw std::invalid_argument("mu_cylinder_lower_bound: level not exactly representable");
  if (k < 1 || BigInt(k) > *it->r)
    throw std::invalid_argument("mu_cylinder_lower_bound: k must satisfy 1 <= k <= r_j");
  return BigRational(*it->r - k + 1, 2 * *it->m * it->l);
}

GrillenbergerStream::GrillenbergerStream(int p, const LevelOptions& opts) : p_(p) {
  levels_ = build_levels(p, opts);
  // deepest explicit level -> construct wbar of the next level
  int deepest = -1;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i].explicit_words()) deepest = static_cast<int>(i);
  }
  if (deepest < 0) throw std::logic_error("GrillenbergerStream: no explicit level");
  const ConstructionLevel& base = levels_[static_cast<std::size_t>(deepest)];
  std::vector<std::uint8_t> top;
  const std::uint64_t r = static_cast<std::uint64_t>(*base.r);
  for (std::uint64_t i = 0; i < r; ++i)
    top.insert(top.end(), base.words[0].symbols.begin(), base.words[0].symbols.end());
  for (const Word& w : base.words) top.insert(top.end(), w.symbols.begin(), w.symbols.end());
  top_word_ = Word(std::move(top), p);
  top_level_ = base.j + 1;
  // x starts with r_{J} + 1 copies of wbar_J; cyclic reads are justified out
  // to r_J * l_J symbols.
  const auto topIt = std::find_if(levels_.begin(), levels_.end(),
                                  [&](const ConstructionLevel& lv) { return lv.j == top_level_; });
  if (topIt != levels_.end() && topIt->exact()) {
    repetition_bound_ = *topIt->r * topIt->l;
  } else {
    // r_J not materialized; it is astronomically large, keep a safe huge bound
    repetition_bound_ = BigInt(1) << 200;
  }
}

Word GrillenbergerStream::x_prefix(std::uint64_t length) const {
  if (BigInt(length) > repetition_bound_)
    throw std::invalid_argument("x_prefix: length beyond the justified repetition bound");
  std::vector<std::uint8_t> out;
  out.reserve(length);
  const auto& w = top_word_.symbols;
  for (std::uint64_t i = 0; i < length; ++i) out.push_back(w[i % w.size()]);
  return Word(std::move(out), p_);
}

SymbolSequence GrillenbergerStream::sequence() const {
  auto w = std::make_shared<Word>(top_word_);
  auto bound = std::make_shared<BigInt>(repetition_bound_);
  const int p = p_;
  return SymbolSequence(
      p,
      [w, bound](std::vector<std::uint8_t>& cache, std::size_t need) {
        if (BigInt(need) > *bound)
          throw std::out_of_range("grillenberger sequence: read beyond the justified repetition bound");
        while (cache.size() < need) cache.push_back(w->symbols[cache.size() % w->size()]);
      },
      "grillenberger(p=" + std::to_string(p) + ")");
}

namespace {

/// sum over distinct n-windows of squared empirical frequency, on the first
/// `positions` windows of the buffer.
double chat_surrogate(const SymbolBuffer& buf, std::size_t len, std::size_t positions) {
  if (len == 0 || positions == 0 || positions + len > buf.symbols.size() + 1)
    throw std::invalid_argument("chat_surrogate: bad window length or count");
  std::unordered_map<std::string_view, std::int64_t> counts;
  counts.reserve(positions * 2);
  const char* base = reinterpret_cast<const char*>(buf.symbols.data());
  for (std::size_t i = 0; i < positions; ++i) ++counts[std::string_view(base + i, len)];
  double acc = 0.0;
  const double n = static_cast<double>(positions);
  for (const auto& [_, c] : counts) acc += (static_cast<double>(c) / n) * (static_cast<double>(c) / n);
  return acc;
}

}  // namespace

TheoremCReport theorem_c_report(int p, const TheoremCParams& params) {
  TheoremCReport rep;
  rep.p = p;
  GrillenbergerStream stream(p);
  const auto& levels = stream.levels();

  const std::size_t max_len =
      *std::max_element(params.word_lengths.begin(), params.word_lengths.end());
  const std::size_t kmax = static_cast<std::size_t>(params.entropy_grid_kmax);
  const std::size_t m_max = *std::max_element(params.m_list.begin(), params.m_list.end());
  const std::size_t lookahead = std::max(max_len, kmax + m_max) + 8;
  const auto buffer = stream.sequence().buffer(params.prefix_length + lookahead);

  // (i) tilde surrogate rates against the cylinder-measure regime bounds
  double prev_rate = std::numeric_limits<double>::infinity();
  rep.rates_decreasing = true;
  for (std::size_t len : params.word_lengths) {
    TheoremCReport::RateProbe probe;
    probe.word_length = len;
    probe.chat = chat_surrogate(*buffer, len, params.prefix_length);
    probe.rate = -std::log(probe.chat) / static_cast<double>(len);

    const ConstructionLevel* lev = nullptr;
    for (const auto& lv : levels) {
      if (lv.exact() && lv.l <= len) lev = &lv;
    }
    probe.level_j = lev ? lev->j : 0;
    if (lev && lev->j >= 2) {
      const double lj = static_cast<double>(lev->l);
      const double rj = static_cast<double>(*lev->r);
      const double lam = lev->lambda.hi;
      const bool first_regime = static_cast<double>(len) < 0.5 * rj * lj;
      probe.bound = first_regime ? (4.0 * std::log(lj) + 4.0 * std::log(2.0)) / lj
                                 : 8.0 * lam / rj + (8.0 * std::log(lj) + 12.0 * std::log(2.0)) / (rj * lj);
      probe.bound_applicable = true;
      probe.pass = probe.rate <= probe.bound + params.rate_slack;
    }
    if (probe.rate >= prev_rate) rep.rates_decreasing = false;
    prev_rate = probe.rate;
    rep.rate_probes.push_back(probe);
  }

  // (ii) the entropy estimator on the prefix, on scales that resolve the
  // construction (word lengths >= l_3), plus the coarse-scale contrast run
  const std::int64_t n_windows = static_cast<std::int64_t>(params.prefix_length);
  const auto traj = TrajectoryBuffer::from_symbols(buffer, params.prefix_length + lookahead - 1, 1, 0,
                                                   "grillenberger(p=" + std::to_string(p) + ")");
  {
    auto [upper, lower] = local_correlation_entropy(
        traj, EpsilonGrid::dyadic(params.entropy_grid_kmin, params.entropy_grid_kmax), params.m_list,
        n_windows, params.estimator);
    rep.entropy_deep = std::move(upper);
    (void)lower;
  }
  {
    auto [upper, lower] = local_correlation_entropy(traj, EpsilonGrid::dyadic(1, 6), params.m_list,
                                                    n_windows, params.estimator);
    rep.entropy_coarse = std::move(upper);
    (void)lower;
  }
  rep.entropy_ceiling = params.entropy_ceiling;
  rep.entropy_below_ceiling = rep.entropy_deep.value < params.entropy_ceiling;

  // (iii) Cesaro densities at strides l_1..l_3 over whole top-word windows;
  // the expected density of v in M_j is (r_j + 1)/l_{j+1} for v = wbar_j and
  // 1/l_{j+1} otherwise.
  const SymbolSequence seq = stream.sequence();
  rep.cesaro_all_exact = true;
  for (std::size_t li = 0; li + 1 < levels.size(); ++li) {
    const auto& lv = levels[li];
    if (!lv.explicit_words()) continue;
    const BigInt& l_next = levels[li + 1].l;
    const std::size_t lj = static_cast<std::size_t>(lv.l);
    const std::size_t window = stream.top_word().size() / lj;
    for (std::size_t wi = 0; wi < lv.words.size(); ++wi) {
      TheoremCReport::CesaroProbe probe;
      probe.level_j = lv.j;
      probe.word = lv.words[wi].to_digits();
      const BigInt numerator = (wi == 0) ? (*lv.r + 1) : BigInt(1);
      probe.expected_density = BigRational(numerator, l_next);
      const CesaroReport ces =
          cesaro_density_check(seq, lv.words[wi], lj, window, params.cesaro_offsets);
      probe.measured_density = ces.density_exact;
      probe.max_deviation = ces.max_window_deviation;
      probe.pass = (probe.measured_density == probe.expected_density) && (ces.max_window_deviation == 0.0);
      rep.cesaro_all_exact = rep.cesaro_all_exact && probe.pass;
      rep.cesaro_probes.push_back(std::move(probe));
    }
  }

  rep.entropy_lower_bound_value = entropy_lower_bound(p).value;

  // periodicity justification: log10 of the repetition bound
  rep.log10_repetition_bound = log_interval(stream.repetition_bound()).mid() / std::log(10.0);

  bool rates_ok = true;
  for (const auto& probe : rep.rate_probes) rates_ok = rates_ok && probe.pass;
  rep.pass = rates_ok && rep.rates_decreasing && rep.entropy_below_ceiling && rep.cesaro_all_exact &&
             rep.entropy_lower_bound_value > 0.0;
  return rep;
}

}  // namespace corrent
