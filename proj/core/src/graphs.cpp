#include "corrent/graphs.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "corrent/correlation.hpp"

namespace corrent {

PartitionedGraph::PartitionedGraph(int n, std::vector<std::vector<int>> parts)
    : n_(n), parts_(std::move(parts)) {
  if (n < 1 || n > 64) throw std::invalid_argument("PartitionedGraph: n must be in [1,64]");
  if (parts_.size() < 2) throw std::invalid_argument("PartitionedGraph: need k >= 2 parts");
  part_of_.assign(static_cast<std::size_t>(n), -1);
  part_mask_.assign(parts_.size(), 0);
  for (std::size_t a = 0; a < parts_.size(); ++a) {
    if (parts_[a].empty()) throw std::invalid_argument("PartitionedGraph: empty part");
    for (int v : parts_[a]) {
      if (v < 0 || v >= n) throw std::invalid_argument("PartitionedGraph: vertex out of range");
      if (part_of_[static_cast<std::size_t>(v)] != -1)
        throw std::invalid_argument("PartitionedGraph: parts must be disjoint");
      part_of_[static_cast<std::size_t>(v)] = static_cast<int>(a);
      part_mask_[a] |= 1ULL << v;
    }
  }
  for (int v = 0; v < n; ++v)
    if (part_of_[static_cast<std::size_t>(v)] == -1)
      throw std::invalid_argument("PartitionedGraph: parts must cover all vertices");
  adj_.assign(static_cast<std::size_t>(n), 0);
}

void PartitionedGraph::add_edge(int i, int j) {
  if (i == j) throw std::invalid_argument("PartitionedGraph: no loops");
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::invalid_argument("PartitionedGraph: bad edge");
  adj_[static_cast<std::size_t>(i)] |= 1ULL << j;
  adj_[static_cast<std::size_t>(j)] |= 1ULL << i;
}

bool PartitionedGraph::has_edge(int i, int j) const {
  return (adj_[static_cast<std::size_t>(i)] >> j) & 1ULL;
}

std::vector<std::pair<int, int>> PartitionedGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (has_edge(i, j)) out.emplace_back(i, j);
  return out;
}

bool is_v_admissible(const PartitionedGraph& g) {
  // For every vertex j and part a != part(j): the neighbors of j inside a
  // must form a clique.
  for (int j = 0; j < g.n(); ++j) {
    for (int a = 0; a < g.parts_count(); ++a) {
      if (a == g.part_of(j)) continue;
      const std::uint64_t nb = g.adjacency(j) & g.part_mask(a);
      if (std::popcount(nb) < 2) continue;
      std::uint64_t rest = nb;
      while (rest) {
        const int i = std::countr_zero(rest);
        rest &= rest - 1;
        const std::uint64_t missing = nb & ~g.adjacency(i) & ~(1ULL << i);
        if (missing) return false;
      }
    }
  }
  return true;
}

std::int64_t kappa(const PartitionedGraph& g) {
  std::int64_t cross = 0, intra = 0;
  for (const auto& [i, j] : g.edges()) {
    if (g.part_of(i) == g.part_of(j))
      ++intra;
    else
      ++cross;
  }
  return cross - intra;
}

std::int64_t max_kappa_formula(const std::vector<int>& part_sizes) {
  if (part_sizes.size() < 2) throw std::invalid_argument("max_kappa_formula: need k >= 2 parts");
  std::int64_t total = 0;
  for (std::size_t a = 0; a < part_sizes.size(); ++a) {
    if (part_sizes[a] < 1) throw std::invalid_argument("max_kappa_formula: sizes must be >= 1");
    for (std::size_t b = a + 1; b < part_sizes.size(); ++b)
      total += std::min(part_sizes[a], part_sizes[b]);
  }
  return total;
}

namespace {

std::vector<std::vector<int>> parts_from_sizes(const std::vector<int>& sizes) {
  std::vector<std::vector<int>> parts;
  int v = 0;
  for (int s : sizes) {
    std::vector<int> part;
    for (int i = 0; i < s; ++i) part.push_back(v++);
    parts.push_back(std::move(part));
  }
  return parts;
}

}  // namespace

std::int64_t max_kappa_bruteforce(const std::vector<int>& part_sizes) {
  int n = 0;
  for (int s : part_sizes) n += s;
  if (n > 8) throw std::invalid_argument("max_kappa_bruteforce: total size must be <= 8");
  PartitionedGraph g(n, parts_from_sizes(part_sizes));

  std::vector<std::pair<int, int>> pairs;
  std::vector<int> sign;  // +1 cross, -1 intra
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      pairs.emplace_back(i, j);
      sign.push_back(g.part_of(i) == g.part_of(j) ? -1 : +1);
    }
  const std::size_t e = pairs.size();

  std::int64_t best = 0;  // the empty graph is admissible with kappa 0
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(n));
  std::vector<std::uint64_t> pmask(static_cast<std::size_t>(g.parts_count()));
  for (int a = 0; a < g.parts_count(); ++a) pmask[static_cast<std::size_t>(a)] = g.part_mask(a);

  for (std::uint64_t mask = 1; mask < (1ULL << e); ++mask) {
    std::int64_t k = 0;
    std::fill(adj.begin(), adj.end(), 0);
    std::uint64_t bits = mask;
    while (bits) {
      const int idx = std::countr_zero(bits);
      bits &= bits - 1;
      const auto [i, j] = pairs[static_cast<std::size_t>(idx)];
      adj[static_cast<std::size_t>(i)] |= 1ULL << j;
      adj[static_cast<std::size_t>(j)] |= 1ULL << i;
      k += sign[static_cast<std::size_t>(idx)];
    }
    if (k <= best) continue;
    bool admissible = true;
    for (int j = 0; j < n && admissible; ++j) {
      for (int a = 0; a < g.parts_count() && admissible; ++a) {
        if (a == g.part_of(j)) continue;
        const std::uint64_t nb = adj[static_cast<std::size_t>(j)] & pmask[static_cast<std::size_t>(a)];
        if (std::popcount(nb) < 2) continue;
        std::uint64_t rest = nb;
        while (rest) {
          const int i = std::countr_zero(rest);
          rest &= rest - 1;
          if (nb & ~adj[static_cast<std::size_t>(i)] & ~(1ULL << i)) {
            admissible = false;
            break;
          }
        }
      }
    }
    if (admissible) best = k;
  }
  return best;
}

PartitionedGraph optimal_witness(const std::vector<int>& part_sizes) {
  int n = 0;
  for (int s : part_sizes) n += s;
  PartitionedGraph g(n, parts_from_sizes(part_sizes));
  const auto& parts = g.parts();
  for (std::size_t a = 0; a < parts.size(); ++a) {
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      const std::size_t cnt = std::min(parts[a].size(), parts[b].size());
      for (std::size_t t = 0; t < cnt; ++t) g.add_edge(parts[a][t], parts[b][t]);
    }
  }
  return g;
}

PartitionedGraph recurrence_graph(const TrajectoryBuffer& traj, int k, std::size_t m, std::size_t n,
                                  double eps) {
  if (k < 2) throw std::invalid_argument("recurrence_graph: k must be >= 2");
  const std::size_t vertices = static_cast<std::size_t>(k) * n;
  if (vertices > 64) throw std::invalid_argument("recurrence_graph: kn must be <= 64");
  if (traj.size() < vertices + static_cast<std::size_t>(k) * m)
    throw std::invalid_argument("recurrence_graph: trajectory shorter than kn + km states");

  std::vector<std::vector<int>> parts(static_cast<std::size_t>(k));
  for (std::size_t v = 0; v < vertices; ++v)
    parts[v % static_cast<std::size_t>(k)].push_back(static_cast<int>(v));
  PartitionedGraph g(static_cast<int>(vertices), std::move(parts));

  const std::size_t km = static_cast<std::size_t>(k) * m;
  for (std::size_t i = 0; i < vertices; ++i) {
    for (std::size_t j = i + 1; j < vertices; ++j) {
      const bool same = (i % static_cast<std::size_t>(k)) == (j % static_cast<std::size_t>(k));
      const double radius = same ? 2.0 * eps : eps;
      if (bowen_distance(traj, i, j, km) <= radius) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return g;
}

}  // namespace corrent
