#pragma once

#include <cstdint>
#include <vector>

#include "corrent/trajectory.hpp"

namespace corrent {

/// Simple undirected graph on at most 64 vertices with a vertex partition
/// into k >= 2 nonempty parts.
class PartitionedGraph {
 public:
  PartitionedGraph(int n, std::vector<std::vector<int>> parts);

  int n() const { return n_; }
  int parts_count() const { return static_cast<int>(parts_.size()); }
  const std::vector<std::vector<int>>& parts() const { return parts_; }
  int part_of(int v) const { return part_of_[static_cast<std::size_t>(v)]; }
  std::uint64_t part_mask(int a) const { return part_mask_[static_cast<std::size_t>(a)]; }

  void add_edge(int i, int j);
  bool has_edge(int i, int j) const;
  std::uint64_t adjacency(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  std::vector<std::pair<int, int>> edges() const;

 private:
  int n_;
  std::vector<std::vector<int>> parts_;
  std::vector<int> part_of_;
  std::vector<std::uint64_t> part_mask_;
  std::vector<std::uint64_t> adj_;
};

/// Whether two cross-edges {i,j}, {i',j} with i, i' in one part always force
/// the closing edge {i,i'}.
bool is_v_admissible(const PartitionedGraph& g);

/// Cross-edge count minus intra-edge count (may be negative).
std::int64_t kappa(const PartitionedGraph& g);

/// sum_{a<b} min(size_a, size_b).
std::int64_t max_kappa_formula(const std::vector<int>& part_sizes);

/// Exhaustive maximum of kappa over admissible graphs on the partition;
/// requires sum of sizes <= 8.
std::int64_t max_kappa_bruteforce(const std::vector<int>& part_sizes);

/// The disjoint perfect cross-matching witness attaining the formula value.
PartitionedGraph optimal_witness(const std::vector<int>& part_sizes);

/// Graph on kn vertices partitioned by residue mod k; {i,j} is an edge when
/// the km-step Bowen distance is within 2*eps for same-residue pairs and eps
/// otherwise. Admissible by the triangle inequality.
PartitionedGraph recurrence_graph(const TrajectoryBuffer& traj, int k, std::size_t m, std::size_t n,
                                  double eps);

}  // namespace corrent
