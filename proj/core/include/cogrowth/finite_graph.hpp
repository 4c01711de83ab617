#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cogrowth/bigcount.hpp"

namespace cogrowth {

// Finite undirected multigraph. Loops and parallel edges are allowed; a loop
// contributes 2 to the degree of its vertex.
class Graph {
 public:
  Graph(int vertex_count, std::vector<std::pair<int, int>> edges, std::string name = {});

  int vertex_count() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::string& name() const { return name_; }

  int degree(int v) const { return degree_[static_cast<std::size_t>(v)]; }
  /// Common degree when every vertex has the same degree.
  std::optional<int> regular_degree() const;
  bool is_connected() const;
  bool has_cycle() const;

  /// Neighbours of v with multiplicity (a loop lists v twice).
  const std::vector<int>& neighbours(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }

  /// Edge list text: one `u v` pair per line, 0-indexed, `#` comments.
  static Graph parse_edge_list(std::istream& in, std::string name = {});
  static Graph load_edge_list(const std::string& path);
  std::string to_edge_list() const;

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::string name_;
  std::vector<int> degree_;
  std::vector<std::vector<int>> adjacency_;
};

// Directed edges of a graph. Undirected edge i yields directed edges 2i
// (first -> second) and 2i+1 (second -> first), which are mutual reverses;
// for a loop both point from v to v. Hashimoto successors of e are the f with
// tail(f) = head(e) and f != reverse(e).
class DirectedEdgeSpace {
 public:
  explicit DirectedEdgeSpace(const Graph& graph);

  std::size_t size() const { return tail_.size(); }
  int tail(std::size_t e) const { return tail_[e]; }
  int head(std::size_t e) const { return head_[e]; }
  static std::size_t reverse(std::size_t e) { return e ^ 1U; }
  const std::vector<std::size_t>& successors(std::size_t e) const { return successors_[e]; }
  const std::vector<std::size_t>& out_edges(int v) const { return out_[static_cast<std::size_t>(v)]; }

 private:
  std::vector<int> tail_;
  std::vector<int> head_;
  std::vector<std::vector<std::size_t>> successors_;
  std::vector<std::vector<std::size_t>> out_;
};

/// Walks u -> v of each length 0..t_max, exact.
std::vector<BigCount> adjacency_walk_counts(const Graph& graph, int u, int v, int t_max);
/// Non-backtracking walks u -> v of each length 0..t_max, exact. Length 0 is [u = v].
std::vector<BigCount> nb_walk_counts(const Graph& graph, int u, int v, int t_max);

struct SpectralResult {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

inline constexpr int kPowerIterationCap = 200'000;

/// Perron value of the adjacency operator by power iteration on A + I.
SpectralResult spectral_radius_adjacency(const Graph& graph, double tol = 1e-10);
/// Perron value of the Hashimoto operator by power iteration on B + I: the
/// cogrowth of the graph. Throws InvalidInput on forests.
SpectralResult spectral_radius_hashimoto(const Graph& graph, double tol = 1e-10);

struct ClassicalCheck {
  int d = 0;
  double rho = 0.0;
  double cogrowth = 0.0;
  double predicted_rho = 0.0;
  double deviation = 0.0;
  bool passed = false;
};

/// |rho(G) - g_d(cogr(G))| <= tol for a connected d-regular G with d >= 3.
ClassicalCheck classical_formula_check(const Graph& graph, double tol = 1e-6,
                                       double power_tol = 1e-10);

struct CoveringCheck {
  int u = 0;
  int v = 0;
  int t_max = 0;
  bool passed = false;
  int first_mismatch = -1;  // t of the first failing identity, -1 when none
};

/// Checks adjacency_walk_counts(G,u,v,t) = sum_r m_t(r) nb_walk_counts(G,u,v,r)
/// exactly for t <= t_max, with m_t from the d-regular tree.
CoveringCheck covering_identity_check(const Graph& graph, int u, int v, int t_max);

// Named graphs for the test corpus.
Graph complete_graph(int n);
Graph complete_bipartite(int a, int b);
Graph petersen_graph();
Graph hypercube_graph(int dim);
Graph cycle_graph(int n);
Graph path_graph(int n);
/// Connected simple cubic graph on n (even) vertices from the pairing model,
/// deterministic in seed.
Graph random_cubic_graph(int n, std::uint64_t seed);

/// The corpus K4, K5, K33, Petersen, 3-cube and two seeded random cubic graphs.
std::vector<Graph> acceptance_corpus();

}  // namespace cogrowth
