#include "cogrowth/finite_graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "cogrowth/combinatorics.hpp"
#include "cogrowth/errors.hpp"
#include "cogrowth/tree_walks.hpp"

namespace cogrowth {

Graph::Graph(int vertex_count, std::vector<std::pair<int, int>> edges, std::string name)
    : n_(vertex_count), edges_(std::move(edges)), name_(std::move(name)) {
  if (n_ < 1) {
    throw InvalidInput("graph needs at least one vertex");
  }
  degree_.assign(static_cast<std::size_t>(n_), 0);
  adjacency_.resize(static_cast<std::size_t>(n_));
  for (const auto& [a, b] : edges_) {
    if (a < 0 || a >= n_ || b < 0 || b >= n_) {
      throw InvalidInput("edge (" + std::to_string(a) + "," + std::to_string(b) +
                         ") references a missing vertex");
    }
    ++degree_[static_cast<std::size_t>(a)];
    ++degree_[static_cast<std::size_t>(b)];
    adjacency_[static_cast<std::size_t>(a)].push_back(b);
    adjacency_[static_cast<std::size_t>(b)].push_back(a);
  }
}

std::optional<int> Graph::regular_degree() const {
  const int d = degree_.front();
  if (std::all_of(degree_.begin(), degree_.end(), [d](int x) { return x == d; })) {
    return d;
  }
  return std::nullopt;
}

bool Graph::is_connected() const {
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : neighbours(v)) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n_;
}

bool Graph::has_cycle() const {
  // union-find: an edge inside one component (loops included) closes a cycle
  std::vector<std::size_t> parent(static_cast<std::size_t>(n_));
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&parent](int v) {
    auto x = static_cast<std::size_t>(v);
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& [a, b] : edges_) {
    const int ra = find(a);
    const int rb = find(b);
    if (ra == rb) {
      return true;
    }
    parent[ra] = rb;
  }
  return false;
}

Graph Graph::parse_edge_list(std::istream& in, std::string name) {
  std::vector<std::pair<int, int>> edges;
  int max_vertex = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    int a = 0;
    int b = 0;
    if (!(fields >> a)) {
      continue;  // blank or comment-only
    }
    std::string extra;
    if (!(fields >> b) || (fields >> extra)) {
      throw InvalidInput("edge list line " + std::to_string(line_no) + ": expected `u v`");
    }
    if (a < 0 || b < 0) {
      throw InvalidInput("edge list line " + std::to_string(line_no) + ": negative vertex");
    }
    edges.emplace_back(a, b);
    max_vertex = std::max({max_vertex, a, b});
  }
  if (edges.empty()) {
    throw InvalidInput("edge list has no edges");
  }
  return Graph(max_vertex + 1, std::move(edges), std::move(name));
}

Graph Graph::load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInput("cannot open edge list '" + path + "'");
  }
  return parse_edge_list(in, path);
}

std::string Graph::to_edge_list() const {
  std::ostringstream out;
  if (!name_.empty()) {
    out << "# " << name_ << '\n';
  }
  for (const auto& [a, b] : edges_) {
    out << a << ' ' << b << '\n';
  }
  return out.str();
}

DirectedEdgeSpace::DirectedEdgeSpace(const Graph& graph) {
  const auto& edges = graph.edges();
  tail_.reserve(2 * edges.size());
  head_.reserve(2 * edges.size());
  out_.resize(static_cast<std::size_t>(graph.vertex_count()));
  for (const auto& [a, b] : edges) {
    tail_.push_back(a);
    head_.push_back(b);
    tail_.push_back(b);
    head_.push_back(a);
  }
  for (std::size_t e = 0; e < tail_.size(); ++e) {
    out_[static_cast<std::size_t>(tail_[e])].push_back(e);
  }
  successors_.resize(tail_.size());
  for (std::size_t e = 0; e < tail_.size(); ++e) {
    for (std::size_t f : out_[static_cast<std::size_t>(head_[e])]) {
      if (f != reverse(e)) {
        successors_[e].push_back(f);
      }
    }
  }
}

namespace {

void require_vertex(const Graph& graph, int v) {
  if (v < 0 || v >= graph.vertex_count()) {
    throw InvalidInput("vertex " + std::to_string(v) + " not in graph");
  }
}

void require_connected_regular(const Graph& graph, int min_degree) {
  const auto d = graph.regular_degree();
  if (!d) {
    throw InvalidInput("graph " + graph.name() + " is not regular");
  }
  if (*d < min_degree) {
    throw InvalidInput("graph degree " + std::to_string(*d) + " below " +
                       std::to_string(min_degree));
  }
  if (!graph.is_connected()) {
    throw InvalidInput("graph " + graph.name() + " is not connected");
  }
}

// Deterministic positive start vector so power iteration does real work even
// when the Perron vector is constant.
std::vector<double> start_vector(std::size_t n) {
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> dist(0.5, 1.5);
  std::vector<double> x(n);
  for (auto& xi : x) {
    xi = dist(rng);
  }
  return x;
}

// Power iteration on (M + I) for a non-negative operator M given by `apply`.
// The shift removes the -rho eigenvalue of periodic (e.g. bipartite) operators
// without moving the Perron value.
template <class Apply>
SpectralResult shifted_power_iteration(std::size_t n, Apply apply, double tol) {
  std::vector<double> x = start_vector(n);
  std::vector<double> y(n);
  auto norm = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double vi : v) {
      s += vi * vi;
    }
    return std::sqrt(s);
  };
  double scale = norm(x);
  for (auto& xi : x) {
    xi /= scale;
  }
  SpectralResult result;
  double previous = -1.0;
  for (int it = 1; it <= kPowerIterationCap; ++it) {
    apply(x, y);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += x[i];
    }
    const double growth = norm(y);
    if (growth == 0.0) {
      result.value = 0.0;
      result.iterations = it;
      result.converged = true;
      return result;
    }
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = y[i] / growth;
    }
    const double estimate = growth - 1.0;
    result.value = estimate;
    result.iterations = it;
    if (std::abs(estimate - previous) < tol) {
      result.converged = true;
      return result;
    }
    previous = estimate;
  }
  return result;
}

}  // namespace

std::vector<BigCount> adjacency_walk_counts(const Graph& graph, int u, int v, int t_max) {
  require_vertex(graph, u);
  require_vertex(graph, v);
  if (t_max < 0) {
    throw InvalidInput("t_max must be >= 0");
  }
  const auto n = static_cast<std::size_t>(graph.vertex_count());
  std::vector<BigCount> x(n, 0);
  std::vector<BigCount> next(n);
  x[static_cast<std::size_t>(u)] = 1;
  std::vector<BigCount> out;
  out.reserve(static_cast<std::size_t>(t_max) + 1);
  for (int t = 0; t <= t_max; ++t) {
    out.push_back(x[static_cast<std::size_t>(v)]);
    if (t == t_max) {
      break;
    }
    for (auto& cell : next) {
      cell = 0;
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (sgn(x[a]) == 0) {
        continue;
      }
      for (int b : graph.neighbours(static_cast<int>(a))) {
        next[static_cast<std::size_t>(b)] += x[a];
      }
    }
    std::swap(x, next);
  }
  return out;
}

std::vector<BigCount> nb_walk_counts(const Graph& graph, int u, int v, int t_max) {
  require_vertex(graph, u);
  require_vertex(graph, v);
  if (t_max < 0) {
    throw InvalidInput("t_max must be >= 0");
  }
  const DirectedEdgeSpace space(graph);
  std::vector<BigCount> out;
  out.reserve(static_cast<std::size_t>(t_max) + 1);
  out.emplace_back(u == v ? 1 : 0);
  if (t_max == 0) {
    return out;
  }
  // x[e] = NB walks from u whose last step is e
  std::vector<BigCount> x(space.size(), 0);
  std::vector<BigCount> next(space.size());
  for (std::size_t e : space.out_edges(u)) {
    x[e] += 1;
  }
  for (int t = 1; t <= t_max; ++t) {
    BigCount ending = 0;
    for (std::size_t e = 0; e < space.size(); ++e) {
      if (space.head(e) == v) {
        ending += x[e];
      }
    }
    out.push_back(std::move(ending));
    if (t == t_max) {
      break;
    }
    for (auto& cell : next) {
      cell = 0;
    }
    for (std::size_t e = 0; e < space.size(); ++e) {
      if (sgn(x[e]) == 0) {
        continue;
      }
      for (std::size_t f : space.successors(e)) {
        next[f] += x[e];
      }
    }
    std::swap(x, next);
  }
  return out;
}

SpectralResult spectral_radius_adjacency(const Graph& graph, double tol) {
  if (!graph.is_connected()) {
    throw InvalidInput("spectral radius needs a connected graph");
  }
  const auto n = static_cast<std::size_t>(graph.vertex_count());
  return shifted_power_iteration(
      n,
      [&graph, n](const std::vector<double>& x, std::vector<double>& y) {
        for (std::size_t a = 0; a < n; ++a) {
          double s = 0.0;
          for (int b : graph.neighbours(static_cast<int>(a))) {
            s += x[static_cast<std::size_t>(b)];
          }
          y[a] = s;
        }
      },
      tol);
}

SpectralResult spectral_radius_hashimoto(const Graph& graph, double tol) {
  if (!graph.is_connected()) {
    throw InvalidInput("spectral radius needs a connected graph");
  }
  if (!graph.has_cycle()) {
    throw InvalidInput("graph is a tree: cogrowth is 0 and the Hashimoto operator is nilpotent");
  }
  const DirectedEdgeSpace space(graph);
  // (Bx)[e] = sum over successors f of e of x[f]
  return shifted_power_iteration(
      space.size(),
      [&space](const std::vector<double>& x, std::vector<double>& y) {
        for (std::size_t e = 0; e < space.size(); ++e) {
          double s = 0.0;
          for (std::size_t f : space.successors(e)) {
            s += x[f];
          }
          y[e] = s;
        }
      },
      tol);
}

ClassicalCheck classical_formula_check(const Graph& graph, double tol, double power_tol) {
  require_connected_regular(graph, 3);
  ClassicalCheck check;
  check.d = *graph.regular_degree();
  const auto rho = spectral_radius_adjacency(graph, power_tol);
  const auto cogr = spectral_radius_hashimoto(graph, power_tol);
  if (!rho.converged || !cogr.converged) {
    throw EngineError("power iteration did not converge on " + graph.name());
  }
  check.rho = rho.value;
  check.cogrowth = cogr.value;
  check.predicted_rho = g_regular(check.d, check.cogrowth);
  check.deviation = std::abs(check.rho - check.predicted_rho);
  check.passed = check.deviation <= tol;
  return check;
}

CoveringCheck covering_identity_check(const Graph& graph, int u, int v, int t_max) {
  require_connected_regular(graph, 3);
  if (t_max < 0) {
    throw InvalidInput("t_max must be >= 0");
  }
  const int d = *graph.regular_degree();
  const auto ordinary = adjacency_walk_counts(graph, u, v, t_max);
  const auto non_backtracking = nb_walk_counts(graph, u, v, t_max);
  const PointWalkTable point(walk_table_regular(d, t_max, NumericMode::exact));

  CoveringCheck check{u, v, t_max, true, -1};
  for (int t = 0; t <= t_max; ++t) {
    BigCount lifted = 0;
    for (int r = t % 2; r <= t; r += 2) {
      lifted += point.exact(t, r) * non_backtracking[static_cast<std::size_t>(r)];
    }
    if (lifted != ordinary[static_cast<std::size_t>(t)]) {
      check.passed = false;
      check.first_mismatch = t;
      break;
    }
  }
  return check;
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      edges.emplace_back(a, b);
    }
  }
  return Graph(n, std::move(edges), "K" + std::to_string(n));
}

Graph complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      edges.emplace_back(i, a + j);
    }
  }
  return Graph(a + b, std::move(edges), "K" + std::to_string(a) + "," + std::to_string(b));
}

Graph petersen_graph() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);          // outer cycle
    edges.emplace_back(i, i + 5);                // spokes
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return Graph(10, std::move(edges), "Petersen");
}

Graph hypercube_graph(int dim) {
  const int n = 1 << dim;
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) {
    for (int bit = 0; bit < dim; ++bit) {
      const int w = v ^ (1 << bit);
      if (v < w) {
        edges.emplace_back(v, w);
      }
    }
  }
  return Graph(n, std::move(edges), "Q" + std::to_string(dim));
}

Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    edges.emplace_back(i, (i + 1) % n);
  }
  return Graph(n, std::move(edges), "C" + std::to_string(n));
}

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) {
    edges.emplace_back(i, i + 1);
  }
  return Graph(n, std::move(edges), "P" + std::to_string(n));
}

Graph random_cubic_graph(int n, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) {
    throw InvalidInput("random cubic graph needs an even n >= 4");
  }
  std::mt19937_64 rng(seed);
  std::vector<int> points(static_cast<std::size_t>(3 * n));
  for (int i = 0; i < 3 * n; ++i) {
    points[static_cast<std::size_t>(i)] = i / 3;
  }
  // pairing model with rejection of loops, parallel edges and disconnection
  for (int attempt = 0; attempt < 100'000; ++attempt) {
    // explicit Fisher-Yates: std::shuffle's output differs between standard libraries
    for (std::size_t i = points.size() - 1; i > 0; --i) {
      std::swap(points[i], points[static_cast<std::size_t>(rng() % (i + 1))]);
    }
    std::vector<std::pair<int, int>> edges;
    bool simple = true;
    for (std::size_t i = 0; i < points.size() && simple; i += 2) {
      int a = points[i];
      int b = points[i + 1];
      if (a == b) {
        simple = false;
        break;
      }
      if (a > b) {
        std::swap(a, b);
      }
      simple = std::find(edges.begin(), edges.end(), std::make_pair(a, b)) == edges.end();
      edges.emplace_back(a, b);
    }
    if (!simple) {
      continue;
    }
    std::sort(edges.begin(), edges.end());
    Graph g(n, std::move(edges),
            "random-cubic-n" + std::to_string(n) + "-seed" + std::to_string(seed));
    if (g.is_connected()) {
      return g;
    }
  }
  throw EngineError("could not draw a simple connected cubic graph");
}

std::vector<Graph> acceptance_corpus() {
  return {complete_graph(4),         complete_graph(5),         complete_bipartite(3, 3),
          petersen_graph(),          hypercube_graph(3),        random_cubic_graph(12, 20240611),
          random_cubic_graph(16, 7)};
}

}  // namespace cogrowth
