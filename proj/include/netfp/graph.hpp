#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>
#include <random>
#include <utility>
#include <vector>

namespace netfp {

// Directed communication graph. neighbors(i) lists the nodes i hears from,
// i.e. {j : (j, i) in E}, sorted ascending. Nodes are 0-based.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  // Edges are (from, to) pairs; undirected adds both directions.
  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges, bool undirected);

  int size() const { return static_cast<int>(in_.size()); }
  const std::vector<int>& neighbors(int i) const { return in_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& out_neighbors(int i) const { return out_[static_cast<std::size_t>(i)]; }
  bool has_edge(int from, int to) const;
  std::size_t directed_edge_count() const;
  bool is_symmetric() const;
  // Unordered pairs {u < v} of a symmetric graph, lexicographic.
  std::vector<std::pair<int, int>> undirected_edges() const;

  void add_edge(int from, int to);
  void add_undirected_edge(int u, int v);
  void remove_undirected_edge(int u, int v);

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<int>> in_;
  std::vector<std::vector<int>> out_;
};

using Positions = std::vector<Eigen::Vector2d>;

struct GeometricGraph {
  Graph graph;
  Positions positions;
};

// Nodes uniform in [0, side]^2; undirected edge iff distance < radius.
GeometricGraph random_geometric(int n, double side, double radius, std::mt19937_64& rng);
// Edges among fixed positions with the same rule.
Graph geometric_edges(const Positions& positions, double radius);

// Each undirected edge (u, v), u < v, is rewired with probability p: u stays,
// v is replaced by a uniform node that is neither u nor a current neighbor of u.
Graph small_world_rewire(const Graph& g, double p, std::mt19937_64& rng);

Graph star(int n);      // node 0 is the hub
Graph ring(int n);
Graph path_graph(int n);
Graph complete_graph(int n);

bool is_strongly_connected(const Graph& g);

struct PathStats {
  int diameter = 0;
  double mean_path = 0.0;  // over ordered pairs i != j
};
// Throws DomainError when some node cannot reach another.
PathStats diameter_and_mean_path(const Graph& g);

// Metropolis-Hastings averaging weights over N_i and i. Doubly stochastic for
// symmetric graphs.
Eigen::MatrixXd metropolis_weights(const Graph& g);

// {"n": n, "edges": [[i, j], ...], "positions": [[x, y], ...]} with 1-based
// directed edges (from, to). positions may be empty.
nlohmann::json graph_to_json(const Graph& g, const Positions& positions = {});
GeometricGraph graph_from_json(const nlohmann::json& j);

}  // namespace netfp
