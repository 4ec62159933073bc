#include "netfp/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "netfp/errors.hpp"

namespace netfp {

namespace {

void insert_sorted(std::vector<int>& v, int x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

void erase_sorted(std::vector<int>& v, int x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
}

// Hop distances from `source` along out-edges; -1 when unreachable.
std::vector<int> bfs(const Graph& g, int source) {
  std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
  std::deque<int> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : g.out_neighbors(u)) {
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace

Graph::Graph(int n) {
  if (n < 1) throw DomainError("graph needs at least one node");
  in_.resize(static_cast<std::size_t>(n));
  out_.resize(static_cast<std::size_t>(n));
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges, bool undirected) {
  Graph g(n);
  for (auto [from, to] : edges) {
    if (undirected) {
      g.add_undirected_edge(from, to);
    } else {
      g.add_edge(from, to);
    }
  }
  return g;
}

bool Graph::has_edge(int from, int to) const {
  const auto& v = out_[static_cast<std::size_t>(from)];
  return std::binary_search(v.begin(), v.end(), to);
}

std::size_t Graph::directed_edge_count() const {
  std::size_t total = 0;
  for (const auto& v : out_) total += v.size();
  return total;
}

bool Graph::is_symmetric() const {
  for (int u = 0; u < size(); ++u) {
    for (int v : out_neighbors(u)) {
      if (!has_edge(v, u)) return false;
    }
  }
  return true;
}

std::vector<std::pair<int, int>> Graph::undirected_edges() const {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < size(); ++u) {
    for (int v : out_neighbors(u)) {
      if (u < v) edges.emplace_back(u, v);
    }
  }
  return edges;
}

void Graph::add_edge(int from, int to) {
  if (from < 0 || to < 0 || from >= size() || to >= size()) {
    std::ostringstream os;
    os << "edge (" << from << ", " << to << ") outside 0.." << size() - 1;
    throw DomainError(os.str());
  }
  if (from == to) throw DomainError("self-loops are not allowed");
  insert_sorted(out_[static_cast<std::size_t>(from)], to);
  insert_sorted(in_[static_cast<std::size_t>(to)], from);
}

void Graph::add_undirected_edge(int u, int v) {
  add_edge(u, v);
  add_edge(v, u);
}

void Graph::remove_undirected_edge(int u, int v) {
  erase_sorted(out_[static_cast<std::size_t>(u)], v);
  erase_sorted(in_[static_cast<std::size_t>(v)], u);
  erase_sorted(out_[static_cast<std::size_t>(v)], u);
  erase_sorted(in_[static_cast<std::size_t>(u)], v);
}

Graph geometric_edges(const Positions& positions, double radius) {
  if (radius <= 0.0) throw DomainError("connection radius must be positive");
  const int n = static_cast<int>(positions.size());
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if ((positions[static_cast<std::size_t>(u)] - positions[static_cast<std::size_t>(v)]).norm() < radius) {
        g.add_undirected_edge(u, v);
      }
    }
  }
  return g;
}

GeometricGraph random_geometric(int n, double side, double radius, std::mt19937_64& rng) {
  if (n < 2) throw DomainError("geometric graph needs at least two nodes");
  if (side <= 0.0) throw DomainError("square side must be positive");
  std::uniform_real_distribution<double> coord(0.0, side);
  Positions positions(static_cast<std::size_t>(n));
  for (auto& p : positions) {
    const double x = coord(rng);
    const double y = coord(rng);
    p = Eigen::Vector2d(x, y);
  }
  Graph g = geometric_edges(positions, radius);
  return {std::move(g), std::move(positions)};
}

Graph small_world_rewire(const Graph& g, double p, std::mt19937_64& rng) {
  if (p < 0.0 || p > 1.0) throw DomainError("rewire probability outside [0, 1]");
  if (!g.is_symmetric()) throw DomainError("rewiring needs an undirected graph");
  Graph out = g;
  std::bernoulli_distribution coin(p);
  const int n = g.size();
  for (auto [u, v] : g.undirected_edges()) {
    if (!coin(rng)) continue;
    std::vector<int> targets;
    for (int w = 0; w < n; ++w) {
      if (w != u && !out.has_edge(u, w)) targets.push_back(w);
    }
    if (targets.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, targets.size() - 1);
    const int w = targets[pick(rng)];
    out.remove_undirected_edge(u, v);
    out.add_undirected_edge(u, w);
  }
  return out;
}

Graph star(int n) {
  if (n < 2) throw DomainError("star needs at least two nodes");
  Graph g(n);
  for (int v = 1; v < n; ++v) g.add_undirected_edge(0, v);
  return g;
}

Graph ring(int n) {
  if (n < 3) throw DomainError("ring needs at least three nodes");
  Graph g(n);
  for (int v = 0; v < n; ++v) g.add_undirected_edge(v, (v + 1) % n);
  return g;
}

Graph path_graph(int n) {
  if (n < 2) throw DomainError("path needs at least two nodes");
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_undirected_edge(v, v + 1);
  return g;
}

Graph complete_graph(int n) {
  if (n < 2) throw DomainError("complete graph needs at least two nodes");
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.add_undirected_edge(u, v);
  }
  return g;
}

bool is_strongly_connected(const Graph& g) {
  // Every node reachable from 0 along out-edges and along in-edges.
  if (g.size() <= 1) return true;
  const auto forward = bfs(g, 0);
  if (std::any_of(forward.begin(), forward.end(), [](int d) { return d < 0; })) return false;
  Graph reversed(g.size());
  for (int u = 0; u < g.size(); ++u) {
    for (int v : g.out_neighbors(u)) reversed.add_edge(v, u);
  }
  const auto backward = bfs(reversed, 0);
  return std::none_of(backward.begin(), backward.end(), [](int d) { return d < 0; });
}

PathStats diameter_and_mean_path(const Graph& g) {
  const int n = g.size();
  PathStats stats;
  if (n < 2) return stats;
  double total = 0.0;
  for (int s = 0; s < n; ++s) {
    const auto dist = bfs(g, s);
    for (int t = 0; t < n; ++t) {
      if (t == s) continue;
      const int d = dist[static_cast<std::size_t>(t)];
      if (d < 0) throw DomainError("graph is not strongly connected");
      stats.diameter = std::max(stats.diameter, d);
      total += d;
    }
  }
  stats.mean_path = total / (static_cast<double>(n) * (n - 1));
  return stats;
}

Eigen::MatrixXd metropolis_weights(const Graph& g) {
  const int n = g.size();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j : g.neighbors(i)) {
      const auto deg = std::max(g.neighbors(i).size(), g.neighbors(j).size());
      w(i, j) = 1.0 / (1.0 + static_cast<double>(deg));
      off += w(i, j);
    }
    w(i, i) = 1.0 - off;
  }
  return w;
}

nlohmann::json graph_to_json(const Graph& g, const Positions& positions) {
  nlohmann::json edges = nlohmann::json::array();
  for (int u = 0; u < g.size(); ++u) {
    for (int v : g.out_neighbors(u)) edges.push_back({u + 1, v + 1});
  }
  nlohmann::json pos = nlohmann::json::array();
  for (const auto& p : positions) pos.push_back({p.x(), p.y()});
  return {{"n", g.size()}, {"edges", edges}, {"positions", pos}};
}

GeometricGraph graph_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw DomainError("edge must be a pair [from, to]");
    edges.emplace_back(e[0].get<int>() - 1, e[1].get<int>() - 1);
  }
  GeometricGraph out{Graph::from_edges(n, edges, false), {}};
  if (j.contains("positions")) {
    for (const auto& p : j.at("positions")) out.positions.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    if (!out.positions.empty() && static_cast<int>(out.positions.size()) != n) {
      throw DomainError("positions list does not match node count");
    }
  }
  return out;
}

}  // namespace netfp
