#pragma once

// Simple undirected graphs, equality tasks on graphs, exact independence
// numbers (branch and bound, n <= 64), orthogonal-representation checks, and
// a small catalog of named graphs used by the scan experiments.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "distcc/errors.hpp"
#include "distcc/task.hpp"

namespace distcc {

struct Graph {
  int n = 0;
  std::vector<std::vector<char>> adj;       // symmetric 0/1 matrix, zero diagonal
  std::vector<std::vector<int>> neighbors;  // sorted adjacency lists

  bool adjacent(int u, int v) const { return adj[u][v] != 0; }
  int degree(int v) const { return static_cast<int>(neighbors[v].size()); }
  int num_edges() const {
    int e = 0;
    for (int v = 0; v < n; ++v) e += degree(v);
    return e / 2;
  }
  std::vector<std::pair<int, int>> edge_list() const {  // u < v, sorted
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v : neighbors[u])
        if (u < v) edges.emplace_back(u, v);
    return edges;
  }
};

inline Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 1) fail(errc::invalid_argument, "graph needs at least one vertex");
  Graph g;
  g.n = n;
  g.adj.assign(n, std::vector<char>(n, 0));
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      fail(errc::invalid_argument, "edge endpoint out of range");
    if (u == v) fail(errc::invalid_argument, "self-loops are not allowed");
    g.adj[u][v] = g.adj[v][u] = 1;
  }
  g.neighbors.assign(n, {});
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (g.adj[u][v]) g.neighbors[u].push_back(v);
  return g;
}

inline Graph path_graph(int N) {
  if (N < 2) fail(errc::invalid_argument, "path needs N >= 2");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < N; ++i) edges.emplace_back(i, i + 1);
  return make_graph(N, edges);
}

inline Graph cycle_graph(int N) {
  if (N < 3) fail(errc::invalid_argument, "cycle needs N >= 3");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < N; ++i) edges.emplace_back(i, (i + 1) % N);
  return make_graph(N, edges);
}

inline Graph complete_graph(int N) {
  if (N < 2) fail(errc::invalid_argument, "complete graph needs N >= 2");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < N; ++u)
    for (int v = u + 1; v < N; ++v) edges.emplace_back(u, v);
  return make_graph(N, edges);
}

// Vertices are the 2^d bitstrings of length d in integer order; two strings
// are adjacent when their Hamming distance is exactly d/2.  Explicit
// construction is capped at d <= 12 (4096 vertices); beyond that the dense
// adjacency matrix outgrows desk-scale memory and callers should use the
// structural evaluators instead of a materialized graph.
inline Graph hadamard_graph(int d) {
  if (d < 2) fail(errc::invalid_argument, "hadamard_graph needs d >= 2");
  if (d % 2 != 0) fail(errc::odd_dimension, "hadamard_graph needs even d");
  if (d > 12)
    fail(errc::too_large,
         "explicit hadamard_graph is capped at d = 12; use the structural "
         "evaluators for larger d");
  int n = 1 << d;
  Graph g;
  g.n = n;
  g.adj.assign(n, std::vector<char>(n, 0));
  g.neighbors.assign(n, {});
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (std::popcount(static_cast<unsigned>(u ^ v)) == d / 2) {
        g.adj[u][v] = g.adj[v][u] = 1;
        g.neighbors[u].push_back(v);
        g.neighbors[v].push_back(u);
      }
  for (auto& nb : g.neighbors) std::sort(nb.begin(), nb.end());
  return g;
}

struct NamedGraph {
  std::string name;
  Graph graph;
};

inline std::vector<NamedGraph> small_graph_catalog() {
  std::vector<NamedGraph> cat;
  cat.push_back({"path-3", path_graph(3)});
  cat.push_back({"triangle", complete_graph(3)});
  cat.push_back({"path-4", path_graph(4)});
  cat.push_back({"star-4", make_graph(4, {{0, 1}, {0, 2}, {0, 3}})});
  cat.push_back({"cycle-4", cycle_graph(4)});
  cat.push_back({"paw", make_graph(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}})});
  cat.push_back({"diamond", make_graph(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})});
  cat.push_back({"K4", complete_graph(4)});
  return cat;
}

// ---------------------------------------------- independence number ------

namespace detail {

// Exact maximum clique (Tomita-style branch and bound with greedy-coloring
// upper bounds) over vertex sets encoded as 64-bit masks.
struct MaxCliqueSolver {
  const std::vector<std::uint64_t>& nb;  // adjacency masks, diagonal clear
  int best = 0;
  std::uint64_t best_mask = 0;

  explicit MaxCliqueSolver(const std::vector<std::uint64_t>& masks) : nb(masks) {}

  void expand(std::uint64_t rmask, int rsize, std::uint64_t cand) {
    if (cand == 0) {
      if (rsize > best) {
        best = rsize;
        best_mask = rmask;
      }
      return;
    }
    // Greedy coloring: vertices are emitted color class by color class, so
    // the bound (number of colors used so far) is nondecreasing.
    std::array<int, 64> order{}, bound{};
    int cnt = 0, color = 0;
    std::uint64_t left = cand;
    while (left) {
      ++color;
      std::uint64_t avail = left;
      while (avail) {
        int v = std::countr_zero(avail);
        std::uint64_t bit = 1ull << v;
        avail &= ~(nb[v] | bit);
        left &= ~bit;
        order[cnt] = v;
        bound[cnt] = color;
        ++cnt;
      }
    }
    std::uint64_t cur = cand;
    for (int i = cnt - 1; i >= 0; --i) {
      if (rsize + bound[i] <= best) return;
      int v = order[i];
      std::uint64_t bit = 1ull << v;
      expand(rmask | bit, rsize + 1, cur & nb[v]);
      cur &= ~bit;
    }
  }
};

// Complement adjacency masks: bit u of out[v] set iff u != v and u,v nonadjacent.
inline std::vector<std::uint64_t> complement_masks(const Graph& g) {
  std::uint64_t full = (g.n == 64) ? ~0ull : ((1ull << g.n) - 1);
  std::vector<std::uint64_t> masks(g.n, 0);
  for (int v = 0; v < g.n; ++v) {
    std::uint64_t m = full & ~(1ull << v);
    for (int u : g.neighbors[v]) m &= ~(1ull << u);
    masks[v] = m;
  }
  return masks;
}

inline int max_independent_restricted(const std::vector<std::uint64_t>& cnb,
                                      std::uint64_t allowed) {
  MaxCliqueSolver solver(cnb);
  solver.expand(0, 0, allowed);
  return solver.best;
}

}  // namespace detail

inline int independence_number(const Graph& g) {
  if (g.n > 64)
    fail(errc::too_large, "exact independence number is capped at 64 vertices");
  auto cnb = detail::complement_masks(g);
  std::uint64_t full = (g.n == 64) ? ~0ull : ((1ull << g.n) - 1);
  return detail::max_independent_restricted(cnb, full);
}

// Lexicographically smallest maximum independent set: scan vertices in
// ascending order and keep v whenever some maximum set extends the current
// choice through v.
inline std::vector<int> max_independent_set(const Graph& g) {
  if (g.n > 64)
    fail(errc::too_large, "exact independence number is capped at 64 vertices");
  auto cnb = detail::complement_masks(g);
  std::uint64_t full = (g.n == 64) ? ~0ull : ((1ull << g.n) - 1);
  int alpha = detail::max_independent_restricted(cnb, full);
  std::vector<int> out;
  std::uint64_t cand = full;
  for (int v = 0; v < g.n && static_cast<int>(out.size()) < alpha; ++v) {
    if (!((cand >> v) & 1)) continue;
    std::uint64_t rest = cand & cnb[v];
    int extend = detail::max_independent_restricted(cnb, rest);
    if (static_cast<int>(out.size()) + 1 + extend == alpha) {
      out.push_back(v);
      cand = rest;
    } else {
      cand &= ~(1ull << v);
    }
  }
  return out;
}

// ------------------------------------- orthogonal representations ------

struct OrthRepresentation {
  int dim = 0;
  std::vector<Eigen::VectorXcd> kets;  // unit vectors, one per vertex
};

struct OrthReport {
  bool ok = false;
  double max_violation = 0.0;  // largest |<psi_u|psi_v>| over adjacent pairs
  std::vector<std::tuple<int, int, double>> violations;  // overlaps > 1e-9
};

// Adjacent vertices must carry orthogonal unit vectors (overlap <= 1e-9).
inline OrthReport verify_orth_representation(const Graph& g,
                                             const OrthRepresentation& rep) {
  if (static_cast<int>(rep.kets.size()) != g.n)
    fail(errc::size_mismatch, "representation must supply one ket per vertex");
  for (const auto& k : rep.kets) {
    if (k.size() != rep.dim)
      fail(errc::dimension_mismatch, "ket dimension differs from declared dim");
    if (std::abs(k.norm() - 1.0) > 1e-10)
      fail(errc::invalid_state, "representation kets must be unit vectors");
  }
  OrthReport report;
  for (int u = 0; u < g.n; ++u)
    for (int v : g.neighbors[u]) {
      if (v <= u) continue;
      double ov = std::abs(rep.kets[u].dot(rep.kets[v]));
      report.max_violation = std::max(report.max_violation, ov);
      if (ov > 1e-9) report.violations.emplace_back(u, v, ov);
    }
  report.ok = report.violations.empty();
  return report;
}

struct AdvantageRatio {
  double ratio = 0.0;   // N / (alpha * beta)
  bool advantage = false;  // ratio > 1
  int alpha = 0;
};

// Ratio N / (alpha(G) * beta) comparing the graph size against the classical
// distinguishability floor alpha(G)/N scaled by an achieved quantum value beta.
inline AdvantageRatio advantage_ratio(const Graph& g, double beta) {
  if (!(beta > 0.0) || beta > 1.0 + 1e-12)
    fail(errc::invalid_argument, "beta must lie in (0, 1]");
  AdvantageRatio r;
  r.alpha = independence_number(g);
  r.ratio = static_cast<double>(g.n) / (static_cast<double>(r.alpha) * beta);
  r.advantage = r.ratio > 1.0;
  return r;
}

// -------------------------------------------------- equality task ------

// Equality task on a graph: both parties hold vertices; on equal inputs the
// receiver must say "equal" (z = 0), on adjacent inputs "different" (z = 1);
// nonadjacent unequal pairs never occur.  Every winning cell carries weight
// w = 1 / (sum_x deg(x) + N).
inline TaskSpec graph_equality_task(const Graph& g,
                                    const std::string& label = "graph-equality") {
  for (int v = 0; v < g.n; ++v)
    if (g.degree(v) == 0)
      fail(errc::isolated_vertex, "equality task needs every vertex to have a neighbor");
  std::size_t entries = static_cast<std::size_t>(g.n) * g.n * 2;
  if (entries > 50000000)
    fail(errc::too_large, "equality task tensor would exceed 5e7 entries");
  TaskSpec t;
  t.label = label;
  t.n_x = g.n;
  t.n_y = g.n;
  t.n_z = 2;
  t.prior = Eigen::VectorXd::Constant(g.n, 1.0 / g.n);
  t.coeffs.assign(entries, 0.0);
  double w = 1.0 / (2.0 * g.num_edges() + g.n);
  for (int x = 0; x < g.n; ++x) {
    t.c(x, x, 0) = w;
    for (int y : g.neighbors[x]) t.c(x, y, 1) = w;
  }
  return t;
}

// ------------------------------------------------------------- JSON ------

inline nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.n;
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g.edge_list()) edges.push_back({u + 1, v + 1});
  j["edges"] = std::move(edges);
  return j;
}

inline Graph graph_from_json(const nlohmann::json& j) {
  int n = j.at("n").get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges"))
    edges.emplace_back(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1);
  return make_graph(n, edges);
}

}  // namespace distcc
