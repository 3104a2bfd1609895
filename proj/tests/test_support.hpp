#pragma once

// Generators and brute-force oracles shared by the unit and acceptance
// suites. Oracles here deliberately avoid the library's algorithms: paths by
// exhaustive enumeration, set matrices by literal index conditions.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "idealflow/graph.hpp"
#include "idealflow/trajectory.hpp"

namespace idealflow::testing {

inline DirectedGraph g1() { return DirectedGraph::from_edges({{"1", "2"}, {"2", "1"}, {"2", "3"}, {"3", "1"}}); }
inline DirectedGraph c3() { return DirectedGraph::from_edges({{"1", "2"}, {"2", "3"}, {"3", "1"}}); }
inline DirectedGraph g2() { return DirectedGraph::from_edges({{"a", "b"}, {"b", "c"}, {"a", "c"}}); }
inline DirectedGraph path_abc() { return DirectedGraph::from_edges({{"a", "b"}, {"b", "c"}}); }

inline std::vector<NodeIndex> nodes(const DirectedGraph& g, std::initializer_list<const char*> labels) {
  std::vector<NodeIndex> out;
  for (const char* l : labels) out.push_back(*g.index_of(l));
  return out;
}

inline std::vector<std::string> numbered_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  return labels;
}

// Each ordered pair (u != v) is an edge with probability `density`.
inline DirectedGraph random_digraph(std::mt19937_64& rng, std::size_t n, double density) {
  std::bernoulli_distribution coin(density);
  const auto labels = numbered_labels(n);
  std::vector<EdgeLabels> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && coin(rng)) edges.emplace_back(labels[u], labels[v]);
  return DirectedGraph::from_parts(labels, edges);
}

// Rejection-samples until strongly connected.
inline DirectedGraph random_strongly_connected(std::mt19937_64& rng, std::size_t n, double density) {
  for (;;) {
    auto g = random_digraph(rng, n, density);
    if (strongly_connected(g)) return g;
  }
}

// Random walks of length 2..max_len from random start nodes; walks stop early
// at sinks, and start nodes without out-links are skipped.
inline TrajectorySet random_walk_corpus(std::mt19937_64& rng, const DirectedGraph& g,
                                        std::size_t count, std::size_t max_len) {
  std::vector<Trajectory> items;
  std::uniform_int_distribution<std::size_t> pick_node(0, g.node_count() - 1);
  std::uniform_int_distribution<std::size_t> pick_len(2, std::max<std::size_t>(2, max_len));
  TrajectoryId next_id = 1;
  for (std::size_t k = 0; k < count; ++k) {
    NodeIndex at = pick_node(rng);
    if (g.out_degree(at) == 0) continue;
    Trajectory tr{next_id++, {at}};
    const std::size_t len = pick_len(rng);
    while (tr.path.size() < len && g.out_degree(at) > 0) {
      const auto& succ = g.successors(at);
      at = succ[std::uniform_int_distribution<std::size_t>(0, succ.size() - 1)(rng)];
      tr.path.push_back(at);
    }
    items.push_back(std::move(tr));
  }
  return TrajectorySet(g, std::move(items));
}

// Like random_walk_corpus, but each walk stops before revisiting a node, so
// every trajectory is a simple path.
inline TrajectorySet simple_path_corpus(std::mt19937_64& rng, const DirectedGraph& g,
                                        std::size_t count, std::size_t max_len) {
  std::vector<Trajectory> items;
  std::uniform_int_distribution<std::size_t> pick_node(0, g.node_count() - 1);
  std::uniform_int_distribution<std::size_t> pick_len(2, std::max<std::size_t>(2, max_len));
  TrajectoryId next_id = 1;
  for (std::size_t k = 0; k < count; ++k) {
    NodeIndex at = pick_node(rng);
    Trajectory tr{next_id, {at}};
    std::vector<bool> seen(g.node_count(), false);
    seen[at] = true;
    const std::size_t len = pick_len(rng);
    while (tr.path.size() < len) {
      std::vector<NodeIndex> fresh;
      for (NodeIndex v : g.successors(at))
        if (!seen[v]) fresh.push_back(v);
      if (fresh.empty()) break;
      at = fresh[std::uniform_int_distribution<std::size_t>(0, fresh.size() - 1)(rng)];
      seen[at] = true;
      tr.path.push_back(at);
    }
    if (tr.path.size() < 2) continue;
    ++next_id;
    items.push_back(std::move(tr));
  }
  return TrajectorySet(g, std::move(items));
}

// Shortest hop count by enumerating every simple path; -1 when none exists.
inline std::vector<std::vector<std::int64_t>> brute_force_hops(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<std::int64_t>> best(n, std::vector<std::int64_t>(n, -1));
  std::vector<bool> on_path(n, false);
  std::function<void(NodeIndex, NodeIndex, std::int64_t)> dfs = [&](NodeIndex s, NodeIndex u,
                                                                   std::int64_t len) {
    if (best[s][u] < 0 || len < best[s][u]) best[s][u] = len;
    on_path[u] = true;
    for (NodeIndex v = 0; v < n; ++v) {
      if (!on_path[v] && g.has_edge(u, v)) dfs(s, v, len + 1);
    }
    on_path[u] = false;
  };
  for (NodeIndex s = 0; s < n; ++s) dfs(s, s, 0);
  return best;
}

// gcd of the lengths of all simple directed cycles.
inline std::size_t brute_force_period(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  std::size_t d = 0;
  std::vector<bool> on_path(n, false);
  std::function<void(NodeIndex, NodeIndex, std::size_t)> dfs = [&](NodeIndex root, NodeIndex u,
                                                                  std::size_t len) {
    on_path[u] = true;
    for (NodeIndex v = 0; v < n; ++v) {
      if (!g.has_edge(u, v)) continue;
      if (v == root) d = std::gcd(d, len + 1);
      // Only extend through nodes above the root so each cycle is rooted once.
      else if (v > root && !on_path[v]) dfs(root, v, len + 1);
    }
    on_path[u] = false;
  };
  for (NodeIndex r = 0; r < n; ++r) dfs(r, r, 0);
  return d;
}

// Literal transcriptions of the defining index conditions, with the diagonal
// forced empty.
inline SetMatrix oracle_flow_set(const TrajectorySet& set, std::size_t n) {
  auto m = SetMatrix::square(n);
  for (NodeIndex i = 0; i < n; ++i)
    for (NodeIndex j = 0; j < n; ++j)
      for (const auto& tr : set.trajectories()) {
        const auto& v = tr.path;
        for (std::size_t h = 0; h + 1 < v.size(); ++h)
          if (v[h] == i && v[h + 1] == j) m(i, j).insert(tr.id);
      }
  return m;
}

inline SetMatrix oracle_od_set(const TrajectorySet& set, std::size_t n) {
  auto m = SetMatrix::square(n);
  for (NodeIndex s = 0; s < n; ++s)
    for (NodeIndex t = 0; t < n; ++t) {
      if (s == t) continue;
      for (const auto& tr : set.trajectories()) {
        const auto& v = tr.path;
        for (std::size_t p = 0; p < v.size(); ++p)
          for (std::size_t q = 0; q < v.size(); ++q)
            if (p < q && v[p] == s && v[q] == t) m(s, t).insert(tr.id);
      }
    }
  return m;
}

inline SetMatrix oracle_indirect_set(const TrajectorySet& set, std::size_t n) {
  auto m = SetMatrix::square(n);
  for (NodeIndex s = 0; s < n; ++s)
    for (NodeIndex t = 0; t < n; ++t) {
      if (s == t) continue;
      for (const auto& tr : set.trajectories()) {
        const auto& v = tr.path;
        for (std::size_t p = 0; p < v.size(); ++p)
          for (std::size_t r = 0; r < v.size(); ++r)
            for (std::size_t q = 0; q < v.size(); ++q)
              if (p < r && r < q && v[p] == s && v[q] == t) m(s, t).insert(tr.id);
      }
    }
  return m;
}

}  // namespace idealflow::testing
