#include "idealflow/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

namespace idealflow {

namespace {

std::vector<std::size_t> bfs_levels(const std::vector<std::vector<NodeIndex>>& out,
                                    NodeIndex root) {
  constexpr auto kUnseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> level(out.size(), kUnseen);
  std::deque<NodeIndex> queue{root};
  level[root] = 0;
  while (!queue.empty()) {
    const NodeIndex u = queue.front();
    queue.pop_front();
    for (NodeIndex v : out[u]) {
      if (level[v] == kUnseen) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return level;
}

bool all_reached(const std::vector<std::size_t>& level) {
  return std::none_of(level.begin(), level.end(),
                      [](std::size_t l) { return l == static_cast<std::size_t>(-1); });
}

bool strongly_connected_lists(const std::vector<std::vector<NodeIndex>>& out) {
  if (out.empty()) return false;
  std::vector<std::vector<NodeIndex>> in(out.size());
  for (NodeIndex u = 0; u < out.size(); ++u)
    for (NodeIndex v : out[u]) in[v].push_back(u);
  return all_reached(bfs_levels(out, 0)) && all_reached(bfs_levels(in, 0));
}

}  // namespace

NodeIndex DirectedGraph::add_node(const std::string& label) {
  if (auto it = index_.find(label); it != index_.end()) return it->second;
  const NodeIndex idx = labels_.size();
  labels_.push_back(label);
  index_.emplace(label, idx);
  out_.emplace_back();
  return idx;
}

void DirectedGraph::add_edge(NodeIndex u, NodeIndex v) {
  if (u == v) throw Error(ErrorKind::kSelfLoop, labels_[u]);
  if (has_edge(u, v)) {
    throw Error(ErrorKind::kDuplicateEdge, labels_[u] + " -> " + labels_[v]);
  }
  edges_.emplace_back(u, v);
  out_[u].push_back(v);
}

bool DirectedGraph::has_edge(NodeIndex u, NodeIndex v) const {
  const auto& succ = out_.at(u);
  return std::find(succ.begin(), succ.end(), v) != succ.end();
}

std::optional<NodeIndex> DirectedGraph::index_of(std::string_view label) const {
  if (auto it = index_.find(std::string(label)); it != index_.end()) return it->second;
  return std::nullopt;
}

DirectedGraph DirectedGraph::from_edges(const std::vector<EdgeLabels>& edges) {
  if (edges.empty()) throw Error(ErrorKind::kEmptyGraph, "no edges");
  DirectedGraph g;
  for (const auto& [u, v] : edges) {
    const NodeIndex ui = g.add_node(u);
    const NodeIndex vi = g.add_node(v);
    g.add_edge(ui, vi);
  }
  return g;
}

DirectedGraph DirectedGraph::from_parts(const std::vector<std::string>& nodes,
                                        const std::vector<EdgeLabels>& edges) {
  if (nodes.empty()) throw Error(ErrorKind::kEmptyGraph, "no nodes");
  DirectedGraph g;
  for (const auto& label : nodes) {
    if (g.index_.contains(label)) {
      throw Error(ErrorKind::kInvalidArgument, "node declared twice: " + label);
    }
    g.add_node(label);
  }
  for (const auto& [u, v] : edges) {
    const auto ui = g.index_of(u);
    const auto vi = g.index_of(v);
    if (!ui) throw Error(ErrorKind::kUnknownNode, u);
    if (!vi) throw Error(ErrorKind::kUnknownNode, v);
    g.add_edge(*ui, *vi);
  }
  return g;
}

DirectedGraph parse_edge_list(std::string_view text) {
  std::vector<EdgeLabels> edges;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string source;
    if (!(fields >> source) || source.front() == '#') continue;
    std::string target;
    std::string extra;
    if (!(fields >> target) || (fields >> extra)) {
      throw Error(ErrorKind::kParse,
                  "line " + std::to_string(line_no) + ": expected '<source> <target>'");
    }
    edges.emplace_back(std::move(source), std::move(target));
  }
  return DirectedGraph::from_edges(edges);
}

DirectedGraph load_edge_list(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_edge_list(buffer.str());
}

BinaryMatrix adjacency_matrix(const DirectedGraph& g) {
  auto a = BinaryMatrix::square(g.node_count());
  for (const auto& [u, v] : g.edges()) a(u, v) = 1;
  return a;
}

HopMatrix path_matrix(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  auto p = HopMatrix::square(n, HopCount::unreachable());
  std::vector<std::vector<NodeIndex>> out(n);
  for (NodeIndex u = 0; u < n; ++u) out[u] = g.successors(u);
  for (NodeIndex s = 0; s < n; ++s) {
    const auto level = bfs_levels(out, s);
    for (NodeIndex t = 0; t < n; ++t) {
      if (level[t] != static_cast<std::size_t>(-1)) {
        p(s, t) = HopCount(static_cast<std::int64_t>(level[t]));
      }
    }
  }
  return p;
}

HopMatrix external_matrix(const HopMatrix& path, const BinaryMatrix& adjacency) {
  if (path.rows() != adjacency.rows() || path.cols() != adjacency.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "external_matrix: P and A differ in shape");
  }
  HopMatrix e(path.rows(), path.cols());
  for (std::size_t i = 0; i < path.rows(); ++i) {
    for (std::size_t j = 0; j < path.cols(); ++j) {
      e(i, j) = path(i, j).finite() ? HopCount(path(i, j).value() - adjacency(i, j))
                                    : HopCount::unreachable();
    }
  }
  return e;
}

StructureMatrices structure_matrices(const DirectedGraph& g) {
  StructureMatrices m;
  m.adjacency = adjacency_matrix(g);
  m.path = path_matrix(g);
  m.external = external_matrix(m.path, m.adjacency);
  m.path_binary = binarize(m.path);
  m.external_binary = binarize(m.external);
  return m;
}

bool strongly_connected(const DirectedGraph& g) {
  std::vector<std::vector<NodeIndex>> out(g.node_count());
  for (NodeIndex u = 0; u < g.node_count(); ++u) out[u] = g.successors(u);
  return strongly_connected_lists(out);
}

bool strongly_connected(const BinaryMatrix& adjacency) {
  if (!adjacency.is_square()) throw Error(ErrorKind::kNotSquare, "strongly_connected");
  std::vector<std::vector<NodeIndex>> out(adjacency.rows());
  for (NodeIndex u = 0; u < adjacency.rows(); ++u)
    for (NodeIndex v = 0; v < adjacency.cols(); ++v)
      if (adjacency(u, v) > 0) out[u].push_back(v);
  return strongly_connected_lists(out);
}

std::size_t period(const DirectedGraph& g) {
  if (!strongly_connected(g)) {
    throw Error(ErrorKind::kNotStronglyConnected, "period is defined for strongly connected graphs");
  }
  std::vector<std::vector<NodeIndex>> out(g.node_count());
  for (NodeIndex u = 0; u < g.node_count(); ++u) out[u] = g.successors(u);
  const auto level = bfs_levels(out, 0);
  std::size_t d = 0;
  for (const auto& [u, v] : g.edges()) {
    const auto lu = static_cast<std::int64_t>(level[u]);
    const auto lv = static_cast<std::int64_t>(level[v]);
    const auto term = static_cast<std::size_t>(std::abs(lu + 1 - lv));
    if (term != 0) d = std::gcd(d, term);
  }
  // A single-node graph has no cycles; treat it as aperiodic.
  return d == 0 ? 1 : d;
}

}  // namespace idealflow
