#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "idealflow/matrix.hpp"

namespace idealflow {

using NodeIndex = std::size_t;
using EdgeLabels = std::pair<std::string, std::string>;

// Simple directed graph over string-labelled nodes. Node indices follow first
// appearance in the input and never change after construction.
class DirectedGraph {
 public:
  // Nodes are taken from edge endpoints in order of first appearance.
  // Throws SelfLoop, DuplicateEdge, or EmptyGraph.
  static DirectedGraph from_edges(const std::vector<EdgeLabels>& edges);

  // Explicit node list first, so isolated nodes can be declared. Edge endpoints
  // must be declared nodes (UnknownNode otherwise).
  static DirectedGraph from_parts(const std::vector<std::string>& nodes,
                                  const std::vector<EdgeLabels>& edges);

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(NodeIndex i) const { return labels_.at(i); }
  std::optional<NodeIndex> index_of(std::string_view label) const;

  // Edges in insertion order, as index pairs.
  const std::vector<std::pair<NodeIndex, NodeIndex>>& edges() const noexcept { return edges_; }
  // Out-neighbours of u in edge insertion order.
  const std::vector<NodeIndex>& successors(NodeIndex u) const { return out_.at(u); }
  std::size_t out_degree(NodeIndex u) const { return out_.at(u).size(); }
  bool has_edge(NodeIndex u, NodeIndex v) const;

 private:
  DirectedGraph() = default;
  NodeIndex add_node(const std::string& label);
  void add_edge(NodeIndex u, NodeIndex v);

  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::pair<NodeIndex, NodeIndex>> edges_;
  std::vector<std::vector<NodeIndex>> out_;
};

// Parses `<source> <target>` lines; `#` comments and blank lines are skipped.
DirectedGraph parse_edge_list(std::string_view text);
DirectedGraph load_edge_list(const std::string& path);

BinaryMatrix adjacency_matrix(const DirectedGraph& g);

// Minimum hop counts by breadth-first search from every source. Diagonal is 0,
// unreachable pairs carry HopCount::unreachable().
HopMatrix path_matrix(const DirectedGraph& g);

// P - A elementwise; unreachable - a stays unreachable.
HopMatrix external_matrix(const HopMatrix& path, const BinaryMatrix& adjacency);

struct StructureMatrices {
  BinaryMatrix adjacency;
  HopMatrix path;
  HopMatrix external;
  BinaryMatrix path_binary;
  BinaryMatrix external_binary;
};

StructureMatrices structure_matrices(const DirectedGraph& g);

bool strongly_connected(const DirectedGraph& g);
// Same predicate over the support of a square matrix (entry > 0 means an arc).
bool strongly_connected(const BinaryMatrix& adjacency);

// gcd of all directed cycle lengths. Throws NotStronglyConnected.
std::size_t period(const DirectedGraph& g);

}  // namespace idealflow
