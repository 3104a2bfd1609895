#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "idealflow/graph.hpp"
#include "idealflow/matrix.hpp"

namespace idealflow {

using TrajectoryId = std::uint64_t;

struct Trajectory {
  TrajectoryId id = 0;
  std::vector<NodeIndex> path;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

// Trajectories checked against one graph: ids unique, length >= 2, every
// consecutive pair an edge.
class TrajectorySet {
 public:
  TrajectorySet() = default;
  // Throws TrajectoryError listing every invalid trajectory.
  TrajectorySet(const DirectedGraph& g, std::vector<Trajectory> trajectories);

  const std::vector<Trajectory>& trajectories() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }

 private:
  std::vector<Trajectory> items_;
};

struct TrajectoryIssue {
  std::size_t line = 0;  // 0 when not from a file
  ErrorKind kind = ErrorKind::kParse;
  std::string detail;
};

class TrajectoryError : public Error {
 public:
  explicit TrajectoryError(std::vector<TrajectoryIssue> issues);
  const std::vector<TrajectoryIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<TrajectoryIssue> issues_;
};

// `<id>: <node> <node> ...` per line; `#` comments and blank lines skipped.
TrajectorySet parse_trajectories(std::string_view text, const DirectedGraph& g);
TrajectorySet load_trajectories(const std::string& path, const DirectedGraph& g);
std::string format_trajectories(const TrajectorySet& set, const DirectedGraph& g);

using IdSet = std::set<TrajectoryId>;
using SetMatrix = Matrix<IdSet>;

// Ids whose path contains the consecutive pair (i, j).
SetMatrix flow_set(const TrajectorySet& set, std::size_t node_count);
// Ids visiting s strictly before t, s != t.
SetMatrix od_set(const TrajectorySet& set, std::size_t node_count);
// Ids visiting s strictly before t with at least one position between them.
SetMatrix indirect_set(const TrajectorySet& set, std::size_t node_count);

struct IndirectPartition {
  SetMatrix alternative;  // direct link s->t exists
  SetMatrix substitute;   // no direct link s->t
};

IndirectPartition partition_indirect(const SetMatrix& indirect, const BinaryMatrix& adjacency);

IntMatrix count(const SetMatrix& sets);

// Cellwise union; the merge step for per-chunk scans.
SetMatrix merge(const SetMatrix& x, const SetMatrix& y);

// All five utilization matrices at the set level.
struct UtilizationSets {
  SetMatrix flow;
  SetMatrix od;
  SetMatrix indirect;
  SetMatrix alternative;
  SetMatrix substitute;
};

UtilizationSets utilization_sets(const TrajectorySet& set, const DirectedGraph& g);

struct UtilizationCounts {
  IntMatrix flow;
  IntMatrix od;
  IntMatrix indirect;
  IntMatrix alternative;
  IntMatrix substitute;
};

UtilizationCounts count(const UtilizationSets& sets);

}  // namespace idealflow
