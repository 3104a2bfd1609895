#include "idealflow/trajectory.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace idealflow {

namespace {

std::string describe(const std::vector<TrajectoryIssue>& issues) {
  std::string msg = std::to_string(issues.size()) + " invalid trajectory entr" +
                    (issues.size() == 1 ? "y" : "ies");
  for (const auto& issue : issues) {
    msg += "\n  ";
    if (issue.line != 0) msg += "line " + std::to_string(issue.line) + ": ";
    msg += std::string(to_string(issue.kind)) + " " + issue.detail;
  }
  return msg;
}

// Validates structure against g; returns issues instead of throwing so that
// callers can report every bad trajectory at once.
std::vector<TrajectoryIssue> validate(const DirectedGraph& g, const Trajectory& tr,
                                      std::size_t line) {
  std::vector<TrajectoryIssue> issues;
  const std::string id = std::to_string(tr.id);
  if (tr.path.size() < 2) {
    issues.push_back({line, ErrorKind::kTooShort,
                      "trajectory " + id + " has " + std::to_string(tr.path.size()) + " node(s)"});
    return issues;
  }
  for (std::size_t h = 0; h + 1 < tr.path.size(); ++h) {
    const NodeIndex u = tr.path[h];
    const NodeIndex v = tr.path[h + 1];
    if (u >= g.node_count() || v >= g.node_count()) {
      issues.push_back({line, ErrorKind::kUnknownNode, "trajectory " + id});
      return issues;
    }
    if (!g.has_edge(u, v)) {
      issues.push_back({line, ErrorKind::kNonEdgeStep,
                        "(" + g.label(u) + "," + g.label(v) + ") in trajectory " + id});
    }
  }
  return issues;
}

}  // namespace

TrajectoryError::TrajectoryError(std::vector<TrajectoryIssue> issues)
    : Error(issues.empty() ? ErrorKind::kParse : issues.front().kind, describe(issues)),
      issues_(std::move(issues)) {}

TrajectorySet::TrajectorySet(const DirectedGraph& g, std::vector<Trajectory> trajectories)
    : items_(std::move(trajectories)) {
  std::vector<TrajectoryIssue> issues;
  std::unordered_set<TrajectoryId> seen;
  for (const auto& tr : items_) {
    if (!seen.insert(tr.id).second) {
      issues.push_back({0, ErrorKind::kDuplicateId, "id " + std::to_string(tr.id)});
    }
    auto found = validate(g, tr, 0);
    issues.insert(issues.end(), found.begin(), found.end());
  }
  if (!issues.empty()) throw TrajectoryError(std::move(issues));
}

TrajectorySet parse_trajectories(std::string_view text, const DirectedGraph& g) {
  std::vector<Trajectory> items;
  std::vector<TrajectoryIssue> issues;
  std::unordered_set<TrajectoryId> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto colon = line.find(':', first);
    TrajectoryId id = 0;
    const char* id_begin = line.data() + first;
    const char* id_end = colon == std::string::npos ? id_begin : line.data() + colon;
    while (id_end > id_begin && (id_end[-1] == ' ' || id_end[-1] == '\t')) --id_end;
    const auto [ptr, ec] = std::from_chars(id_begin, id_end, id);
    if (colon == std::string::npos || ec != std::errc{} || ptr != id_end || id == 0) {
      issues.push_back({line_no, ErrorKind::kParse, "expected '<positive id>: <node> <node> ...'"});
      continue;
    }
    Trajectory tr{id, {}};
    std::istringstream nodes(line.substr(colon + 1));
    std::string label;
    bool known = true;
    while (nodes >> label) {
      if (auto idx = g.index_of(label)) {
        tr.path.push_back(*idx);
      } else {
        issues.push_back({line_no, ErrorKind::kUnknownNode,
                          label + " in trajectory " + std::to_string(id)});
        known = false;
      }
    }
    if (!seen.insert(id).second) {
      issues.push_back({line_no, ErrorKind::kDuplicateId, "id " + std::to_string(id)});
    }
    if (!known) continue;
    auto found = validate(g, tr, line_no);
    if (found.empty()) {
      items.push_back(std::move(tr));
    } else {
      issues.insert(issues.end(), found.begin(), found.end());
    }
  }
  if (!issues.empty()) throw TrajectoryError(std::move(issues));
  return TrajectorySet(g, std::move(items));
}

TrajectorySet load_trajectories(const std::string& path, const DirectedGraph& g) {
  std::ifstream file(path);
  if (!file) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_trajectories(buffer.str(), g);
}

std::string format_trajectories(const TrajectorySet& set, const DirectedGraph& g) {
  std::string out;
  for (const auto& tr : set.trajectories()) {
    out += std::to_string(tr.id) + ":";
    for (NodeIndex v : tr.path) out += " " + g.label(v);
    out += "\n";
  }
  return out;
}

SetMatrix flow_set(const TrajectorySet& set, std::size_t node_count) {
  auto m = SetMatrix::square(node_count);
  for (const auto& tr : set.trajectories()) {
    for (std::size_t h = 0; h + 1 < tr.path.size(); ++h) {
      m(tr.path[h], tr.path[h + 1]).insert(tr.id);
    }
  }
  return m;
}

SetMatrix od_set(const TrajectorySet& set, std::size_t node_count) {
  auto m = SetMatrix::square(node_count);
  for (const auto& tr : set.trajectories()) {
    const auto& path = tr.path;
    for (std::size_t p = 0; p < path.size(); ++p)
      for (std::size_t q = p + 1; q < path.size(); ++q)
        if (path[p] != path[q]) m(path[p], path[q]).insert(tr.id);
  }
  return m;
}

SetMatrix indirect_set(const TrajectorySet& set, std::size_t node_count) {
  auto m = SetMatrix::square(node_count);
  for (const auto& tr : set.trajectories()) {
    const auto& path = tr.path;
    for (std::size_t p = 0; p < path.size(); ++p)
      for (std::size_t q = p + 2; q < path.size(); ++q)
        if (path[p] != path[q]) m(path[p], path[q]).insert(tr.id);
  }
  return m;
}

IndirectPartition partition_indirect(const SetMatrix& indirect, const BinaryMatrix& adjacency) {
  if (indirect.rows() != adjacency.rows() || indirect.cols() != adjacency.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "partition_indirect: L and A differ in shape");
  }
  IndirectPartition out{SetMatrix(indirect.rows(), indirect.cols()),
                        SetMatrix(indirect.rows(), indirect.cols())};
  for (std::size_t s = 0; s < indirect.rows(); ++s) {
    for (std::size_t t = 0; t < indirect.cols(); ++t) {
      (adjacency(s, t) == 1 ? out.alternative : out.substitute)(s, t) = indirect(s, t);
    }
  }
  return out;
}

IntMatrix count(const SetMatrix& sets) {
  IntMatrix m(sets.rows(), sets.cols());
  for (std::size_t i = 0; i < sets.rows(); ++i)
    for (std::size_t j = 0; j < sets.cols(); ++j)
      m(i, j) = static_cast<std::int64_t>(sets(i, j).size());
  return m;
}

SetMatrix merge(const SetMatrix& x, const SetMatrix& y) {
  require_same_shape(x, y, "merge");
  SetMatrix out = x;
  for (std::size_t i = 0; i < y.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j) out(i, j).insert(y(i, j).begin(), y(i, j).end());
  return out;
}

UtilizationSets utilization_sets(const TrajectorySet& set, const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  UtilizationSets u;
  u.flow = flow_set(set, n);
  u.od = od_set(set, n);
  u.indirect = indirect_set(set, n);
  auto parts = partition_indirect(u.indirect, adjacency_matrix(g));
  u.alternative = std::move(parts.alternative);
  u.substitute = std::move(parts.substitute);
  return u;
}

UtilizationCounts count(const UtilizationSets& sets) {
  return {count(sets.flow), count(sets.od), count(sets.indirect), count(sets.alternative),
          count(sets.substitute)};
}

}  // namespace idealflow
