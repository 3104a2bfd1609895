#include "idealflow/ideal_flow.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace idealflow {

TransitionMatrix TransitionMatrix::from_adjacency(const BinaryMatrix& adjacency) {
  if (!adjacency.is_square()) throw Error(ErrorKind::kNotSquare, "transition_from_adjacency");
  const std::size_t n = adjacency.rows();
  auto s = RealMatrix::square(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t degree = 0;
    for (std::size_t j = 0; j < n; ++j) degree += adjacency(i, j);
    if (degree == 0) throw Error(ErrorKind::kSinkNode, "node index " + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (adjacency(i, j) != 0) s(i, j) = 1.0 / static_cast<double>(degree);
    }
  }
  return TransitionMatrix(std::move(s));
}

double stationary_residual(std::span<const double> pi, const TransitionMatrix& s) {
  const std::size_t n = s.size();
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double flow_in = 0.0;
    for (std::size_t i = 0; i < n; ++i) flow_in += pi[i] * s(i, j);
    worst = std::max(worst, std::abs(flow_in - pi[j]));
  }
  return worst;
}

namespace {

void require_irreducible(const TransitionMatrix& s) {
  if (!strongly_connected(binarize(s.matrix()))) {
    throw Error(ErrorKind::kNotStronglyConnected,
                "stationary distribution needs a strongly connected graph");
  }
}

void normalize(std::vector<double>& v) {
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= total;
}

}  // namespace

StationaryDistribution stationary_by_linear_solve(const TransitionMatrix& s) {
  require_irreducible(s);
  const auto n = static_cast<Eigen::Index>(s.size());
  // (S^T - I) pi = 0 with the last balance row swapped for sum(pi) = 1.
  Eigen::MatrixXd system(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      system(i, j) = s(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) - (i == j ? 1.0 : 0.0);
  system.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  const Eigen::VectorXd solution = system.partialPivLu().solve(rhs);

  StationaryDistribution out;
  out.probabilities.assign(solution.data(), solution.data() + n);
  for (double& p : out.probabilities) p = std::max(p, 0.0);
  normalize(out.probabilities);
  out.residual = stationary_residual(out.probabilities, s);
  if (!(out.residual <= kStationaryResidualTol)) {
    throw Error(ErrorKind::kConvergenceFailure,
                "linear solve residual " + std::to_string(out.residual));
  }
  return out;
}

StationaryDistribution stationary_by_power_iteration(const TransitionMatrix& s,
                                                     std::size_t max_iterations) {
  require_irreducible(s);
  const std::size_t n = s.size();
  std::vector<std::vector<std::pair<std::size_t, double>>> out_links(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (s(i, j) > 0.0) out_links[i].emplace_back(j, s(i, j));

  std::vector<double> pi(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [j, p] : out_links[i]) next[j] += pi[i] * p;
    residual = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      residual = std::max(residual, std::abs(next[j] - pi[j]));
      next[j] = 0.5 * (pi[j] + next[j]);
    }
    pi.swap(next);
    // Stop well inside the contract so the final residual check has margin.
    if (residual <= 0.01 * kStationaryResidualTol) break;
  }
  normalize(pi);
  StationaryDistribution out{std::move(pi), 0.0};
  out.residual = stationary_residual(out.probabilities, s);
  if (!(out.residual <= kStationaryResidualTol)) {
    throw Error(ErrorKind::kConvergenceFailure,
                "power iteration residual " + std::to_string(out.residual));
  }
  return out;
}

StationaryDistribution stationary_distribution(const TransitionMatrix& s) {
  return s.size() <= kDirectSolveLimit ? stationary_by_linear_solve(s)
                                       : stationary_by_power_iteration(s);
}

std::string to_string(ScaleMode mode) {
  return mode == ScaleMode::kProbability ? "probability" : "min-normalized";
}

ScaleMode parse_scale_mode(const std::string& text) {
  if (text == "probability" || text == "prob") return ScaleMode::kProbability;
  if (text == "min-normalized" || text == "min") return ScaleMode::kMinNormalized;
  throw Error(ErrorKind::kInvalidArgument, "unknown scale mode '" + text + "'");
}

RealMatrix min_normalize(const RealMatrix& m) {
  double smallest = std::numeric_limits<double>::infinity();
  for (double x : m.data())
    if (x != 0.0) smallest = std::min(smallest, x);
  if (!std::isfinite(smallest)) throw Error(ErrorKind::kAllZero, "no nonzero entry to normalize by");
  RealMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j) / smallest;
  return out;
}

IdealFlowMatrix ideal_flow(const StationaryDistribution& pi, const TransitionMatrix& s,
                           ScaleMode mode) {
  const std::size_t n = s.size();
  if (pi.probabilities.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch, "stationary vector and transition matrix differ");
  }
  auto f = RealMatrix::square(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f(i, j) = pi.probabilities[i] * s(i, j);
  if (mode == ScaleMode::kMinNormalized) f = min_normalize(f);
  return {std::move(f), mode};
}

IdealFlowMatrix to_probability_scale(const IdealFlowMatrix& f) {
  if (f.mode == ScaleMode::kProbability) return f;
  const double total = std::accumulate(f.flow.data().begin(), f.flow.data().end(), 0.0);
  if (total == 0.0) throw Error(ErrorKind::kAllZero, "cannot rescale an all-zero flow");
  RealMatrix out = f.flow;
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) /= total;
  return {std::move(out), ScaleMode::kProbability};
}

double entropy(std::span<const double> p) {
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw Error(ErrorKind::kNotNormalized, "negative probability");
    total += x;
  }
  if (!(std::abs(total - 1.0) <= 1e-9)) {
    throw Error(ErrorKind::kNotNormalized, "probabilities sum to " + std::to_string(total));
  }
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

std::string to_string(IdealFlowClass c) {
  switch (c) {
    case IdealFlowClass::kNotIdeal: return "not-ideal";
    case IdealFlowClass::kGeneralizedIdeal: return "generalized-ideal";
    case IdealFlowClass::kStandardIdeal: return "standard-ideal";
  }
  return "not-ideal";
}

Classification classify_ideal_flow(const RealMatrix& m, double tolerance) {
  if (!m.is_square()) throw Error(ErrorKind::kNotSquare, "classify_ideal_flow");
  const std::size_t n = m.rows();
  Classification c;
  c.degenerate = std::all_of(m.data().begin(), m.data().end(), [](double x) { return x == 0.0; });

  auto fail = [&c](int property, std::string detail) {
    // Properties 1-3 define the generalized class; only 4 separates standard.
    c.kind = property == 4 ? IdealFlowClass::kGeneralizedIdeal : IdealFlowClass::kNotIdeal;
    c.first_violated = property;
    c.detail = std::move(detail);
    return c;
  };
  auto cell = [](std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(m(i, j) >= 0.0)) return fail(1, "negative entry at " + cell(i, j));
  for (std::size_t i = 0; i < n; ++i)
    if (m(i, i) != 0.0) return fail(2, "nonzero diagonal at " + cell(i, i));
  const auto rows = row_sums(m);
  const auto cols = col_sums(m);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(std::abs(rows[i] - cols[i]) <= tolerance)) {
      return fail(3, "row sum " + std::to_string(rows[i]) + " != column sum " +
                         std::to_string(cols[i]) + " at node " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<double> level;
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j) == 0.0) continue;
      if (!level) {
        level = m(i, j);
      } else if (!(std::abs(m(i, j) - *level) <= tolerance)) {
        return fail(4, "unequal outflow in row " + std::to_string(i));
      }
    }
  }
  c.kind = IdealFlowClass::kStandardIdeal;
  // The all-zero matrix passes 1-4 only vacuously; report it as generalized.
  if (c.degenerate) {
    c.kind = IdealFlowClass::kGeneralizedIdeal;
    c.detail = "degenerate: all entries are zero";
  }
  return c;
}

IdealFlowAnalysis analyze_ideal_flow(const DirectedGraph& g, ScaleMode mode, double tolerance) {
  if (!strongly_connected(g)) {
    throw Error(ErrorKind::kNotStronglyConnected,
                "ideal flow needs a strongly connected graph");
  }
  auto transition = TransitionMatrix::from_adjacency(adjacency_matrix(g));
  auto stationary = stationary_distribution(transition);
  auto flow = ideal_flow(stationary, transition, mode);
  auto classification = classify_ideal_flow(flow.flow, tolerance);
  const std::size_t p = period(g);
  std::optional<std::string> warning;
  if (p > 1) {
    warning = "graph is periodic (period " + std::to_string(p) +
              "); a random walk converges only in time average";
  }
  return {std::move(transition), std::move(stationary), std::move(flow),
          std::move(classification), p, std::move(warning)};
}

}  // namespace idealflow
