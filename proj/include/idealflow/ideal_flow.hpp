#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "idealflow/graph.hpp"
#include "idealflow/matrix.hpp"

namespace idealflow {

// Row-stochastic transition matrix of the uniform random walk: each node picks
// one of its out-links with equal probability.
class TransitionMatrix {
 public:
  // Throws SinkNode for a row without outgoing links.
  static TransitionMatrix from_adjacency(const BinaryMatrix& adjacency);

  const RealMatrix& matrix() const noexcept { return s_; }
  std::size_t size() const noexcept { return s_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return s_(i, j); }

 private:
  explicit TransitionMatrix(RealMatrix s) : s_(std::move(s)) {}
  RealMatrix s_;
};

struct StationaryDistribution {
  std::vector<double> probabilities;
  double residual = 0.0;  // ||pi S - pi||_inf at return
};

inline constexpr double kStationaryResidualTol = 1e-10;
inline constexpr double kMatrixPropertyTol = 1e-9;
// Largest n solved densely; above it the iterative route is used.
inline constexpr std::size_t kDirectSolveLimit = 500;

// ||pi S - pi||_inf.
double stationary_residual(std::span<const double> pi, const TransitionMatrix& s);

// Dispatches on size: dense solve up to kDirectSolveLimit, power iteration
// beyond. Throws NotStronglyConnected or ConvergenceFailure.
StationaryDistribution stationary_distribution(const TransitionMatrix& s);

// Balance equations with one row replaced by sum(pi) = 1, solved by LU.
StationaryDistribution stationary_by_linear_solve(const TransitionMatrix& s);

// Iterates pi <- (pi + pi S) / 2 from the uniform vector. The averaging keeps
// periodic chains from oscillating.
StationaryDistribution stationary_by_power_iteration(const TransitionMatrix& s,
                                                     std::size_t max_iterations = 1'000'000);

enum class ScaleMode { kProbability, kMinNormalized };

std::string to_string(ScaleMode mode);
ScaleMode parse_scale_mode(const std::string& text);

struct IdealFlowMatrix {
  RealMatrix flow;
  ScaleMode mode = ScaleMode::kProbability;
};

// F[i][j] = pi[i] * S[i][j]; min-normalized mode divides by the smallest
// nonzero entry.
IdealFlowMatrix ideal_flow(const StationaryDistribution& pi, const TransitionMatrix& s,
                           ScaleMode mode);

// Same matrix rescaled so entries sum to 1.
IdealFlowMatrix to_probability_scale(const IdealFlowMatrix& f);
// Divides by the minimum nonzero entry. Throws AllZero.
RealMatrix min_normalize(const RealMatrix& m);

// Base-2 Shannon entropy, 0 log 0 = 0. Throws NotNormalized unless p >= 0 and
// sums to 1 within 1e-9.
double entropy(std::span<const double> p);

enum class IdealFlowClass { kNotIdeal, kGeneralizedIdeal, kStandardIdeal };

std::string to_string(IdealFlowClass c);

struct Classification {
  IdealFlowClass kind = IdealFlowClass::kNotIdeal;
  // 1-based number of the first violated property (1 nonnegative, 2 zero
  // diagonal, 3 premagic, 4 equal outflow), or nullopt when all four hold.
  std::optional<int> first_violated;
  std::string detail;
  bool degenerate = false;  // all-zero matrix
};

Classification classify_ideal_flow(const RealMatrix& m, double tolerance = kMatrixPropertyTol);

// Everything needed to report the analytic ideal flow of one graph.
struct IdealFlowAnalysis {
  TransitionMatrix transition;
  StationaryDistribution stationary;
  IdealFlowMatrix flow;
  Classification classification;
  std::size_t period = 1;
  std::optional<std::string> warning;  // set when period > 1
};

// Throws NotStronglyConnected (including graphs with sink nodes).
IdealFlowAnalysis analyze_ideal_flow(const DirectedGraph& g, ScaleMode mode,
                                     double tolerance = kMatrixPropertyTol);

}  // namespace idealflow
