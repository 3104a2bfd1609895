#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "idealflow/graph.hpp"
#include "idealflow/ideal_flow.hpp"
#include "idealflow/matrix.hpp"
#include "idealflow/trajectory.hpp"

namespace idealflow {

enum class CheckpointSpacing { kLinear, kLogarithmic };

struct SimConfig {
  std::uint64_t agents = 1;
  std::uint64_t steps = 1;
  std::uint64_t seed = 0;
  std::uint64_t checkpoints = 1;
  bool record_trajectories = false;
  // Steps each agent takes before counting starts. Not part of R.
  std::uint64_t warmup = 0;
  CheckpointSpacing spacing = CheckpointSpacing::kLinear;
  // Worker threads over agents; output does not depend on this.
  unsigned threads = 1;
};

// Throws ZeroAgents or InvalidArgument.
void validate(const SimConfig& cfg);

// Per-agent step counts (strictly increasing, last == cfg.steps) at which the
// convergence series is sampled.
std::vector<std::uint64_t> checkpoint_steps(const SimConfig& cfg);

struct CountAggregate {
  IntMatrix counts;  // R: link traversals, with multiplicity
  std::uint64_t total_steps = 0;
};

struct SimulationResult {
  CountAggregate aggregate;
  std::optional<TrajectorySet> trajectories;  // ids are agent index + 1
};

// Random stream for one agent, derived from (seed, agent) only.
std::mt19937_64 agent_stream(std::uint64_t seed, std::uint64_t agent);

// Uniform integer in [0, bound) by rejection; identical on every platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

// Throws SinkNode or ZeroAgents.
SimulationResult simulate(const DirectedGraph& g, const SimConfig& cfg);

// R / min nonzero R. Throws AllZero.
RealMatrix relative_flow(const CountAggregate& r);
// R / sum R. Throws AllZero.
RealMatrix probability_flow(const CountAggregate& r);

double linf_distance(const RealMatrix& x, const RealMatrix& y);

struct ConvergencePoint {
  std::uint64_t cumulative_steps = 0;  // N * t
  double linf_distance = 0.0;
};

struct ConvergenceSeries {
  std::vector<ConvergencePoint> points;
};

struct ConvergenceRun {
  SimulationResult simulation;
  ConvergenceSeries series;
};

// One simulation that also samples the distance to `target` (rescaled to
// probabilities) at every checkpoint.
ConvergenceRun simulate_with_convergence(const DirectedGraph& g, const SimConfig& cfg,
                                         const IdealFlowMatrix& target);

ConvergenceSeries convergence_study(const DirectedGraph& g, const SimConfig& cfg,
                                    const IdealFlowMatrix& target);

}  // namespace idealflow
