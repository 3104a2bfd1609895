#include "idealflow/random_walk.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <thread>

namespace idealflow {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Agent {
  std::mt19937_64 rng;
  NodeIndex position = 0;
  std::vector<NodeIndex> path;  // only when recording
};

// Holds every agent's state so a run can be advanced in segments; each agent
// only ever reads its own stream, which makes segmenting and threading
// invisible in the output.
class Walkers {
 public:
  Walkers(const DirectedGraph& g, const SimConfig& cfg) : g_(g), cfg_(cfg) {
    const auto n = static_cast<std::uint64_t>(g.node_count());
    agents_.reserve(cfg.agents);
    for (std::uint64_t a = 0; a < cfg.agents; ++a) {
      Agent agent;
      agent.rng = agent_stream(cfg.seed, a);
      agent.position = static_cast<NodeIndex>(uniform_below(agent.rng, n));
      for (std::uint64_t w = 0; w < cfg.warmup; ++w) agent.position = next(agent);
      if (cfg.record_trajectories) agent.path.push_back(agent.position);
      agents_.push_back(std::move(agent));
    }
    counts_ = IntMatrix::square(g.node_count());
  }

  void advance(std::uint64_t steps) {
    const std::size_t workers = std::clamp<std::size_t>(cfg_.threads, 1, agents_.size());
    if (workers == 1) {
      walk_range(0, agents_.size(), steps, counts_);
      total_ += steps * agents_.size();
      return;
    }
    std::vector<IntMatrix> partial(workers, IntMatrix::square(g_.node_count()));
    {
      std::vector<std::jthread> pool;
      const std::size_t chunk = (agents_.size() + workers - 1) / workers;
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(agents_.size(), w * chunk);
        const std::size_t end = std::min(agents_.size(), begin + chunk);
        pool.emplace_back([this, begin, end, steps, &partial, w] {
          walk_range(begin, end, steps, partial[w]);
        });
      }
    }
    for (const auto& p : partial) counts_ = counts_ + p;
    total_ += steps * agents_.size();
  }

  const IntMatrix& counts() const noexcept { return counts_; }
  std::uint64_t total() const noexcept { return total_; }

  TrajectorySet trajectories() const {
    std::vector<Trajectory> items;
    items.reserve(agents_.size());
    for (std::size_t a = 0; a < agents_.size(); ++a) {
      items.push_back({static_cast<TrajectoryId>(a + 1), agents_[a].path});
    }
    return TrajectorySet(g_, std::move(items));
  }

 private:
  NodeIndex next(Agent& agent) const {
    const auto& succ = g_.successors(agent.position);
    return succ[uniform_below(agent.rng, succ.size())];
  }

  void walk_range(std::size_t begin, std::size_t end, std::uint64_t steps, IntMatrix& counts) {
    for (std::size_t a = begin; a < end; ++a) {
      Agent& agent = agents_[a];
      for (std::uint64_t t = 0; t < steps; ++t) {
        const NodeIndex to = next(agent);
        ++counts(agent.position, to);
        agent.position = to;
        if (cfg_.record_trajectories) agent.path.push_back(to);
      }
    }
  }

  const DirectedGraph& g_;
  const SimConfig& cfg_;
  std::vector<Agent> agents_;
  IntMatrix counts_;
  std::uint64_t total_ = 0;
};

void require_no_sinks(const DirectedGraph& g) {
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    if (g.out_degree(u) == 0) throw Error(ErrorKind::kSinkNode, g.label(u));
  }
}

ConvergenceRun run(const DirectedGraph& g, const SimConfig& cfg, const IdealFlowMatrix* target) {
  validate(cfg);
  require_no_sinks(g);
  std::optional<RealMatrix> reference;
  if (target != nullptr) {
    if (target->flow.rows() != g.node_count() || !target->flow.is_square()) {
      throw Error(ErrorKind::kDimensionMismatch, "target flow does not match the graph");
    }
    reference = to_probability_scale(*target).flow;
  }

  Walkers walkers(g, cfg);
  ConvergenceRun out;
  std::uint64_t done = 0;
  for (std::uint64_t mark : checkpoint_steps(cfg)) {
    walkers.advance(mark - done);
    done = mark;
    if (reference) {
      CountAggregate snapshot{walkers.counts(), walkers.total()};
      out.series.points.push_back({walkers.total(), linf_distance(probability_flow(snapshot), *reference)});
    }
  }
  out.simulation.aggregate = {walkers.counts(), walkers.total()};
  if (cfg.record_trajectories) out.simulation.trajectories = walkers.trajectories();
  return out;
}

}  // namespace

void validate(const SimConfig& cfg) {
  if (cfg.agents == 0) throw Error(ErrorKind::kZeroAgents, "at least one agent is required");
  if (cfg.steps == 0) throw Error(ErrorKind::kInvalidArgument, "steps must be >= 1");
  if (cfg.checkpoints == 0 || cfg.checkpoints > cfg.steps) {
    throw Error(ErrorKind::kInvalidArgument, "checkpoints must be in [1, steps]");
  }
}

std::vector<std::uint64_t> checkpoint_steps(const SimConfig& cfg) {
  validate(cfg);
  const std::uint64_t k = cfg.checkpoints;
  std::vector<std::uint64_t> marks;
  marks.reserve(k);
  for (std::uint64_t i = 1; i <= k; ++i) {
    std::uint64_t mark = 0;
    if (cfg.spacing == CheckpointSpacing::kLinear) {
      // floor(steps * i / k) without overflowing the product.
      mark = cfg.steps / k * i + cfg.steps % k * i / k;
    } else {
      const double exponent = static_cast<double>(i) / static_cast<double>(k);
      mark = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(cfg.steps), exponent)));
    }
    mark = std::clamp<std::uint64_t>(mark, 1, cfg.steps);
    if (!marks.empty() && mark <= marks.back()) mark = marks.back() + 1;
    marks.push_back(mark);
  }
  // Bumped marks can overshoot near the end; pin the tail back under steps.
  marks.back() = cfg.steps;
  for (std::size_t i = marks.size() - 1; i > 0; --i) {
    if (marks[i - 1] >= marks[i]) marks[i - 1] = marks[i] - 1;
  }
  return marks;
}

std::mt19937_64 agent_stream(std::uint64_t seed, std::uint64_t agent) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(agent + 0x632be59bd9b4e019ULL)));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  // Reject the low residue so every value in [0, bound) is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

SimulationResult simulate(const DirectedGraph& g, const SimConfig& cfg) {
  return run(g, cfg, nullptr).simulation;
}

RealMatrix relative_flow(const CountAggregate& r) { return min_normalize(to_real(r.counts)); }

RealMatrix probability_flow(const CountAggregate& r) {
  const auto total = std::accumulate(r.counts.data().begin(), r.counts.data().end(), std::int64_t{0});
  if (total == 0) throw Error(ErrorKind::kAllZero, "no traversals recorded");
  RealMatrix out = to_real(r.counts);
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) /= static_cast<double>(total);
  return out;
}

double linf_distance(const RealMatrix& x, const RealMatrix& y) {
  require_same_shape(x, y, "linf_distance");
  double worst = 0.0;
  for (std::size_t k = 0; k < x.data().size(); ++k) {
    worst = std::max(worst, std::abs(x.data()[k] - y.data()[k]));
  }
  return worst;
}

ConvergenceRun simulate_with_convergence(const DirectedGraph& g, const SimConfig& cfg,
                                         const IdealFlowMatrix& target) {
  return run(g, cfg, &target);
}

ConvergenceSeries convergence_study(const DirectedGraph& g, const SimConfig& cfg,
                                    const IdealFlowMatrix& target) {
  return run(g, cfg, &target).series;
}

}  // namespace idealflow
