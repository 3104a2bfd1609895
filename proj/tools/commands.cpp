#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <optional>
#include <sstream>

#include "idealflow/graph.hpp"
#include "idealflow/ideal_flow.hpp"
#include "idealflow/io.hpp"
#include "idealflow/random_walk.hpp"
#include "idealflow/relations.hpp"
#include "idealflow/trajectory.hpp"

namespace idealflow::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

enum class Format { kCsv, kJson };

struct Common {
  std::string out_dir = ".";
  std::string format = "csv";
  int verbosity = 0;

  Format fmt() const { return format == "json" ? Format::kJson : Format::kCsv; }
  std::string path(const std::string& name) const { return (fs::path(out_dir) / name).string(); }
};

struct Context {
  const Common& common;
  std::ostream& out;
  std::ostream& err;

  void note(const std::string& msg) const { err << msg << "\n"; }
  void debug(const std::string& msg) const {
    if (common.verbosity > 0) err << msg << "\n";
  }
};

template <typename M>
void emit_matrix(const Context& ctx, const std::string& stem, const io::Labels& labels, const M& m) {
  if (ctx.common.fmt() == Format::kJson) {
    io::write_file(ctx.common.path(stem + ".json"), io::matrix_json(labels, m).dump(2) + "\n");
  } else {
    io::write_file(ctx.common.path(stem + ".csv"), io::matrix_csv(labels, m));
  }
  ctx.debug("wrote " + stem);
}

void emit_json(const Context& ctx, const std::string& name, const json& j) {
  io::write_file(ctx.common.path(name), j.dump(2) + "\n");
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

// --- matrices ---------------------------------------------------------------

int cmd_matrices(const Context& ctx, const std::string& graph_file) {
  const auto g = load_edge_list(graph_file);
  const auto m = structure_matrices(g);
  const auto& labels = g.labels();
  emit_matrix(ctx, "A", labels, m.adjacency);
  emit_matrix(ctx, "P", labels, m.path);
  emit_matrix(ctx, "E", labels, m.external);
  emit_matrix(ctx, "Phat", labels, m.path_binary);
  emit_matrix(ctx, "Ehat", labels, m.external_binary);
  const bool connected = strongly_connected(g);
  ctx.out << "nodes=" << g.node_count() << " edges=" << g.edge_count()
          << " strongly_connected=" << bool_text(connected)
          << " period=" << (connected ? std::to_string(period(g)) : std::string("n/a")) << "\n";
  return kSuccess;
}

// --- ideal ------------------------------------------------------------------

json classification_json(const Classification& c) {
  json j{{"class", to_string(c.kind)}, {"degenerate", c.degenerate}, {"detail", c.detail}};
  j["first_violated_property"] = c.first_violated ? json(*c.first_violated) : json(nullptr);
  return j;
}

int cmd_ideal(const Context& ctx, const std::string& graph_file, const std::string& mode_text,
              double tolerance) {
  const auto mode = parse_scale_mode(mode_text);
  const auto g = load_edge_list(graph_file);
  const auto analysis = analyze_ideal_flow(g, mode, tolerance);
  const auto& labels = g.labels();

  if (ctx.common.fmt() == Format::kJson) {
    emit_json(ctx, "ideal_flow.json", io::ideal_flow_json(labels, analysis.flow));
  } else {
    io::write_file(ctx.common.path("ideal_flow.csv"), io::matrix_csv(labels, analysis.flow.flow));
  }
  io::write_file(ctx.common.path("pi.csv"), io::vector_csv(labels, analysis.stationary.probabilities));

  std::vector<double> row_entropy;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    std::vector<double> row(g.node_count());
    for (std::size_t j = 0; j < g.node_count(); ++j) row[j] = analysis.transition(i, j);
    row_entropy.push_back(entropy(row));
  }
  const auto premagic = verify_premagic(analysis.flow.flow, tolerance);
  json report{{"nodes", labels},
              {"scale_mode", to_string(mode)},
              {"tolerance", tolerance},
              {"period", analysis.period},
              {"stationary_residual", analysis.stationary.residual},
              {"stationary_entropy_bits", entropy(analysis.stationary.probabilities)},
              {"transition_row_entropy_bits", row_entropy},
              {"classification", classification_json(analysis.classification)},
              {"premagic", io::report_json(labels, premagic)}};
  report["warning"] = analysis.warning ? json(*analysis.warning) : json(nullptr);
  emit_json(ctx, "report.json", report);

  if (analysis.warning) ctx.note("warning: " + *analysis.warning);
  ctx.out << "classification=" << to_string(analysis.classification.kind)
          << " period=" << analysis.period << "\n";
  return kSuccess;
}

// --- simulate ---------------------------------------------------------------

int cmd_simulate(const Context& ctx, const std::string& graph_file, const SimConfig& cfg) {
  const auto g = load_edge_list(graph_file);
  const auto& labels = g.labels();

  std::optional<IdealFlowMatrix> target;
  if (strongly_connected(g)) {
    target = analyze_ideal_flow(g, ScaleMode::kProbability).flow;
  } else {
    ctx.note("notice: graph is not strongly connected; convergence target undefined");
  }

  ConvergenceRun result;
  if (target) {
    result = simulate_with_convergence(g, cfg, *target);
  } else {
    result.simulation = simulate(g, cfg);
  }
  const auto& aggregate = result.simulation.aggregate;

  emit_matrix(ctx, "R", labels, aggregate.counts);
  emit_matrix(ctx, "relative_flow", labels, relative_flow(aggregate));
  io::write_file(ctx.common.path("convergence.csv"), io::convergence_csv(result.series));
  if (result.simulation.trajectories) {
    io::write_file(ctx.common.path("trajectories.txt"),
                   format_trajectories(*result.simulation.trajectories, g));
  }

  json report{{"nodes", labels},
              {"agents", cfg.agents},
              {"steps", cfg.steps},
              {"seed", cfg.seed},
              {"warmup", cfg.warmup},
              {"total_steps", aggregate.total_steps}};
  report["final_linf_distance"] =
      result.series.points.empty() ? json(nullptr) : json(result.series.points.back().linf_distance);
  emit_json(ctx, "report.json", report);

  ctx.out << "total_steps=" << aggregate.total_steps;
  if (!result.series.points.empty()) {
    ctx.out << " final_linf=" << io::format_real(result.series.points.back().linf_distance);
  }
  ctx.out << "\n";
  return kSuccess;
}

// --- analyze ----------------------------------------------------------------

int cmd_analyze(const Context& ctx, const std::string& graph_file, const std::string& traj_file) {
  const auto g = load_edge_list(graph_file);
  const auto trajectories = load_trajectories(traj_file, g);
  const auto sets = utilization_sets(trajectories, g);
  const auto& labels = g.labels();

  const std::vector<std::pair<std::string, const SetMatrix*>> named{
      {"F", &sets.flow}, {"D", &sets.od}, {"L", &sets.indirect},
      {"T", &sets.alternative}, {"TC", &sets.substitute}};
  for (const auto& [name, m] : named) {
    emit_json(ctx, name + "_set.json", io::set_matrix_json(labels, *m));
    const auto counts = count(*m);
    emit_matrix(ctx, name, labels, counts);
    emit_matrix(ctx, name + "_bin", labels, binarize(counts));
  }
  ctx.out << "trajectories=" << trajectories.size() << "\n";
  return kSuccess;
}

// --- verify -----------------------------------------------------------------

// Test hook: `<matrix>,<row label>,<col label>,<value>` overwrites one count
// cell before verification.
void apply_tamper(const std::string& spec, const DirectedGraph& g, UtilizationCounts& counts) {
  std::vector<std::string> parts;
  std::stringstream in(spec);
  std::string part;
  while (std::getline(in, part, ',')) parts.push_back(part);
  if (parts.size() != 4) throw Error(ErrorKind::kInvalidArgument, "tamper spec must be M,row,col,value");
  IntMatrix* target = nullptr;
  if (parts[0] == "F") target = &counts.flow;
  else if (parts[0] == "D") target = &counts.od;
  else if (parts[0] == "L") target = &counts.indirect;
  else if (parts[0] == "T") target = &counts.alternative;
  else throw Error(ErrorKind::kInvalidArgument, "tamper matrix must be F, D, L or T");
  const auto row = g.index_of(parts[1]);
  const auto col = g.index_of(parts[2]);
  if (!row || !col) throw Error(ErrorKind::kUnknownNode, "tamper cell " + parts[1] + "," + parts[2]);
  (*target)(*row, *col) = std::stoll(parts[3]);
}

int cmd_verify(const Context& ctx, const std::string& graph_file, const std::string& traj_file,
               double tolerance, const std::string& tamper) {
  const auto g = load_edge_list(graph_file);
  const auto trajectories = load_trajectories(traj_file, g);
  auto counts = count(utilization_sets(trajectories, g));
  if (!tamper.empty()) apply_tamper(tamper, g, counts);
  const auto structure = structure_matrices(g);
  const auto& labels = g.labels();

  bool all_hold = true;
  auto line = [&](const VerificationReport& r) {
    all_hold = all_hold && r.holds;
    ctx.out << (r.holds ? "PASS " : "FAIL ") << r.identity;
    if (!r.holds) ctx.out << " (" << r.defect_count << " defect cells)";
    ctx.out << "\n";
    for (const auto& d : r.defects) {
      ctx.debug("  defect at (" + labels[d.row] + "," + labels[d.col] + "): " +
                io::format_real(d.lhs) + " vs " + io::format_real(d.rhs));
    }
  };

  const auto inequality = verify_inequality(counts.flow, structure.adjacency, counts.od);
  line(inequality);
  const auto identities = verify_flow_identities({counts.flow, counts.od, counts.indirect, counts.alternative,
                                        structure.adjacency, structure.path_binary,
                                        structure.external_binary});
  json identity_json = json::array();
  for (const auto& r : identities) {
    line(r);
    identity_json.push_back(io::report_json(labels, r));
  }

  json report{{"nodes", labels},
              {"trajectories", trajectories.size()},
              {"inequality", io::report_json(labels, inequality)},
              {"identities", identity_json}};
  if (strongly_connected(g)) {
    const auto analysis = analyze_ideal_flow(g, ScaleMode::kMinNormalized, tolerance);
    const auto premagic = verify_premagic(analysis.flow.flow, tolerance);
    line(premagic);
    report["premagic"] = io::report_json(labels, premagic);
  } else {
    const std::string why = "skipped: graph is not strongly connected, ideal flow undefined";
    ctx.note("notice: premagic check " + why);
    ctx.out << "SKIP premagic\n";
    report["premagic"] = {{"identity", "premagic"}, {"skipped", why}};
  }
  report["all_hold"] = all_hold;
  emit_json(ctx, "report.json", report);
  return all_hold ? kSuccess : kVerificationFailed;
}

int exit_code_for(const Error& e) {
  return e.kind() == ErrorKind::kNotStronglyConnected ? kNotStronglyConnected : kInputError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structure, utilization and ideal-flow matrices of directed networks", "idealflow"};
  app.require_subcommand(1);
  Common common;
  app.add_option("-o,--out", common.out_dir, "Output directory (created if missing)");
  app.add_option("-f,--format", common.format, "Matrix file format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("-v,--verbose", common.verbosity, "Extra diagnostics on stderr");

  std::string graph_file;
  std::string traj_file;
  double tolerance = kMatrixPropertyTol;

  auto* matrices = app.add_subcommand("matrices", "Write A, P, E, Phat, Ehat");
  matrices->add_option("graph", graph_file, "Edge-list file")->required();

  std::string mode = "min-normalized";
  auto* ideal = app.add_subcommand("ideal", "Analytic ideal flow of a strongly connected graph");
  ideal->add_option("graph", graph_file, "Edge-list file")->required();
  ideal->add_option("--mode", mode, "Scaling of the flow matrix")
      ->check(CLI::IsMember({"min-normalized", "min", "probability", "prob"}));
  ideal->add_option("--tol", tolerance, "Tolerance for matrix property checks")
      ->check(CLI::NonNegativeNumber);

  SimConfig cfg;
  bool log_spacing = false;
  auto* sim = app.add_subcommand("simulate", "Multi-agent random walk and convergence series");
  sim->add_option("graph", graph_file, "Edge-list file")->required();
  sim->add_option("--agents", cfg.agents, "Number of agents N")->default_val(100);
  sim->add_option("--steps", cfg.steps, "Steps per agent T")->default_val(10000);
  sim->add_option("--seed", cfg.seed, "Random seed")->default_val(42);
  sim->add_option("--checkpoints", cfg.checkpoints, "Convergence sample count")->default_val(10);
  sim->add_option("--warmup", cfg.warmup, "Uncounted steps per agent before counting");
  sim->add_option("--threads", cfg.threads, "Worker threads (output is unaffected)")->default_val(1);
  sim->add_flag("--record", cfg.record_trajectories, "Write trajectories.txt");
  sim->add_flag("--log-checkpoints", log_spacing, "Space checkpoints logarithmically");

  auto* analyze = app.add_subcommand("analyze", "Set, count and binary utilization matrices");
  analyze->add_option("graph", graph_file, "Edge-list file")->required();
  analyze->add_option("trajectories", traj_file, "Trajectory file")->required();

  std::string tamper;
  auto* verify = app.add_subcommand("verify", "Check the utilization identities");
  verify->add_option("graph", graph_file, "Edge-list file")->required();
  verify->add_option("trajectories", traj_file, "Trajectory file")->required();
  verify->add_option("--tol", tolerance, "Premagic tolerance for the ideal flow")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--tamper", tamper, "Overwrite one count cell (testing)")->group("");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  const Context ctx{common, out, err};
  try {
    if (!matrices->parsed() && !ideal->parsed() && !sim->parsed() && !analyze->parsed() &&
        !verify->parsed()) {
      return kInputError;
    }
    fs::create_directories(common.out_dir);
    if (matrices->parsed()) return cmd_matrices(ctx, graph_file);
    if (ideal->parsed()) return cmd_ideal(ctx, graph_file, mode, tolerance);
    if (sim->parsed()) {
      cfg.spacing = log_spacing ? CheckpointSpacing::kLogarithmic : CheckpointSpacing::kLinear;
      // The default sample count shrinks for short runs; an explicit one is validated.
      if (sim->count("--checkpoints") == 0) cfg.checkpoints = std::min(cfg.checkpoints, cfg.steps);
      return cmd_simulate(ctx, graph_file, cfg);
    }
    if (analyze->parsed()) return cmd_analyze(ctx, graph_file, traj_file);
    return cmd_verify(ctx, graph_file, traj_file, tolerance, tamper);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace idealflow::cli
