// tiethresh: build tie-decay networks, simulate SIS dynamics and estimate
// epidemic thresholds from the command line.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tiedecay/errors.hpp"
#include "tiedecay/experiment.hpp"
#include "tiedecay/ingestion.hpp"
#include "tiedecay/sis.hpp"
#include "tiedecay/threshold.hpp"
#include "tiedecay/windowed.hpp"

namespace fs = std::filesystem;
using namespace tiedecay;

namespace {

constexpr int kModuleError = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flag values kept as text and applied through the config-file keys, so both
// routes share one parser.
struct Flags {
  std::map<std::string, std::string> values;
  std::string config_file;

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { values[key] = v; }, help);
  }
};

void add_network_flags(CLI::App* app, Flags& f) {
  f.add(app, "--n", "n", "number of nodes");
  f.add(app, "--p", "p", "edge probability");
  f.add(app, "--alpha", "alpha", "decay coefficient per step");
  f.add(app, "--beta", "beta", "mean inter-event time in steps");
  f.add(app, "--dt", "dt", "step length (0 chooses it for contact files)");
  f.add(app, "--steps", "steps", "number of time steps T");
  f.add(app, "--seed", "seed", "master seed");
  f.add(app, "--input", "input", "contact file (t i j per line)");
  f.add(app, "--out", "out", "output directory");
  app->add_option("--config", f.config_file, "key = value config file");
}

void add_epidemic_flags(CLI::App* app, Flags& f) {
  f.add(app, "--lambda", "lambda", "maximum infection probability (comma list)");
  f.add(app, "--mu", "mu", "recovery probability (comma list)");
  f.add(app, "--replicates", "replicates", "runs per cell");
}

ExperimentConfig resolve(ExperimentConfig cfg, const Flags& f) {
  if (const char* env = std::getenv("TIETHRESH_OUT"); env && *env) cfg.out_dir = env;
  if (!f.config_file.empty()) {
    std::ifstream in(f.config_file);
    if (!in) throw UsageError("cannot open config file " + f.config_file);
    apply_config(cfg, in);
  }
  for (const auto& [key, value] : f.values) apply_config_value(cfg, key, value);
  cfg.validate();
  return cfg;
}

std::ofstream open_in(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw StructuralError("cannot write " + (dir / name).string());
  out.precision(17);
  return out;
}

int cmd_generate(const ExperimentConfig& cfg) {
  const auto net = build_network(cfg);
  auto events = open_in(cfg.out_dir, "events.txt");
  write_event_log(events, net.log);
  auto edges = open_in(cfg.out_dir, "backbone.csv");
  edges << "i,j\n";
  for (const auto& e : net.backbone.edges) edges << e.i << ',' << e.j << '\n';
  std::cout << "nodes " << net.log.node_count << "\nedges " << net.backbone.edges.size() << "\nevents "
            << net.log.events.size() << "\nsteps " << net.steps() << '\n';
  return 0;
}

int cmd_ingest(const ExperimentConfig& cfg) {
  std::ifstream in(cfg.input);
  if (!in) throw StructuralError("cannot open contact file " + cfg.input.string());
  const auto data = parse_contact_file(in);
  const auto plan = cfg.dt > 0.0 ? plan_with_dt(data.log, cfg.dt, cfg.max_per_bin)
                                 : choose_dt(data.log, cfg.max_per_bin);
  auto events = open_in(cfg.out_dir, "events.txt");
  write_event_log(events, data.log);
  auto map = open_in(cfg.out_dir, "node_map.txt");
  write_node_map(map, data);
  std::cout << "nodes " << data.log.node_count << "\nevents " << data.log.events.size() << "\ndt " << plan.dt
            << "\nsteps " << plan.num_steps << "\nmax_per_bin " << plan.max_per_bin << "\nbound_satisfied "
            << (plan.bound_satisfied ? "true" : "false") << '\n';
  return 0;
}

int cmd_simulate(const ExperimentConfig& cfg) {
  const auto net = build_network(cfg);
  SisParams params{cfg.lambdas.front(), cfg.mus.front(), cfg.seed_fraction, cfg.seed};
  const auto result = run_ensemble(*net.snapshots, params, net.steps(), cfg.replicates, true);
  auto out = open_in(cfg.out_dir, "trajectories.csv");
  write_trajectories_csv(out, result.trajectories);
  std::cout << "mean_final_size " << result.mean_final_size << '\n';
  return 0;
}

int cmd_threshold(const ExperimentConfig& cfg) {
  const auto net = build_network(cfg);
  const double lambda = cfg.lambdas.front();
  const double mu = cfg.mus.front();
  const std::size_t available = net.snapshots->count() - 1;
  double value = 0.0;
  if (cfg.period) {
    const auto est = spectral_radius_product(
        SystemOperator::periodic(*net.snapshots, lambda, mu, std::min(*cfg.period, available)));
    value = est.per_step();
    std::cout << "period " << est.period << "\nconverged " << (est.converged ? "true" : "false") << '\n';
  } else {
    SeriesOptions opts;
    opts.window = cfg.series_window;
    opts.tolerance = cfg.series_tolerance;
    const auto series = critical_value_series(*net.snapshots, lambda, mu, std::min(cfg.l_max, available), opts);
    auto out = open_in(cfg.out_dir, "series.csv");
    write_series_csv(out, series);
    value = series.critical_value();
    std::cout << "converged_l ";
    if (series.converged_l) std::cout << *series.converged_l;
    else std::cout << "none";
    std::cout << '\n';
  }
  std::cout.precision(10);
  std::cout << "critical_value " << value << "\noutcome " << to_string(classify(value)) << '\n';
  return 0;
}

int cmd_sweep(const ExperimentConfig& cfg) {
  const auto net = build_network(cfg);
  const auto grid = sweep(net, cfg);
  auto g = open_in(cfg.out_dir, "grid.csv");
  write_grid_csv(g, grid);
  auto b = open_in(cfg.out_dir, "boundary.csv");
  write_boundary_csv(b, boundary(grid));
  nlohmann::json manifest{{"command", "sweep"}, {"config", to_json(cfg)}};
  manifest["summary"]["outbreak_cells"] = outbreak_cell_count(grid);
  if (cfg.simulate) {
    try {
      manifest["summary"]["pcc"] = grid_pcc(grid);
    } catch (const UndefinedCorrelationError&) {
      manifest["summary"]["pcc"] = nullptr;
    }
  }
  auto m = open_in(cfg.out_dir, "manifest.json");
  m << manifest.dump(2) << '\n';
  std::cout << "cells " << grid.size() << "\noutbreak_cells " << outbreak_cell_count(grid) << '\n';
  return 0;
}

int cmd_compare(const ExperimentConfig& cfg) {
  const auto net = build_network(cfg);
  const auto rows = compare_windowed(net, cfg);
  auto out = open_in(cfg.out_dir, "windowed.csv");
  write_windowed_csv(out, rows);
  std::cout.precision(10);
  for (const auto& r : rows) {
    const double w = cfg.mode == WindowMode::literal ? r.windowed_literal : r.windowed_expanded;
    std::cout << "lambda " << r.lambda << " tie_decay " << r.tie_decay_value << " windowed " << w << '\n';
  }
  return 0;
}

int cmd_scenario(const std::string& name, const Flags& f) {
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw UsageError("unknown scenario '" + name + "'");
  }
  auto cfg = resolve(scenario_config(name), f);
  cfg.scenario = name;
  const auto result = run_scenario(cfg);
  for (const auto& file : result.files) std::cout << file.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Epidemic thresholds on tie-decay temporal networks"};
  app.require_subcommand(1);
  Flags flags;
  std::string scenario;

  auto* generate = app.add_subcommand("generate", "synthetic ER network and interaction log");
  auto* ingest = app.add_subcommand("ingest", "parse and discretize a contact file");
  auto* simulate = app.add_subcommand("simulate", "SIS ensemble on a tie-decay network");
  auto* threshold = app.add_subcommand("threshold", "critical value for one (lambda, mu)");
  auto* sweep_cmd = app.add_subcommand("sweep", "(lambda, mu) grid of critical values and outbreak sizes");
  auto* compare = app.add_subcommand("compare-windowed", "tie-decay versus windowed critical values");
  auto* run = app.add_subcommand("run-scenario", "run a named experiment");

  for (auto* sub : {generate, ingest, simulate, threshold, sweep_cmd, compare, run}) add_network_flags(sub, flags);
  for (auto* sub : {simulate, threshold, sweep_cmd, compare, run}) add_epidemic_flags(sub, flags);
  for (auto* sub : {threshold, sweep_cmd, run}) flags.add(sub, "--period", "period", "fixed period l, or auto");
  for (auto* sub : {sweep_cmd, run}) {
    flags.add(sub, "--grid", "grid", "grid step for lambda and mu");
    flags.add(sub, "--simulate", "simulate", "run SIS ensembles per cell (true/false)");
  }
  for (auto* sub : {compare, run}) {
    flags.add(sub, "--window", "window", "window length w in steps");
    flags.add(sub, "--mode", "mode", "literal or expanded");
  }
  run->add_option("name", scenario, "scenario name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (run->parsed()) return cmd_scenario(scenario, flags);
    if (ingest->parsed()) {
      ExperimentConfig cfg;
      cfg.dt = 0.0;
      cfg.source = NetworkSource::contact_file;
      return cmd_ingest(resolve(cfg, flags));
    }
    const auto cfg = resolve(ExperimentConfig{}, flags);
    if (generate->parsed()) return cmd_generate(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (threshold->parsed()) return cmd_threshold(cfg);
    if (sweep_cmd->parsed()) return cmd_sweep(cfg);
    return cmd_compare(cfg);
  } catch (const UsageError& e) {
    std::cerr << "tiethresh: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "tiethresh: " << e.what() << '\n';
    return kModuleError;
  }
}
