#pragma once

// Experiment harness: network construction, (lambda, mu) sweeps, boundary
// extraction, correlation tables and the named scenarios.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "tiedecay/events.hpp"
#include "tiedecay/ingestion.hpp"
#include "tiedecay/snapshots.hpp"
#include "tiedecay/synthetic.hpp"
#include "tiedecay/windowed.hpp"

namespace tiedecay {

enum class NetworkSource { erdos_renyi, contact_file };

/// Grid k * step for k = 1 .. round(1 / step).
std::vector<double> uniform_grid(double step = 0.05);

struct ExperimentConfig {
  std::string scenario;
  NetworkSource source = NetworkSource::erdos_renyi;

  NodeId n = 100;
  double p = 0.1;
  bool require_connected = true;
  std::filesystem::path input;  ///< contact file

  double alpha = 0.1;  ///< per step
  double beta = 100.0;
  /// Step length. Synthetic networks use it as the time unit; for contact
  /// files 0 selects it automatically with the max_per_bin bound.
  double dt = 1.0;
  std::size_t max_per_bin = 10;
  double initial_strength = 0.5;
  double backbone_p = 0.1;  ///< initial-tie density for contact files

  std::size_t steps = 1000;  ///< T; contact files use the discretized length
  std::size_t l_max = 300;
  /// Fixed period for every cell; otherwise the series stopping rule.
  std::optional<std::size_t> period;
  std::size_t series_window = 10;
  double series_tolerance = 0.02;

  std::vector<double> lambdas = uniform_grid();
  std::vector<double> mus = uniform_grid();
  bool simulate = true;
  std::size_t replicates = 10;
  double seed_fraction = 0.1;
  std::uint64_t seed = 1;

  std::size_t window = 10;
  WindowMode mode = WindowMode::literal;

  std::filesystem::path out_dir = ".";

  void validate() const;
};

/// "key = value" lines; '#' starts a comment. Unknown keys throw StructuralError.
void apply_config(ExperimentConfig& cfg, std::istream& in);
void apply_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value);

nlohmann::json to_json(const ExperimentConfig& cfg);

struct Network {
  EdgeSet backbone;
  TieMatrix initial;
  EventLog log;  ///< in the source's time unit
  DiscretizationPlan plan;
  std::shared_ptr<const EdgeSnapshots> snapshots;  ///< B^(0) .. B^(T)

  std::size_t steps() const { return plan.num_steps; }
};

/// Synthetic: backbone from substream 0 of cfg.seed, interactions from
/// substream 1. Contact file: nodes from the file and a G(N, backbone_p)
/// backbone of initial ties from substream 0.
Network build_network(const ExperimentConfig& cfg);

Network build_network(const ExperimentConfig& cfg, const ContactData& contacts);

struct SweepCell {
  double lambda = 0.0;
  double mu = 0.0;
  double critical_value = 0.0;  ///< per step
  std::size_t period = 0;       ///< l used for critical_value
  bool period_converged = false;
  double mean_final_size = 0.0;  ///< NaN when not simulated
};

struct SweepGrid {
  std::vector<double> lambdas;
  std::vector<double> mus;
  /// Lambda-major: cells[li * mus.size() + mi].
  std::vector<SweepCell> cells;

  const SweepCell& at(std::size_t li, std::size_t mi) const { return cells[li * mus.size() + mi]; }
  std::size_t size() const { return cells.size(); }
};

/// Per-cell critical value and, when cfg.simulate, the mean final outbreak
/// size over cfg.replicates runs. Every cell shares the SIS seed, so runs are
/// coupled across the grid.
SweepGrid sweep(const Network& net, const ExperimentConfig& cfg);

/// Critical value for one cell under the config's period rule.
SweepCell critical_cell(const EdgeSnapshots& snapshots, double lambda, double mu,
                        const ExperimentConfig& cfg);

struct BoundaryPoint {
  double lambda = 0.0;
  double mu_star = 0.0;
  double value = 0.0;
};

/// Per lambda, the smallest mu minimizing |value - 1|.
std::vector<BoundaryPoint> boundary(const SweepGrid& grid);

/// Cells whose critical value exceeds 1.
std::size_t outbreak_cell_count(const SweepGrid& grid);

/// Sample Pearson correlation. Throws UndefinedCorrelationError when either
/// sample is constant, StructuralError on length mismatch or fewer than 2.
double pcc(std::span<const double> x, std::span<const double> y);

/// PCC(final size, critical value) over the cells of a simulated grid.
double grid_pcc(const SweepGrid& grid);

void write_grid_csv(std::ostream& out, const SweepGrid& grid);
void write_boundary_csv(std::ostream& out, std::span<const BoundaryPoint> points);

struct WindowedComparisonRow {
  double lambda = 0.0;
  double tie_decay_value = 0.0;
  double windowed_literal = 0.0;   ///< rho(S')^(1/K)
  double windowed_expanded = 0.0;  ///< rho^(1/(K w)), w factors per window
  double windowed_per_step = 0.0;  ///< literal rho(S')^(1/(K w))
  double tie_decay_final_size = 0.0;
  double windowed_final_size = 0.0;
};

/// Tie-decay and windowed critical values (and, when cfg.simulate, outbreak
/// sizes) at mu = cfg.mus.front() for every lambda in cfg.lambdas.
std::vector<WindowedComparisonRow> compare_windowed(const Network& net, const ExperimentConfig& cfg);

void write_windowed_csv(std::ostream& out, std::span<const WindowedComparisonRow> rows);

std::span<const std::string_view> scenario_names();

/// Scenario defaults layered under the caller's overrides.
ExperimentConfig scenario_config(std::string_view name);

struct ScenarioResult {
  std::vector<std::filesystem::path> files;
  nlohmann::json manifest;
};

/// Runs a named scenario and writes its CSVs plus manifest.json into
/// cfg.out_dir. Throws StructuralError for unknown names.
ScenarioResult run_scenario(const ExperimentConfig& cfg);

}  // namespace tiedecay
