#include "tiedecay/windowed.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "tiedecay/errors.hpp"
#include "tiedecay/ingestion.hpp"

namespace tiedecay {

WindowedNetwork bin_windows(const EventLog& log, double dt, std::size_t window,
                            std::size_t num_steps) {
  if (window < 1) throw StructuralError("window length must be >= 1");
  if (!(dt > 0.0)) throw StructuralError("dt must be > 0");
  const std::size_t count = std::max<std::size_t>(1, (num_steps + window - 1) / window);

  std::vector<NodePair> pairs;
  pairs.reserve(log.events.size());
  for (const auto& e : log.events) pairs.emplace_back(e.i, e.j);
  auto support = std::make_shared<const EdgeSupport>(log.node_count, std::move(pairs));

  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(support->edge_count()),
                                                static_cast<Eigen::Index>(count));
  const double width = dt * static_cast<double>(window);
  for (const auto& e : log.events) {
    const auto k = step_of(e.t, width);
    if (k > count) continue;
    table(static_cast<Eigen::Index>(*support->find({e.i, e.j})), static_cast<Eigen::Index>(k - 1)) += 1.0;
  }
  WindowedNetwork net;
  net.window = window;
  net.num_steps = num_steps;
  net.windows = std::make_shared<const EdgeSnapshots>(std::move(support), std::move(table));
  net.scale.assign(count, 1.0);
  return net;
}

WindowedNetwork rescale_windows(const WindowedNetwork& raw, const EdgeSnapshots& snapshots) {
  if (!raw.windows) throw StructuralError("windowed network has no windows");
  if (snapshots.count() < raw.num_steps + 1) {
    throw StructuralError("snapshot sequence does not cover every window");
  }
  if (snapshots.node_count() != raw.windows->node_count()) {
    throw StructuralError("snapshot and window node counts differ");
  }
  Eigen::MatrixXd table = raw.windows->strengths();
  WindowedNetwork out = raw;
  for (std::size_t k = 0; k < raw.window_count(); ++k) {
    const std::size_t first = k * raw.window + 1;
    const std::size_t last = std::min((k + 1) * raw.window, raw.num_steps);
    double target = 0.0;
    for (std::size_t tau = first; tau <= last; ++tau) target += snapshots.total_strength(tau);
    if (last >= first) target /= static_cast<double>(last - first + 1);

    auto col = table.col(static_cast<Eigen::Index>(k));
    const double mass = 2.0 * col.sum();
    const double c = mass > 0.0 ? target / mass : 0.0;
    col *= c;
    out.scale[k] = raw.scale[k] * c;
  }
  out.windows = std::make_shared<const EdgeSnapshots>(raw.windows->support_ptr(), std::move(table));
  return out;
}

WindowMode parse_window_mode(std::string_view name) {
  if (name == "literal") return WindowMode::literal;
  if (name == "expanded") return WindowMode::expanded;
  throw StructuralError("unknown window mode '" + std::string(name) + "'");
}

const char* to_string(WindowMode mode) {
  return mode == WindowMode::literal ? "literal" : "expanded";
}

double WindowedThreshold::per_factor() const { return estimate.per_step(); }

double WindowedThreshold::per_window() const {
  return std::exp(estimate.log_radius / static_cast<double>(windows));
}

double WindowedThreshold::per_step() const {
  return std::exp(estimate.log_radius / static_cast<double>(windows * window));
}

WindowedThreshold windowed_threshold(const WindowedNetwork& net, double lambda_max, double mu,
                                     WindowMode mode, const PowerIterationOptions& options) {
  if (net.window_count() == 0) throw StructuralError("windowed threshold needs at least one window");
  std::vector<std::size_t> order;
  const std::size_t repeat = mode == WindowMode::literal ? 1 : net.window;
  order.reserve(net.window_count() * repeat);
  for (std::size_t k = 0; k < net.window_count(); ++k) order.insert(order.end(), repeat, k);

  SystemOperator op(*net.windows, lambda_max, mu, std::move(order));
  WindowedThreshold out;
  out.mode = mode;
  out.estimate = spectral_radius_product(op, options);
  out.windows = net.window_count();
  out.window = net.window;
  return out;
}

EdgeSnapshots windowed_step_snapshots(const WindowedNetwork& net, const TieMatrix& initial) {
  if (!net.windows) throw StructuralError("windowed network has no windows");
  const auto n = net.windows->node_count();
  if (initial.size() != n) throw StructuralError("initial tie matrix size differs");

  auto pairs = std::vector<NodePair>(net.windows->support().pairs().begin(),
                                     net.windows->support().pairs().end());
  for (NodeId j = 0; j < n; ++j) {
    for (NodeId i = 0; i < j; ++i) {
      if (initial(i, j) != 0.0) pairs.emplace_back(i, j);
    }
  }
  auto support = std::make_shared<const EdgeSupport>(n, std::move(pairs));
  const auto edges = static_cast<Eigen::Index>(support->edge_count());

  Eigen::VectorXd first(edges);
  for (Eigen::Index e = 0; e < edges; ++e) {
    const auto& p = support->pairs()[static_cast<std::size_t>(e)];
    first(e) = initial(p.i, p.j);
  }
  // window matrices re-indexed onto the merged support
  Eigen::MatrixXd lifted = Eigen::MatrixXd::Zero(edges, static_cast<Eigen::Index>(net.window_count()));
  const auto old_pairs = net.windows->support().pairs();
  for (std::size_t e = 0; e < old_pairs.size(); ++e) {
    lifted.row(static_cast<Eigen::Index>(*support->find(old_pairs[e]))) =
        net.windows->strengths().row(static_cast<Eigen::Index>(e));
  }

  Eigen::MatrixXd table(edges, static_cast<Eigen::Index>(net.num_steps));
  for (std::size_t tau = 0; tau < net.num_steps; ++tau) {
    const std::size_t k = tau / net.window;  // 0-based window of this step
    table.col(static_cast<Eigen::Index>(tau)) =
        k == 0 ? first : Eigen::VectorXd(lifted.col(static_cast<Eigen::Index>(k - 1)));
  }
  return EdgeSnapshots(std::move(support), std::move(table));
}

Trajectory simulate_windowed(const WindowedNetwork& net, const TieMatrix& initial,
                             const SisParams& params, Rng& rng) {
  const auto steps = windowed_step_snapshots(net, initial);
  return simulate(steps, params, net.num_steps, rng);
}

EnsembleResult run_windowed_ensemble(const WindowedNetwork& net, const TieMatrix& initial,
                                     const SisParams& params, std::size_t replicates) {
  const auto steps = windowed_step_snapshots(net, initial);
  return run_ensemble(steps, params, net.num_steps, replicates);
}

void write_windows_csv(std::ostream& out, const WindowedNetwork& net) {
  out << "window,i,j,strength\n";
  if (!net.windows) return;
  out.precision(17);
  const auto pairs = net.windows->support().pairs();
  for (std::size_t k = 0; k < net.window_count(); ++k) {
    const auto col = net.windows->column(k);
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      const double v = col(static_cast<Eigen::Index>(e));
      if (v != 0.0) out << k + 1 << ',' << pairs[e].i << ',' << pairs[e].j << ',' << v << '\n';
    }
  }
}

}  // namespace tiedecay
