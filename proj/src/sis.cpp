#include "tiedecay/sis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "tiedecay/errors.hpp"

namespace tiedecay {

NodeId SisParams::initial_infected(NodeId n) const {
  const auto k = static_cast<NodeId>(std::ceil(seed_fraction * static_cast<double>(n) - 1e-12));
  return std::clamp<NodeId>(k, 1, n);
}

void SisParams::validate(NodeId n) const {
  if (!(lambda_max >= 0.0 && lambda_max <= 1.0)) throw StructuralError("lambda_max must lie in [0, 1]");
  if (!(mu >= 0.0 && mu <= 1.0)) throw StructuralError("mu must lie in [0, 1]");
  if (!(seed_fraction > 0.0 && seed_fraction <= 1.0)) throw StructuralError("seed_fraction must lie in (0, 1]");
  if (n < 1) throw StructuralError("SIS needs at least one node");
}

NodeId SisState::infected_count() const {
  return static_cast<NodeId>(std::count(compartments.begin(), compartments.end(), Compartment::infected));
}

namespace {

// Applies the draws given per-node log escape probabilities.
void resolve(std::span<const Compartment> state, std::span<const double> log_escape,
             const SisParams& params, Rng& rng, std::span<Compartment> next) {
  for (std::size_t v = 0; v < state.size(); ++v) {
    const double u = uniform01(rng);
    next[v] = state[v];
    if (state[v] == Compartment::infected) {
      if (u < params.mu) next[v] = Compartment::susceptible;
    } else if (log_escape[v] < 0.0 && u < -std::expm1(log_escape[v])) {
      next[v] = Compartment::infected;
    }
  }
}

// Infected nodes push log(1 - lambda min(b, 1)) to their neighbours in
// ascending order, which matches the dense summation order. log_weight(e)
// returns that term for edge e.
template <typename LogWeight>
void accumulate_escape(std::span<const Compartment> state, const EdgeSupport& support,
                       LogWeight log_weight, std::span<double> log_escape) {
  std::fill(log_escape.begin(), log_escape.end(), 0.0);
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (state[i] != Compartment::infected) continue;
    const auto nbrs = support.neighbors_of(static_cast<NodeId>(i));
    const auto ids = support.edges_of(static_cast<NodeId>(i));
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const auto j = static_cast<std::size_t>(nbrs[k]);
      if (state[j] == Compartment::infected) continue;
      const double lw = log_weight(ids[k]);
      if (lw != 0.0) log_escape[j] += lw;
    }
  }
}

auto column_log_weight(const EdgeSnapshots& snapshots, std::size_t tau, double lambda_max) {
  return [col = snapshots.column(tau), lambda_max](std::size_t e) {
    const double w = std::min(col(static_cast<Eigen::Index>(e)), 1.0);
    return w > 0.0 ? std::log1p(-lambda_max * w) : 0.0;
  };
}

// log(1 - lambda min(B, 1)) for every edge and step, shared by all replicates.
Eigen::MatrixXd log_weight_table(const EdgeSnapshots& snapshots, std::size_t steps, double lambda_max) {
  const auto cols = static_cast<Eigen::Index>(steps);
  Eigen::MatrixXd table(snapshots.strengths().rows(), cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    const auto lw = column_log_weight(snapshots, static_cast<std::size_t>(c), lambda_max);
    for (Eigen::Index e = 0; e < table.rows(); ++e) table(e, c) = lw(static_cast<std::size_t>(e));
  }
  return table;
}

template <typename StepWeights>
Trajectory run(const EdgeSnapshots& snapshots, const SisParams& params, std::size_t steps, Rng& rng,
               StepWeights step_weights) {
  if (steps > snapshots.count()) {
    throw StructuralError("simulation needs one snapshot per step: " + std::to_string(steps) +
                          " steps but " + std::to_string(snapshots.count()) + " snapshots");
  }
  auto state = seed_state(snapshots.node_count(), params, rng).compartments;
  std::vector<Compartment> next(state.size());
  std::vector<double> log_escape(state.size());
  auto infected = [](const std::vector<Compartment>& c) {
    return static_cast<NodeId>(std::count(c.begin(), c.end(), Compartment::infected));
  };
  Trajectory traj;
  traj.infected_count.reserve(steps + 1);
  traj.infected_count.push_back(infected(state));
  for (std::size_t tau = 0; tau < steps; ++tau) {
    if (traj.infected_count.back() == 0) {
      // disease-free state is absorbing
      traj.infected_count.resize(steps + 1, 0);
      break;
    }
    accumulate_escape(state, snapshots.support(), step_weights(tau), log_escape);
    resolve(state, log_escape, params, rng, next);
    state.swap(next);
    traj.infected_count.push_back(infected(state));
  }
  return traj;
}

}  // namespace

SisState sis_step(const SisState& state, const TieMatrix& b, const SisParams& params, Rng& rng) {
  const auto n = static_cast<NodeId>(state.compartments.size());
  if (b.size() != n) throw StructuralError("state and tie matrix sizes differ");
  std::vector<double> log_escape(static_cast<std::size_t>(n), 0.0);
  for (NodeId j = 0; j < n; ++j) {
    if (state.infected(j)) continue;
    double acc = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      if (i == j || !state.infected(i)) continue;
      const double w = std::min(b(i, j), 1.0);
      if (w > 0.0) acc += std::log1p(-params.lambda_max * w);
    }
    log_escape[static_cast<std::size_t>(j)] = acc;
  }
  SisState next{state.compartments, state.step + 1};
  resolve(state.compartments, log_escape, params, rng, next.compartments);
  return next;
}

SisState sis_step(const SisState& state, const EdgeSnapshots& snapshots, std::size_t tau,
                  const SisParams& params, Rng& rng) {
  const auto n = static_cast<NodeId>(state.compartments.size());
  if (snapshots.node_count() != n) throw StructuralError("state and snapshot sizes differ");
  if (tau >= snapshots.count()) throw StructuralError("snapshot index out of range");
  std::vector<double> log_escape(static_cast<std::size_t>(n));
  accumulate_escape(state.compartments, snapshots.support(),
                    column_log_weight(snapshots, tau, params.lambda_max), log_escape);
  SisState next{state.compartments, state.step + 1};
  resolve(state.compartments, log_escape, params, rng, next.compartments);
  return next;
}

SisState seed_state(NodeId n, const SisParams& params, Rng& rng) {
  params.validate(n);
  std::vector<NodeId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const NodeId k = params.initial_infected(n);
  // partial Fisher-Yates
  for (NodeId s = 0; s < k; ++s) {
    const auto span = static_cast<std::uint64_t>(n - s);
    const auto pick = s + static_cast<NodeId>(rng() % span);
    std::swap(order[static_cast<std::size_t>(s)], order[static_cast<std::size_t>(pick)]);
  }
  SisState state{std::vector<Compartment>(static_cast<std::size_t>(n), Compartment::susceptible), 0};
  for (NodeId s = 0; s < k; ++s) state.compartments[static_cast<std::size_t>(order[s])] = Compartment::infected;
  return state;
}

Trajectory simulate(const EdgeSnapshots& snapshots, const SisParams& params, std::size_t steps,
                    Rng& rng) {
  return run(snapshots, params, steps, rng, [&](std::size_t tau) {
    return column_log_weight(snapshots, tau, params.lambda_max);
  });
}

Trajectory simulate(const EdgeSnapshots& snapshots, const SisParams& params, std::size_t steps) {
  Rng rng(derive_seed(params.rng_seed, 0));
  return simulate(snapshots, params, steps, rng);
}

EnsembleResult run_ensemble(const EdgeSnapshots& snapshots, const SisParams& params,
                            std::size_t steps, std::size_t replicates, bool keep_trajectories) {
  if (replicates < 1) throw StructuralError("ensemble needs at least one replicate");
  EnsembleResult result;
  result.final_sizes.reserve(replicates);
  if (steps > snapshots.count()) {
    throw StructuralError("simulation needs one snapshot per step: " + std::to_string(steps) +
                          " steps but " + std::to_string(snapshots.count()) + " snapshots");
  }
  const auto table = log_weight_table(snapshots, steps, params.lambda_max);
  auto table_weights = [&](std::size_t tau) {
    return [col = table.col(static_cast<Eigen::Index>(tau))](std::size_t e) {
      return col(static_cast<Eigen::Index>(e));
    };
  };
  double total = 0.0;
  for (std::size_t r = 0; r < replicates; ++r) {
    auto rng = make_rng(params.rng_seed, r);
    auto traj = run(snapshots, params, steps, rng, table_weights);
    result.final_sizes.push_back(traj.final_outbreak_size());
    total += traj.final_outbreak_size();
    if (keep_trajectories) result.trajectories.push_back(std::move(traj));
  }
  result.mean_final_size = total / static_cast<double>(replicates);
  return result;
}

void write_trajectories_csv(std::ostream& out, std::span<const Trajectory> trajectories) {
  out << "replicate,step,infected_count\n";
  for (std::size_t r = 0; r < trajectories.size(); ++r) {
    const auto& counts = trajectories[r].infected_count;
    for (std::size_t tau = 0; tau < counts.size(); ++tau) {
      out << r << ',' << tau << ',' << counts[tau] << '\n';
    }
  }
}

}  // namespace tiedecay
