#pragma once

// Discrete-time SIS dynamics on a tie-decay snapshot sequence.
//
// A susceptible node j escapes infection during step tau with probability
// prod_{i infected} (1 - lambda_max * min(b_ij, 1)); an infected node recovers
// with probability mu. Updates are synchronous against the old state, so a
// node cannot recover and be reinfected (or get infected and recover) within
// one step.
//
// Random draws: one uniform per node per step, taken in node order. Node k
// reacts to the k-th draw, which keeps runs reproducible and couples runs with
// different parameters that share a seed.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "tiedecay/rng.hpp"
#include "tiedecay/snapshots.hpp"
#include "tiedecay/tie_matrix.hpp"

namespace tiedecay {

struct SisParams {
  double lambda_max = 0.1;
  double mu = 0.1;
  double seed_fraction = 0.1;
  std::uint64_t rng_seed = 0;

  /// Number of initially infected nodes, ceil(seed_fraction * n).
  NodeId initial_infected(NodeId n) const;
  void validate(NodeId n) const;
};

enum class Compartment : std::uint8_t { susceptible, infected };

struct SisState {
  std::vector<Compartment> compartments;
  std::size_t step = 0;

  NodeId infected_count() const;
  bool infected(NodeId v) const { return compartments[static_cast<std::size_t>(v)] == Compartment::infected; }
};

struct Trajectory {
  /// infected_count[tau] for tau = 0..T
  std::vector<NodeId> infected_count;

  NodeId final_outbreak_size() const { return infected_count.empty() ? 0 : infected_count.back(); }
};

/// One synchronous step against a dense tie matrix.
SisState sis_step(const SisState& state, const TieMatrix& b, const SisParams& params, Rng& rng);

/// One synchronous step against snapshot `tau`; same draws and outcome as the
/// dense overload on `snapshots.dense(tau)`.
SisState sis_step(const SisState& state, const EdgeSnapshots& snapshots, std::size_t tau,
                  const SisParams& params, Rng& rng);

/// Seeds ceil(seed_fraction * n) distinct nodes uniformly at random.
SisState seed_state(NodeId n, const SisParams& params, Rng& rng);

/// Runs `steps` transitions; transition tau -> tau + 1 uses B^(tau).
Trajectory simulate(const EdgeSnapshots& snapshots, const SisParams& params, std::size_t steps,
                    Rng& rng);

/// Same, with the generator seeded from params.rng_seed.
Trajectory simulate(const EdgeSnapshots& snapshots, const SisParams& params, std::size_t steps);

struct EnsembleResult {
  double mean_final_size = 0.0;
  std::vector<NodeId> final_sizes;
  std::vector<Trajectory> trajectories;
};

/// Replicate k draws from substream k of params.rng_seed.
EnsembleResult run_ensemble(const EdgeSnapshots& snapshots, const SisParams& params,
                            std::size_t steps, std::size_t replicates, bool keep_trajectories = false);

/// CSV with header "replicate,step,infected_count".
void write_trajectories_csv(std::ostream& out, std::span<const Trajectory> trajectories);

}  // namespace tiedecay
