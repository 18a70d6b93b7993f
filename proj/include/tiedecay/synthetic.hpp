#pragma once

// Erdos-Renyi backbones, exponential interaction streams, initial tie matrices.

#include <cstdint>
#include <vector>

#include "tiedecay/events.hpp"
#include "tiedecay/tie_matrix.hpp"

namespace tiedecay {

struct ErConfig {
  NodeId n = 100;
  double p = 0.1;
  bool require_connected = true;
  std::uint64_t seed = 0;
  int max_attempts = 10000;
};

struct EdgeSet {
  NodeId n = 0;
  std::vector<NodePair> edges;  // sorted, unique

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;
};

/// G(n, p) draw. Attempt k uses substream k of `cfg.seed`, so a connected
/// draw is reproducible on its own.
EdgeSet generate_er(const ErConfig& cfg);

bool is_connected(const EdgeSet& g);

struct WaitingTimeConfig {
  double beta = 100.0;  ///< mean inter-event time, in steps
  std::uint64_t seed = 0;
};

/// Independent renewal process per edge with exponential gaps of mean
/// beta * dt, starting at t = 0 and truncated at `horizon`.
EventLog generate_event_times(const EdgeSet& edges, const WaitingTimeConfig& w, double horizon,
                              double dt = 1.0);

TieMatrix initial_tie_matrix(const EdgeSet& edges, double strength);

}  // namespace tiedecay
