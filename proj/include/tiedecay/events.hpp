#pragma once

#include <vector>

#include "tiedecay/tie_matrix.hpp"

namespace tiedecay {

/// One undirected contact.
struct InteractionEvent {
  double t = 0.0;
  NodeId i = 0;
  NodeId j = 0;

  friend bool operator==(const InteractionEvent&, const InteractionEvent&) = default;
};

struct EventLog {
  NodeId node_count = 0;
  std::vector<InteractionEvent> events;  // sorted by time
  double horizon = 0.0;

  /// Throws StructuralError unless times are nondecreasing within
  /// [0, horizon] and every event joins two distinct in-range nodes.
  void validate() const;

  friend bool operator==(const EventLog&, const EventLog&) = default;
};

}  // namespace tiedecay
