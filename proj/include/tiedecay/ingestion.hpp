#pragma once

// Plain-text contact logs ("t i j" per line) and their discretization into
// per-step interaction matrices.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "tiedecay/events.hpp"
#include "tiedecay/tie_matrix.hpp"

namespace tiedecay {

struct ContactData {
  EventLog log;
  /// raw_ids[k] is the identifier that was remapped to node k.
  std::vector<std::int64_t> raw_ids;
  /// Subtracted from every timestamp so that the earliest event is at 0.
  double time_offset = 0.0;
};

/// Parses whitespace-separated "t i j" records; '#' lines and blank lines are
/// skipped and extra columns ignored. Records are stably sorted by time, node
/// ids are assigned densely in order of first appearance, and times are
/// shifted so the first event is at t = 0. Throws ParseError with the
/// 1-based line number.
ContactData parse_contact_file(std::istream& in);

/// Writes one "t i j" line per event; the output parses back to the same log.
void write_event_log(std::ostream& out, const EventLog& log);

/// Sidecar "node raw_id" lines.
void write_node_map(std::ostream& out, const ContactData& data);

struct DiscretizationPlan {
  double dt = 0.0;
  std::size_t num_steps = 1;
  /// Largest number of events observed in a single step under `dt`.
  std::size_t max_per_bin = 0;
  /// False when no candidate met the requested bound (dt falls back to the
  /// native resolution) or when `dt` was forced and the bound is exceeded.
  bool bound_satisfied = true;
};

/// Step index tau >= 1 of an event at time t: t in ((tau-1) dt, tau dt], with
/// t = 0 assigned to step 1.
std::size_t step_of(double t, double dt);

/// Largest dt from the grid {r, 2r, 5r, 10r, 20r, 50r, ...} (r = native
/// resolution) whose bins all hold at most `max_per_bin` events.
DiscretizationPlan choose_dt(const EventLog& log, std::size_t max_per_bin,
                             double native_resolution = 20.0);

/// Plan for a user-chosen dt; the bin bound is reported against
/// `max_per_bin` but not enforced.
DiscretizationPlan plan_with_dt(const EventLog& log, double dt, std::size_t max_per_bin = 10);

/// Interaction matrices for steps 1..num_steps (element k is step k + 1).
/// Events past num_steps * dt are dropped.
std::vector<InteractionMatrix> discretize(const EventLog& log, const DiscretizationPlan& plan);

}  // namespace tiedecay
