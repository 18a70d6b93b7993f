#pragma once

// Traditional windowed temporal network used as a baseline: interactions are
// aggregated into adjacent windows of w steps and held constant within each
// window.

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string_view>
#include <vector>

#include "tiedecay/events.hpp"
#include "tiedecay/sis.hpp"
#include "tiedecay/snapshots.hpp"
#include "tiedecay/threshold.hpp"

namespace tiedecay {

struct WindowedNetwork {
  std::size_t window = 10;     ///< w, in steps
  std::size_t num_steps = 0;   ///< T covered by the windows
  /// Column k holds window k + 1 (A'_{k+1}) on a shared support.
  std::shared_ptr<const EdgeSnapshots> windows;
  /// Factor applied to each raw window; 1 for unscaled windows.
  std::vector<double> scale;

  std::size_t window_count() const { return windows ? windows->count() : 0; }
};

/// Event in ((k-1) w dt, k w dt] adds 1 to A'_k at its pair; t = 0 goes to
/// window 1. Produces ceil(num_steps / w) windows.
WindowedNetwork bin_windows(const EventLog& log, double dt, std::size_t window,
                            std::size_t num_steps);

/// Scales window k by c_k = mean_{tau in window k} sum_ij B^(tau)_ij / sum_ij A'_k,
/// with tau ranging over the steps (k-1) w + 1 .. k w. All-zero windows stay
/// zero (c_k = 0).
WindowedNetwork rescale_windows(const WindowedNetwork& raw, const EdgeSnapshots& snapshots);

enum class WindowMode { literal, expanded };

WindowMode parse_window_mode(std::string_view name);
const char* to_string(WindowMode mode);

struct WindowedThreshold {
  WindowMode mode = WindowMode::literal;
  SpectralEstimate estimate;
  std::size_t windows = 0;
  std::size_t window = 0;

  /// rho(S')^(1 / factors), one root per factor in the product.
  double per_factor() const;
  /// rho(S')^(1 / K) for K windows.
  double per_window() const;
  /// Per time step: rho(S')^(1 / (K w)).
  double per_step() const;
};

/// literal: S' = prod_k [(1 - mu) I + lambda min(A'_k, 1)], one factor per window.
/// expanded: every window factor applied w times, as in the simulation.
WindowedThreshold windowed_threshold(const WindowedNetwork& net, double lambda_max, double mu,
                                     WindowMode mode, const PowerIterationOptions& options = {});

/// Per-step strengths used by the windowed simulation: steps in window k run
/// against A'_{k-1}, and window 1 against `initial`. Column tau is the matrix
/// for the transition tau -> tau + 1.
EdgeSnapshots windowed_step_snapshots(const WindowedNetwork& net, const TieMatrix& initial);

Trajectory simulate_windowed(const WindowedNetwork& net, const TieMatrix& initial,
                             const SisParams& params, Rng& rng);

EnsembleResult run_windowed_ensemble(const WindowedNetwork& net, const TieMatrix& initial,
                                     const SisParams& params, std::size_t replicates);

/// CSV with header "window,i,j,strength"; windows are 1-based, zeros skipped.
void write_windows_csv(std::ostream& out, const WindowedNetwork& net);

}  // namespace tiedecay
