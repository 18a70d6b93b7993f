#pragma once

// Epidemic-threshold critical values for SIS on tie-decay snapshots.
//
// Over a period of l steps the linearized dynamics at the disease-free state
// are p -> S p with S = S_{l-1} ... S_1 S_0 and
//
//     S_tau = (1 - mu) I + lambda_max * min(B^(tau), 1).
//
// The disease-free state is stable when rho(S) < 1. The reported critical
// value is the per-step rate rho(S)^(1/l); its comparison with 1 is the same
// as for rho(S).

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "tiedecay/snapshots.hpp"

namespace tiedecay {

/// Period map built from snapshot columns. Factor k uses column order[k];
/// factors are applied in order, i.e. S = S_{order[l-1]} ... S_{order[0]}.
/// Holds a reference to `snapshots`, which must outlive the operator.
class SystemOperator {
 public:
  SystemOperator(const EdgeSnapshots& snapshots, double lambda_max, double mu,
                 std::vector<std::size_t> order);

  /// Factors B^(0), ..., B^(period-1).
  static SystemOperator periodic(const EdgeSnapshots& snapshots, double lambda_max, double mu,
                                 std::size_t period);

  std::size_t period() const noexcept { return order_.size(); }
  NodeId size() const noexcept { return snapshots_->node_count(); }
  double lambda_max() const noexcept { return lambda_; }
  double mu() const noexcept { return mu_; }
  std::span<const std::size_t> order() const noexcept { return order_; }
  const EdgeSnapshots& snapshots() const noexcept { return *snapshots_; }

  /// out = S_k in
  void apply_factor(std::size_t k, const Eigen::VectorXd& in, Eigen::VectorXd& out) const;

 private:
  const EdgeSnapshots* snapshots_;
  double lambda_;
  double mu_;
  std::vector<std::size_t> order_;
};

struct PowerIterationOptions {
  /// Stop once successive per-period log-growth estimates differ by less than this.
  double tolerance = 1e-8;
  std::size_t max_iterations = 10000;
};

struct SpectralEstimate {
  /// log rho(S); -inf when S v vanishes.
  double log_radius = -std::numeric_limits<double>::infinity();
  std::size_t period = 0;
  std::size_t iterations = 0;
  bool converged = false;
  Eigen::VectorXd vector;

  double per_period() const;
  /// rho(S)^(1/period)
  double per_step() const;
};

/// Power iteration on v -> S v with renormalization after every factor and
/// log-accumulated growth. A non-converged estimate is returned with
/// `converged == false` and the last iterate.
SpectralEstimate spectral_radius_product(const SystemOperator& op,
                                         const PowerIterationOptions& options = {});

struct SeriesOptions {
  std::size_t window = 10;
  double tolerance = 0.02;
  /// Stop computing once the stopping rule is met.
  bool stop_at_convergence = false;
  PowerIterationOptions power{};
};

struct CriticalValueSeries {
  /// values[l-1] is the per-step critical value for period l.
  std::vector<double> values;
  /// Whether the power iteration for period l met its tolerance.
  std::vector<bool> estimate_converged;
  /// First l whose trailing window has spread <= tolerance.
  std::optional<std::size_t> converged_l;
  double converged_value = std::numeric_limits<double>::quiet_NaN();

  bool converged() const noexcept { return converged_l.has_value(); }
  /// Converged value, or the last computed value when the rule was never met.
  double critical_value() const;
};

/// Per-step critical values for l = 1..l_max. Maintains the running product
/// S_{l-1} ... S_0 (renormalized, log-scaled) and refines a warm-started
/// dominant eigenvector for each l, so each new l costs one sparse factor
/// application plus a few matrix-vector products.
CriticalValueSeries critical_value_series(const EdgeSnapshots& snapshots, double lambda_max,
                                          double mu, std::size_t l_max,
                                          const SeriesOptions& options = {});

/// First l (1-based) such that values[l-window .. l-1] spread by at most tol.
std::optional<std::size_t> first_converged_period(std::span<const double> values,
                                                  std::size_t window, double tol);

enum class Outcome { dies_out, outbreak };

/// dies_out iff value < 1.
Outcome classify(double per_step_value);

const char* to_string(Outcome o);

using MeanFieldState = Eigen::VectorXd;

/// p_i' = 1 - mu p_i - (1 - p_i) prod_j (1 - lambda min(b_ij, 1) p_j) using
/// snapshot tau. Accepts any real vector so that it can be differentiated
/// around p = 0.
MeanFieldState mean_field_step(const EdgeSnapshots& snapshots, std::size_t tau, double lambda_max,
                               double mu, const MeanFieldState& p);

/// p_0, ..., p_T; p_{tau+1} uses snapshot tau.
std::vector<MeanFieldState> mean_field_trajectory(const EdgeSnapshots& snapshots, double lambda_max,
                                                  double mu, const MeanFieldState& p0,
                                                  std::size_t steps);

/// CSV with header "l,per_step_value,converged_flag"; the flag is 1 from the
/// period at which the stopping rule was first met onwards.
void write_series_csv(std::ostream& out, const CriticalValueSeries& series);

}  // namespace tiedecay
