#include "tiedecay/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "tiedecay/errors.hpp"

namespace tiedecay {

namespace {

void check_rates(double lambda_max, double mu) {
  if (!(lambda_max >= 0.0 && lambda_max <= 1.0)) throw StructuralError("lambda_max must lie in [0, 1]");
  if (!(mu >= 0.0 && mu <= 1.0)) throw StructuralError("mu must lie in [0, 1]");
}

// out = ((1 - mu) I + lambda min(B, 1)) in, for one snapshot column
template <typename Column>
void apply_snapshot(const EdgeSupport& support, const Column& strengths, double lambda_max,
                    double mu, const Eigen::VectorXd& in, Eigen::VectorXd& out) {
  out = (1.0 - mu) * in;
  const auto pairs = support.pairs();
  for (std::size_t e = 0; e < pairs.size(); ++e) {
    const double w = lambda_max * std::min(strengths(static_cast<Eigen::Index>(e)), 1.0);
    if (w == 0.0) continue;
    out(pairs[e].i) += w * in(pairs[e].j);
    out(pairs[e].j) += w * in(pairs[e].i);
  }
}

}  // namespace

SystemOperator::SystemOperator(const EdgeSnapshots& snapshots, double lambda_max, double mu,
                               std::vector<std::size_t> order)
    : snapshots_(&snapshots), lambda_(lambda_max), mu_(mu), order_(std::move(order)) {
  check_rates(lambda_max, mu);
  if (order_.empty()) throw StructuralError("system operator needs period >= 1");
  for (auto k : order_) {
    if (k >= snapshots.count()) throw StructuralError("factor refers to a missing snapshot");
  }
  if (!snapshots.strengths().allFinite()) throw StructuralError("snapshot entries must be finite");
}

SystemOperator SystemOperator::periodic(const EdgeSnapshots& snapshots, double lambda_max, double mu,
                                        std::size_t period) {
  std::vector<std::size_t> order(period);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return SystemOperator(snapshots, lambda_max, mu, std::move(order));
}

void SystemOperator::apply_factor(std::size_t k, const Eigen::VectorXd& in,
                                  Eigen::VectorXd& out) const {
  apply_snapshot(snapshots_->support(), snapshots_->column(order_.at(k)), lambda_, mu_, in, out);
}

double SpectralEstimate::per_period() const { return std::exp(log_radius); }

double SpectralEstimate::per_step() const {
  if (period == 0) return std::numeric_limits<double>::quiet_NaN();
  return std::exp(log_radius / static_cast<double>(period));
}

SpectralEstimate spectral_radius_product(const SystemOperator& op,
                                         const PowerIterationOptions& options) {
  const auto n = static_cast<Eigen::Index>(op.size());
  SpectralEstimate est;
  est.period = op.period();
  if (n == 0) {
    est.converged = true;
    return est;
  }
  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  Eigen::VectorXd w(n);
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    double log_growth = 0.0;
    for (std::size_t k = 0; k < op.period(); ++k) {
      op.apply_factor(k, v, w);
      const double norm = w.norm();
      if (norm == 0.0) {
        // S v = 0 from a positive start: S is nilpotent on the reachable cone
        est.log_radius = -std::numeric_limits<double>::infinity();
        est.iterations = it;
        est.converged = true;
        est.vector = Eigen::VectorXd::Zero(n);
        return est;
      }
      v = w / norm;
      log_growth += std::log(norm);
    }
    est.iterations = it;
    est.log_radius = log_growth;
    if (std::abs(log_growth - previous) < options.tolerance) {
      est.converged = true;
      break;
    }
    previous = log_growth;
  }
  est.vector = v;
  return est;
}

double CriticalValueSeries::critical_value() const {
  if (converged_l) return converged_value;
  return values.empty() ? std::numeric_limits<double>::quiet_NaN() : values.back();
}

std::optional<std::size_t> first_converged_period(std::span<const double> values,
                                                  std::size_t window, double tol) {
  if (window < 1) throw StructuralError("window must be >= 1");
  for (std::size_t l = window; l <= values.size(); ++l) {
    const auto first = values.begin() + static_cast<std::ptrdiff_t>(l - window);
    const auto last = values.begin() + static_cast<std::ptrdiff_t>(l);
    const auto [lo, hi] = std::minmax_element(first, last);
    if (*hi - *lo <= tol) return l;
  }
  return std::nullopt;
}

CriticalValueSeries critical_value_series(const EdgeSnapshots& snapshots, double lambda_max,
                                          double mu, std::size_t l_max,
                                          const SeriesOptions& options) {
  check_rates(lambda_max, mu);
  if (options.window < 2) throw StructuralError("convergence window must be >= 2");
  if (l_max > snapshots.count()) {
    throw StructuralError("period exceeds the available snapshots");
  }
  const auto n = static_cast<Eigen::Index>(snapshots.node_count());
  const auto& support = snapshots.support();
  const auto pairs = support.pairs();

  CriticalValueSeries series;
  series.values.reserve(l_max);
  series.estimate_converged.reserve(l_max);

  // product holds P^T (scaled by exp(-log_scale)); P^T S_k = (S_k P)^T since S_k is symmetric
  Eigen::MatrixXd product = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd next(n, n);
  double log_scale = 0.0;
  bool vanished = (n == 0);
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, n > 0 ? 1.0 / std::sqrt(static_cast<double>(n)) : 0.0);
  Eigen::VectorXd y(n);

  for (std::size_t l = 1; l <= l_max; ++l) {
    const auto col = snapshots.column(l - 1);
    bool ok = true;
    if (!vanished) {
      next = (1.0 - mu) * product;
      for (std::size_t e = 0; e < pairs.size(); ++e) {
        const double w = lambda_max * std::min(col(static_cast<Eigen::Index>(e)), 1.0);
        if (w == 0.0) continue;
        next.col(pairs[e].i) += w * product.col(pairs[e].j);
        next.col(pairs[e].j) += w * product.col(pairs[e].i);
      }
      product.swap(next);
      const double scale = product.maxCoeff();
      if (scale <= 0.0) {
        vanished = true;
      } else {
        product /= scale;
        log_scale += std::log(scale);

        // warm start: the leading eigenvector of S_l P is close to S_l times that of P
        apply_snapshot(support, col, lambda_max, mu, x, y);
        if (y.norm() > 0.0) x = y.normalized();
        double previous = std::numeric_limits<double>::quiet_NaN();
        double log_r = -std::numeric_limits<double>::infinity();
        ok = false;
        for (std::size_t it = 0; it < options.power.max_iterations; ++it) {
          y.noalias() = product.transpose() * x;
          const double r = y.norm();
          if (r == 0.0) {
            log_r = -std::numeric_limits<double>::infinity();
            ok = true;
            break;
          }
          x = y / r;
          log_r = std::log(r);
          if (std::abs(log_r - previous) < options.power.tolerance) {
            ok = true;
            break;
          }
          previous = log_r;
        }
        series.values.push_back(std::exp((log_scale + log_r) / static_cast<double>(l)));
        series.estimate_converged.push_back(ok);
      }
    }
    if (vanished) {
      series.values.push_back(0.0);
      series.estimate_converged.push_back(true);
    }

    if (!series.converged_l && l >= options.window) {
      if (first_converged_period(std::span(series.values).last(options.window), options.window,
                                 options.tolerance)) {
        series.converged_l = l;
        series.converged_value = series.values.back();
        if (options.stop_at_convergence) break;
      }
    }
  }
  return series;
}

Outcome classify(double per_step_value) {
  if (!(per_step_value >= 0.0)) throw StructuralError("critical value must be nonnegative");
  return per_step_value < 1.0 ? Outcome::dies_out : Outcome::outbreak;
}

const char* to_string(Outcome o) { return o == Outcome::dies_out ? "dies_out" : "outbreak"; }

MeanFieldState mean_field_step(const EdgeSnapshots& snapshots, std::size_t tau, double lambda_max,
                               double mu, const MeanFieldState& p) {
  const auto n = snapshots.node_count();
  if (p.size() != n) throw StructuralError("state size differs from node count");
  if (tau >= snapshots.count()) throw StructuralError("snapshot index out of range");
  const auto col = snapshots.column(tau);
  const auto& support = snapshots.support();
  MeanFieldState next(n);
  for (NodeId i = 0; i < n; ++i) {
    const auto nbrs = support.neighbors_of(i);
    const auto ids = support.edges_of(i);
    double escape = 1.0;
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const double w = std::min(col(static_cast<Eigen::Index>(ids[k])), 1.0);
      escape *= 1.0 - lambda_max * w * p(nbrs[k]);
    }
    next(i) = 1.0 - mu * p(i) - (1.0 - p(i)) * escape;
  }
  return next;
}

std::vector<MeanFieldState> mean_field_trajectory(const EdgeSnapshots& snapshots, double lambda_max,
                                                  double mu, const MeanFieldState& p0,
                                                  std::size_t steps) {
  check_rates(lambda_max, mu);
  if (p0.size() != snapshots.node_count()) throw StructuralError("state size differs from node count");
  if (p0.size() > 0 && (p0.minCoeff() < 0.0 || p0.maxCoeff() > 1.0)) {
    throw StructuralError("initial infection probabilities must lie in [0, 1]");
  }
  if (steps > snapshots.count()) throw StructuralError("more steps than snapshots");
  std::vector<MeanFieldState> out;
  out.reserve(steps + 1);
  out.push_back(p0);
  for (std::size_t tau = 0; tau < steps; ++tau) {
    out.push_back(mean_field_step(snapshots, tau, lambda_max, mu, out.back()));
  }
  return out;
}

void write_series_csv(std::ostream& out, const CriticalValueSeries& series) {
  out << "l,per_step_value,converged_flag\n";
  out.precision(17);
  for (std::size_t l = 1; l <= series.values.size(); ++l) {
    const bool flag = series.converged_l && l >= *series.converged_l;
    out << l << ',' << series.values[l - 1] << ',' << (flag ? 1 : 0) << '\n';
  }
}

}  // namespace tiedecay
