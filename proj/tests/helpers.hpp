#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "tiedecay/rng.hpp"
#include "tiedecay/snapshots.hpp"
#include "tiedecay/tie_matrix.hpp"

namespace testutil {

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Random symmetric zero-diagonal matrix, each pair present with probability
/// `density`, strengths uniform in [0, scale).
inline tiedecay::TieMatrix random_ties(int n, double density, double scale, tiedecay::Rng& rng) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (tiedecay::uniform01(rng) < density) m(i, j) = m(j, i) = scale * tiedecay::uniform01(rng);
    }
  }
  return tiedecay::TieMatrix(std::move(m));
}

inline tiedecay::InteractionMatrix random_interactions(int n, int count, tiedecay::Rng& rng) {
  tiedecay::InteractionMatrix a(n);
  for (int k = 0; k < count; ++k) {
    const auto i = static_cast<int>(rng() % static_cast<unsigned>(n));
    auto j = static_cast<int>(rng() % static_cast<unsigned>(n - 1));
    if (j >= i) ++j;
    a.add(i, j);
  }
  return a;
}

/// Random snapshot sequence evolved from random ties and interactions.
inline tiedecay::EdgeSnapshots random_snapshots(int n, std::size_t steps, tiedecay::Rng& rng,
                                                double alpha = 0.3) {
  auto initial = random_ties(n, 0.4, 1.5, rng);
  std::vector<tiedecay::InteractionMatrix> as;
  for (std::size_t s = 0; s < steps; ++s) as.push_back(random_interactions(n, static_cast<int>(rng() % 4), rng));
  return tiedecay::EdgeSnapshots::evolve(initial, as, {alpha, 1.0});
}

/// S_tau = (1 - mu) I + lambda min(B, 1), dense.
inline Eigen::MatrixXd dense_factor(const tiedecay::EdgeSnapshots& s, std::size_t tau, double lambda,
                                    double mu) {
  const auto n = s.node_count();
  Eigen::MatrixXd f = lambda * s.dense(tau).strengths().cwiseMin(1.0);
  f.diagonal().array() += 1.0 - mu;
  return f;
}

/// Dominant eigenvalue modulus of S_{l-1} ... S_0 by dense eigendecomposition.
inline double dense_product_radius(const tiedecay::EdgeSnapshots& s, std::size_t l, double lambda, double mu) {
  const auto n = s.node_count();
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n);
  for (std::size_t tau = 0; tau < l; ++tau) p = dense_factor(s, tau, lambda, mu) * p;
  Eigen::EigenSolver<Eigen::MatrixXd> es(p, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace testutil
