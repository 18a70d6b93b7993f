#pragma once

// Tie-strength matrices and their evolution under exponential decay.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tiedecay/errors.hpp"

namespace tiedecay {

using NodeId = std::int32_t;

/// Unordered node pair, stored with i < j.
struct NodePair {
  NodeId i = 0;
  NodeId j = 0;

  NodePair() = default;
  NodePair(NodeId a, NodeId b) : i(std::min(a, b)), j(std::max(a, b)) {}

  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

/// Symmetric, nonnegative, zero-diagonal matrix of tie strengths.
template <typename Scalar>
class TieMatrixT {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  TieMatrixT() = default;

  explicit TieMatrixT(Eigen::Index n) : strengths_(Matrix::Zero(n, n)) {}

  /// Takes ownership of `strengths`; throws StructuralError if it is not a
  /// valid tie matrix.
  explicit TieMatrixT(Matrix strengths) : strengths_(std::move(strengths)) {
    validate(strengths_);
  }

  static TieMatrixT zeros(Eigen::Index n) { return TieMatrixT(n); }

  /// Skips validation; only for values that are valid by construction.
  static TieMatrixT trusted(Matrix strengths) {
    TieMatrixT out;
    out.strengths_ = std::move(strengths);
    return out;
  }

  Eigen::Index size() const noexcept { return strengths_.rows(); }
  Scalar operator()(Eigen::Index i, Eigen::Index j) const { return strengths_(i, j); }
  const Matrix& strengths() const noexcept { return strengths_; }

  static void validate(const Matrix& m) {
    if (m.rows() != m.cols()) {
      throw StructuralError("tie matrix must be square");
    }
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(j, j) != Scalar(0)) {
        throw StructuralError("tie matrix diagonal must be zero");
      }
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const Scalar v = m(i, j);
        if (!std::isfinite(static_cast<double>(v)) || v < Scalar(0)) {
          throw StructuralError("tie strengths must be finite and nonnegative");
        }
        if (v != m(j, i)) {
          throw StructuralError("tie matrix must be symmetric");
        }
      }
    }
  }

 private:
  Matrix strengths_;
};

using TieMatrix = TieMatrixT<double>;

/// Multiset of pairs that interact during one discrete step. A pair listed k
/// times adds k to its tie.
class InteractionMatrix {
 public:
  InteractionMatrix() = default;
  explicit InteractionMatrix(NodeId n) : n_(n) {
    if (n < 0) throw StructuralError("node count must be nonnegative");
  }
  InteractionMatrix(NodeId n, std::vector<NodePair> pairs) : n_(n), pairs_(std::move(pairs)) {
    for (const auto& p : pairs_) check(p);
  }

  void add(NodeId a, NodeId b) {
    NodePair p(a, b);
    check(p);
    pairs_.push_back(p);
  }

  NodeId size() const noexcept { return n_; }
  std::span<const NodePair> pairs() const noexcept { return pairs_; }
  bool empty() const noexcept { return pairs_.empty(); }

 private:
  void check(const NodePair& p) const {
    if (p.i == p.j) throw StructuralError("interaction pair must join distinct nodes");
    if (p.i < 0 || p.j >= n_) throw StructuralError("interaction pair outside node range");
  }

  NodeId n_ = 0;
  std::vector<NodePair> pairs_;
};

struct DecayParams {
  double alpha = 0.1;  ///< decay rate per unit time
  double dt = 1.0;     ///< step duration

  void validate() const {
    if (!(alpha > 0.0)) throw StructuralError("decay coefficient alpha must be > 0");
    if (!(dt > 0.0)) throw StructuralError("step duration dt must be > 0");
  }

  double factor() const { return std::exp(-alpha * dt); }
};

/// One step of the decay recurrence: e^{-alpha dt} B + A.
template <typename Scalar>
TieMatrixT<Scalar> step(const TieMatrixT<Scalar>& b, const InteractionMatrix& a,
                        const DecayParams& decay) {
  decay.validate();
  if (b.size() != a.size()) {
    throw StructuralError("tie matrix and interaction matrix sizes differ");
  }
  typename TieMatrixT<Scalar>::Matrix next = Scalar(decay.factor()) * b.strengths();
  for (const auto& p : a.pairs()) {
    next(p.i, p.j) += Scalar(1);
    next(p.j, p.i) += Scalar(1);
  }
  return TieMatrixT<Scalar>::trusted(std::move(next));
}

/// Strength at time t of a tie that starts at b0 and gains +1 at each event.
/// Right-continuous: an event at exactly t is already counted.
template <typename Scalar>
Scalar closed_form_strength(Scalar b0, Scalar alpha, std::span<const Scalar> event_times,
                            Scalar t) {
  if (!std::is_sorted(event_times.begin(), event_times.end())) {
    throw StructuralError("event times must be sorted ascending");
  }
  using std::exp;
  Scalar total = b0 * exp(-alpha * t);
  for (Scalar tk : event_times) {
    if (tk > t) break;
    total += exp(-alpha * (t - tk));
  }
  return total;
}

/// Entrywise min(b_ij, 1).
template <typename Scalar>
TieMatrixT<Scalar> capped(const TieMatrixT<Scalar>& b) {
  return TieMatrixT<Scalar>::trusted(b.strengths().cwiseMin(Scalar(1)));
}

}  // namespace tiedecay
