#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tiedecay/tie_matrix.hpp"

namespace tiedecay {

/// Lazily evaluated sequence B^(0), B^(1), ..., B^(T) of dense snapshots
/// obtained from an initial matrix and per-step interaction matrices.
class SnapshotSequence {
 public:
  SnapshotSequence(TieMatrix initial, std::vector<InteractionMatrix> interactions,
                   DecayParams decay);

  /// Number of snapshots, T + 1.
  std::size_t size() const noexcept { return interactions_.size() + 1; }
  std::size_t steps() const noexcept { return interactions_.size(); }
  NodeId node_count() const noexcept { return static_cast<NodeId>(initial_.size()); }

  const TieMatrix& initial() const noexcept { return initial_; }
  std::span<const InteractionMatrix> interactions() const noexcept { return interactions_; }
  const DecayParams& decay() const noexcept { return decay_; }

  /// Forward cursor; holds one snapshot at a time.
  class Cursor {
   public:
    const TieMatrix& current() const noexcept { return current_; }
    std::size_t index() const noexcept { return tau_; }
    bool at_end() const noexcept { return tau_ + 1 >= seq_->size(); }
    void advance();

   private:
    friend class SnapshotSequence;
    explicit Cursor(const SnapshotSequence& seq) : seq_(&seq), current_(seq.initial_) {}

    const SnapshotSequence* seq_;
    TieMatrix current_;
    std::size_t tau_ = 0;
  };

  Cursor cursor() const { return Cursor(*this); }

  /// B^(tau), recomputed from the start.
  TieMatrix at(std::size_t tau) const;

 private:
  TieMatrix initial_;
  std::vector<InteractionMatrix> interactions_;
  DecayParams decay_;
};

/// Fixed set of node pairs with a CSR adjacency index.
class EdgeSupport {
 public:
  /// `pairs` may contain duplicates and be unsorted.
  EdgeSupport(NodeId n, std::vector<NodePair> pairs);

  NodeId node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return pairs_.size(); }
  std::span<const NodePair> pairs() const noexcept { return pairs_; }

  /// Neighbours of node v, ascending; `edges_of(v)[k]` is the edge index of
  /// `neighbors_of(v)[k]`.
  std::span<const NodeId> neighbors_of(NodeId v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::span<const std::size_t> edges_of(NodeId v) const noexcept {
    return {edge_ids_.data() + offsets_[v], edge_ids_.data() + offsets_[v + 1]};
  }

  std::optional<std::size_t> find(NodePair p) const;

 private:
  NodeId n_;
  std::vector<NodePair> pairs_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
  std::vector<std::size_t> edge_ids_;
};

/// Raw tie strengths of every snapshot, stored per support edge. Column tau
/// holds B^(tau) restricted to the support; entries off the support are zero.
class EdgeSnapshots {
 public:
  EdgeSnapshots(std::shared_ptr<const EdgeSupport> support, Eigen::MatrixXd strengths);

  /// Runs the decay recurrence on the support of the initial matrix plus every
  /// interacting pair. Never forms a dense matrix.
  static EdgeSnapshots evolve(const SnapshotSequence& seq);
  static EdgeSnapshots evolve(const TieMatrix& initial, std::span<const InteractionMatrix> steps,
                              const DecayParams& decay);

  static EdgeSnapshots from_dense(std::span<const TieMatrix> snapshots);

  NodeId node_count() const noexcept { return support_->node_count(); }
  std::size_t edge_count() const noexcept { return support_->edge_count(); }
  /// Number of snapshots held.
  std::size_t count() const noexcept { return static_cast<std::size_t>(strengths_.cols()); }

  const EdgeSupport& support() const noexcept { return *support_; }
  const std::shared_ptr<const EdgeSupport>& support_ptr() const noexcept { return support_; }
  const Eigen::MatrixXd& strengths() const noexcept { return strengths_; }

  auto column(std::size_t tau) const { return strengths_.col(static_cast<Eigen::Index>(tau)); }

  /// Sum over all ordered pairs, i.e. twice the per-edge total.
  double total_strength(std::size_t tau) const { return 2.0 * column(tau).sum(); }

  TieMatrix dense(std::size_t tau) const;

  /// New sequence with the same support and the columns listed in `order`.
  EdgeSnapshots select(std::span<const std::size_t> order) const;

 private:
  std::shared_ptr<const EdgeSupport> support_;
  Eigen::MatrixXd strengths_;
};

}  // namespace tiedecay
