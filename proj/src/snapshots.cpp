#include "tiedecay/snapshots.hpp"

#include <algorithm>
#include <numeric>

namespace tiedecay {

SnapshotSequence::SnapshotSequence(TieMatrix initial, std::vector<InteractionMatrix> interactions,
                                   DecayParams decay)
    : initial_(std::move(initial)), interactions_(std::move(interactions)), decay_(decay) {
  decay_.validate();
  for (const auto& a : interactions_) {
    if (a.size() != initial_.size()) {
      throw StructuralError("interaction matrix size differs from tie matrix size");
    }
  }
}

void SnapshotSequence::Cursor::advance() {
  if (at_end()) throw StructuralError("snapshot cursor advanced past the end");
  current_ = step(current_, seq_->interactions_[tau_], seq_->decay_);
  ++tau_;
}

TieMatrix SnapshotSequence::at(std::size_t tau) const {
  if (tau >= size()) throw StructuralError("snapshot index out of range");
  auto c = cursor();
  while (c.index() < tau) c.advance();
  return c.current();
}

EdgeSupport::EdgeSupport(NodeId n, std::vector<NodePair> pairs) : n_(n), pairs_(std::move(pairs)) {
  if (n < 0) throw StructuralError("node count must be nonnegative");
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  for (const auto& p : pairs_) {
    if (p.i == p.j || p.i < 0 || p.j >= n_) throw StructuralError("support pair out of range");
  }

  std::vector<std::size_t> degree(static_cast<std::size_t>(n_), 0);
  for (const auto& p : pairs_) {
    ++degree[p.i];
    ++degree[p.j];
  }
  offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  std::partial_sum(degree.begin(), degree.end(), offsets_.begin() + 1);
  neighbors_.resize(offsets_.back());
  edge_ids_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t e = 0; e < pairs_.size(); ++e) {
    const auto& p = pairs_[e];
    neighbors_[fill[p.i]] = p.j;
    edge_ids_[fill[p.i]++] = e;
    neighbors_[fill[p.j]] = p.i;
    edge_ids_[fill[p.j]++] = e;
  }
  // rows ascending by neighbour id
  for (NodeId v = 0; v < n_; ++v) {
    const auto b = offsets_[v], e = offsets_[v + 1];
    std::vector<std::pair<NodeId, std::size_t>> row;
    row.reserve(e - b);
    for (auto k = b; k < e; ++k) row.emplace_back(neighbors_[k], edge_ids_[k]);
    std::sort(row.begin(), row.end());
    for (auto k = b; k < e; ++k) {
      neighbors_[k] = row[k - b].first;
      edge_ids_[k] = row[k - b].second;
    }
  }
}

std::optional<std::size_t> EdgeSupport::find(NodePair p) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p);
  if (it == pairs_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - pairs_.begin());
}

EdgeSnapshots::EdgeSnapshots(std::shared_ptr<const EdgeSupport> support, Eigen::MatrixXd strengths)
    : support_(std::move(support)), strengths_(std::move(strengths)) {
  if (!support_) throw StructuralError("edge snapshots need a support");
  if (static_cast<std::size_t>(strengths_.rows()) != support_->edge_count()) {
    throw StructuralError("strength table rows must match support edge count");
  }
  if (!strengths_.allFinite() || (strengths_.size() > 0 && strengths_.minCoeff() < 0.0)) {
    throw StructuralError("tie strengths must be finite and nonnegative");
  }
}

EdgeSnapshots EdgeSnapshots::evolve(const SnapshotSequence& seq) {
  return evolve(seq.initial(), seq.interactions(), seq.decay());
}

EdgeSnapshots EdgeSnapshots::evolve(const TieMatrix& initial,
                                    std::span<const InteractionMatrix> steps,
                                    const DecayParams& decay) {
  decay.validate();
  const auto n = static_cast<NodeId>(initial.size());
  std::vector<NodePair> pairs;
  const auto& b0 = initial.strengths();
  for (NodeId j = 0; j < n; ++j) {
    for (NodeId i = 0; i < j; ++i) {
      if (b0(i, j) != 0.0) pairs.emplace_back(i, j);
    }
  }
  for (const auto& a : steps) {
    if (a.size() != n) throw StructuralError("interaction matrix size differs from tie matrix size");
    pairs.insert(pairs.end(), a.pairs().begin(), a.pairs().end());
  }
  auto support = std::make_shared<const EdgeSupport>(n, std::move(pairs));

  const auto edges = static_cast<Eigen::Index>(support->edge_count());
  Eigen::MatrixXd table(edges, static_cast<Eigen::Index>(steps.size()) + 1);
  for (Eigen::Index e = 0; e < edges; ++e) {
    const auto& p = support->pairs()[static_cast<std::size_t>(e)];
    table(e, 0) = b0(p.i, p.j);
  }
  const double f = decay.factor();
  for (std::size_t tau = 1; tau <= steps.size(); ++tau) {
    const auto t = static_cast<Eigen::Index>(tau);
    table.col(t) = f * table.col(t - 1);
    for (const auto& p : steps[tau - 1].pairs()) {
      table(static_cast<Eigen::Index>(*support->find(p)), t) += 1.0;
    }
  }
  return EdgeSnapshots(std::move(support), std::move(table));
}

EdgeSnapshots EdgeSnapshots::from_dense(std::span<const TieMatrix> snapshots) {
  if (snapshots.empty()) throw StructuralError("need at least one snapshot");
  const auto n = static_cast<NodeId>(snapshots.front().size());
  std::vector<NodePair> pairs;
  for (const auto& b : snapshots) {
    if (b.size() != n) throw StructuralError("snapshots must share one size");
    for (NodeId j = 0; j < n; ++j) {
      for (NodeId i = 0; i < j; ++i) {
        if (b(i, j) != 0.0) pairs.emplace_back(i, j);
      }
    }
  }
  auto support = std::make_shared<const EdgeSupport>(n, std::move(pairs));
  Eigen::MatrixXd table(static_cast<Eigen::Index>(support->edge_count()),
                        static_cast<Eigen::Index>(snapshots.size()));
  for (std::size_t t = 0; t < snapshots.size(); ++t) {
    for (std::size_t e = 0; e < support->edge_count(); ++e) {
      const auto& p = support->pairs()[e];
      table(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(t)) = snapshots[t](p.i, p.j);
    }
  }
  return EdgeSnapshots(std::move(support), std::move(table));
}

TieMatrix EdgeSnapshots::dense(std::size_t tau) const {
  if (tau >= count()) throw StructuralError("snapshot index out of range");
  TieMatrix::Matrix m = TieMatrix::Matrix::Zero(node_count(), node_count());
  const auto col = column(tau);
  for (std::size_t e = 0; e < edge_count(); ++e) {
    const auto& p = support_->pairs()[e];
    m(p.i, p.j) = m(p.j, p.i) = col(static_cast<Eigen::Index>(e));
  }
  return TieMatrix::trusted(std::move(m));
}

EdgeSnapshots EdgeSnapshots::select(std::span<const std::size_t> order) const {
  Eigen::MatrixXd table(strengths_.rows(), static_cast<Eigen::Index>(order.size()));
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (order[k] >= count()) throw StructuralError("snapshot index out of range");
    table.col(static_cast<Eigen::Index>(k)) = column(order[k]);
  }
  return EdgeSnapshots(support_, std::move(table));
}

}  // namespace tiedecay
