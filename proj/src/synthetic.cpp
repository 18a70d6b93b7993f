#include "tiedecay/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tiedecay/errors.hpp"
#include "tiedecay/rng.hpp"

namespace tiedecay {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

EdgeSet draw_er(NodeId n, double p, Rng& rng) {
  EdgeSet g{n, {}};
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (uniform01(rng) < p) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

}  // namespace

bool is_connected(const EdgeSet& g) {
  if (g.n <= 1) return true;
  DisjointSets sets(static_cast<std::size_t>(g.n));
  NodeId components = g.n;
  for (const auto& e : g.edges) {
    if (sets.unite(e.i, e.j)) --components;
  }
  return components == 1;
}

EdgeSet generate_er(const ErConfig& cfg) {
  if (cfg.n < 1) throw InfeasibleConfigError("ER graph needs n >= 1");
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw InfeasibleConfigError("ER edge probability must be in [0, 1]");
  if (!cfg.require_connected) {
    auto rng = make_rng(cfg.seed, 0);
    return draw_er(cfg.n, cfg.p, rng);
  }
  if (cfg.p == 0.0 && cfg.n > 1) {
    throw InfeasibleConfigError("a connected graph with p = 0 and n > 1 is impossible");
  }
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    auto rng = make_rng(cfg.seed, static_cast<std::uint64_t>(attempt));
    auto g = draw_er(cfg.n, cfg.p, rng);
    if (is_connected(g)) return g;
  }
  throw ExhaustionError("no connected G(" + std::to_string(cfg.n) + ", " + std::to_string(cfg.p) +
                        ") draw within " + std::to_string(cfg.max_attempts) + " attempts");
}

EventLog generate_event_times(const EdgeSet& edges, const WaitingTimeConfig& w, double horizon,
                              double dt) {
  if (!(w.beta > 0.0)) throw StructuralError("waiting-time scale beta must be > 0");
  if (!(dt > 0.0)) throw StructuralError("step duration dt must be > 0");
  if (!(horizon >= 0.0)) throw StructuralError("horizon must be >= 0");

  EventLog log{edges.n, {}, horizon};
  const double mean_gap = w.beta * dt;
  for (std::size_t k = 0; k < edges.edges.size(); ++k) {
    const auto& e = edges.edges[k];
    auto rng = make_rng(w.seed, k);
    double t = 0.0;
    while (true) {
      t += -std::log1p(-uniform01(rng)) * mean_gap;
      if (t > horizon) break;
      log.events.push_back({t, e.i, e.j});
    }
  }
  std::sort(log.events.begin(), log.events.end(), [](const auto& a, const auto& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  return log;
}

TieMatrix initial_tie_matrix(const EdgeSet& edges, double strength) {
  if (!(strength >= 0.0) || !std::isfinite(strength)) {
    throw StructuralError("initial strength must be finite and >= 0");
  }
  TieMatrix::Matrix m = TieMatrix::Matrix::Zero(edges.n, edges.n);
  for (const auto& e : edges.edges) {
    if (e.i == e.j || e.i < 0 || e.j >= edges.n) throw StructuralError("edge out of range");
    m(e.i, e.j) = m(e.j, e.i) = strength;
  }
  return TieMatrix::trusted(std::move(m));
}

}  // namespace tiedecay
