#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "helpers.hpp"
#include "tiedecay/errors.hpp"
#include "tiedecay/snapshots.hpp"
#include "tiedecay/tie_matrix.hpp"

using namespace tiedecay;
using testutil::rel_close;

namespace {

void check_valid(const TieMatrix& b) {
  const auto& m = b.strengths();
  CHECK(m.isApprox(m.transpose(), 0.0));
  CHECK(m.diagonal().isZero(0.0));
  CHECK(m.minCoeff() >= 0.0);
}

}  // namespace

TEST_CASE("tie matrix rejects broken invariants") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(TieMatrix{m}, StructuralError);
  m(1, 0) = 1.0;
  CHECK_NOTHROW(TieMatrix{m});
  m(2, 2) = 0.1;
  CHECK_THROWS_AS(TieMatrix{m}, StructuralError);
  m(2, 2) = 0.0;
  m(0, 2) = m(2, 0) = -0.5;
  CHECK_THROWS_AS(TieMatrix{m}, StructuralError);
  CHECK_THROWS_AS(TieMatrix{Eigen::MatrixXd::Zero(2, 3)}, StructuralError);
}

TEST_CASE("interaction matrix rejects self pairs and out-of-range nodes") {
  InteractionMatrix a(3);
  CHECK_THROWS_AS(a.add(1, 1), StructuralError);
  CHECK_THROWS_AS(a.add(0, 3), StructuralError);
  a.add(2, 0);
  REQUIRE(a.pairs().size() == 1);
  CHECK(a.pairs()[0].i == 0);
  CHECK(a.pairs()[0].j == 2);
}

TEST_CASE("step from zero adds one per interaction") {
  InteractionMatrix a(3);
  a.add(0, 1);
  const auto b = step(TieMatrix::zeros(3), a, {0.1, 1.0});
  CHECK(b(0, 1) == 1.0);
  CHECK(b(1, 0) == 1.0);
  CHECK(b.strengths().sum() == 2.0);
}

TEST_CASE("repeated pairs increment by their count") {
  InteractionMatrix a(3, {{0, 2}, {2, 0}, {0, 2}});
  const auto b = step(TieMatrix::zeros(3), a, {0.1, 1.0});
  CHECK(b(0, 2) == 3.0);
}

TEST_CASE("step halves a tie at alpha = ln 2") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  const auto b = step(TieMatrix(m), InteractionMatrix(2), {std::numbers::ln2, 1.0});
  CHECK(b(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("step rejects mismatched sizes and bad decay") {
  CHECK_THROWS_AS(step(TieMatrix::zeros(3), InteractionMatrix(4), {0.1, 1.0}), StructuralError);
  CHECK_THROWS_AS(step(TieMatrix::zeros(3), InteractionMatrix(3), {0.0, 1.0}), StructuralError);
  CHECK_THROWS_AS(step(TieMatrix::zeros(3), InteractionMatrix(3), {0.1, -1.0}), StructuralError);
}

TEST_CASE("pure decay over k steps equals the exponential factor") {
  Rng rng(11);
  const auto b0 = testutil::random_ties(5, 1.0, 3.0, rng);
  const DecayParams d{0.37, 0.8};
  auto b = b0;
  const int k = 25;
  for (int s = 0; s < k; ++s) {
    const auto next = step(b, InteractionMatrix(5), d);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        if (b(i, j) > 0.0) CHECK(next(i, j) < b(i, j));
      }
    }
    b = next;
  }
  const Eigen::MatrixXd expected = std::exp(-d.alpha * d.dt * k) * b0.strengths();
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) CHECK(rel_close(b(i, j), expected(i, j), 1e-12));
  }
}

TEST_CASE("closed form strength") {
  const std::vector<double> none;
  CHECK(closed_form_strength(0.0, 0.3, std::span<const double>(none), 12.0) == 0.0);

  const double alpha = 0.25;
  const std::vector<double> one{1.0};
  CHECK(closed_form_strength(0.0, alpha, std::span<const double>(one), 1.0 + 1.0 / alpha) ==
        doctest::Approx(0.36787944117144233).epsilon(1e-14));

  const std::vector<double> unsorted{2.0, 1.0};
  CHECK_THROWS_AS(closed_form_strength(0.0, alpha, std::span<const double>(unsorted), 3.0), StructuralError);

  const std::vector<double> events{1.0, 2.5};
  const auto at = [&](double t) { return closed_form_strength(0.5, alpha, std::span<const double>(events), t); };
  CHECK(at(2.0) < at(1.5));                        // decays between events
  CHECK(at(2.5) - at(2.4999999) > 0.99);           // +1 jump at the event
}

TEST_CASE("recurrence with snapped events matches the closed form") {
  Rng rng(2024);
  for (int instance = 0; instance < 5; ++instance) {
    const int n = 6;
    const int steps = 200;
    const DecayParams d{0.05 + 0.3 * uniform01(rng), 0.5 + uniform01(rng)};
    const auto b0 = testutil::random_ties(n, 0.5, 2.0, rng);
    std::vector<std::vector<std::vector<double>>> times(n, std::vector<std::vector<double>>(n));
    auto b = b0;
    for (int s = 1; s <= steps; ++s) {
      const auto a = testutil::random_interactions(n, static_cast<int>(rng() % 3), rng);
      for (const auto& p : a.pairs()) times[p.i][p.j].push_back(s * d.dt);
      b = step(b, a, d);
      check_valid(b);
    }
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < j; ++i) {
        const double expected = closed_form_strength(b0(i, j), d.alpha, std::span<const double>(times[i][j]),
                                                     steps * d.dt);
        CHECK(rel_close(b(i, j), expected, 1e-12));
      }
    }
  }
}

TEST_CASE("capped saturates at one and is idempotent") {
  Rng rng(5);
  const auto b = testutil::random_ties(8, 0.7, 3.0, rng);
  const auto c = capped(b);
  CHECK(c.strengths().maxCoeff() <= 1.0);
  CHECK(capped(c).strengths() == c.strengths());
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      CHECK(c(i, j) == std::min(b(i, j), 1.0));
      for (int k = 0; k < 8; ++k) {
        for (int l = 0; l < 8; ++l) {
          if (b(i, j) <= b(k, l)) CHECK(c(i, j) <= c(k, l));
        }
      }
    }
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 1) = m(1, 0) = 3.7;
  CHECK(capped(TieMatrix(m))(0, 1) == 1.0);
}

TEST_CASE("tie matrix works with long double") {
  using LTie = TieMatrixT<long double>;
  InteractionMatrix a(2);
  a.add(0, 1);
  const auto b = step(step(LTie::zeros(2), a, {0.5, 1.0}), InteractionMatrix(2), {0.5, 1.0});
  CHECK(static_cast<double>(b(0, 1)) == doctest::Approx(std::exp(-0.5)));
}

TEST_CASE("snapshot cursor and random access agree") {
  Rng rng(9);
  std::vector<InteractionMatrix> as;
  for (int s = 0; s < 30; ++s) as.push_back(testutil::random_interactions(7, 2, rng));
  const SnapshotSequence seq(testutil::random_ties(7, 0.5, 1.0, rng), as, {0.2, 1.0});
  CHECK(seq.size() == 31);
  auto cur = seq.cursor();
  while (!cur.at_end()) {
    cur.advance();
    CHECK(cur.current().strengths() == seq.at(cur.index()).strengths());
  }
  CHECK(cur.index() == 30);
  CHECK_THROWS_AS(seq.at(31), StructuralError);

  const auto edges = EdgeSnapshots::evolve(seq);
  REQUIRE(edges.count() == 31);
  for (std::size_t tau = 0; tau < edges.count(); ++tau) {
    CHECK(edges.dense(tau).strengths().isApprox(seq.at(tau).strengths(), 1e-14));
    CHECK(edges.total_strength(tau) == doctest::Approx(seq.at(tau).strengths().sum()));
  }
}

TEST_CASE("edge support indexes neighbours in ascending order") {
  const EdgeSupport s(5, {{3, 1}, {0, 1}, {1, 3}, {4, 0}});
  CHECK(s.edge_count() == 3);
  const auto nb = s.neighbors_of(1);
  REQUIRE(nb.size() == 2);
  CHECK(nb[0] == 0);
  CHECK(nb[1] == 3);
  for (NodeId v = 0; v < 5; ++v) {
    const auto ids = s.edges_of(v);
    const auto nbrs = s.neighbors_of(v);
    for (std::size_t k = 0; k < ids.size(); ++k) CHECK(s.pairs()[ids[k]] == NodePair(v, nbrs[k]));
  }
  CHECK(s.find({1, 3}).has_value());
  CHECK_FALSE(s.find({2, 3}).has_value());
}

TEST_CASE("edge snapshots from dense round trip") {
  Rng rng(4);
  std::vector<TieMatrix> mats{testutil::random_ties(6, 0.5, 2.0, rng), testutil::random_ties(6, 0.5, 2.0, rng)};
  const auto s = EdgeSnapshots::from_dense(mats);
  for (std::size_t k = 0; k < mats.size(); ++k) CHECK(s.dense(k).strengths() == mats[k].strengths());
  const std::vector<std::size_t> order{1, 1, 0};
  const auto sel = s.select(order);
  CHECK(sel.count() == 3);
  CHECK(sel.dense(0).strengths() == mats[1].strengths());
  CHECK(sel.dense(2).strengths() == mats[0].strengths());
}
