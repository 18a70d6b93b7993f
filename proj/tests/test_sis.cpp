#include "doctest.h"

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "tiedecay/errors.hpp"
#include "tiedecay/sis.hpp"

using namespace tiedecay;

namespace {

EdgeSnapshots two_node(double b, std::size_t copies = 1) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 1) = m(1, 0) = b;
  std::vector<TieMatrix> mats(copies, TieMatrix(m));
  return EdgeSnapshots::from_dense(mats);
}

SisState make_state(std::initializer_list<int> infected, std::size_t n) {
  SisState s{std::vector<Compartment>(n, Compartment::susceptible), 0};
  for (int v : infected) s.compartments[static_cast<std::size_t>(v)] = Compartment::infected;
  return s;
}

}  // namespace

TEST_CASE("no transmission and full recovery") {
  Rng rng(1);
  const auto snaps = testutil::random_snapshots(12, 3, rng);
  const SisParams p{0.0, 1.0, 0.5, 0};
  auto s = make_state({0, 3, 4, 7}, 12);
  const auto next = sis_step(s, snaps, 0, p, rng);
  CHECK(next.infected_count() == 0);
  CHECK(next.step == 1);
}

TEST_CASE("two-node chain transition frequency") {
  const auto snaps = two_node(1.0);
  const SisParams p{0.5, 1.0, 0.5, 0};
  const auto start = make_state({0}, 2);
  Rng rng(77);
  const int trials = 100000;
  int infected = 0;
  double count = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto next = sis_step(start, snaps, 0, p, rng);
    CHECK_FALSE(next.infected(0));
    infected += next.infected(1) ? 1 : 0;
    count += next.infected_count();
  }
  CHECK(std::abs(infected / double(trials) - 0.5) < 0.01);
  // node 0 always recovers, node 1 is infected with probability 0.5
  CHECK(std::abs(count / trials - 0.5) < 0.01);
}

TEST_CASE("ties above one saturate") {
  const SisParams p{0.6, 0.3, 0.5, 0};
  const auto start = make_state({0}, 2);
  Rng r1(5), r2(5);
  for (int t = 0; t < 1000; ++t) {
    const auto a = sis_step(start, two_node(2.3), 0, p, r1);
    const auto b = sis_step(start, two_node(1.0), 0, p, r2);
    CHECK(a.compartments == b.compartments);
  }
}

TEST_CASE("dense and sparse steps agree draw for draw") {
  Rng gen(31);
  const auto snaps = testutil::random_snapshots(25, 20, gen);
  const SisParams p{0.7, 0.2, 0.3, 0};
  Rng seed_rng(8);
  auto s = seed_state(25, p, seed_rng);
  for (std::size_t tau = 0; tau < 20; ++tau) {
    Rng a(100 + tau), b(100 + tau);
    const auto sparse = sis_step(s, snaps, tau, p, a);
    const auto dense = sis_step(s, snaps.dense(tau), p, b);
    CHECK(sparse.compartments == dense.compartments);
    s = sparse;
  }
}

TEST_CASE("zero ties never transmit") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m(0, 1) = m(1, 0) = 1.0;
  std::vector<TieMatrix> mats{TieMatrix(m)};
  const auto snaps = EdgeSnapshots::from_dense(mats);
  const SisParams p{1.0, 0.0, 0.5, 0};
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto next = sis_step(make_state({0}, 3), snaps, 0, p, rng);
    CHECK(next.infected(1));
    CHECK_FALSE(next.infected(2));
  }
}

TEST_CASE("raising lambda never removes an infection under shared draws") {
  Rng gen(12);
  const auto snaps = testutil::random_snapshots(30, 5, gen);
  Rng seeder(2);
  const auto s = seed_state(30, {0.5, 0.3, 0.3, 0}, seeder);
  for (int trial = 0; trial < 200; ++trial) {
    Rng lo(trial), hi(trial);
    const auto a = sis_step(s, snaps, 2, {0.2, 0.3, 0.3, 0}, lo);
    const auto b = sis_step(s, snaps, 2, {0.6, 0.3, 0.3, 0}, hi);
    for (NodeId v = 0; v < 30; ++v) {
      if (a.infected(v)) CHECK(b.infected(v));
    }
  }
}

TEST_CASE("synchronous update matches a reverse-order reference") {
  Rng gen(21);
  const auto snaps = testutil::random_snapshots(15, 4, gen);
  const auto ties = snaps.dense(2);
  const SisParams p{0.8, 0.4, 0.3, 0};
  const auto s = make_state({0, 4, 5, 11}, 15);
  for (int trial = 0; trial < 50; ++trial) {
    Rng lib(trial), ref(trial);
    const auto next = sis_step(s, snaps, 2, p, lib);
    std::vector<double> u(15);
    for (auto& x : u) x = uniform01(ref);
    for (int v = 14; v >= 0; --v) {
      bool expected;
      if (s.infected(v)) {
        expected = !(u[v] < p.mu);
      } else {
        double escape = 1.0;
        for (int w = 0; w < 15; ++w) {
          if (s.infected(w)) escape *= 1.0 - p.lambda_max * std::min(ties(w, v), 1.0);
        }
        expected = u[v] < 1.0 - escape;
      }
      CHECK(next.infected(v) == expected);
    }
  }
}

TEST_CASE("seeding") {
  Rng rng(4);
  const SisParams p{0.1, 0.1, 0.1, 0};
  CHECK(p.initial_infected(100) == 10);
  CHECK(p.initial_infected(5) == 1);
  CHECK(seed_state(100, p, rng).infected_count() == 10);
  CHECK_THROWS_AS(seed_state(10, {1.5, 0.1, 0.1, 0}, rng), StructuralError);
  CHECK_THROWS_AS(seed_state(10, {0.5, 0.1, 0.0, 0}, rng), StructuralError);
}

TEST_CASE("simulate") {
  Rng gen(40);
  const auto snaps = testutil::random_snapshots(20, 50, gen);

  SUBCASE("recovery with certainty empties the network after one step") {
    const auto traj = simulate(snaps, {0.0, 1.0, 0.2, 3}, 50);
    CHECK(traj.infected_count.size() == 51);
    CHECK(traj.infected_count[0] == 4);
    for (std::size_t k = 1; k < traj.infected_count.size(); ++k) CHECK(traj.infected_count[k] == 0);
  }
  SUBCASE("fixed seed reproduces the trajectory") {
    const SisParams p{0.6, 0.2, 0.2, 9};
    CHECK(simulate(snaps, p, 50).infected_count == simulate(snaps, p, 50).infected_count);
  }
  SUBCASE("too many steps") {
    CHECK_THROWS_AS(simulate(snaps, {0.5, 0.5, 0.1, 1}, 52), StructuralError);
  }
  SUBCASE("counts stay in range") {
    const auto traj = simulate(snaps, {0.9, 0.1, 0.5, 2}, 50);
    for (auto c : traj.infected_count) {
      CHECK(c >= 0);
      CHECK(c <= 20);
    }
  }
}

TEST_CASE("absorbing full infection on a static saturated network") {
  const int n = 8;
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, 1.5);
  m.diagonal().setZero();
  std::vector<TieMatrix> mats(n + 1, TieMatrix(m));
  const auto snaps = EdgeSnapshots::from_dense(mats);
  const auto traj = simulate(snaps, {1.0, 0.0, 0.1, 5}, n);
  CHECK(traj.final_outbreak_size() == n);
}

TEST_CASE("ensemble") {
  Rng gen(41);
  const auto snaps = testutil::random_snapshots(20, 30, gen);
  const SisParams p{0.5, 0.3, 0.2, 6};
  const auto one = run_ensemble(snaps, p, 30, 1);
  CHECK(one.mean_final_size == one.final_sizes[0]);
  CHECK(run_ensemble(snaps, {0.0, 1.0, 0.2, 6}, 30, 7).mean_final_size == 0.0);
  CHECK_THROWS_AS(run_ensemble(snaps, p, 30, 0), StructuralError);

  // replicate k reproduces in isolation
  const auto many = run_ensemble(snaps, p, 30, 5, true);
  auto rng = make_rng(p.rng_seed, 3);
  CHECK(simulate(snaps, p, 30, rng).infected_count == many.trajectories[3].infected_count);

  const auto pair = two_node(1.0, 2);
  const int reps = 100000;
  const auto chain = run_ensemble(pair, {0.5, 1.0, 0.5, 11}, 1, reps);
  CHECK(std::abs(chain.mean_final_size - 0.5) < 0.01);
}

TEST_CASE("trajectory CSV") {
  Trajectory a{{2, 1, 0}};
  std::vector<Trajectory> ts{a};
  std::ostringstream out;
  write_trajectories_csv(out, ts);
  CHECK(out.str() == "replicate,step,infected_count\n0,0,2\n0,1,1\n0,2,0\n");
}
