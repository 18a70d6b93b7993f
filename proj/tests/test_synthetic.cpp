#include "doctest.h"

#include <cmath>
#include <set>

#include "tiedecay/errors.hpp"
#include "tiedecay/ingestion.hpp"
#include "tiedecay/synthetic.hpp"

#include <sstream>

using namespace tiedecay;

TEST_CASE("complete graph at p = 1") {
  const auto g = generate_er({5, 1.0, true, 3});
  CHECK(g.edges.size() == 10);
  CHECK(is_connected(g));
}

TEST_CASE("connected draw at p = 0 is infeasible") {
  CHECK_THROWS_AS(generate_er({3, 0.0, true, 1}), InfeasibleConfigError);
  CHECK(generate_er({1, 0.0, true, 1}).edges.empty());
  CHECK(generate_er({3, 0.0, false, 1}).edges.empty());
}

TEST_CASE("attempt cap raises exhaustion") {
  ErConfig cfg{100, 0.01, true, 7, 5};
  CHECK_THROWS_AS(generate_er(cfg), ExhaustionError);
}

TEST_CASE("edge count of G(100, 0.1) is binomial") {
  const double pairs = 4950.0;
  const double mean = pairs * 0.1;
  const double sd = std::sqrt(pairs * 0.1 * 0.9);
  double total = 0.0;
  const int seeds = 200;
  for (int s = 0; s < seeds; ++s) total += static_cast<double>(generate_er({100, 0.1, false, static_cast<std::uint64_t>(s)}).edges.size());
  const double sample_mean = total / seeds;
  CHECK(std::abs(sample_mean - mean) <= 3.0 * sd / std::sqrt(static_cast<double>(seeds)));
}

TEST_CASE("connected ER draws are connected and reproducible") {
  const ErConfig cfg{100, 0.05, true, 42};
  const auto a = generate_er(cfg);
  CHECK(is_connected(a));
  CHECK(a == generate_er(cfg));
  std::set<NodePair> seen(a.edges.begin(), a.edges.end());
  CHECK(seen.size() == a.edges.size());
  for (const auto& e : a.edges) CHECK(e.i < e.j);
}

TEST_CASE("is_connected") {
  CHECK(is_connected({3, {{0, 1}, {1, 2}}}));
  CHECK_FALSE(is_connected({3, {{0, 1}}}));
  CHECK(is_connected({1, {}}));
}

TEST_CASE("event times") {
  const EdgeSet g{4, {{0, 1}, {1, 2}, {2, 3}}};
  CHECK(generate_event_times(g, {100.0, 1}, 0.0).events.empty());

  const auto log = generate_event_times(g, {5.0, 3}, 500.0);
  CHECK_NOTHROW(log.validate());
  CHECK(log == generate_event_times(g, {5.0, 3}, 500.0));
  std::set<NodePair> edges(g.edges.begin(), g.edges.end());
  for (const auto& e : log.events) CHECK(edges.count(NodePair(e.i, e.j)) == 1);

  CHECK_THROWS_AS(generate_event_times(g, {0.0, 3}, 10.0), StructuralError);
}

TEST_CASE("inter-arrival mean is beta") {
  const EdgeSet g{2, {{0, 1}}};
  int within = 0;
  const int seeds = 40;
  double span = 0.0;
  double gaps = 0.0;
  for (int s = 0; s < seeds; ++s) {
    const auto log = generate_event_times(g, {100.0, static_cast<std::uint64_t>(s)}, 1e5);
    const auto& ev = log.events;
    const double mean = (ev.back().t - ev.front().t) / static_cast<double>(ev.size() - 1);
    if (std::abs(mean - 100.0) <= 5.0) ++within;
    span += ev.back().t - ev.front().t;
    gaps += static_cast<double>(ev.size() - 1);
  }
  CHECK(std::abs(span / gaps - 100.0) <= 5.0);
  // about 1000 gaps per seed: relative sd of the mean is ~3.2%, so 5% holds ~88% of the time
  CHECK(within >= 30);
}

TEST_CASE("dt scales the waiting time") {
  const EdgeSet g{2, {{0, 1}}};
  const auto unit = generate_event_times(g, {10.0, 8}, 1e4, 1.0);
  const auto scaled = generate_event_times(g, {10.0, 8}, 2e4, 2.0);
  REQUIRE(unit.events.size() == scaled.events.size());
  for (std::size_t k = 0; k < unit.events.size(); ++k) {
    CHECK(scaled.events[k].t == doctest::Approx(2.0 * unit.events[k].t));
  }
}

TEST_CASE("synthetic log round trips through the contact format") {
  const auto g = generate_er({20, 0.3, false, 5});
  const auto log = generate_event_times(g, {20.0, 6}, 300.0);
  std::stringstream buf;
  write_event_log(buf, log);
  const auto parsed = parse_contact_file(buf);
  CHECK(parsed.log.events.size() == log.events.size());
  CHECK(parsed.log.events.front().t == 0.0);
}

TEST_CASE("initial tie matrix") {
  CHECK(initial_tie_matrix({3, {}}, 0.5).strengths().isZero(0.0));
  const auto b = initial_tie_matrix({2, {{0, 1}}}, 0.5);
  CHECK(b(0, 1) == 0.5);
  CHECK(b(1, 0) == 0.5);
  const auto k3 = initial_tie_matrix({3, {{0, 1}, {0, 2}, {1, 2}}}, 0.5);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(k3(i, j) == (i == j ? 0.0 : 0.5));
  }
  CHECK_THROWS_AS(initial_tie_matrix({2, {{0, 1}}}, -1.0), StructuralError);
}
