#include <doctest.h>

#include <cmath>
#include <random>

#include "probnet/graph_metrics.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace probnet;

namespace {

DiscreteGraph path3() {
  const Edge edges[] = {{0, 1}, {1, 2}};
  return DiscreteGraph(3, edges);
}

DiscreteGraph triangle() {
  const Edge edges[] = {{0, 1}, {1, 2}, {0, 2}};
  return DiscreteGraph(3, edges);
}

}  // namespace

TEST_SUITE("graph_metrics") {

TEST_CASE("average shortest path on small graphs") {
  const AvgPathResult tri = avg_shortest_path(triangle());
  CHECK(*tri.value == 1.0);
  CHECK(tri.reachable_fraction == 1.0);

  const AvgPathResult path = avg_shortest_path(path3());
  CHECK(*path.value == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(path.reachable_fraction == 1.0);

  const Edge two_edges[] = {{0, 1}, {2, 3}};
  const AvgPathResult split = avg_shortest_path(DiscreteGraph(4, two_edges));
  CHECK(*split.value == 1.0);
  CHECK(split.reachable_fraction == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("average shortest path needs two nodes and handles total disconnection") {
  CHECK_THROWS_AS(avg_shortest_path(DiscreteGraph(1)), std::invalid_argument);
  const AvgPathResult r = avg_shortest_path(DiscreteGraph(5));
  CHECK_FALSE(r.value.has_value());
  CHECK(r.reachable_fraction == 0.0);
}

TEST_CASE("average shortest path matches the all-pairs oracle") {
  std::mt19937_64 rng(4242);
  for (int round = 0; round < 25; ++round) {
    const std::size_t n = 2 + rng() % 29;
    const DiscreteGraph g = testing::random_connected_graph(rng, n, 0.15);
    const auto dist = testing::floyd_warshall(g);
    std::uint64_t total = 0, pairs = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && dist[i][j] >= 0) {
          total += static_cast<std::uint64_t>(dist[i][j]);
          ++pairs;
        }
    const AvgPathResult got = avg_shortest_path(g);
    CHECK(*got.value == static_cast<double>(total) / static_cast<double>(pairs));
    CHECK(got.reachable_fraction == 1.0);
  }
}

TEST_CASE("betweenness on canonical shapes") {
  const std::vector<double> path = betweenness(path3());
  CHECK(path[0] == 0.0);
  CHECK(path[1] == 2.0);  // ordered pairs a->c and c->a
  CHECK(path[2] == 0.0);

  for (double score : betweenness(triangle())) CHECK(score == 0.0);

  const Edge cycle_edges[] = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  for (double score : betweenness(DiscreteGraph(4, cycle_edges)))
    CHECK(score == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("betweenness matches exhaustive path enumeration") {
  std::mt19937_64 rng(515);
  for (int round = 0; round < 60; ++round) {
    const std::size_t n = 2 + rng() % 6;
    DiscreteGraph g = round % 4 == 0 ? DiscreteGraph(n)  // include edgeless graphs
                                     : testing::random_connected_graph(rng, n, 0.3);
    const auto want = testing::exhaustive_betweenness(g);
    const auto got = betweenness(g);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-9);
  }
}

TEST_CASE("betweenness is bit-identical across thread counts") {
  std::mt19937_64 rng(616);
  const DiscreteGraph g = testing::random_connected_graph(rng, 60, 0.2);
  const auto serial = betweenness(g, 1);
  const auto parallel = betweenness(g, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == parallel[i]);
}

TEST_CASE("clustering coefficient counts connected neighbor pairs") {
  for (NodeId i = 0; i < 3; ++i) CHECK(*clustering_coefficient(triangle(), i) == 1.0);

  const Edge star_edges[] = {{0, 1}, {0, 2}, {0, 3}};
  const DiscreteGraph star(4, star_edges);
  CHECK(*clustering_coefficient(star, 0) == 0.0);
  CHECK_FALSE(clustering_coefficient(star, 1).has_value());  // degree 1

  const Edge mixed[] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}};
  CHECK(*clustering_coefficient(DiscreteGraph(4, mixed), 0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  CHECK_THROWS_AS(clustering_coefficient(star, 9), std::invalid_argument);
}

TEST_CASE("clustering coefficient stays in the unit interval") {
  std::mt19937_64 rng(717);
  for (int round = 0; round < 20; ++round) {
    const DiscreteGraph g = testing::random_connected_graph(rng, 3 + rng() % 20, 0.3);
    for (const auto& cc : clustering_coefficients(g)) {
      if (!cc) continue;
      CHECK(*cc >= 0.0);
      CHECK(*cc <= 1.0);
    }
  }
}

TEST_CASE("rank orders descending with average ranks on ties") {
  const double scores[] = {5.0, 2.0, 2.0};
  const std::vector<double> ranks = rank(scores);
  CHECK(ranks[0] == 1.0);
  CHECK(ranks[1] == 2.5);
  CHECK(ranks[2] == 2.5);

  const double flat[] = {3.0, 3.0, 3.0, 3.0, 3.0};
  for (double r : rank(flat)) CHECK(r == 3.0);  // (n + 1) / 2

  const double two[] = {1.0, 0.0};
  CHECK(rank(two)[0] == 1.0);
  CHECK(rank(two)[1] == 2.0);
}

TEST_CASE("rank is invariant under strictly monotone transforms") {
  std::mt19937_64 rng(818);
  std::uniform_real_distribution<double> value(0.0, 10.0);
  for (int round = 0; round < 30; ++round) {
    std::vector<double> scores(1 + rng() % 12);
    for (double& s : scores) s = value(rng);
    if (rng() % 3 == 0 && scores.size() > 1) scores[1] = scores[0];  // force a tie sometimes
    std::vector<double> transformed(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i)
      transformed[i] = std::exp(0.5 * scores[i]) + 3.0;
    CHECK(rank(scores) == rank(transformed));
  }
}

}  // TEST_SUITE
