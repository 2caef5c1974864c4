#include <doctest.h>

#include <cmath>

#include "graphcs/errors.hpp"
#include "graphcs/graph.hpp"

using namespace graphcs;

namespace {

bool valid_graph(const Graph& g) {
  const Matrix& a = g.adjacency();
  if (a != a.transpose()) return false;
  if (a.diagonal().cwiseAbs().maxCoeff() != 0.0) return false;
  return ((a.array() == 0.0) || (a.array() == 1.0)).all();
}

}  // namespace

TEST_SUITE("graph_models") {

TEST_CASE("Graph validation rejects malformed adjacency") {
  Matrix a = Matrix::Zero(3, 3);
  a(0, 1) = 1;
  CHECK_THROWS_AS(Graph::from_adjacency(a), ParameterError);  // asymmetric
  a(1, 0) = 1;
  CHECK_NOTHROW(Graph::from_adjacency(a));
  a(2, 2) = 1;
  CHECK_THROWS_AS(Graph::from_adjacency(a), ParameterError);  // self loop
  a(2, 2) = 0;
  a(0, 2) = a(2, 0) = 0.5;
  CHECK_THROWS_AS(Graph::from_adjacency(a), ParameterError);  // non-binary
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0}}), ParameterError);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), ParameterError);
}

TEST_CASE("edge bookkeeping") {
  const Graph g = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 1}});
  CHECK(g.edge_count() == 2);
  CHECK(g.degree(1) == 2);
  CHECK(g.edges() == std::vector<std::pair<Index, Index>>{{0, 1}, {1, 2}});
}

TEST_CASE("generate_er extremes and errors") {
  Rng rng = make_stream({1});
  const Graph full = generate_er(2, 1.0, rng);
  CHECK(full.adjacency() == (Matrix(2, 2) << 0, 1, 1, 0).finished());
  CHECK(generate_er(5, 0.0, rng).edge_count() == 0);
  CHECK_THROWS_AS(generate_er(5, 1.5, rng), ParameterError);
  CHECK_THROWS_AS(generate_er(5, -0.1, rng), ParameterError);
  CHECK_THROWS_AS(generate_er(1, 0.5, rng), ParameterError);
}

TEST_CASE("ER edge count follows Binomial(C(n,2), b)") {
  const Index n = 20;
  const double b = 0.3;
  const int draws = 10000;
  const double pairs = n * (n - 1) / 2.0;
  Rng rng = make_stream({2});
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int t = 0; t < draws; ++t) {
    const Graph g = generate_er(n, b, rng);
    REQUIRE(valid_graph(g));
    const double e = static_cast<double>(g.edge_count());
    sum += e;
    sum_sq += e * e;
  }
  const double mean = sum / draws;
  const double var = (sum_sq - draws * mean * mean) / (draws - 1);
  const double true_var = pairs * b * (1 - b);
  CHECK(std::abs(mean - 57.0) < 3.0 * std::sqrt(true_var / draws));
  // Standard error of the sample variance, sqrt(2/(N-1)) sigma^2 for a near-normal count.
  CHECK(std::abs(var - true_var) < 4.0 * true_var * std::sqrt(2.0 / (draws - 1)));
}

TEST_CASE("ring regular lattice") {
  const Graph c5 = generate_ring_regular(5, 2);
  for (Index i = 0; i < 5; ++i) {
    CHECK(c5.degree(i) == 2);
    CHECK(c5.has_edge(i, (i + 1) % 5));
  }
  const Graph r6 = generate_ring_regular(6, 4);
  for (Index i = 0; i < 6; ++i) CHECK(r6.degree(i) == 4);
  CHECK(generate_ring_regular(501, 34).edge_count() == 8517);
  CHECK_THROWS_AS(generate_ring_regular(10, 3), ParameterError);
  CHECK_THROWS_AS(generate_ring_regular(4, 4), ParameterError);
}

TEST_CASE("small world with b=0 is the ring lattice") {
  for (Index n = 6; n <= 30; ++n) {
    for (Index d : {2, 4, 6}) {
      if (d > n - 1) continue;
      Rng rng = make_stream({3, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(d)});
      CHECK(generate_small_world(n, d, 0.0, rng) == generate_ring_regular(n, d));
    }
  }
}

TEST_CASE("small world pair law") {
  const Index n = 20;
  const Index d = 4;
  for (double b : {1.0, 0.3}) {
    const int draws = 20000;
    Rng rng = make_stream({4});
    double ring_hits = 0;
    double far_hits = 0;
    for (int t = 0; t < draws; ++t) {
      const Graph g = generate_small_world(n, d, b, rng);
      REQUIRE(valid_graph(g));
      ring_hits += g.adjacency()(0, 1);
      far_hits += g.adjacency()(0, 10);
    }
    CHECK(is_ring_pair(n, d, 0, 1));
    CHECK_FALSE(is_ring_pair(n, d, 0, 10));
    const double p_ring = small_world_edge_probability(n, d, b, true);
    const double p_far = small_world_edge_probability(n, d, b, false);
    CHECK(p_ring == doctest::Approx(1 - b * (1 - b * d / (n - 1.0))).epsilon(1e-15));
    CHECK(p_far == doctest::Approx(b * d / (n - 1.0)).epsilon(1e-15));
    CHECK(std::abs(ring_hits / draws - p_ring) < 3 * std::sqrt(p_ring * (1 - p_ring) / draws) + 1e-12);
    CHECK(std::abs(far_hits / draws - p_far) < 3 * std::sqrt(p_far * (1 - p_far) / draws));
    if (b == 1.0) CHECK(p_ring == doctest::Approx(4.0 / 19.0));
  }
}

TEST_CASE("star-like graphs") {
  Rng rng = make_stream({5});
  const Graph star = generate_star_like(4, 3, rng);
  CHECK(star.edge_count() == 3);
  CHECK(star.degree(0) == 3);
  const Graph big = generate_star_like(501, 8417, rng);
  CHECK(big.degree(0) == 500);
  CHECK(big.edge_count() == 8417);
  CHECK(valid_graph(big));
  CHECK(generate_star_like(5, 10, rng).edge_count() == 10);
  CHECK_THROWS_AS(generate_star_like(5, 3, rng), ParameterError);
  CHECK_THROWS_AS(generate_star_like(5, 11, rng), ParameterError);
}

TEST_CASE("generators are deterministic under a fixed stream key") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng a = make_stream({seed, 7});
    Rng b = make_stream({seed, 7});
    CHECK(generate_er(30, 0.2, a) == generate_er(30, 0.2, b));
    CHECK(generate_small_world(30, 4, 0.4, a) == generate_small_world(30, 4, 0.4, b));
    CHECK(generate_star_like(30, 60, a) == generate_star_like(30, 60, b));
  }
}

TEST_CASE("GraphSpec parsing and validation") {
  CHECK(graph_family_from_string("small_world") == GraphFamily::kSmallWorld);
  CHECK(graph_family_from_string("ring") == GraphFamily::kRingRegular);
  CHECK_THROWS_AS(graph_family_from_string("lattice"), ParameterError);
  CHECK_THROWS_AS(GraphSpec::small_world(10, 3, 0.1).validate(), ParameterError);
  CHECK_THROWS_AS(GraphSpec::er(10, 2.0).validate(), ParameterError);
  CHECK_NOTHROW(GraphSpec::star_like(10, 9).validate());
}

}  // TEST_SUITE
