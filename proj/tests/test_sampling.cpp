#include <doctest.h>

#include <cmath>
#include <numeric>

#include "graphcs/errors.hpp"
#include "graphcs/sampling.hpp"
#include "graphcs/spectral.hpp"
#include "oracles/oracles.hpp"

using namespace graphcs;

namespace {

// Variable-density probabilities of H = I + delta A on the 3-vertex star,
// with every intermediate quantity in exact rational arithmetic.
std::vector<double> star_plan_exact(oracle::Rational delta) {
  using oracle::Rational;
  oracle::RMatrix h = {{1, delta, delta}, {delta, 1, 0}, {delta, 0, 1}};
  oracle::RMatrix gamma = oracle::rational_inverse(oracle::rational_multiply(h, h));
  for (auto& row : gamma)
    for (auto& v : row) v = v * Rational(3);
  const oracle::RMatrix hg = oracle::rational_multiply(h, gamma);
  std::vector<double> w(3);
  for (std::size_t i = 0; i < 3; ++i) {
    Rational phi;
    Rational phi_t;
    for (std::size_t j = 0; j < 3; ++j) {
      if (phi < h[i][j].abs()) phi = h[i][j].abs();
      if (phi_t < hg[i][j].abs()) phi_t = hg[i][j].abs();
    }
    w[i] = std::sqrt((phi * phi_t).to_double());
  }
  const double total = w[0] + w[1] + w[2];
  for (double& v : w) v /= total;
  return w;
}

}  // namespace

TEST_SUITE("sampling") {

TEST_CASE("uniform plans") {
  CHECK(uniform_plan(4).probabilities() == std::vector<double>(4, 0.25));
  CHECK(uniform_plan(1).probabilities() == std::vector<double>{1.0});
  const auto& p = uniform_plan(1000).probabilities();
  CHECK(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) <= 1e-12);
  CHECK_THROWS_AS(uniform_plan(0), ParameterError);
}

TEST_CASE("plan validation") {
  CHECK_THROWS_AS(SamplingPlan::from_probabilities({0.5, 0.6}), ParameterError);
  CHECK_THROWS_AS(SamplingPlan::from_probabilities({1.5, -0.5}), ParameterError);
  CHECK_NOTHROW(SamplingPlan::from_probabilities({1.0, 0.0}));
}

TEST_CASE("variable density on symmetric models is uniform") {
  const DiffusionMatrix id = DiffusionMatrix::from_matrix(Matrix::Identity(5, 5));
  const VariableDensityPlan p = variable_density_plan(id, 5.0 * Matrix::Identity(5, 5));
  for (double v : p.plan.probabilities()) CHECK(v == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(p.phi_bar == doctest::Approx(std::sqrt(5.0)));

  const DiffusionMatrix cycle = binary_diffusion(generate_ring_regular(7, 2), 1.0);
  const VariableDensityPlan c = variable_density_plan(cycle, gamma_from_matrix(cycle).gamma);
  for (double v : c.plan.probabilities()) CHECK(std::abs(v - 1.0 / 7.0) < 1e-12);
}

TEST_CASE("3-vertex star plan against exact rational arithmetic") {
  const Graph star = Graph::from_edges(3, {{0, 1}, {0, 2}});
  for (auto [num, den] : {std::pair{1, 1}, std::pair{1, 2}}) {
    const double delta = double(num) / den;
    const DiffusionMatrix h = binary_diffusion(star, delta);
    const VariableDensityPlan p = variable_density_plan(h, gamma_from_matrix(h).gamma);
    const std::vector<double> exact = star_plan_exact(oracle::Rational(num, den));
    for (Index i = 0; i < 3; ++i) CHECK(std::abs(p.plan[i] - exact[i]) < 1e-12);
    if (den == 1) {
      // Every row of H^{-1} peaks at 1 when delta = 1, so the plan is uniform.
      for (Index i = 0; i < 3; ++i) CHECK(std::abs(p.plan[i] - 1.0 / 3.0) < 1e-12);
    } else {
      CHECK(std::abs(p.plan[0] - p.plan[1]) > 1e-3);
      CHECK(std::abs(p.plan[1] - p.plan[2]) < 1e-12);
    }
  }
}

TEST_CASE("degenerate variable density weights") {
  const DiffusionMatrix h = DiffusionMatrix::from_matrix(Matrix::Identity(3, 3));
  CHECK_THROWS_AS(variable_density_plan(h, Matrix::Zero(3, 3)), DegenerateInputError);
  Matrix bad = Matrix::Identity(3, 3);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(variable_density_plan(h, bad), ParameterError);
}

TEST_CASE("phi_bar <= mu and plan normalization on random graphs") {
  int checked = 0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    Rng rng = make_stream({20, s});
    const Index n = 5 + static_cast<Index>(s % 46);
    const Graph g = generate_er(n, 0.2 + 0.01 * static_cast<double>(s % 10), rng);
    const DiffusionMatrix h = s % 2 ? binary_diffusion(g, 0.8) : metropolis_matrix(g);
    GammaMatrix gamma;
    try {
      gamma = gamma_from_matrix(h);
    } catch (const AssumptionViolation&) {
      continue;
    }
    const VariableDensityPlan p = variable_density_plan(h, gamma.gamma);
    const auto& probs = p.plan.probabilities();
    CHECK(std::abs(std::accumulate(probs.begin(), probs.end(), 0.0) - 1.0) <= 1e-12);
    for (double v : probs) CHECK(v >= 0.0);
    CHECK(p.phi_bar <= incoherence_mu(h, gamma));
    ++checked;
  }
  CHECK(checked >= 30);
}

TEST_CASE("refined plan is a fixed point iteration within the pass budget") {
  Rng rng = make_stream({21});
  const DiffusionMatrix h = binary_diffusion(generate_er(20, 0.3, rng), 0.5);
  const VariableDensityPlan one = variable_density_plan(h, gamma_from_matrix(h).gamma);
  const VariableDensityPlan refined = refined_variable_density_plan(h);
  CHECK(refined.iterations >= 1);
  CHECK(refined.iterations <= 5);
  const auto& p = refined.plan.probabilities();
  CHECK(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) <= 1e-12);
  const VariableDensityPlan single = refined_variable_density_plan(h, {1, 1e-9});
  for (Index i = 0; i < 20; ++i) CHECK(single.plan[i] == one.plan[i]);
}

TEST_CASE("draw_samples") {
  Rng rng = make_stream({22});
  CHECK(draw_samples(uniform_plan(1), 5, rng).indices == std::vector<Index>(5, 0));
  const SamplingPlan point = SamplingPlan::from_probabilities({1.0, 0.0, 0.0});
  CHECK(draw_samples(point, 3, rng).indices == std::vector<Index>(3, 0));
  CHECK_THROWS_AS(draw_samples(point, 0, rng), ParameterError);

  const int m = 100000;
  const SampleSet s = draw_samples(uniform_plan(10), m, rng);
  std::vector<int> counts(10, 0);
  for (Index i : s.indices) ++counts[static_cast<std::size_t>(i)];
  const double se = std::sqrt(0.1 * 0.9 / m);
  for (int c : counts) CHECK(std::abs(c / double(m) - 0.1) < 4 * se);

  Rng a = make_stream({23});
  Rng b = make_stream({23});
  CHECK(draw_samples(uniform_plan(50), 40, a).indices == draw_samples(uniform_plan(50), 40, b).indices);
}

TEST_CASE("deduplicate keeps first occurrences in order") {
  CHECK(deduplicate(SampleSet{{3, 1, 3, 2, 1}}).indices == std::vector<Index>{3, 1, 2});
}

TEST_CASE("observe") {
  Rng rng = make_stream({24});
  const SparseInput a = generate_sparse_input(6, 2, ValueModel::kStandardNormal, rng);
  const DiffusionMatrix id = DiffusionMatrix::from_matrix(Matrix::Identity(6, 6));
  CHECK(observe(id, a, SampleSet{{0, 1, 2, 3, 4, 5}}).y == a.dense());

  const DiffusionMatrix h = binary_diffusion(generate_er(6, 0.5, rng), 1.0);
  const Observation dup = observe(h, a, SampleSet{{2, 4, 2}});
  CHECK(dup.y(0) == dup.y(2));
  CHECK(dup.rows.row(1) == h.matrix().row(4));

  const DiffusionMatrix edge = binary_diffusion(Graph::from_edges(2, {{0, 1}}), 1.0);
  CHECK(observe(edge, SparseInput::make(2, {0}, {1.0}), SampleSet{{1}}).y == Vector::Ones(1));
  CHECK_THROWS_AS(observe(edge, SparseInput::make(2, {0}, {1.0}), SampleSet{{2}}), ParameterError);
  CHECK_THROWS_AS(observe(edge, SparseInput::make(2, {0}, {1.0}), SampleSet{}), ParameterError);
}

TEST_CASE("draw then observe is deterministic") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng g = make_stream({25, s});
    const DiffusionMatrix h = binary_diffusion(generate_er(15, 0.3, g), 1.0);
    const SparseInput a = generate_sparse_input(15, 3, ValueModel::kStandardNormal, g);
    Rng r1 = make_stream({26, s});
    Rng r2 = make_stream({26, s});
    CHECK(observe(h, a, draw_samples(uniform_plan(15), 9, r1)).y ==
          observe(h, a, draw_samples(uniform_plan(15), 9, r2)).y);
  }
}

}  // TEST_SUITE
