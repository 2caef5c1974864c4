#include "graphcs/sampling.hpp"

#include <cmath>
#include <numeric>
#include <unordered_set>

#include "graphcs/errors.hpp"
#include "graphcs/spectral.hpp"

namespace graphcs {

SamplingPlan SamplingPlan::from_probabilities(std::vector<double> p) {
  if (p.empty()) throw ParameterError("sampling plan needs at least one vertex");
  double total = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ParameterError("sampling probabilities must be finite and nonnegative");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ParameterError("sampling probabilities must sum to 1");
  }
  return SamplingPlan(std::move(p));
}

SamplingPlan uniform_plan(Index n) {
  if (n < 1) throw ParameterError("uniform plan needs n >= 1");
  return SamplingPlan::from_probabilities(
      std::vector<double>(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n)));
}

VariableDensityPlan variable_density_plan(const DiffusionMatrix& h, const Matrix& gamma) {
  const Index n = h.n();
  if (gamma.rows() != n || gamma.cols() != n) {
    throw ParameterError("Gamma dimension does not match H");
  }
  if (!gamma.allFinite()) throw ParameterError("Gamma has non-finite entries");

  const Matrix h_gamma = h.matrix() * gamma;
  VariableDensityPlan out{uniform_plan(n), Vector(n), Vector(n), 0.0, 1};
  out.phi = h.matrix().cwiseAbs().rowwise().maxCoeff();
  out.phi_tilde = h_gamma.cwiseAbs().rowwise().maxCoeff();

  const Vector w = (out.phi.array() * out.phi_tilde.array()).sqrt().matrix();
  const double total = w.sum();
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw DegenerateInputError("variable-density weights are all zero");
  }
  std::vector<double> p(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = w(i) / total;

  // Division leaves the sum within a few ulps of 1; renormalise once so the
  // plan invariant holds for large n as well.
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= s;

  out.plan = SamplingPlan::from_probabilities(std::move(p));
  out.phi_bar = total / static_cast<double>(n);
  return out;
}

VariableDensityPlan refined_variable_density_plan(const DiffusionMatrix& h,
                                                  const RefinementOptions& options) {
  VariableDensityPlan current = variable_density_plan(h, gamma_from_matrix(h).gamma);
  for (int pass = 1; pass < options.max_iterations; ++pass) {
    const GammaMatrix g = gamma_for_plan(h, current.plan);
    VariableDensityPlan next = variable_density_plan(h, g.gamma);
    next.iterations = pass + 1;
    double moved = 0.0;
    for (Index i = 0; i < h.n(); ++i) moved = std::max(moved, std::abs(next.plan[i] - current.plan[i]));
    current = std::move(next);
    if (moved < options.tolerance) break;
  }
  return current;
}

SampleSet draw_samples(const SamplingPlan& plan, Index m, Rng& rng) {
  if (m < 1) throw ParameterError("sample count m must be at least 1");
  const auto& p = plan.probabilities();
  std::discrete_distribution<Index> pick(p.begin(), p.end());
  SampleSet out;
  out.indices.resize(static_cast<std::size_t>(m));
  for (Index& omega : out.indices) omega = pick(rng);
  return out;
}

SampleSet deduplicate(const SampleSet& samples) {
  SampleSet out;
  std::unordered_set<Index> seen;
  for (Index i : samples.indices) {
    if (seen.insert(i).second) out.indices.push_back(i);
  }
  return out;
}

Matrix select_rows(const Matrix& h, const SampleSet& samples) {
  if (samples.indices.empty()) throw ParameterError("sample set is empty");
  Matrix rows(samples.m(), h.cols());
  for (Index r = 0; r < samples.m(); ++r) {
    const Index omega = samples.indices[static_cast<std::size_t>(r)];
    if (omega < 0 || omega >= h.rows()) throw ParameterError("sample index out of range");
    rows.row(r) = h.row(omega);
  }
  return rows;
}

Observation observe(const DiffusionMatrix& h, const SparseInput& alpha, const SampleSet& samples) {
  if (h.n() != alpha.n) throw ParameterError("dimension mismatch between H and alpha");
  Observation obs;
  obs.rows = select_rows(h.matrix(), samples);
  obs.y = obs.rows * alpha.dense();
  obs.sample_set = samples;
  return obs;
}

}  // namespace graphcs
