#pragma once

#include <vector>

#include "graphcs/diffusion.hpp"
#include "graphcs/rng.hpp"
#include "graphcs/types.hpp"

namespace graphcs {

/// Probability vector over vertices (nonnegative, sums to 1 within 1e-12).
class SamplingPlan {
 public:
  /// Throws ParameterError if any entry is negative or non-finite, or if the
  /// sum deviates from 1 by more than 1e-12.
  static SamplingPlan from_probabilities(std::vector<double> p);

  Index n() const { return static_cast<Index>(p_.size()); }
  const std::vector<double>& probabilities() const { return p_; }
  double operator[](Index i) const { return p_[static_cast<std::size_t>(i)]; }

 private:
  explicit SamplingPlan(std::vector<double> p) : p_(std::move(p)) {}
  std::vector<double> p_;
};

/// Ordered with-replacement draw (omega_1, ..., omega_m).
struct SampleSet {
  std::vector<Index> indices;

  Index m() const { return static_cast<Index>(indices.size()); }
};

/// Row selection H_M of H and the observed values y = H_M alpha.
struct Observation {
  Vector y;
  Matrix rows;
  SampleSet sample_set;
};

struct VariableDensityPlan {
  SamplingPlan plan;
  Vector phi;          // max_j |h_ij|
  Vector phi_tilde;    // max_j |[H Gamma]_ij|
  double phi_bar = 0;  // (sum_j sqrt(phi_j phi~_j)) / n
  int iterations = 1;  // fixed-point passes actually taken
};

SamplingPlan uniform_plan(Index n);

/// p_i proportional to sqrt(phi_i * phi~_i). Throws DegenerateInputError when
/// every weight is zero.
VariableDensityPlan variable_density_plan(const DiffusionMatrix& h, const Matrix& gamma);

struct RefinementOptions {
  int max_iterations = 5;
  double tolerance = 1e-9;  // max |p_new - p_old|
};

/// Starts from the uniform-sampling Gamma and alternates
///   Gamma <- (H^* diag(p) H)^{-1},  p <- variable_density_plan(H, Gamma)
/// until the plan moves less than `tolerance` or the pass budget runs out.
VariableDensityPlan refined_variable_density_plan(const DiffusionMatrix& h,
                                                  const RefinementOptions& options = {});

SampleSet draw_samples(const SamplingPlan& plan, Index m, Rng& rng);

/// Keeps the first occurrence of each vertex, preserving draw order.
SampleSet deduplicate(const SampleSet& samples);

/// Rows of H in sample order (duplicates repeated) and y = rows * alpha.
Observation observe(const DiffusionMatrix& h, const SparseInput& alpha, const SampleSet& samples);

/// Row selection only.
Matrix select_rows(const Matrix& h, const SampleSet& samples);

}  // namespace graphcs
