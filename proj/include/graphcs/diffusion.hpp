#pragma once

#include <string>
#include <vector>

#include "graphcs/graph.hpp"
#include "graphcs/rng.hpp"
#include "graphcs/types.hpp"

namespace graphcs {

/// Dense symmetric diffusion operator H with a cached nonnegativity flag.
class DiffusionMatrix {
 public:
  /// Throws ParameterError unless `h` is square, finite and exactly symmetric.
  static DiffusionMatrix from_matrix(Matrix h);

  Index n() const { return h_.rows(); }
  const Matrix& matrix() const { return h_; }
  double operator()(Index i, Index j) const { return h_(i, j); }
  bool nonnegative() const { return nonnegative_; }

 private:
  explicit DiffusionMatrix(Matrix h);

  Matrix h_;
  bool nonnegative_ = false;
};

/// H = I + delta * A, 0 < delta <= 1.
DiffusionMatrix binary_diffusion(const Graph& graph, double delta);

/// Symmetric doubly stochastic Metropolis weights:
///   h_ij = 1 / (1 + max(d_i, d_j)) on edges, h_ii = 1 - sum_{j != i} h_ij.
DiffusionMatrix metropolis_matrix(const Graph& graph);

/// Sparse source vector with an explicit sorted support.
struct SparseInput {
  Index n = 0;
  std::vector<Index> support;
  std::vector<double> values;

  /// Validates and sorts by index. Throws ParameterError.
  static SparseInput make(Index n, std::vector<Index> support, std::vector<double> values);
  static SparseInput zero(Index n);

  Index k() const { return static_cast<Index>(support.size()); }
  Vector dense() const;
};

enum class ValueModel { kStandardNormal, kNonnegativeHalfNormal, kUnit };

std::string to_string(ValueModel model);
ValueModel value_model_from_string(const std::string& name);

/// Support uniform over k-subsets of {0..n-1}; values i.i.d. from `model`.
SparseInput generate_sparse_input(Index n, Index k, ValueModel model, Rng& rng);

/// x = H alpha.
Vector diffuse(const DiffusionMatrix& h, const SparseInput& alpha);

}  // namespace graphcs
