#include "graphcs/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "graphcs/errors.hpp"

namespace graphcs {

DiffusionMatrix::DiffusionMatrix(Matrix h) : h_(std::move(h)) {
  nonnegative_ = (h_.array() >= 0.0).all();
}

DiffusionMatrix DiffusionMatrix::from_matrix(Matrix h) {
  if (h.rows() < 1 || h.rows() != h.cols()) {
    throw ParameterError("diffusion matrix must be square and non-empty");
  }
  if (!h.allFinite()) throw ParameterError("diffusion matrix has non-finite entries");
  for (Index j = 0; j < h.cols(); ++j) {
    for (Index i = j + 1; i < h.rows(); ++i) {
      if (h(i, j) != h(j, i)) throw ParameterError("diffusion matrix must be symmetric");
    }
  }
  return DiffusionMatrix(std::move(h));
}

DiffusionMatrix binary_diffusion(const Graph& graph, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    std::ostringstream os;
    os << "coupling delta must lie in (0,1], got " << delta;
    throw ParameterError(os.str());
  }
  Matrix h = delta * graph.adjacency();
  h.diagonal().setOnes();
  return DiffusionMatrix::from_matrix(std::move(h));
}

DiffusionMatrix metropolis_matrix(const Graph& graph) {
  const Index n = graph.n();
  const std::vector<Index> deg = graph.degrees();
  Matrix h = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (!graph.has_edge(i, j)) continue;
      const double w =
          1.0 / (1.0 + static_cast<double>(std::max(deg[static_cast<std::size_t>(i)],
                                                     deg[static_cast<std::size_t>(j)])));
      h(i, j) = w;
      h(j, i) = w;
    }
  }
  for (Index i = 0; i < n; ++i) {
    double off = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (j != i) off += h(i, j);
    }
    h(i, i) = 1.0 - off;
  }
  return DiffusionMatrix::from_matrix(std::move(h));
}

SparseInput SparseInput::make(Index n, std::vector<Index> support, std::vector<double> values) {
  if (n < 1) throw ParameterError("sparse input dimension must be positive");
  if (support.size() != values.size()) {
    throw ParameterError("support and values must have equal length");
  }
  if (static_cast<Index>(support.size()) > n) throw ParameterError("sparsity k exceeds n");
  std::vector<std::size_t> order(support.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
  SparseInput out;
  out.n = n;
  out.support.reserve(support.size());
  out.values.reserve(values.size());
  for (std::size_t idx : order) {
    const Index s = support[idx];
    if (s < 0 || s >= n) throw ParameterError("support index out of range");
    if (!out.support.empty() && out.support.back() == s) {
      throw ParameterError("support indices must be distinct");
    }
    if (values[idx] == 0.0 || !std::isfinite(values[idx])) {
      throw ParameterError("values on the support must be finite and nonzero");
    }
    out.support.push_back(s);
    out.values.push_back(values[idx]);
  }
  return out;
}

SparseInput SparseInput::zero(Index n) { return make(n, {}, {}); }

Vector SparseInput::dense() const {
  Vector x = Vector::Zero(n);
  for (std::size_t i = 0; i < support.size(); ++i) x(support[i]) = values[i];
  return x;
}

std::string to_string(ValueModel model) {
  switch (model) {
    case ValueModel::kStandardNormal: return "standard_normal";
    case ValueModel::kNonnegativeHalfNormal: return "nonnegative_half_normal";
    case ValueModel::kUnit: return "unit";
  }
  return "unknown";
}

ValueModel value_model_from_string(const std::string& name) {
  if (name == "standard_normal") return ValueModel::kStandardNormal;
  if (name == "nonnegative_half_normal") return ValueModel::kNonnegativeHalfNormal;
  if (name == "unit") return ValueModel::kUnit;
  throw ParameterError("unknown value model '" + name + "'");
}

SparseInput generate_sparse_input(Index n, Index k, ValueModel model, Rng& rng) {
  if (n < 1) throw ParameterError("sparse input dimension must be positive");
  if (k < 1 || k > n) {
    throw ParameterError("sparsity k must lie in [1, n], got k=" + std::to_string(k));
  }
  std::vector<Index> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), Index{0});
  std::vector<Index> support;
  support.reserve(static_cast<std::size_t>(k));
  std::sample(all.begin(), all.end(), std::back_inserter(support), k, rng);

  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values(static_cast<std::size_t>(k));
  for (double& v : values) {
    switch (model) {
      case ValueModel::kUnit:
        v = 1.0;
        break;
      case ValueModel::kStandardNormal:
        do { v = normal(rng); } while (v == 0.0);
        break;
      case ValueModel::kNonnegativeHalfNormal:
        do { v = std::abs(normal(rng)); } while (v == 0.0);
        break;
    }
  }
  return SparseInput::make(n, std::move(support), std::move(values));
}

Vector diffuse(const DiffusionMatrix& h, const SparseInput& alpha) {
  if (h.n() != alpha.n) throw ParameterError("dimension mismatch between H and alpha");
  Vector x = Vector::Zero(h.n());
  for (std::size_t i = 0; i < alpha.support.size(); ++i) {
    x.noalias() += alpha.values[i] * h.matrix().col(alpha.support[i]);
  }
  return x;
}

}  // namespace graphcs
