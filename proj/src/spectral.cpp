#include "graphcs/spectral.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "graphcs/errors.hpp"
#include "graphcs/rng.hpp"

namespace graphcs {

namespace {

void require_open_unit(double b, const char* what) {
  if (!(b > 0.0 && b < 1.0)) {
    std::ostringstream os;
    os << what << " must lie strictly inside (0,1), got " << b
       << "; the model degenerates and every vertex must be sampled";
    throw DegenerateInputError(os.str());
  }
}

void require_delta(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    std::ostringstream os;
    os << "coupling delta must lie in (0,1], got " << delta;
    throw ParameterError(os.str());
  }
}

// Inverts a symmetric positive (semi)definite matrix, refusing near-singular input.
Matrix spd_inverse_or_throw(const Matrix& gram, const char* what) {
  if (!gram.allFinite()) {
    throw AssumptionViolation(std::string(what) + " has non-finite entries");
  }
  Eigen::LDLT<Matrix> ldlt(gram);
  double rcond = 0.0;
  if (ldlt.info() == Eigen::Success) {
    // LDLT::rcond skips zero pivots, so the pivot ratio of D is checked too.
    const Vector d = ldlt.vectorD();
    const double pivot_ratio = d.maxCoeff() > 0.0 ? d.minCoeff() / d.maxCoeff() : 0.0;
    rcond = std::min(ldlt.rcond(), pivot_ratio);
  }
  if (!(rcond >= kAssumptionRcondFloor) || !ldlt.isPositive()) {
    std::ostringstream os;
    os << what << " is singular or ill-conditioned (rcond estimate " << rcond
       << " < " << kAssumptionRcondFloor << ")";
    throw AssumptionViolation(os.str());
  }
  return ldlt.solve(Matrix::Identity(gram.rows(), gram.cols()));
}

// Extreme eigenvalues of a small symmetric block.
struct Extremes {
  double lo;
  double hi;
};

Extremes block_extremes(const Matrix& gram, const std::vector<Index>& idx, Matrix& scratch,
                        Eigen::SelfAdjointEigenSolver<Matrix>& solver) {
  const auto k = static_cast<Index>(idx.size());
  if (k == 1) {
    const double v = gram(idx[0], idx[0]);
    return {v, v};
  }
  if (k == 2) {
    const double a = gram(idx[0], idx[0]);
    const double c = gram(idx[1], idx[1]);
    const double b = gram(idx[0], idx[1]);
    const double mean = 0.5 * (a + c);
    const double rad = std::hypot(0.5 * (a - c), b);
    return {mean - rad, mean + rad};
  }
  scratch.resize(k, k);
  for (Index r = 0; r < k; ++r) {
    for (Index c = 0; c < k; ++c) scratch(r, c) = gram(idx[r], idx[c]);
  }
  solver.compute(scratch, Eigen::EigenvaluesOnly);
  return {solver.eigenvalues()(0), solver.eigenvalues()(k - 1)};
}

SparseSpectrum finish(Index k, double gram_hi, double gram_lo, SpectrumMethod method,
                      bool lower_bound) {
  SparseSpectrum s;
  s.k = k;
  s.lambda_max = std::sqrt(std::max(gram_hi, 0.0));
  s.lambda_min = std::sqrt(std::max(gram_lo, 0.0));
  s.cond = s.lambda_min > 0.0 ? s.lambda_max / s.lambda_min
                              : std::numeric_limits<double>::infinity();
  s.method = method;
  s.lower_bound = lower_bound;
  return s;
}

void require_sparsity(Index n, Index k) {
  if (k < 1 || k > n) {
    throw ParameterError("sparsity k must lie in [1, n], got k=" + std::to_string(k));
  }
}

}  // namespace

std::string to_string(GammaSource source) {
  switch (source) {
    case GammaSource::kExactFromH: return "exact_from_H";
    case GammaSource::kAnalyticEr: return "analytic_er";
    case GammaSource::kAnalyticSmallWorld: return "analytic_small_world";
    case GammaSource::kEmpiricalExpectedGram: return "empirical_expected_gram";
  }
  return "unknown";
}

std::string to_string(SpectrumMethod method) {
  switch (method) {
    case SpectrumMethod::kBruteForce: return "brute_force";
    case SpectrumMethod::kGreedyEstimate: return "greedy_estimate";
    case SpectrumMethod::kClosedForm: return "closed_form";
  }
  return "unknown";
}

GammaMatrix gamma_from_matrix(const DiffusionMatrix& h) {
  const Matrix gram = h.matrix().transpose() * h.matrix();
  return {static_cast<double>(h.n()) * spd_inverse_or_throw(gram, "H^* H"),
          GammaSource::kExactFromH};
}

GammaMatrix gamma_for_plan(const DiffusionMatrix& h, const SamplingPlan& plan) {
  if (plan.n() != h.n()) throw ParameterError("plan dimension does not match H");
  Vector p(h.n());
  for (Index i = 0; i < h.n(); ++i) p(i) = plan[i];
  const Matrix gram = h.matrix().transpose() * p.asDiagonal() * h.matrix();
  return {spd_inverse_or_throw(gram, "H^* diag(p) H"), GammaSource::kExactFromH};
}

GammaMatrix gamma_from_expected_gram(const Matrix& expected_gram, GammaSource source) {
  if (expected_gram.rows() != expected_gram.cols()) {
    throw ParameterError("expected Gram matrix must be square");
  }
  return {static_cast<double>(expected_gram.rows()) *
              spd_inverse_or_throw(expected_gram, "expected Gram matrix"),
          source};
}

Matrix expected_adjacency_er(Index n, double b) {
  require_open_unit(b, "ER edge probability b");
  Matrix ea = Matrix::Constant(n, n, b);
  ea.diagonal().setZero();
  return ea;
}

Matrix expected_gram_er(Index n, double b, double delta, bool exact) {
  if (n < 2) throw ParameterError("ER model needs n >= 2");
  require_open_unit(b, "ER edge probability b");
  require_delta(delta);
  const double nd = static_cast<double>(n);
  double off = 0.0;
  double diag = 0.0;
  if (exact) {
    off = (nd - 2.0) * b * b;
    diag = (nd - 1.0) * b;
  } else {
    off = nd * b * b;
    diag = nd * b;
  }
  Matrix ea2 = Matrix::Constant(n, n, off);
  ea2.diagonal().setConstant(diag);
  Matrix eh2 = delta * delta * ea2 + 2.0 * delta * expected_adjacency_er(n, b);
  eh2.diagonal().array() += 1.0;
  return eh2;
}

Matrix expected_adjacency_small_world(const Graph& ring, Index d, double b) {
  const Index n = ring.n();
  GraphSpec::small_world(n, d, b).validate();
  const double q = b * static_cast<double>(d) / static_cast<double>(n - 1);
  const double c = (1.0 - b) * (1.0 - q);
  Matrix ea = c * ring.adjacency();
  ea.array() += q;
  ea.diagonal().setZero();
  return ea;
}

double expected_degree_small_world(Index n, Index d, double b) {
  GraphSpec::small_world(n, d, b).validate();
  const double dd = static_cast<double>(d);
  return dd * small_world_edge_probability(n, d, b, true) +
         (static_cast<double>(n - 1) - dd) * small_world_edge_probability(n, d, b, false);
}

Matrix expected_gram_small_world(Index n, Index d, double b, double delta, const Graph& ring) {
  if (ring.n() != n) throw ParameterError("ring dimension does not match n");
  GraphSpec::small_world(n, d, b).validate();
  require_delta(delta);
  for (Index i = 0; i < n; ++i) {
    if (ring.degree(i) != d) throw ParameterError("A_reg must be the d-regular ring lattice");
  }
  const double nd = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  const double q = b * dd / (nd - 1.0);
  const double c = (1.0 - b) * (1.0 - q);
  const double n1sq = (nd - 1.0) * (nd - 1.0);
  // Off-diagonal common-neighbour term for lattice edges and non-edges.
  const double f1_edge = (nd - 2.0) * b * b * dd * dd / n1sq +
                         2.0 * b * (1.0 - b) * (nd - 1.0 - b * dd) * dd * (dd - 1.0) / n1sq;
  const double f1_non_edge = (nd - 2.0) * b * b * dd * dd / n1sq +
                             2.0 * b * (1.0 - b) * (nd - 1.0 - b * dd) * dd * dd / n1sq;

  const Matrix& reg = ring.adjacency();
  const Matrix reg2 = reg * reg;

  Matrix ea2(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (i == j) {
        ea2(i, j) = dd;  // c^2 d + f1 + f2 with f2 = d - c^2 d - f1
      } else {
        ea2(i, j) = c * c * reg2(i, j) + (reg(i, j) != 0.0 ? f1_edge : f1_non_edge);
      }
    }
  }
  Matrix eh2 = delta * delta * ea2 + 2.0 * delta * expected_adjacency_small_world(ring, d, b);
  eh2.diagonal().array() += 1.0;
  return eh2;
}

double incoherence_mu(const DiffusionMatrix& h, const GammaMatrix& gamma) {
  if (gamma.gamma.rows() != h.n() || gamma.gamma.cols() != h.n()) {
    throw ParameterError("Gamma dimension does not match H");
  }
  const double h_max = h.matrix().cwiseAbs().maxCoeff();
  const double hg_max = (h.matrix() * gamma.gamma).cwiseAbs().maxCoeff();
  return std::max(h_max, hg_max);
}

double analytic_mu_er(double b, double delta) {
  require_open_unit(b, "ER edge probability b");
  require_delta(delta);
  return std::max(1.0, 1.0 / (delta * delta * (b - b * b)));
}

std::uint64_t support_count(Index n, Index k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t c = 1;
  for (Index i = 0; i < k; ++i) {
    // C(n, i+1) = C(n, i) (n-i) / (i+1), kept exact by cancelling the gcd first.
    const auto den = static_cast<std::uint64_t>(i + 1);
    const std::uint64_t g = std::gcd(c, den);
    const std::uint64_t factor = static_cast<std::uint64_t>(n - i) / (den / g);
    if (c / g > kMax / factor) return kMax;
    c = (c / g) * factor;
  }
  return c;
}

SparseSpectrum sparse_eigs_bruteforce(const Matrix& x, Index k, std::uint64_t cap) {
  const Index n = x.cols();
  require_sparsity(n, k);
  const std::uint64_t count = support_count(n, k);
  if (count > cap) {
    std::ostringstream os;
    os << "C(" << n << "," << k << ") = " << count << " supports exceeds the enumeration cap "
       << cap << "; use the closed form or the greedy estimate";
    throw EnumerationCapError(os.str());
  }
  const Matrix gram = x.transpose() * x;
  std::vector<Index> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), Index{0});
  Matrix scratch;
  Eigen::SelfAdjointEigenSolver<Matrix> solver;
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  while (true) {
    const Extremes e = block_extremes(gram, idx, scratch, solver);
    hi = std::max(hi, e.hi);
    lo = std::min(lo, e.lo);
    // Next combination in lexicographic order.
    Index pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (Index r = pos + 1; r < k; ++r) idx[r] = idx[r - 1] + 1;
  }
  return finish(k, hi, lo, SpectrumMethod::kBruteForce, false);
}

SparseSpectrum sparse_eigs_greedy(const Matrix& x, Index k, const GreedyOptions& options) {
  const Index n = x.cols();
  require_sparsity(n, k);
  if (options.restarts < 1) throw ParameterError("greedy estimate needs at least one restart");
  const Matrix gram = x.transpose() * x;
  Matrix scratch;
  Eigen::SelfAdjointEigenSolver<Matrix> solver;

  double best_hi = -std::numeric_limits<double>::infinity();
  double best_lo = std::numeric_limits<double>::infinity();
  for (int r = 0; r < options.restarts; ++r) {
    Rng rng = make_stream({options.seed, static_cast<std::uint64_t>(r),
                           static_cast<std::uint64_t>(StreamTag::kAnalysis)});
    const Index start = std::uniform_int_distribution<Index>(0, n - 1)(rng);

    for (const bool grow_max : {true, false}) {
      std::vector<Index> support{start};
      std::vector<char> used(static_cast<std::size_t>(n), 0);
      used[static_cast<std::size_t>(start)] = 1;
      Extremes current = block_extremes(gram, support, scratch, solver);
      while (static_cast<Index>(support.size()) < k) {
        Index best_col = -1;
        Extremes best{};
        support.push_back(0);
        for (Index c = 0; c < n; ++c) {
          if (used[static_cast<std::size_t>(c)]) continue;
          support.back() = c;
          const Extremes e = block_extremes(gram, support, scratch, solver);
          const bool better = best_col < 0 || (grow_max ? e.hi > best.hi : e.lo < best.lo);
          if (better) {
            best_col = c;
            best = e;
          }
        }
        support.back() = best_col;
        used[static_cast<std::size_t>(best_col)] = 1;
        current = best;
      }
      if (grow_max) {
        best_hi = std::max(best_hi, current.hi);
      } else {
        best_lo = std::min(best_lo, current.lo);
      }
    }
  }
  return finish(k, best_hi, best_lo, SpectrumMethod::kGreedyEstimate, true);
}

SparseSpectrum sparse_spectrum(const Matrix& x, Index k, KappaMethod method, std::uint64_t cap) {
  switch (method) {
    case KappaMethod::kBruteForce: return sparse_eigs_bruteforce(x, k, cap);
    case KappaMethod::kGreedyEstimate: return sparse_eigs_greedy(x, k);
    case KappaMethod::kAuto:
      if (support_count(x.cols(), k) <= cap) return sparse_eigs_bruteforce(x, k, cap);
      return sparse_eigs_greedy(x, k);
  }
  throw ParameterError("unhandled spectrum method");
}

double cond_closed_form_rank1_shift(Index n, Index k, double a, double b) {
  if (n < 1) throw ParameterError("n must be positive");
  require_sparsity(n, k);
  if (!(a >= 0.0) || !(b > 0.0)) {
    throw ParameterError("closed form needs a >= 0 and b > 0");
  }
  const double kd = static_cast<double>(k);
  const double denom = static_cast<double>(n) * a * a + b * b + 2.0 * a * b;
  return std::sqrt(kd - (kd - 1.0) * b * b / denom);
}

KappaResult kappa(const GammaMatrix& gamma, Index k, KappaMethod method, std::uint64_t cap) {
  const Matrix& g = gamma.gamma;
  if (g.rows() != g.cols()) throw ParameterError("Gamma must be square");
  Eigen::FullPivLU<Matrix> lu(g);
  if (!lu.isInvertible()) throw AssumptionViolation("Gamma is not invertible");
  const Matrix g_inv = lu.inverse();

  KappaResult out;
  out.forward = sparse_spectrum(g, k, method, cap);
  out.inverse = sparse_spectrum(g_inv, k, method, cap);
  out.value = std::max(out.forward.cond, out.inverse.cond);
  out.estimate = out.forward.lower_bound || out.inverse.lower_bound;
  return out;
}

SparseSpectrum cond_nonnegative_shortcut(const DiffusionMatrix& h, Index k, KappaMethod method,
                                         std::uint64_t cap) {
  if (!h.nonnegative()) {
    throw ContractError("the nonnegative shortcut needs an entrywise nonnegative H");
  }
  const Matrix gram = (h.matrix().transpose() * h.matrix()) / static_cast<double>(h.n());
  return sparse_spectrum(gram, k, method, cap);
}

double delta_kappa_small_world(const Graph& ring, Index n, Index d, double b, double delta,
                               Index k) {
  if (d <= 0) throw ParameterError("degree d must be positive");
  if (ring.n() != n) throw ParameterError("ring dimension does not match n");
  GraphSpec::small_world(n, d, b).validate();
  require_delta(delta);
  require_sparsity(n, k);

  const Matrix& reg = ring.adjacency();
  const Matrix a2 = reg * reg;
  const Matrix a4 = a2 * a2;
  const double a2k = a2.topLeftCorner(k, k).cwiseAbs().sum();
  const double a4k = a4.topLeftCorner(k, k).cwiseAbs().sum();
  const double a2_col = a2.colwise().norm().maxCoeff();

  const double q = b * static_cast<double>(d) / static_cast<double>(n - 1);
  const double c = (1.0 - b) * (1.0 - q);
  return delta * delta * c * c * std::sqrt(a4k) / a2_col +
         2.0 * delta * c * std::sqrt(a2k) / std::sqrt(static_cast<double>(d)) +
         std::sqrt(static_cast<double>(k));
}

RingLeadingBlockSpectrum ring_leading_block_spectrum(const Graph& ring, Index d, Index k) {
  require_sparsity(ring.n(), k);
  if (d <= 0) throw ParameterError("degree d must be positive");
  const Matrix& reg = ring.adjacency();
  const Matrix a2 = reg * reg;
  const Matrix a4 = a2 * a2;
  const double sk = std::sqrt(static_cast<double>(k));
  RingLeadingBlockSpectrum s;
  s.lambda_max_a = std::sqrt(a2.topLeftCorner(k, k).cwiseAbs().sum()) / sk;
  s.lambda_min_a = std::sqrt(static_cast<double>(d) / static_cast<double>(k));
  s.lambda_max_a2 = std::sqrt(a4.topLeftCorner(k, k).cwiseAbs().sum()) / sk;
  s.lambda_min_a2 = a2.colwise().norm().maxCoeff() / sk;
  s.cond_a = s.lambda_max_a / s.lambda_min_a;
  s.cond_a2 = s.lambda_max_a2 / s.lambda_min_a2;
  return s;
}

double local_isometry_deviation(const DiffusionMatrix& h, const GammaMatrix& gamma,
                                const std::vector<Index>& support, const SampleSet& samples) {
  const Index n = h.n();
  if (gamma.gamma.rows() != n || gamma.gamma.cols() != n) {
    throw ParameterError("Gamma dimension does not match H");
  }
  std::vector<Index> sorted = support;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ParameterError("support indices must be distinct");
  }
  for (Index s : sorted) {
    if (s < 0 || s >= n) throw ParameterError("support index out of range");
  }
  const auto k = static_cast<Index>(sorted.size());
  if (k == 0) return 0.0;

  const Matrix h_m = select_rows(h.matrix(), samples);
  const double m = static_cast<double>(samples.m());
  Matrix h_m_support(h_m.rows(), k);
  for (Index c = 0; c < k; ++c) h_m_support.col(c) = h_m.col(sorted[c]);
  // Columns K of H_M^* H_M, then rows K of Gamma times that.
  const Matrix gram_cols = h_m.transpose() * h_m_support;
  Matrix gamma_rows(k, n);
  for (Index r = 0; r < k; ++r) gamma_rows.row(r) = gamma.gamma.row(sorted[r]);
  Matrix block = (gamma_rows * gram_cols) / m;
  block.diagonal().array() -= 1.0;
  Eigen::JacobiSVD<Matrix> svd(block);
  return svd.singularValues()(0);
}

double mutual_coherence(const Matrix& h_m) {
  const Index n = h_m.cols();
  const Vector norms = h_m.colwise().norm().transpose();
  for (Index j = 0; j < n; ++j) {
    if (norms(j) == 0.0) {
      throw DegenerateInputError("column " + std::to_string(j) + " of H_M is zero");
    }
  }
  const Matrix gram = h_m.transpose() * h_m;
  double best = 0.0;
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) {
      best = std::max(best, std::abs(gram(i, j)) / (norms(i) * norms(j)));
    }
  }
  return best;
}

double coherence_threshold(Index k) {
  if (k < 1) throw ParameterError("k must be positive");
  return 1.0 / static_cast<double>(2 * k - 1);
}

}  // namespace graphcs
