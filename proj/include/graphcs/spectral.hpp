#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphcs/diffusion.hpp"
#include "graphcs/graph.hpp"
#include "graphcs/sampling.hpp"
#include "graphcs/types.hpp"

namespace graphcs {

// ---------------------------------------------------------------------------
// Gamma = m [E H_M^* H_M]^{-1}
// ---------------------------------------------------------------------------

enum class GammaSource { kExactFromH, kAnalyticEr, kAnalyticSmallWorld, kEmpiricalExpectedGram };

std::string to_string(GammaSource source);

struct GammaMatrix {
  Matrix gamma;
  GammaSource source = GammaSource::kExactFromH;
};

/// Reciprocal condition threshold below which E[H_M^* H_M] counts as singular.
inline constexpr double kAssumptionRcondFloor = 1e-12;

/// Gamma = n (H^* H)^{-1}, the uniform-sampling Gamma of a fixed realization.
/// Throws AssumptionViolation when H^* H is singular or nearly so.
GammaMatrix gamma_from_matrix(const DiffusionMatrix& h);

/// Gamma = (H^* diag(p) H)^{-1} for a general sampling plan.
GammaMatrix gamma_for_plan(const DiffusionMatrix& h, const SamplingPlan& plan);

/// Gamma = n * gram^{-1} for an expected Gram matrix E[H^* H].
GammaMatrix gamma_from_expected_gram(const Matrix& expected_gram, GammaSource source);

// ---------------------------------------------------------------------------
// Expected operators of the random binary-diffusion models
// ---------------------------------------------------------------------------

/// E[A] = b (11^* - I).
Matrix expected_adjacency_er(Index n, double b);

/// E[H^2] = delta^2 E[A^2] + 2 delta E[A] + I for the ER model.
///   exact:        E[A^2] = (n-2) b^2 11^* + ((n-1) b - (n-2) b^2) I
///   large-n form: E[A^2] = n b^2 11^* + (n b - n b^2) I
/// Throws DegenerateInputError for b outside (0,1).
Matrix expected_gram_er(Index n, double b, double delta, bool exact);

/// E[A] = c A_reg + q (11^* - I), c = (1-b)(1-bd/(n-1)), q = bd/(n-1).
Matrix expected_adjacency_small_world(const Graph& ring, Index d, double b);

/// E[H^2] = delta^2 c^2 A_reg^2 + 2 delta c A_reg + Theta, where Theta
/// carries the off-diagonal f1 term (edge and non-edge cases), the diagonal
/// correction f2 that pins diag E[A^2] = d, and the rewiring part of 2 delta E[A].
Matrix expected_gram_small_world(Index n, Index d, double b, double delta, const Graph& ring);

/// Exact expected degree under generate_small_world. It sits slightly below d
/// because coinciding surviving and reconnected edges clamp to a single edge.
double expected_degree_small_world(Index n, Index d, double b);

// ---------------------------------------------------------------------------
// Incoherence
// ---------------------------------------------------------------------------

/// mu = max(max_ij |h_ij|, max_ij |[H Gamma]_ij|).
double incoherence_mu(const DiffusionMatrix& h, const GammaMatrix& gamma);

/// max(1, 1/(delta^2 (b - b^2))); throws DegenerateInputError for b in {0,1}.
double analytic_mu_er(double b, double delta);

// ---------------------------------------------------------------------------
// k-sparse eigenvalues and condition numbers
// ---------------------------------------------------------------------------

enum class SpectrumMethod { kBruteForce, kGreedyEstimate, kClosedForm };

std::string to_string(SpectrumMethod method);

struct SparseSpectrum {
  Index k = 0;
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  double cond = 1.0;
  SpectrumMethod method = SpectrumMethod::kBruteForce;
  // True when the value is an estimate rather than a certificate: greedy
  // lambda_max is a lower bound, greedy lambda_min an upper bound, so the
  // reported cond is a lower bound on the true k-sparse condition number.
  bool lower_bound = false;
};

inline constexpr std::uint64_t kDefaultSupportCap = 2'000'000;

/// Number of supports C(n, k), saturating at UINT64_MAX.
std::uint64_t support_count(Index n, Index k);

/// Exact k-sparse extreme singular values: every size-k column support S is
/// visited, lambda_max = max_S sigma_max(X_S), lambda_min = min_S sigma_min(X_S).
/// Throws EnumerationCapError when C(n,k) exceeds `cap`.
SparseSpectrum sparse_eigs_bruteforce(const Matrix& x, Index k,
                                      std::uint64_t cap = kDefaultSupportCap);

struct GreedyOptions {
  int restarts = 8;
  std::uint64_t seed = 0;
};

/// Greedy support growth from random starting columns; flagged as a bound.
SparseSpectrum sparse_eigs_greedy(const Matrix& x, Index k, const GreedyOptions& options = {});

enum class KappaMethod { kAuto, kBruteForce, kGreedyEstimate };

/// Brute force below `cap`, greedy above it (kAuto), or as requested.
SparseSpectrum sparse_spectrum(const Matrix& x, Index k, KappaMethod method,
                               std::uint64_t cap = kDefaultSupportCap);

/// sqrt(k - (k-1) b^2 / (n a^2 + b^2 + 2ab)) for X = a 11^* + b I.
/// a = 0 is accepted as the boundary case X = bI.
double cond_closed_form_rank1_shift(Index n, Index k, double a, double b);

struct KappaResult {
  double value = 1.0;
  SparseSpectrum forward;  // cond(k, Gamma)
  SparseSpectrum inverse;  // cond(k, Gamma^{-1})
  bool estimate = false;
};

/// kappa(Gamma) = max(cond(k, Gamma), cond(k, Gamma^{-1})).
KappaResult kappa(const GammaMatrix& gamma, Index k, KappaMethod method = KappaMethod::kAuto,
                  std::uint64_t cap = kDefaultSupportCap);

/// cond(k, H^* H / n); needs h.nonnegative(), otherwise ContractError.
SparseSpectrum cond_nonnegative_shortcut(const DiffusionMatrix& h, Index k,
                                         KappaMethod method = KappaMethod::kAuto,
                                         std::uint64_t cap = kDefaultSupportCap);

// ---------------------------------------------------------------------------
// Small-world conditioning surrogate
// ---------------------------------------------------------------------------

/// Delta_kappa built from the leading k x k principal blocks of A_reg^2 and
/// A_reg^4, the largest column norm of A_reg^2 and sqrt(d).
double delta_kappa_small_world(const Graph& ring, Index n, Index d, double b, double delta,
                               Index k);

/// Leading-block expressions for the ring lattice:
///   lambda_max(k, A_reg)   = ||A_reg,k^2||_{1,1}^{1/2} / sqrt(k)
///   lambda_min(k, A_reg)   = sqrt(d / k)
///   lambda_max(k, A_reg^2) = ||A_reg,k^4||_{1,1}^{1/2} / sqrt(k)
///   lambda_min(k, A_reg^2) = ||A_reg^2||_{1->2} / sqrt(k)
struct RingLeadingBlockSpectrum {
  double lambda_max_a = 0;
  double lambda_min_a = 0;
  double lambda_max_a2 = 0;
  double lambda_min_a2 = 0;
  double cond_a = 0;
  double cond_a2 = 0;
};

RingLeadingBlockSpectrum ring_leading_block_spectrum(const Graph& ring, Index d, Index k);

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

/// || D_K ((1/m) Gamma H_M^* H_M - I) D_K ||_2, the spectral norm of the
/// support-restricted k x k block.
double local_isometry_deviation(const DiffusionMatrix& h, const GammaMatrix& gamma,
                                const std::vector<Index>& support, const SampleSet& samples);

/// max_{i != j} |h_i^* h_j| / (||h_i|| ||h_j||) over the columns of H_M.
/// Throws DegenerateInputError on a zero column.
double mutual_coherence(const Matrix& h_m);

/// The classical exact-recovery threshold 1/(2k-1) reported next to it.
double coherence_threshold(Index k);

}  // namespace graphcs
