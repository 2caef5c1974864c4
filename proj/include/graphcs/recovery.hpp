#pragma once

#include <optional>
#include <string>

#include "graphcs/diffusion.hpp"
#include "graphcs/types.hpp"

namespace graphcs {

struct SolverConfig {
  double abs_tol = 1e-8;
  double rel_tol = 1e-6;
  int max_iterations = 10000;
  std::optional<double> feasibility_tol;  // default 1e-6 * ||y||_2
  double rho = 1.0;                       // initial penalty
  bool polish = true;                     // least-squares refit on the final support

  /// Throws ParameterError when a tolerance or the penalty is not positive.
  void validate() const;
};

enum class SolverStatus { kConverged, kMaxIterations, kInfeasible };

std::string to_string(SolverStatus status);

struct RecoveryResult {
  Vector alpha_hat;
  double residual_norm = 0.0;  // ||H_M alpha_hat - y||_2
  double l1_value = 0.0;
  int iterations = 0;
  SolverStatus status = SolverStatus::kConverged;
  double feasibility_tol = 0.0;
};

/// min ||alpha||_1 subject to H_M alpha = y, by ADMM on the splitting
/// x in {H_M x = y}, z = x with an l1 penalty on z:
///   x <- Proj(z - u),  z <- soft(x + u, 1/rho),  u <- u + x - z
/// The projection uses an orthonormal basis of the row space of H_M, so
/// repeated or dependent rows are handled. The returned iterate is the
/// projected x, which is feasible up to rounding.
RecoveryResult basis_pursuit(const Matrix& h_m, const Vector& y, const SolverConfig& config = {});

/// ||alpha - alpha_hat||_2 / ||alpha||_2. Throws ParameterError for alpha = 0.
double recovery_error(const SparseInput& alpha, const Vector& alpha_hat);

/// error < threshold.
bool is_success(double error, double threshold = 1e-4);

}  // namespace graphcs
