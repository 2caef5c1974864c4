#include "graphcs/recovery.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>

#include "graphcs/errors.hpp"

namespace graphcs {

namespace {

Vector soft_threshold(const Vector& v, double t) {
  return v.unaryExpr([t](double x) {
    if (x > t) return x - t;
    if (x < -t) return x + t;
    return 0.0;
  });
}

// Affine projector onto {x : A x = y}: x0 + (I - Q Q^T)(v - x0).
struct AffineProjector {
  Matrix q;   // orthonormal basis of the row space of A (n x r)
  Vector x0;  // minimum-norm solution

  Vector operator()(const Vector& v) const {
    const Vector d = v - x0;
    return v - q * (q.transpose() * d);
  }
};

// Least-squares refit of y on the columns where |z| exceeds `floor`.
// Returns an empty vector when the refit is not available.
Vector refit_on_support(const Matrix& a, const Vector& y, const Vector& z, double floor) {
  std::vector<Index> support;
  for (Index j = 0; j < z.size(); ++j) {
    if (std::abs(z(j)) > floor) support.push_back(j);
  }
  if (support.empty() || static_cast<Index>(support.size()) > a.rows()) return {};
  Matrix a_s(a.rows(), static_cast<Index>(support.size()));
  for (std::size_t c = 0; c < support.size(); ++c) {
    a_s.col(static_cast<Index>(c)) = a.col(support[c]);
  }
  const Vector w = Eigen::CompleteOrthogonalDecomposition<Matrix>(a_s).solve(y);
  Vector out = Vector::Zero(z.size());
  for (std::size_t c = 0; c < support.size(); ++c) out(support[c]) = w(static_cast<Index>(c));
  return out;
}

// Optimality certificate for a feasible x: some nu with (A^T nu)_j = sign(x_j)
// on the support and |A^T nu|_j <= 1 elsewhere. Tries the correction of
// `nu_guess` of least norm that matches the signs on the support.
bool certified_optimal(const Matrix& a, const Vector& x, const Vector& nu_guess, double tol) {
  std::vector<Index> support;
  for (Index j = 0; j < x.size(); ++j) {
    if (x(j) != 0.0) support.push_back(j);
  }
  if (support.empty()) return false;
  const auto k = static_cast<Index>(support.size());
  Matrix a_s(a.rows(), k);
  Vector sign(k);
  for (Index c = 0; c < k; ++c) {
    a_s.col(c) = a.col(support[static_cast<std::size_t>(c)]);
    sign(c) = x(support[static_cast<std::size_t>(c)]) > 0.0 ? 1.0 : -1.0;
  }
  const Vector rhs = sign - a_s.transpose() * nu_guess;
  const Vector nu =
      nu_guess + Eigen::CompleteOrthogonalDecomposition<Matrix>(a_s.transpose()).solve(rhs);
  if ((a_s.transpose() * nu - sign).lpNorm<Eigen::Infinity>() > tol) return false;
  return (a.transpose() * nu).lpNorm<Eigen::Infinity>() <= 1.0 + tol;
}

constexpr int kCertificateInterval = 20;
constexpr double kCertificateTol = 1e-9;
constexpr double kSupportFloor = 1e-6;
constexpr int kBalanceInterval = 10;
constexpr int kBalanceIterations = 1000;

}  // namespace

void SolverConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw ParameterError("solver tolerances must be positive");
  if (max_iterations < 1) throw ParameterError("max_iterations must be at least 1");
  if (feasibility_tol && !(*feasibility_tol > 0.0)) {
    throw ParameterError("feasibility_tol must be positive");
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) throw ParameterError("rho must be positive");
}

std::string to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::kConverged: return "converged";
    case SolverStatus::kMaxIterations: return "max_iterations";
    case SolverStatus::kInfeasible: return "infeasible";
  }
  return "unknown";
}

RecoveryResult basis_pursuit(const Matrix& h_m, const Vector& y, const SolverConfig& config) {
  config.validate();
  const Index m = h_m.rows();
  const Index n = h_m.cols();
  if (m < 1 || n < 1) throw ParameterError("H_M must have at least one row and one column");
  if (y.size() != m) throw ParameterError("y length does not match the rows of H_M");
  if (!h_m.allFinite() || !y.allFinite()) throw ParameterError("H_M and y must be finite");

  RecoveryResult out;
  const double y_norm = y.norm();
  out.feasibility_tol = config.feasibility_tol.value_or(1e-6 * y_norm);

  if (y_norm == 0.0) {
    out.alpha_hat = Vector::Zero(n);
    return out;
  }

  // Work on y / ||y|| so the iterates do not depend on the scale of y.
  const Vector y_unit = y / y_norm;
  const double tol_unit = out.feasibility_tol / y_norm;

  // Row space of H_M from a rank-revealing QR of H_M^T.
  Eigen::ColPivHouseholderQR<Matrix> qr(h_m.transpose());
  AffineProjector proj;
  proj.q = Matrix(qr.householderQ()).leftCols(qr.rank());
  proj.x0 = Eigen::CompleteOrthogonalDecomposition<Matrix>(h_m).solve(y_unit);
  const double ls_residual = (h_m * proj.x0 - y_unit).norm();
  if (ls_residual > tol_unit) {
    out.alpha_hat = y_norm * proj.x0;
    out.residual_norm = (h_m * out.alpha_hat - y).norm();
    out.l1_value = out.alpha_hat.lpNorm<1>();
    out.status = SolverStatus::kInfeasible;
    return out;
  }

  // Least-squares multiplier recovery from the scaled dual, for certificates.
  const Eigen::CompleteOrthogonalDecomposition<Matrix> dual_solver(h_m.transpose());

  double rho = config.rho;
  Vector z = proj.x0;
  Vector u = Vector::Zero(n);
  Vector x = proj.x0;
  std::optional<Vector> certified;
  out.status = SolverStatus::kMaxIterations;
  int it = 0;
  while (it < config.max_iterations) {
    ++it;
    x = proj(z - u);
    const Vector z_prev = z;
    z = soft_threshold(x + u, 1.0 / rho);
    u += x - z;

    const double r = (x - z).norm();
    const double s = rho * (z - z_prev).norm();
    const double eps_pri = config.abs_tol + config.rel_tol * std::max(x.norm(), z.norm());
    const double eps_dual = config.abs_tol + config.rel_tol * rho * u.norm();
    if (r <= eps_pri && s <= eps_dual) {
      out.status = SolverStatus::kConverged;
      break;
    }
    // Early exit once the support refit carries an optimality certificate.
    if (config.polish && it % kCertificateInterval == 0) {
      Vector cand = refit_on_support(h_m, y_unit, z, kSupportFloor * z.lpNorm<Eigen::Infinity>());
      if (cand.size() == n && (h_m * cand - y_unit).norm() <= tol_unit) {
        const Vector nu_dual = dual_solver.solve(Vector(rho * u));
        if (certified_optimal(h_m, cand, nu_dual, kCertificateTol) ||
            certified_optimal(h_m, cand, Vector::Zero(m), kCertificateTol)) {
          certified = std::move(cand);
          out.status = SolverStatus::kConverged;
          break;
        }
      }
    }
    // Residual balancing, frozen after kBalanceIterations so the fixed-rho
    // iteration can converge; u is the scaled dual so it rescales with 1/rho.
    if (it > kBalanceIterations || it % kBalanceInterval != 0) continue;
    if (r > 10.0 * s) {
      rho *= 2.0;
      u /= 2.0;
    } else if (s > 10.0 * r) {
      rho /= 2.0;
      u *= 2.0;
    }
  }
  out.iterations = it;

  Vector best = x;
  if (certified) {
    best = *certified;
  } else if (config.polish) {
    const Vector cand = refit_on_support(h_m, y_unit, z, 0.0);
    if (cand.size() == n && (h_m * cand - y_unit).norm() <= tol_unit &&
        cand.lpNorm<1>() <= x.lpNorm<1>()) {
      best = cand;
    }
  }

  out.alpha_hat = y_norm * best;
  out.residual_norm = (h_m * out.alpha_hat - y).norm();
  out.l1_value = out.alpha_hat.lpNorm<1>();
  if (out.status == SolverStatus::kConverged && out.residual_norm > out.feasibility_tol) {
    out.status = SolverStatus::kMaxIterations;
  }
  return out;
}

double recovery_error(const SparseInput& alpha, const Vector& alpha_hat) {
  if (alpha_hat.size() != alpha.n) throw ParameterError("alpha_hat length does not match alpha");
  const Vector truth = alpha.dense();
  const double denom = truth.norm();
  if (denom == 0.0) throw ParameterError("recovery error is undefined for a zero input");
  return (truth - alpha_hat).norm() / denom;
}

bool is_success(double error, double threshold) { return error < threshold; }

}  // namespace graphcs
