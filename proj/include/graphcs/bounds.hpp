#pragma once

#include <map>
#include <string>
#include <vector>

#include "graphcs/types.hpp"

namespace graphcs {

enum class Theorem { kT1Uniform, kT2Er, kT3SmallWorld, kT4VariableDensity, kC1Nonnegative };

std::string to_string(Theorem theorem);

/// Sample-count bound together with the inputs that produced it. The
/// constant C is unknown, so bounds are comparable with each other but not
/// absolute.
struct BoundReport {
  double m_bound = 0.0;
  Theorem theorem = Theorem::kT1Uniform;
  double success_probability = 0.0;  // 1 - e^{-eps} - 3/n
  std::map<std::string, double> inputs;
  std::vector<std::string> warnings;
};

/// m >= C (1+eps) mu^2 k kappa (ln n + ln mu).
BoundReport bound_t1_uniform(Index n, Index k, double mu, double kappa_val, double c = 1.0,
                             double epsilon = 1.0);

/// m >= C (1+eps) k^{3/2} (ln n - ln(delta^2 (b - b^2))) / (delta^2 (b - b^2)).
/// Throws DegenerateInputError for b in {0,1}.
BoundReport bound_t2_er(Index n, Index k, double b, double delta, double c = 1.0,
                        double epsilon = 1.0);

/// m >= C (1+eps) k mu^2 Delta_kappa (ln n + ln mu).
BoundReport bound_t3_small_world(Index n, Index k, double mu, double delta_kappa,
                                 double c = 1.0, double epsilon = 1.0);

/// m >= C (1+eps) phi_bar^2 k kappa (ln n + ln phi_bar).
BoundReport bound_t4_variable_density(Index n, Index k, double phi_bar, double kappa_val,
                                      double c = 1.0, double epsilon = 1.0);

/// The uniform bound with kappa replaced by cond(k, H^* H / n).
BoundReport bound_c1_nonnegative(Index n, Index k, double mu, double cond_gram, double c = 1.0,
                                 double epsilon = 1.0);

}  // namespace graphcs
