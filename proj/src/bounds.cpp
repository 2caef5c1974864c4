#include "graphcs/bounds.hpp"

#include <cmath>
#include <sstream>

#include "graphcs/errors.hpp"

namespace graphcs {

namespace {

void check_common(Index n, Index k, double c, double epsilon) {
  if (n < 2) throw ParameterError("bounds need n >= 2");
  if (k < 1) throw ParameterError("bounds need k >= 1");
  if (!(c > 0.0) || !std::isfinite(c)) throw ParameterError("constant C must be positive");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ParameterError("epsilon must be positive");
  }
}

void check_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ParameterError(std::string(name) + " must be positive and finite");
  }
}

BoundReport base(Theorem theorem, Index n, Index k, double c, double epsilon) {
  BoundReport r;
  r.theorem = theorem;
  r.success_probability = 1.0 - std::exp(-epsilon) - 3.0 / static_cast<double>(n);
  r.inputs["n"] = static_cast<double>(n);
  r.inputs["k"] = static_cast<double>(k);
  r.inputs["C"] = c;
  r.inputs["epsilon"] = epsilon;
  return r;
}

// Shared shape of the uniform, nonnegative and variable-density bounds.
BoundReport weighted(Theorem theorem, Index n, Index k, double weight, const char* weight_name,
                     double cond, const char* cond_name, double c, double epsilon) {
  check_common(n, k, c, epsilon);
  check_positive(weight, weight_name);
  check_positive(cond, cond_name);
  BoundReport r = base(theorem, n, k, c, epsilon);
  r.inputs[weight_name] = weight;
  r.inputs[cond_name] = cond;
  if (weight < 1.0) {
    std::ostringstream os;
    os << weight_name << " = " << weight << " < 1 makes ln " << weight_name << " negative";
    r.warnings.push_back(os.str());
  }
  r.m_bound = c * (1.0 + epsilon) * weight * weight * static_cast<double>(k) * cond *
              (std::log(static_cast<double>(n)) + std::log(weight));
  return r;
}

}  // namespace

std::string to_string(Theorem theorem) {
  switch (theorem) {
    case Theorem::kT1Uniform: return "T1_uniform";
    case Theorem::kT2Er: return "T2_er";
    case Theorem::kT3SmallWorld: return "T3_small_world";
    case Theorem::kT4VariableDensity: return "T4_variable_density";
    case Theorem::kC1Nonnegative: return "C1_nonnegative";
  }
  return "unknown";
}

BoundReport bound_t1_uniform(Index n, Index k, double mu, double kappa_val, double c,
                             double epsilon) {
  return weighted(Theorem::kT1Uniform, n, k, mu, "mu", kappa_val, "kappa", c, epsilon);
}

BoundReport bound_t2_er(Index n, Index k, double b, double delta, double c, double epsilon) {
  check_common(n, k, c, epsilon);
  if (!(b > 0.0 && b < 1.0)) {
    throw DegenerateInputError("ER bound needs 0 < b < 1; at b in {0,1} all vertices of the "
                               "graph must be sampled");
  }
  if (!(delta > 0.0 && delta <= 1.0)) throw ParameterError("coupling delta must lie in (0,1]");
  BoundReport r = base(Theorem::kT2Er, n, k, c, epsilon);
  r.inputs["b"] = b;
  r.inputs["delta"] = delta;
  const double s = delta * delta * (b - b * b);
  const double kd = static_cast<double>(k);
  r.m_bound = c * (1.0 + epsilon) * kd * std::sqrt(kd) *
              (std::log(static_cast<double>(n)) - std::log(s)) / s;
  return r;
}

BoundReport bound_t3_small_world(Index n, Index k, double mu, double delta_kappa, double c,
                                 double epsilon) {
  return weighted(Theorem::kT3SmallWorld, n, k, mu, "mu", delta_kappa, "delta_kappa", c,
                  epsilon);
}

BoundReport bound_t4_variable_density(Index n, Index k, double phi_bar, double kappa_val,
                                      double c, double epsilon) {
  return weighted(Theorem::kT4VariableDensity, n, k, phi_bar, "phi_bar", kappa_val, "kappa", c,
                  epsilon);
}

BoundReport bound_c1_nonnegative(Index n, Index k, double mu, double cond_gram, double c,
                                 double epsilon) {
  return weighted(Theorem::kC1Nonnegative, n, k, mu, "mu", cond_gram, "cond_gram", c, epsilon);
}

}  // namespace graphcs
