#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "graphcs/bounds.hpp"
#include "graphcs/errors.hpp"
#include "graphcs/experiment.hpp"
#include "graphcs/io.hpp"
#include "graphcs/recovery.hpp"
#include "graphcs/sampling.hpp"
#include "graphcs/spectral.hpp"

namespace py = pybind11;
using namespace graphcs;

namespace {

Graph graph_from(const Matrix& adjacency) { return Graph::from_adjacency(adjacency); }

py::dict bound_dict(const BoundReport& r) {
  py::dict d;
  d["theorem"] = to_string(r.theorem);
  d["m_bound"] = r.m_bound;
  d["success_probability"] = r.success_probability;
  d["inputs"] = r.inputs;
  d["warnings"] = r.warnings;
  return d;
}

py::dict spectrum_dict(const SparseSpectrum& s) {
  py::dict d;
  d["k"] = s.k;
  d["lambda_max"] = s.lambda_max;
  d["lambda_min"] = s.lambda_min;
  d["cond"] = s.cond;
  d["method"] = to_string(s.method);
  d["lower_bound"] = s.lower_bound;
  return d;
}

KappaMethod kappa_method(const std::string& name) {
  if (name == "auto") return KappaMethod::kAuto;
  if (name == "brute_force") return KappaMethod::kBruteForce;
  if (name == "greedy_estimate") return KappaMethod::kGreedyEstimate;
  throw ParameterError("unknown method '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sampling and sparse recovery of diffused graph signals";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError", PyExc_ValueError);
  py::register_exception<AssumptionViolation>(m, "AssumptionViolation", PyExc_ArithmeticError);
  py::register_exception<EnumerationCapError>(m, "EnumerationCapError", PyExc_RuntimeError);
  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  // Graphs are exchanged as dense adjacency arrays.
  m.def(
      "generate_graph",
      [](const std::string& family, Index n, double b, Index d, std::int64_t target_edges,
         std::uint64_t seed) {
        GraphSpec spec;
        switch (graph_family_from_string(family)) {
          case GraphFamily::kEr: spec = GraphSpec::er(n, b); break;
          case GraphFamily::kSmallWorld: spec = GraphSpec::small_world(n, d, b); break;
          case GraphFamily::kRingRegular: spec = GraphSpec::ring_regular(n, d); break;
          case GraphFamily::kStarLike: spec = GraphSpec::star_like(n, target_edges); break;
          case GraphFamily::kCustom: throw ParameterError("custom graphs are passed as arrays");
        }
        Rng rng = make_stream({seed, static_cast<std::uint64_t>(StreamTag::kGraph)});
        return generate(spec, rng).adjacency();
      },
      py::arg("family"), py::arg("n"), py::arg("b") = 0.0, py::arg("d") = 0,
      py::arg("target_edges") = 0, py::arg("seed") = 0);

  m.def(
      "binary_diffusion",
      [](const Matrix& a, double delta) { return binary_diffusion(graph_from(a), delta).matrix(); },
      py::arg("adjacency"), py::arg("delta") = 1.0);
  m.def(
      "metropolis_matrix",
      [](const Matrix& a) { return metropolis_matrix(graph_from(a)).matrix(); },
      py::arg("adjacency"));

  m.def(
      "gamma_from_matrix",
      [](const Matrix& h) { return gamma_from_matrix(DiffusionMatrix::from_matrix(h)).gamma; },
      py::arg("h"));
  m.def(
      "incoherence_mu",
      [](const Matrix& h, const Matrix& gamma) {
        return incoherence_mu(DiffusionMatrix::from_matrix(h), GammaMatrix{gamma});
      },
      py::arg("h"), py::arg("gamma"));
  m.def("analytic_mu_er", &analytic_mu_er, py::arg("b"), py::arg("delta") = 1.0);

  m.def(
      "sparse_spectrum",
      [](const Matrix& x, Index k, const std::string& method) {
        return spectrum_dict(sparse_spectrum(x, k, kappa_method(method)));
      },
      py::arg("x"), py::arg("k"), py::arg("method") = "auto");
  m.def(
      "kappa",
      [](const Matrix& gamma, Index k, const std::string& method) {
        const KappaResult r = kappa(GammaMatrix{gamma}, k, kappa_method(method));
        py::dict d;
        d["value"] = r.value;
        d["forward"] = spectrum_dict(r.forward);
        d["inverse"] = spectrum_dict(r.inverse);
        d["estimate"] = r.estimate;
        return d;
      },
      py::arg("gamma"), py::arg("k"), py::arg("method") = "auto");
  m.def("cond_closed_form_rank1_shift", &cond_closed_form_rank1_shift, py::arg("n"), py::arg("k"),
        py::arg("a"), py::arg("b"));

  m.def(
      "variable_density_plan",
      [](const Matrix& h) {
        const VariableDensityPlan p = variable_density_plan(
            DiffusionMatrix::from_matrix(h), gamma_from_matrix(DiffusionMatrix::from_matrix(h)).gamma);
        return py::make_tuple(p.plan.probabilities(), p.phi_bar);
      },
      py::arg("h"), "Returns (probabilities, phi_bar) using Gamma = n (H^T H)^{-1}.");

  m.def("bound_t1_uniform", [](Index n, Index k, double mu, double kap, double c, double eps) {
    return bound_dict(bound_t1_uniform(n, k, mu, kap, c, eps));
  }, py::arg("n"), py::arg("k"), py::arg("mu"), py::arg("kappa"), py::arg("C") = 1.0,
        py::arg("epsilon") = 1.0);
  m.def("bound_t2_er", [](Index n, Index k, double b, double delta, double c, double eps) {
    return bound_dict(bound_t2_er(n, k, b, delta, c, eps));
  }, py::arg("n"), py::arg("k"), py::arg("b"), py::arg("delta") = 1.0, py::arg("C") = 1.0,
        py::arg("epsilon") = 1.0);
  m.def("bound_t4_variable_density",
        [](Index n, Index k, double phi_bar, double kap, double c, double eps) {
          return bound_dict(bound_t4_variable_density(n, k, phi_bar, kap, c, eps));
        },
        py::arg("n"), py::arg("k"), py::arg("phi_bar"), py::arg("kappa"), py::arg("C") = 1.0,
        py::arg("epsilon") = 1.0);

  m.def(
      "basis_pursuit",
      [](const Matrix& h_m, const Vector& y, int max_iterations) {
        SolverConfig config;
        config.max_iterations = max_iterations;
        const RecoveryResult r = basis_pursuit(h_m, y, config);
        py::dict d;
        d["alpha_hat"] = r.alpha_hat;
        d["residual_norm"] = r.residual_norm;
        d["l1_value"] = r.l1_value;
        d["iterations"] = r.iterations;
        d["status"] = to_string(r.status);
        return d;
      },
      py::arg("h_m"), py::arg("y"), py::arg("max_iterations") = 10000);

  m.def(
      "run_experiment",
      [](const std::string& config_json) {
        const ExperimentConfig config = config_from_json(nlohmann::json::parse(config_json));
        CurveResult curve;
        {
          py::gil_scoped_release release;
          curve = run_experiment(config);
        }
        return py::make_tuple(curve_csv(curve), curve_metadata_json(curve).dump());
      },
      py::arg("config_json"), "Runs a JSON config; returns (csv_text, metadata_json).");
  m.def(
      "preset",
      [](const std::string& name, const std::string& scale, std::uint64_t seed) {
        std::vector<std::string> out;
        for (const auto& c : preset(name, scale_from_string(scale), seed)) {
          out.push_back(config_to_json(c).dump());
        }
        return out;
      },
      py::arg("name"), py::arg("scale") = "desk", py::arg("seed") = 0,
      "Preset configs as JSON strings.");
}
