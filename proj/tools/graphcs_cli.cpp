// graphcs command line: graph generation, instance analysis, one-shot
// recovery and the batch experiment harness.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "graphcs/errors.hpp"
#include "graphcs/experiment.hpp"
#include "graphcs/io.hpp"

using namespace graphcs;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolverFailures = 3;

struct GraphArgs {
  std::string family = "er";
  Index n = 100;
  double b = 0.1;
  Index d = 4;
  std::int64_t edges = 0;
  std::string edge_file;

  void attach(CLI::App* app) {
    app->add_option("--family", family, "er | small_world | ring_regular | star_like");
    app->add_option("--n", n, "number of vertices");
    app->add_option("--b", b, "edge or rewiring probability");
    app->add_option("--d", d, "ring degree (even)");
    app->add_option("--edges", edges, "edge budget for star_like");
    app->add_option("--edge-file", edge_file, "read a custom graph from an edge list");
  }

  GraphSpec spec() const {
    if (!edge_file.empty()) return GraphSpec::from_graph(io::read_edge_list(edge_file));
    switch (graph_family_from_string(family)) {
      case GraphFamily::kEr: return GraphSpec::er(n, b);
      case GraphFamily::kSmallWorld: return GraphSpec::small_world(n, d, b);
      case GraphFamily::kRingRegular: return GraphSpec::ring_regular(n, d);
      case GraphFamily::kStarLike: return GraphSpec::star_like(n, edges);
      case GraphFamily::kCustom: break;
    }
    throw ConfigError("family 'custom' needs --edge-file");
  }
};

void print_or_write(const io::Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    io::write_json(out, j);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling and sparse recovery of diffused graph signals"};
  app.require_subcommand(1);

  // gen
  GraphArgs gen_graph;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate a graph and write its edge list");
  gen_graph.attach(gen);
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", gen_out, "edge list path")->required();

  // analyze
  GraphArgs an_graph;
  double an_delta = 1.0;
  bool an_metropolis = false;
  Index an_k = 4;
  std::uint64_t an_seed = 0;
  bool an_vd = false;
  std::string an_out;
  auto* analyze = app.add_subcommand("analyze", "report mu, kappa, phi_bar and sample bounds");
  an_graph.attach(analyze);
  analyze->add_option("--delta", an_delta, "coupling of the binary diffusion model");
  analyze->add_flag("--metropolis", an_metropolis, "use Metropolis weights instead");
  analyze->add_option("--k", an_k, "sparsity");
  analyze->add_option("--seed", an_seed, "random seed");
  analyze->add_flag("--variable-density", an_vd, "also report phi_bar and the T4 bound");
  analyze->add_option("--out", an_out, "JSON path (stdout if omitted)");

  // recover
  std::string rec_matrix;
  std::string rec_y;
  std::string rec_out;
  std::string rec_report;
  auto* recover = app.add_subcommand("recover", "solve basis pursuit for one system");
  recover->add_option("--matrix", rec_matrix, "H_M as dense CSV")->required();
  recover->add_option("--y", rec_y, "observations, one per line")->required();
  recover->add_option("--out", rec_out, "estimate CSV path")->required();
  recover->add_option("--report", rec_report, "solver report JSON path");

  // experiment
  std::string ex_preset;
  std::string ex_scale = "desk";
  std::uint64_t ex_seed = 0;
  std::string ex_out = "results";
  std::string ex_config;
  int ex_workers = -1;
  auto* experiment = app.add_subcommand("experiment", "run error-vs-m curves");
  auto* preset_opt = experiment->add_option("--preset", ex_preset, "example1..example4");
  experiment->add_option("--scale", ex_scale, "paper | desk");
  experiment->add_option("--seed", ex_seed, "master seed");
  experiment->add_option("--out", ex_out, "output directory");
  auto* config_opt = experiment->add_option("--config", ex_config, "JSON config file");
  experiment->add_option("--workers", ex_workers, "worker threads (0 = all cores)");
  preset_opt->excludes(config_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*gen) {
      Rng rng = make_stream({gen_seed, static_cast<std::uint64_t>(StreamTag::kGraph)});
      io::write_edge_list(gen_out, generate(gen_graph.spec(), rng));
      return 0;
    }
    if (*analyze) {
      ExperimentConfig c;
      c.name = "analyze";
      c.graph = an_graph.spec();
      c.diffusion = an_metropolis ? DiffusionKind::kMetropolis : DiffusionKind::kBinary;
      c.delta = an_delta;
      c.k = an_k;
      c.master_seed = an_seed;
      c.strategy = an_vd ? Strategy::kVariableDensity : Strategy::kUniform;
      c.m_grid = {1};
      c.validate();
      CurveResult curve;
      curve.config = c;
      curve.analysis = analyze_instance(c);
      io::Json j = curve_metadata_json(curve)["analysis"];
      if (c.graph.family == GraphFamily::kEr && c.graph.b > 0.0 && c.graph.b < 1.0 &&
          !an_metropolis) {
        j["analytic_mu_er"] = analytic_mu_er(c.graph.b, c.delta);
      }
      print_or_write(j, an_out);
      return 0;
    }
    if (*recover) {
      const Matrix h_m = io::read_matrix_csv(rec_matrix);
      const Vector y = io::read_vector_csv(rec_y);
      const RecoveryResult r = basis_pursuit(h_m, y);
      io::write_vector_csv(rec_out, r.alpha_hat);
      if (!rec_report.empty()) io::write_json(rec_report, io::to_json(r));
      std::cerr << "status " << to_string(r.status) << ", iterations " << r.iterations
                << ", residual " << r.residual_norm << '\n';
      return r.status == SolverStatus::kConverged ? 0 : kExitSolverFailures;
    }
    if (*experiment) {
      std::vector<ExperimentConfig> configs;
      if (!ex_config.empty()) {
        configs.push_back(config_from_json(io::read_json(ex_config)));
      } else if (!ex_preset.empty()) {
        configs = preset(ex_preset, scale_from_string(ex_scale), ex_seed);
      } else {
        throw ConfigError("experiment needs --preset or --config");
      }
      bool too_many_failures = false;
      for (auto& c : configs) {
        if (ex_workers >= 0) c.workers = ex_workers;
        if (c.output_path.empty()) {
          c.output_path = (std::filesystem::path(ex_out) / (c.name + ".csv")).string();
        }
        const CurveResult curve = run_experiment(c);
        emit(curve, c.output_path);
        const double rate = failure_rate(curve);
        std::cerr << c.name << ": " << curve.points.size() << " grid points, "
                  << curve.wall_clock_seconds << " s, failure rate " << rate << '\n';
        too_many_failures = too_many_failures || rate > 0.5;
      }
      return too_many_failures ? kExitSolverFailures : 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
