#include "graphcs/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "graphcs/errors.hpp"
#include "graphcs/io.hpp"
#include "graphcs/rng.hpp"
#include "graphcs/sampling.hpp"

namespace graphcs {

using nlohmann::json;

namespace {

DiffusionMatrix build_diffusion(const ExperimentConfig& config, const Graph& graph) {
  return config.diffusion == DiffusionKind::kMetropolis ? metropolis_matrix(graph)
                                                        : binary_diffusion(graph, config.delta);
}

VariableDensityPlan plan_for(const ExperimentConfig& config, const DiffusionMatrix& h) {
  if (config.refine_plan) return refined_variable_density_plan(h);
  return variable_density_plan(h, gamma_from_matrix(h).gamma);
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_param(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string to_string(Strategy strategy) {
  return strategy == Strategy::kUniform ? "uniform" : "variable_density";
}

Strategy strategy_from_string(const std::string& name) {
  if (name == "uniform") return Strategy::kUniform;
  if (name == "variable_density") return Strategy::kVariableDensity;
  throw ConfigError("unknown strategy '" + name + "'");
}

std::string to_string(DiffusionKind kind) {
  return kind == DiffusionKind::kBinary ? "binary" : "metropolis";
}

DiffusionKind diffusion_kind_from_string(const std::string& name) {
  if (name == "binary") return DiffusionKind::kBinary;
  if (name == "metropolis") return DiffusionKind::kMetropolis;
  throw ConfigError("unknown diffusion model '" + name + "'");
}

void ExperimentConfig::validate() const {
  try {
    graph.validate();
    solver.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("config '") + name + "': " + e.what());
  }
  if (m_grid.empty()) throw ConfigError("config '" + name + "': m_grid is empty");
  for (std::size_t i = 0; i < m_grid.size(); ++i) {
    if (m_grid[i] < 1) throw ConfigError("config '" + name + "': m_grid entries must be >= 1");
    if (i > 0 && m_grid[i] <= m_grid[i - 1]) {
      throw ConfigError("config '" + name + "': m_grid must be strictly increasing");
    }
  }
  if (trials < 1) throw ConfigError("config '" + name + "': trials must be >= 1");
  if (k < 1 || k > graph.n) throw ConfigError("config '" + name + "': k must lie in [1, n]");
  if (diffusion == DiffusionKind::kBinary && !(delta > 0.0 && delta <= 1.0)) {
    throw ConfigError("config '" + name + "': delta must lie in (0,1]");
  }
  if (!(success_threshold > 0.0)) {
    throw ConfigError("config '" + name + "': success_threshold must be positive");
  }
  if (workers < 0) throw ConfigError("config '" + name + "': workers must be >= 0");
}

TrialResult run_trial(const ExperimentConfig& config, Index m, int trial) {
  const auto seed = config.master_seed;
  const auto mk = static_cast<std::uint64_t>(m);
  const auto tk = static_cast<std::uint64_t>(trial);
  TrialResult failed;
  failed.failed = true;
  try {
    Rng graph_rng = make_stream({seed, mk, tk, static_cast<std::uint64_t>(StreamTag::kGraph)});
    const Graph graph = generate(config.graph, graph_rng);
    const DiffusionMatrix h = build_diffusion(config, graph);
    const Index n = h.n();

    Rng signal_rng = make_stream({seed, mk, tk, static_cast<std::uint64_t>(StreamTag::kSignal)});
    const SparseInput alpha = generate_sparse_input(n, config.k, config.value_model, signal_rng);

    SampleSet samples;
    if (config.all_rows) {
      for (Index i = 0; i < m; ++i) samples.indices.push_back(i % n);
    } else {
      const SamplingPlan plan = config.strategy == Strategy::kUniform ? uniform_plan(n)
                                                                      : plan_for(config, h).plan;
      Rng sample_rng =
          make_stream({seed, mk, tk, static_cast<std::uint64_t>(StreamTag::kSamples)});
      samples = draw_samples(plan, m, sample_rng);
    }
    if (config.deduplicate) samples = deduplicate(samples);

    const Observation obs = observe(h, alpha, samples);
    const RecoveryResult rec = basis_pursuit(obs.rows, obs.y, config.solver);
    if (rec.status != SolverStatus::kConverged) return failed;
    TrialResult out;
    out.error = recovery_error(alpha, rec.alpha_hat);
    out.success = is_success(out.error, config.success_threshold);
    return out;
  } catch (const AssumptionViolation&) {
    return failed;
  } catch (const DegenerateInputError&) {
    return failed;
  }
}

double pairwise_sum(const double* values, std::size_t count) {
  if (count <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) s += values[i];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(values, half) + pairwise_sum(values + half, count - half);
}

CurvePoint summarize(Index m, const std::vector<double>& errors, const std::vector<char>& failed,
                     double success_threshold) {
  CurvePoint p;
  p.m = m;
  p.trials = static_cast<int>(errors.size());
  if (errors.empty()) return p;
  const double n = static_cast<double>(errors.size());
  p.mean_error = pairwise_sum(errors.data(), errors.size()) / n;
  if (errors.size() > 1) {
    std::vector<double> sq(errors.size());
    for (std::size_t i = 0; i < errors.size(); ++i) {
      const double d = errors[i] - p.mean_error;
      sq[i] = d * d;
    }
    const double var = pairwise_sum(sq.data(), sq.size()) / (n - 1.0);
    p.std_error = std::sqrt(var / n);
  }
  int successes = 0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (failed[i]) {
      ++p.failed_trials;
    } else if (is_success(errors[i], success_threshold)) {
      ++successes;
    }
  }
  p.success_rate = successes / n;
  return p;
}

InstanceAnalysis analyze_instance(const ExperimentConfig& config) {
  InstanceAnalysis a;
  const Index n = config.graph.n;
  const Index k = config.k;
  a.notes.push_back("bounds use C=1, epsilon=1 and are shape only");

  const bool er_binary = config.graph.family == GraphFamily::kEr &&
                         config.diffusion == DiffusionKind::kBinary;
  if (er_binary && config.graph.b > 0.0 && config.graph.b < 1.0) {
    a.bounds.push_back(bound_t2_er(n, k, config.graph.b, config.delta));
  }
  if (n > kAnalysisDenseCap) {
    a.notes.push_back("instance analysis skipped: n=" + std::to_string(n) +
                      " exceeds the dense analysis cap " + std::to_string(kAnalysisDenseCap));
    return a;
  }

  Rng rng = make_stream({config.master_seed, static_cast<std::uint64_t>(StreamTag::kAnalysis)});
  const Graph graph = generate(config.graph, rng);
  const DiffusionMatrix h = build_diffusion(config, graph);

  std::optional<GammaMatrix> gamma;
  try {
    gamma = gamma_from_matrix(h);
  } catch (const AssumptionViolation& e) {
    a.notes.push_back(std::string("Gamma unavailable: ") + e.what());
  }
  if (gamma) {
    a.mu = incoherence_mu(h, *gamma);
    a.kappa = kappa(*gamma, k);
    if (a.kappa->estimate) {
      a.notes.push_back("kappa is a greedy estimate (lower bound), not a certificate");
    }
    if (config.strategy == Strategy::kVariableDensity ||
        config.diffusion == DiffusionKind::kMetropolis) {
      a.phi_bar = plan_for(config, h).phi_bar;
    }
  }

  auto add = [&a](auto&& make) {
    try {
      a.bounds.push_back(make());
    } catch (const std::exception& e) {
      a.notes.push_back(std::string("bound skipped: ") + e.what());
    }
  };
  if (a.mu && a.kappa) {
    add([&] { return bound_t1_uniform(n, k, *a.mu, a.kappa->value); });
    if (a.phi_bar) {
      add([&] { return bound_t4_variable_density(n, k, *a.phi_bar, a.kappa->value); });
    }
  }
  if (h.nonnegative()) {
    a.cond_gram = cond_nonnegative_shortcut(h, k).cond;
    if (a.mu) add([&] { return bound_c1_nonnegative(n, k, *a.mu, *a.cond_gram); });
  }
  if (config.graph.family == GraphFamily::kSmallWorld &&
      config.diffusion == DiffusionKind::kBinary) {
    const Graph ring = generate_ring_regular(n, config.graph.d);
    a.delta_kappa =
        delta_kappa_small_world(ring, n, config.graph.d, config.graph.b, config.delta, k);
    if (a.mu) add([&] { return bound_t3_small_world(n, k, *a.mu, *a.delta_kappa); });
  }
  return a;
}

CurveResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  const std::size_t grid = config.m_grid.size();
  const auto trials = static_cast<std::size_t>(config.trials);
  const std::size_t total = grid * trials;
  std::vector<TrialResult> results(total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      try {
        results[idx] = run_trial(config, config.m_grid[idx / trials], static_cast<int>(idx % trials));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = total;
      }
    }
  };
  unsigned workers = config.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : static_cast<unsigned>(config.workers);
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  CurveResult curve;
  curve.config = config;
  for (std::size_t g = 0; g < grid; ++g) {
    std::vector<double> errs(trials);
    std::vector<char> failed(trials);
    for (std::size_t t = 0; t < trials; ++t) {
      errs[t] = results[g * trials + t].error;
      failed[t] = results[g * trials + t].failed ? 1 : 0;
    }
    curve.points.push_back(summarize(config.m_grid[g], errs, failed, config.success_threshold));
    curve.errors.push_back(std::move(errs));
  }
  if (config.analyze) curve.analysis = analyze_instance(config);
  curve.analysis.notes.push_back("graph regenerated for every (m, trial)");
  curve.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return curve;
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

Scale scale_from_string(const std::string& name) {
  if (name == "paper") return Scale::kPaper;
  if (name == "desk") return Scale::kDesk;
  throw ConfigError("unknown scale '" + name + "' (expected paper or desk)");
}

std::vector<ExperimentConfig> preset(const std::string& name, Scale scale,
                                     std::uint64_t master_seed) {
  const bool desk = scale == Scale::kDesk;
  ExperimentConfig base;
  base.master_seed = master_seed;
  base.trials = desk ? 100 : 500;
  base.k = 4;
  base.delta = 1.0;
  base.notes.push_back(std::string("scale: ") + (desk ? "desk" : "paper"));
  if (desk) base.notes.push_back("desk scale: 100 trials per grid point instead of 500");

  std::vector<ExperimentConfig> out;
  if (name == "example1") {
    const Index n = desk ? 101 : 501;
    const Index d = desk ? 6 : 34;
    const std::int64_t edges = desk ? 303 : 8417;
    base.m_grid = desk ? std::vector<Index>{12, 16, 20, 25, 30, 40, 50, 60, 80, 101}
                       : std::vector<Index>{20, 40, 60, 80, 100, 120, 150, 200, 250, 300, 400, 501};
    base.notes.push_back("edge budget " + std::to_string(edges) +
                         "; the ring needs even d, so it carries n*d/2 = " +
                         std::to_string(n * d / 2) + " edges");
    const double b = static_cast<double>(edges) / static_cast<double>(n * (n - 1) / 2);
    ExperimentConfig er = base;
    er.name = "example1_er";
    er.graph = GraphSpec::er(n, b);
    ExperimentConfig ring = base;
    ring.name = "example1_ring";
    ring.graph = GraphSpec::ring_regular(n, d);
    ExperimentConfig star = base;
    star.name = "example1_star";
    star.graph = GraphSpec::star_like(n, edges);
    out = {er, ring, star};
  } else if (name == "example2") {
    const Index n = desk ? 500 : 10000;
    base.m_grid = desk ? std::vector<Index>{12, 16, 20, 25, 30, 40, 60, 80, 120, 160, 200}
                       : std::vector<Index>{12, 16, 20, 25, 30, 40, 60, 80, 120, 160, 200, 300, 400};
    for (double b : {0.03, 0.3, 0.7, 0.95, 0.991}) {
      ExperimentConfig c = base;
      c.name = "example2_b" + fmt_param(b);
      c.graph = GraphSpec::er(n, b);
      out.push_back(c);
    }
  } else if (name == "example3") {
    const Index n = desk ? 201 : 2001;
    const Index d = desk ? 10 : 42;
    base.m_grid = desk ? std::vector<Index>{12, 16, 20, 25, 30, 40, 50, 60, 80, 100}
                       : std::vector<Index>{12, 16, 20, 25, 30, 40, 60, 80, 120, 160, 200, 300};
    if (!desk) base.notes.push_back("ring degree 41 replaced by 42 (the lattice needs even d)");
    for (double b : {0.0, 0.01, 0.05, 0.1, 1.0}) {
      ExperimentConfig c = base;
      c.name = "example3_b" + fmt_param(b);
      c.graph = GraphSpec::small_world(n, d, b);
      out.push_back(c);
    }
  } else if (name == "example4") {
    const Index n = desk ? 200 : 1000;
    // Edge density of the first example's graphs.
    const double b = 8417.0 / (501.0 * 500.0 / 2.0);
    base.k = desk ? 10 : 50;
    base.diffusion = DiffusionKind::kMetropolis;
    base.graph = GraphSpec::er(n, b);
    base.m_grid = desk ? std::vector<Index>{30, 40, 50, 60, 70, 80, 100, 120, 150, 200}
                       : std::vector<Index>{150, 200, 250, 300, 350, 400, 500, 600, 800, 1000};
    base.notes.push_back("Metropolis weights on an ER graph at edge density " + fmt_param(b));
    base.notes.push_back("uniform and variable-density runs share graph, input and sample seeds");
    ExperimentConfig uni = base;
    uni.name = "example4_uniform";
    uni.strategy = Strategy::kUniform;
    ExperimentConfig vd = base;
    vd.name = "example4_variable_density";
    vd.strategy = Strategy::kVariableDensity;
    out = {uni, vd};
  } else {
    throw ConfigError("unknown preset '" + name + "' (expected example1..example4)");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

json config_to_json(const ExperimentConfig& c) {
  json graph{{"family", to_string(c.graph.family)}, {"n", c.graph.n}};
  switch (c.graph.family) {
    case GraphFamily::kEr: graph["b"] = c.graph.b; break;
    case GraphFamily::kSmallWorld:
      graph["b"] = c.graph.b;
      graph["d"] = c.graph.d;
      break;
    case GraphFamily::kRingRegular: graph["d"] = c.graph.d; break;
    case GraphFamily::kStarLike: graph["target_edges"] = c.graph.target_edges; break;
    case GraphFamily::kCustom: {
      json edges = json::array();
      for (const auto& [i, j] : c.graph.custom->edges()) edges.push_back({i, j});
      graph["edges"] = edges;
      break;
    }
  }
  json solver{{"abs_tol", c.solver.abs_tol},
              {"rel_tol", c.solver.rel_tol},
              {"max_iterations", c.solver.max_iterations},
              {"rho", c.solver.rho},
              {"polish", c.solver.polish}};
  if (c.solver.feasibility_tol) solver["feasibility_tol"] = *c.solver.feasibility_tol;
  return json{{"name", c.name},
              {"graph", graph},
              {"diffusion", to_string(c.diffusion)},
              {"delta", c.delta},
              {"k", c.k},
              {"value_model", to_string(c.value_model)},
              {"m_grid", c.m_grid},
              {"trials", c.trials},
              {"strategy", to_string(c.strategy)},
              {"master_seed", c.master_seed},
              {"success_threshold", c.success_threshold},
              {"output_path", c.output_path},
              {"all_rows", c.all_rows},
              {"refine_plan", c.refine_plan},
              {"deduplicate", c.deduplicate},
              {"analyze", c.analyze},
              {"workers", c.workers},
              {"solver", solver},
              {"notes", c.notes}};
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  try {
    c.name = j.value("name", c.name);
    const json& g = j.at("graph");
    const GraphFamily family = graph_family_from_string(g.at("family").get<std::string>());
    const Index n = g.at("n").get<Index>();
    switch (family) {
      case GraphFamily::kEr: c.graph = GraphSpec::er(n, g.at("b").get<double>()); break;
      case GraphFamily::kSmallWorld:
        c.graph = GraphSpec::small_world(n, g.at("d").get<Index>(), g.at("b").get<double>());
        break;
      case GraphFamily::kRingRegular:
        c.graph = GraphSpec::ring_regular(n, g.at("d").get<Index>());
        break;
      case GraphFamily::kStarLike:
        c.graph = GraphSpec::star_like(n, g.at("target_edges").get<std::int64_t>());
        break;
      case GraphFamily::kCustom:
        c.graph = GraphSpec::from_graph(Graph::from_edges(
            n, g.at("edges").get<std::vector<std::pair<Index, Index>>>()));
        break;
    }
    c.diffusion = diffusion_kind_from_string(j.value("diffusion", std::string("binary")));
    c.delta = j.value("delta", c.delta);
    c.k = j.at("k").get<Index>();
    c.value_model = value_model_from_string(j.value("value_model", to_string(c.value_model)));
    c.m_grid = j.at("m_grid").get<std::vector<Index>>();
    c.trials = j.value("trials", c.trials);
    c.strategy = strategy_from_string(j.value("strategy", to_string(c.strategy)));
    c.master_seed = j.value("master_seed", c.master_seed);
    c.success_threshold = j.value("success_threshold", c.success_threshold);
    c.output_path = j.value("output_path", c.output_path);
    c.all_rows = j.value("all_rows", c.all_rows);
    c.refine_plan = j.value("refine_plan", c.refine_plan);
    c.deduplicate = j.value("deduplicate", c.deduplicate);
    c.analyze = j.value("analyze", c.analyze);
    c.workers = j.value("workers", c.workers);
    c.notes = j.value("notes", c.notes);
    if (j.contains("solver")) {
      const json& s = j.at("solver");
      c.solver.abs_tol = s.value("abs_tol", c.solver.abs_tol);
      c.solver.rel_tol = s.value("rel_tol", c.solver.rel_tol);
      c.solver.max_iterations = s.value("max_iterations", c.solver.max_iterations);
      c.solver.rho = s.value("rho", c.solver.rho);
      c.solver.polish = s.value("polish", c.solver.polish);
      if (s.contains("feasibility_tol")) c.solver.feasibility_tol = s.at("feasibility_tol").get<double>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  c.validate();
  return c;
}

json curve_metadata_json(const CurveResult& curve) {
  const InstanceAnalysis& a = curve.analysis;
  json analysis{{"notes", a.notes}};
  json bounds = json::array();
  for (const auto& b : a.bounds) {
    json jb = io::to_json(b);
    jb["label"] = "shape only";
    bounds.push_back(jb);
  }
  analysis["bounds"] = bounds;
  if (a.mu) analysis["mu"] = *a.mu;
  if (a.kappa) {
    analysis["kappa"] = a.kappa->value;
    analysis["kappa_estimate"] = a.kappa->estimate;
    analysis["kappa_method"] = {{"forward", to_string(a.kappa->forward.method)},
                                {"inverse", to_string(a.kappa->inverse.method)}};
  }
  if (a.phi_bar) analysis["phi_bar"] = *a.phi_bar;
  if (a.cond_gram) analysis["cond_gram"] = *a.cond_gram;
  if (a.delta_kappa) analysis["delta_kappa"] = *a.delta_kappa;

  int failed = 0;
  json points = json::array();
  for (const auto& p : curve.points) {
    failed += p.failed_trials;
    points.push_back({{"m", p.m},
                      {"mean_error", p.mean_error},
                      {"std_error", p.std_error},
                      {"success_rate", p.success_rate},
                      {"trials", p.trials},
                      {"failed_trials", p.failed_trials}});
  }
  return json{{"config", config_to_json(curve.config)},
              {"points", points},
              {"analysis", analysis},
              {"failed_trials_total", failed},
              {"wall_clock_seconds", curve.wall_clock_seconds}};
}

std::string curve_csv(const CurveResult& curve) {
  std::string out = kCurveCsvHeader;
  out += '\n';
  for (const auto& p : curve.points) {
    out += std::to_string(p.m) + ',' + format_g17(p.mean_error) + ',' + format_g17(p.std_error) +
           ',' + format_g17(p.success_rate) + ',' + std::to_string(p.trials) + ',' +
           std::to_string(p.failed_trials) + '\n';
  }
  return out;
}

void emit(const CurveResult& curve, const std::string& csv_path) {
  std::filesystem::path path(csv_path);
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + csv_path + "' for writing");
  out << curve_csv(curve);
  if (!out) throw IoError("write failed for '" + csv_path + "'");
  io::write_json(path.replace_extension(".json").string(), curve_metadata_json(curve));
}

std::vector<CurvePoint> read_curve_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line) || line != kCurveCsvHeader) {
    throw IoError("'" + path + "' does not start with the curve header");
  }
  std::vector<CurvePoint> points;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    CurvePoint p;
    long long m = 0;
    if (std::sscanf(line.c_str(), "%lld,%lf,%lf,%lf,%d,%d", &m, &p.mean_error, &p.std_error,
                    &p.success_rate, &p.trials, &p.failed_trials) != 6) {
      throw IoError("malformed curve row '" + line + "' in " + path);
    }
    p.m = static_cast<Index>(m);
    points.push_back(p);
  }
  return points;
}

double failure_rate(const CurveResult& curve) {
  double failed = 0.0;
  double total = 0.0;
  for (const auto& p : curve.points) {
    failed += p.failed_trials;
    total += p.trials;
  }
  return total > 0.0 ? failed / total : 0.0;
}

}  // namespace graphcs
