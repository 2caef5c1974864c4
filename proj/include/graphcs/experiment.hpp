#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "graphcs/bounds.hpp"
#include "graphcs/diffusion.hpp"
#include "graphcs/graph.hpp"
#include "graphcs/recovery.hpp"
#include "graphcs/spectral.hpp"

namespace graphcs {

enum class Strategy { kUniform, kVariableDensity };
enum class DiffusionKind { kBinary, kMetropolis };

std::string to_string(Strategy strategy);
Strategy strategy_from_string(const std::string& name);
std::string to_string(DiffusionKind kind);
DiffusionKind diffusion_kind_from_string(const std::string& name);

struct ExperimentConfig {
  std::string name = "experiment";
  GraphSpec graph;
  DiffusionKind diffusion = DiffusionKind::kBinary;
  double delta = 1.0;
  Index k = 4;
  ValueModel value_model = ValueModel::kStandardNormal;
  std::vector<Index> m_grid;
  int trials = 100;
  Strategy strategy = Strategy::kUniform;
  std::uint64_t master_seed = 0;
  double success_threshold = 1e-4;
  std::string output_path;  // CSV path; metadata goes next to it as .json
  bool all_rows = false;    // rows i mod n for i < m instead of a random draw
  bool refine_plan = false;
  bool deduplicate = false;
  bool analyze = true;      // instance mu / kappa / bounds in the metadata
  int workers = 1;          // 0 picks the hardware concurrency
  SolverConfig solver;
  std::vector<std::string> notes;

  /// Throws ConfigError on an empty or non-increasing grid, trials < 1, k out
  /// of range or an invalid graph / solver setting.
  void validate() const;
};

struct TrialResult {
  double error = 1.0;
  bool success = false;
  bool failed = false;  // solver did not converge or the model was degenerate
};

/// One trial, fully determined by (master_seed, m, trial).
TrialResult run_trial(const ExperimentConfig& config, Index m, int trial);

struct CurvePoint {
  Index m = 0;
  double mean_error = 0.0;
  double std_error = 0.0;
  double success_rate = 0.0;
  int trials = 0;
  int failed_trials = 0;
};

struct InstanceAnalysis {
  std::optional<double> mu;
  std::optional<KappaResult> kappa;
  std::optional<double> phi_bar;
  std::optional<double> cond_gram;    // nonnegative shortcut
  std::optional<double> delta_kappa;  // small-world surrogate
  std::vector<BoundReport> bounds;    // evaluated with C = 1, epsilon = 1
  std::vector<std::string> notes;
};

struct CurveResult {
  ExperimentConfig config;
  std::vector<CurvePoint> points;
  std::vector<std::vector<double>> errors;  // [grid index][trial]
  InstanceAnalysis analysis;
  double wall_clock_seconds = 0.0;
};

/// Summation by recursive halving; the result depends only on the order of
/// `values`.
double pairwise_sum(const double* values, std::size_t count);

/// Aggregates raw errors of one grid point. Failed trials carry error 1.
CurvePoint summarize(Index m, const std::vector<double>& errors, const std::vector<char>& failed,
                     double success_threshold);

/// Runs trials x m_grid. Per-trial results are stored and reduced in index
/// order, so the output does not depend on the worker count.
CurveResult run_experiment(const ExperimentConfig& config);

/// mu, kappa, phi_bar and the applicable bounds for one realization of the
/// configured model. Skipped (with a note) above kAnalysisDenseCap vertices.
InstanceAnalysis analyze_instance(const ExperimentConfig& config);

inline constexpr Index kAnalysisDenseCap = 2500;

enum class Scale { kPaper, kDesk };
Scale scale_from_string(const std::string& name);

/// Configurations for example1..example4. Throws ConfigError on an unknown name.
std::vector<ExperimentConfig> preset(const std::string& name, Scale scale,
                                     std::uint64_t master_seed = 0);

// Serialization.
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json curve_metadata_json(const CurveResult& curve);

inline constexpr const char* kCurveCsvHeader =
    "m,mean_error,std_error,success_rate,trials,failed_trials";

std::string curve_csv(const CurveResult& curve);
/// Writes the CSV to `csv_path` and the metadata to the same path with a .json extension.
void emit(const CurveResult& curve, const std::string& csv_path);
std::vector<CurvePoint> read_curve_csv(const std::string& path);

/// Fraction of failed trials over the whole curve.
double failure_rate(const CurveResult& curve);

}  // namespace graphcs
