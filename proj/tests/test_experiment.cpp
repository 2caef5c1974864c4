#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "graphcs/errors.hpp"
#include "graphcs/experiment.hpp"

using namespace graphcs;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.name = "small";
  c.graph = GraphSpec::er(30, 0.3);
  c.k = 2;
  c.m_grid = {6, 12, 24};
  c.trials = 6;
  c.master_seed = 11;
  c.analyze = false;
  return c;
}

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "graphcs_experiment_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("experiment_cli") {

TEST_CASE("full sampling of the identity") {
  ExperimentConfig c = small_config();
  c.graph = GraphSpec::er(12, 0.0);
  c.m_grid = {12};
  c.all_rows = true;
  for (int t = 0; t < 3; ++t) {
    const TrialResult r = run_trial(c, 12, t);
    CHECK(r.error < 1e-6);
    CHECK(r.success);
    CHECK_FALSE(r.failed);
  }
}

TEST_CASE("trials are deterministic") {
  const ExperimentConfig c = small_config();
  const TrialResult a = run_trial(c, 12, 3);
  const TrialResult b = run_trial(c, 12, 3);
  CHECK(a.error == b.error);
  CHECK(a.success == b.success);
}

TEST_CASE("all-rows mode solves the square system") {
  ExperimentConfig c;
  c.graph = GraphSpec::er(64, 0.3);
  c.k = 2;
  c.m_grid = {64};
  c.all_rows = true;
  c.analyze = false;
  for (int t = 0; t < 5; ++t) {
    const TrialResult r = run_trial(c, 64, t);
    CHECK_FALSE(r.failed);
    CHECK(r.error < 1e-5);
  }
}

TEST_CASE("curve aggregation") {
  ExperimentConfig c = small_config();
  c.trials = 1;
  const CurveResult one = run_experiment(c);
  for (std::size_t g = 0; g < c.m_grid.size(); ++g) {
    const TrialResult t = run_trial(c, c.m_grid[g], 0);
    CHECK(one.points[g].mean_error == t.error);
    CHECK(one.points[g].std_error == 0.0);
    CHECK(one.points[g].success_rate == (t.success ? 1.0 : 0.0));
  }

  c.trials = 4;
  const CurveResult four = run_experiment(c);
  c.trials = 8;
  const CurveResult eight = run_experiment(c);
  for (std::size_t g = 0; g < c.m_grid.size(); ++g) {
    for (int t = 0; t < 4; ++t) CHECK(eight.errors[g][static_cast<std::size_t>(t)] == four.errors[g][static_cast<std::size_t>(t)]);
    CHECK(eight.points[g].success_rate >= 0.0);
    CHECK(eight.points[g].success_rate <= 1.0);
    CHECK(eight.points[g].std_error >= 0.0);
  }
}

TEST_CASE("worker count does not change the output") {
  ExperimentConfig c = small_config();
  c.workers = 1;
  const std::string serial = curve_csv(run_experiment(c));
  c.workers = 3;
  const std::string parallel = curve_csv(run_experiment(c));
  CHECK(serial == parallel);
  c.workers = 1;
  CHECK(curve_csv(run_experiment(c)) == serial);
}

TEST_CASE("summaries") {
  const std::vector<double> errors{0.0, 1e-5, 2e-4, 0.5, 1.0};
  const std::vector<char> failed{0, 0, 0, 0, 1};
  const CurvePoint p = summarize(10, errors, failed, 1e-4);
  CHECK(p.failed_trials == 1);
  CHECK(p.success_rate == doctest::Approx(0.4));
  CHECK(p.mean_error == doctest::Approx((1e-5 + 2e-4 + 0.5 + 1.0) / 5));
  double prev = 1.0;
  for (double thr : {1.0, 0.6, 0.1, 1e-3, 1e-4, 1e-6}) {
    const double rate = summarize(10, errors, failed, thr).success_rate;
    CHECK(rate <= prev);
    prev = rate;
  }
  const double values[] = {1.0, 1e-17, -1.0, 3.0};
  CHECK(pairwise_sum(values, 4) == 3.0);
}

TEST_CASE("presets") {
  const auto e1 = preset("example1", Scale::kPaper);
  REQUIRE(e1.size() == 3);
  for (const auto& c : e1) {
    CHECK(c.graph.n == 501);
    CHECK(c.k == 4);
    CHECK(c.delta == 1.0);
    CHECK(c.trials == 500);
  }
  CHECK(e1[2].graph.target_edges == 8417);
  CHECK(e1[0].graph.b * 501 * 500 / 2 == doctest::Approx(8417.0));

  const auto e2 = preset("example2", Scale::kPaper);
  REQUIRE(e2.size() == 5);
  for (const auto& c : e2) CHECK(c.graph.n == 10000);

  const auto e3 = preset("example3", Scale::kPaper);
  REQUIRE(e3.size() == 5);
  CHECK(e3[0].graph.d == 42);
  CHECK(e3[0].graph.n == 2001);

  const auto e4 = preset("example4", Scale::kDesk, 5);
  REQUIRE(e4.size() == 2);
  CHECK(e4[0].strategy == Strategy::kUniform);
  CHECK(e4[1].strategy == Strategy::kVariableDensity);
  CHECK(e4[0].master_seed == e4[1].master_seed);
  CHECK(e4[0].diffusion == DiffusionKind::kMetropolis);
  CHECK(e4[0].trials == 100);
  CHECK(preset("example4", Scale::kPaper)[0].k == 50);

  for (const char* name : {"example1", "example2", "example3", "example4"}) {
    for (const auto& c : preset(name, Scale::kDesk)) CHECK_NOTHROW(c.validate());
  }
  CHECK_THROWS_AS(preset("example9", Scale::kDesk), ConfigError);
  CHECK_THROWS_AS(scale_from_string("huge"), ConfigError);
}

TEST_CASE("paired strategies share the draws that do not depend on the plan") {
  auto pair = preset("example4", Scale::kDesk, 3);
  for (auto& c : pair) {
    c.graph = GraphSpec::er(40, 0.2);
    c.k = 3;
    c.m_grid = {40};
    c.all_rows = true;
    c.trials = 2;
  }
  // With all rows observed the plan is irrelevant, so the runs coincide.
  for (int t = 0; t < 2; ++t) CHECK(run_trial(pair[0], 40, t).error == run_trial(pair[1], 40, t).error);
}

TEST_CASE("config validation") {
  ExperimentConfig c = small_config();
  CHECK_NOTHROW(c.validate());
  c.m_grid = {};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.m_grid = {5, 5};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.m_grid = {0, 5};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_config();
  c.trials = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_config();
  c.k = 31;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_config();
  c.graph.b = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK_THROWS_AS(run_experiment(c), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"k", 2}}), ConfigError);
  CHECK_THROWS_AS(strategy_from_string("random"), ConfigError);
}

TEST_CASE("config JSON round trip") {
  ExperimentConfig c = small_config();
  c.strategy = Strategy::kVariableDensity;
  c.solver.feasibility_tol = 1e-7;
  c.notes = {"a", "b"};
  const ExperimentConfig back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));
  c.graph = GraphSpec::from_graph(Graph::from_edges(4, {{0, 1}, {2, 3}}));
  c.k = 1;
  CHECK(config_from_json(config_to_json(c)).graph.custom->edge_count() == 2);
}

TEST_CASE("CSV and metadata output") {
  ExperimentConfig c = small_config();
  c.analyze = true;
  const CurveResult curve = run_experiment(c);
  const auto path = temp_dir() / "curve.csv";
  emit(curve, path.string());
  const std::vector<CurvePoint> back = read_curve_csv(path.string());
  REQUIRE(back.size() == curve.points.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].m == curve.points[i].m);
    CHECK(back[i].mean_error == doctest::Approx(curve.points[i].mean_error).epsilon(1e-15));
    CHECK(back[i].std_error == doctest::Approx(curve.points[i].std_error).epsilon(1e-15));
    CHECK(back[i].success_rate == curve.points[i].success_rate);
    CHECK(back[i].trials == curve.points[i].trials);
  }
  std::ifstream meta_in(temp_dir() / "curve.json");
  const nlohmann::json meta = nlohmann::json::parse(meta_in);
  REQUIRE(meta["analysis"].contains("bounds"));
  CHECK(meta["analysis"]["bounds"].size() == curve.analysis.bounds.size());
  CHECK(curve.analysis.bounds.size() >= 3);  // T1, T2 (binary ER), T4
  CHECK(meta["config"]["name"] == "small");

  std::ifstream csv_in(path);
  std::string header;
  std::getline(csv_in, header);
  CHECK(header == kCurveCsvHeader);
  CHECK_THROWS_AS(read_curve_csv((temp_dir() / "missing.csv").string()), IoError);
}

TEST_CASE("repeated runs give identical CSV bytes") {
  ExperimentConfig c = small_config();
  CHECK(curve_csv(run_experiment(c)) == curve_csv(run_experiment(c)));
  c.master_seed = 12;
  const std::string other = curve_csv(run_experiment(c));
  c.master_seed = 11;
  CHECK(curve_csv(run_experiment(c)) != other);
}

}  // TEST_SUITE
