#include "graphcs/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <vector>

#include "graphcs/errors.hpp"

namespace graphcs::io {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << std::setprecision(17);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

std::vector<double> parse_row(const std::string& line, const std::string& path) {
  std::vector<double> row;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      row.push_back(std::stod(cell, &used));
      if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw IoError("bad numeric cell '" + cell + "' in " + path);
    }
  }
  return row;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

void write_edge_list(const std::string& path, const Graph& graph) {
  auto out = open_out(path);
  out << graph.n() << '\n';
  for (const auto& [i, j] : graph.edges()) out << i << ' ' << j << '\n';
  if (!out) throw IoError("write failed for '" + path + "'");
}

Graph read_edge_list(const std::string& path) {
  auto in = open_in(path);
  Index n = 0;
  if (!(in >> n)) throw IoError("edge list '" + path + "' lacks the vertex count header");
  std::vector<std::pair<Index, Index>> edges;
  Index i = 0;
  Index j = 0;
  while (in >> i >> j) edges.emplace_back(i, j);
  if (!in.eof()) throw IoError("malformed edge line in '" + path + "'");
  return Graph::from_edges(n, edges);
}

void write_matrix_csv(const std::string& path, const Matrix& m) {
  auto out = open_out(path);
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << m(r, c);
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

Matrix read_matrix_csv(const std::string& path) {
  auto in = open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (blank(line)) continue;
    rows.push_back(parse_row(line, path));
    if (rows.back().size() != rows.front().size()) {
      throw IoError("ragged rows in matrix CSV '" + path + "'");
    }
  }
  if (rows.empty()) throw IoError("matrix CSV '" + path + "' is empty");
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
  }
  return m;
}

void write_vector_csv(const std::string& path, const Vector& v) {
  auto out = open_out(path);
  for (Index i = 0; i < v.size(); ++i) out << v(i) << '\n';
  if (!out) throw IoError("write failed for '" + path + "'");
}

Vector read_vector_csv(const std::string& path) {
  auto in = open_in(path);
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (blank(line)) continue;
    for (double v : parse_row(line, path)) values.push_back(v);
  }
  return Eigen::Map<Vector>(values.data(), static_cast<Index>(values.size()));
}

Json to_json(const SparseInput& alpha) {
  return Json{{"n", alpha.n}, {"support", alpha.support}, {"values", alpha.values}};
}

SparseInput sparse_input_from_json(const Json& j) {
  try {
    return SparseInput::make(j.at("n").get<Index>(), j.at("support").get<std::vector<Index>>(),
                             j.at("values").get<std::vector<double>>());
  } catch (const Json::exception& e) {
    throw IoError(std::string("bad sparse input JSON: ") + e.what());
  }
}

Json to_json(const SampleSet& samples) { return Json(samples.indices); }

SampleSet sample_set_from_json(const Json& j) {
  try {
    return SampleSet{j.get<std::vector<Index>>()};
  } catch (const Json::exception& e) {
    throw IoError(std::string("bad sample set JSON: ") + e.what());
  }
}

Json to_json(const SamplingPlan& plan) { return Json(plan.probabilities()); }

Json to_json(const BoundReport& report) {
  return Json{{"theorem", to_string(report.theorem)},
              {"m_bound", report.m_bound},
              {"success_probability", report.success_probability},
              {"inputs", report.inputs},
              {"warnings", report.warnings}};
}

Json to_json(const RecoveryResult& result) {
  std::vector<double> alpha(result.alpha_hat.data(),
                            result.alpha_hat.data() + result.alpha_hat.size());
  return Json{{"alpha_hat", alpha},
              {"residual_norm", result.residual_norm},
              {"l1_value", result.l1_value},
              {"iterations", result.iterations},
              {"status", to_string(result.status)},
              {"feasibility_tol", result.feasibility_tol}};
}

void write_json(const std::string& path, const Json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for '" + path + "'");
}

Json read_json(const std::string& path) {
  auto in = open_in(path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw IoError("cannot parse JSON in '" + path + "': " + e.what());
  }
}

}  // namespace graphcs::io
