#pragma once

#include <string>

#include <json.hpp>

#include "graphcs/bounds.hpp"
#include "graphcs/diffusion.hpp"
#include "graphcs/graph.hpp"
#include "graphcs/recovery.hpp"
#include "graphcs/sampling.hpp"
#include "graphcs/types.hpp"

namespace graphcs::io {

using Json = nlohmann::json;

// Edge list: first line holds n, then one "i j" pair per line (0-indexed).
void write_edge_list(const std::string& path, const Graph& graph);
Graph read_edge_list(const std::string& path);

// Dense comma-separated matrices and vectors (one entry per line for vectors),
// written with 17 significant digits so doubles round-trip.
void write_matrix_csv(const std::string& path, const Matrix& m);
Matrix read_matrix_csv(const std::string& path);
void write_vector_csv(const std::string& path, const Vector& v);
Vector read_vector_csv(const std::string& path);

Json to_json(const SparseInput& alpha);
SparseInput sparse_input_from_json(const Json& j);
Json to_json(const SampleSet& samples);
SampleSet sample_set_from_json(const Json& j);
Json to_json(const SamplingPlan& plan);
Json to_json(const BoundReport& report);
Json to_json(const RecoveryResult& result);

void write_json(const std::string& path, const Json& j);
Json read_json(const std::string& path);

}  // namespace graphcs::io
