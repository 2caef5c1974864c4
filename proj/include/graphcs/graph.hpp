#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphcs/rng.hpp"
#include "graphcs/types.hpp"

namespace graphcs {

/// Undirected simple graph stored as a dense symmetric 0/1 adjacency.
///
/// Every constructor path validates symmetry, zero diagonal and binary
/// entries, so a Graph value always satisfies those invariants.
class Graph {
 public:
  /// Validates `adjacency` and takes ownership. Throws ParameterError.
  static Graph from_adjacency(Matrix adjacency);
  /// Builds from 0-indexed undirected edges. Duplicate edges collapse.
  static Graph from_edges(Index n, const std::vector<std::pair<Index, Index>>& edges);
  static Graph empty(Index n);

  Index n() const { return adjacency_.rows(); }
  const Matrix& adjacency() const { return adjacency_; }
  std::int64_t edge_count() const { return edge_count_; }
  bool has_edge(Index i, Index j) const { return adjacency_(i, j) != 0.0; }
  Index degree(Index i) const;
  std::vector<Index> degrees() const;
  /// Edges (i, j) with i < j in row-major order.
  std::vector<std::pair<Index, Index>> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adjacency_ == b.adjacency_;
  }

 private:
  explicit Graph(Matrix adjacency);

  Matrix adjacency_;
  std::int64_t edge_count_ = 0;
};

// Graph families used by the experiment harness.
enum class GraphFamily { kEr, kSmallWorld, kRingRegular, kStarLike, kCustom };

struct GraphSpec {
  GraphFamily family = GraphFamily::kEr;
  Index n = 0;
  double b = 0.0;                   // ER edge probability / rewiring probability
  Index d = 0;                      // ring degree (even)
  std::int64_t target_edges = 0;    // star-like edge budget
  std::optional<Graph> custom;      // kCustom only

  static GraphSpec er(Index n, double b);
  static GraphSpec small_world(Index n, Index d, double b);
  static GraphSpec ring_regular(Index n, Index d);
  static GraphSpec star_like(Index n, std::int64_t target_edges);
  static GraphSpec from_graph(Graph g);

  /// Throws ParameterError when the family's parameter ranges are violated.
  void validate() const;
};

std::string to_string(GraphFamily family);
GraphFamily graph_family_from_string(const std::string& name);

Graph generate_er(Index n, double b, Rng& rng);

/// Watts-Strogatz style rewiring of the ring lattice. Each lattice edge
/// survives with probability 1-b, every vertex pair independently gains a
/// reconnection edge with probability b*d/(n-1), and the adjacency is the
/// OR of the two. Pair probabilities:
///   ring pair      1 - b*(1 - b*d/(n-1))
///   non-ring pair  b*d/(n-1)
Graph generate_small_world(Index n, Index d, double b, Rng& rng);

Graph generate_ring_regular(Index n, Index d);

/// Vertex 0 joins every other vertex; the remaining target_edges-(n-1)
/// edges are drawn uniformly without repetition among non-hub pairs.
Graph generate_star_like(Index n, std::int64_t target_edges, Rng& rng);

Graph generate(const GraphSpec& spec, Rng& rng);

/// Probability that pair (i, j) is an edge under generate_small_world.
double small_world_edge_probability(Index n, Index d, double b, bool ring_pair);

/// True when i and j are within d/2 steps of each other on the n-ring.
bool is_ring_pair(Index n, Index d, Index i, Index j);

}  // namespace graphcs
