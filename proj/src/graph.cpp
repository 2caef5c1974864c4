#include "graphcs/graph.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>
#include <sstream>

#include "graphcs/errors.hpp"

namespace graphcs {

namespace {

std::int64_t pair_count(Index n) { return static_cast<std::int64_t>(n) * (n - 1) / 2; }

void require_probability(double b, const char* what) {
  if (!(b >= 0.0 && b <= 1.0)) {
    std::ostringstream os;
    os << what << " must lie in [0,1], got " << b;
    throw ParameterError(os.str());
  }
}

void require_ring_degree(Index n, Index d) {
  if (d < 2 || d % 2 != 0) {
    throw ParameterError("ring degree d must be even and at least 2, got " + std::to_string(d));
  }
  if (d > n - 1) {
    throw ParameterError("ring degree d=" + std::to_string(d) + " needs n > d, got n=" +
                         std::to_string(n));
  }
}

}  // namespace

Graph::Graph(Matrix adjacency) : adjacency_(std::move(adjacency)) {
  edge_count_ = static_cast<std::int64_t>(adjacency_.sum() / 2.0 + 0.5);
}

Graph Graph::from_adjacency(Matrix adjacency) {
  const Index n = adjacency.rows();
  if (n < 1 || adjacency.cols() != n) {
    throw ParameterError("adjacency must be a non-empty square matrix");
  }
  for (Index j = 0; j < n; ++j) {
    if (adjacency(j, j) != 0.0) {
      throw ParameterError("adjacency diagonal must be zero (vertex " + std::to_string(j) + ")");
    }
    for (Index i = 0; i < n; ++i) {
      const double a = adjacency(i, j);
      if (a != 0.0 && a != 1.0) {
        throw ParameterError("adjacency entries must be 0 or 1");
      }
      if (a != adjacency(j, i)) {
        throw ParameterError("adjacency must be symmetric");
      }
    }
  }
  return Graph(std::move(adjacency));
}

Graph Graph::from_edges(Index n, const std::vector<std::pair<Index, Index>>& edges) {
  if (n < 1) throw ParameterError("graph needs at least one vertex");
  Matrix a = Matrix::Zero(n, n);
  for (const auto& [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n) {
      throw ParameterError("edge endpoint out of range");
    }
    if (i == j) throw ParameterError("self loops are not allowed");
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  return Graph(std::move(a));
}

Graph Graph::empty(Index n) {
  if (n < 1) throw ParameterError("graph needs at least one vertex");
  return Graph(Matrix::Zero(n, n));
}

Index Graph::degree(Index i) const {
  return static_cast<Index>(adjacency_.row(i).sum());
}

std::vector<Index> Graph::degrees() const {
  std::vector<Index> out(static_cast<std::size_t>(n()));
  for (Index i = 0; i < n(); ++i) out[static_cast<std::size_t>(i)] = degree(i);
  return out;
}

std::vector<std::pair<Index, Index>> Graph::edges() const {
  std::vector<std::pair<Index, Index>> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (Index i = 0; i < n(); ++i) {
    for (Index j = i + 1; j < n(); ++j) {
      if (adjacency_(i, j) != 0.0) out.emplace_back(i, j);
    }
  }
  return out;
}

GraphSpec GraphSpec::er(Index n, double b) {
  GraphSpec s;
  s.family = GraphFamily::kEr;
  s.n = n;
  s.b = b;
  return s;
}

GraphSpec GraphSpec::small_world(Index n, Index d, double b) {
  GraphSpec s;
  s.family = GraphFamily::kSmallWorld;
  s.n = n;
  s.d = d;
  s.b = b;
  return s;
}

GraphSpec GraphSpec::ring_regular(Index n, Index d) {
  GraphSpec s;
  s.family = GraphFamily::kRingRegular;
  s.n = n;
  s.d = d;
  return s;
}

GraphSpec GraphSpec::star_like(Index n, std::int64_t target_edges) {
  GraphSpec s;
  s.family = GraphFamily::kStarLike;
  s.n = n;
  s.target_edges = target_edges;
  return s;
}

GraphSpec GraphSpec::from_graph(Graph g) {
  GraphSpec s;
  s.family = GraphFamily::kCustom;
  s.n = g.n();
  s.custom = std::move(g);
  return s;
}

void GraphSpec::validate() const {
  switch (family) {
    case GraphFamily::kEr:
      if (n < 2) throw ParameterError("ER graph needs n >= 2");
      require_probability(b, "ER edge probability b");
      break;
    case GraphFamily::kSmallWorld:
      require_ring_degree(n, d);
      require_probability(b, "rewiring probability b");
      break;
    case GraphFamily::kRingRegular:
      require_ring_degree(n, d);
      break;
    case GraphFamily::kStarLike:
      if (n < 2) throw ParameterError("star-like graph needs n >= 2");
      if (target_edges < n - 1 || target_edges > pair_count(n)) {
        throw ParameterError("star-like target_edges must lie in [n-1, n(n-1)/2]");
      }
      break;
    case GraphFamily::kCustom:
      if (!custom) throw ParameterError("custom graph spec carries no graph");
      break;
  }
}

std::string to_string(GraphFamily family) {
  switch (family) {
    case GraphFamily::kEr: return "er";
    case GraphFamily::kSmallWorld: return "small_world";
    case GraphFamily::kRingRegular: return "ring_regular";
    case GraphFamily::kStarLike: return "star_like";
    case GraphFamily::kCustom: return "custom";
  }
  return "unknown";
}

GraphFamily graph_family_from_string(const std::string& name) {
  if (name == "er") return GraphFamily::kEr;
  if (name == "small_world") return GraphFamily::kSmallWorld;
  if (name == "ring_regular" || name == "ring") return GraphFamily::kRingRegular;
  if (name == "star_like" || name == "star") return GraphFamily::kStarLike;
  if (name == "custom") return GraphFamily::kCustom;
  throw ParameterError("unknown graph family '" + name + "'");
}

Graph generate_er(Index n, double b, Rng& rng) {
  GraphSpec::er(n, b).validate();
  std::bernoulli_distribution edge(b);
  Matrix a = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (edge(rng)) {
        a(i, j) = 1.0;
        a(j, i) = 1.0;
      }
    }
  }
  return Graph::from_adjacency(std::move(a));
}

bool is_ring_pair(Index n, Index d, Index i, Index j) {
  if (i == j) return false;
  const Index diff = i > j ? i - j : j - i;
  const Index ring_distance = std::min(diff, n - diff);
  return ring_distance <= d / 2;
}

Graph generate_ring_regular(Index n, Index d) {
  require_ring_degree(n, d);
  Matrix a = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index s = 1; s <= d / 2; ++s) {
      const Index j = (i + s) % n;
      a(i, j) = 1.0;
      a(j, i) = 1.0;
    }
  }
  return Graph::from_adjacency(std::move(a));
}

double small_world_edge_probability(Index n, Index d, double b, bool ring_pair) {
  const double reconnect = b * static_cast<double>(d) / static_cast<double>(n - 1);
  return ring_pair ? 1.0 - b * (1.0 - reconnect) : reconnect;
}

Graph generate_small_world(Index n, Index d, double b, Rng& rng) {
  GraphSpec::small_world(n, d, b).validate();
  const Graph ring = generate_ring_regular(n, d);
  std::bernoulli_distribution erase(b);
  std::bernoulli_distribution reconnect(b * static_cast<double>(d) / static_cast<double>(n - 1));
  Matrix a = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      // Both draws are taken for every pair so the stream layout does not
      // depend on the lattice.
      const bool erased = erase(rng);
      const bool reconnected = reconnect(rng);
      const bool survives = ring.has_edge(i, j) && !erased;
      if (survives || reconnected) {
        a(i, j) = 1.0;
        a(j, i) = 1.0;
      }
    }
  }
  return Graph::from_adjacency(std::move(a));
}

Graph generate_star_like(Index n, std::int64_t target_edges, Rng& rng) {
  GraphSpec::star_like(n, target_edges).validate();
  Matrix a = Matrix::Zero(n, n);
  for (Index j = 1; j < n; ++j) {
    a(0, j) = 1.0;
    a(j, 0) = 1.0;
  }
  const std::int64_t surplus = target_edges - (n - 1);
  if (surplus > 0) {
    // Non-hub pairs (i, j), 1 <= i < j < n, enumerated row-major.
    std::vector<std::pair<Index, Index>> pairs;
    pairs.reserve(static_cast<std::size_t>(pair_count(n - 1)));
    for (Index i = 1; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    std::vector<std::pair<Index, Index>> chosen;
    chosen.reserve(static_cast<std::size_t>(surplus));
    std::sample(pairs.begin(), pairs.end(), std::back_inserter(chosen), surplus, rng);
    for (const auto& [i, j] : chosen) {
      a(i, j) = 1.0;
      a(j, i) = 1.0;
    }
  }
  return Graph::from_adjacency(std::move(a));
}

Graph generate(const GraphSpec& spec, Rng& rng) {
  spec.validate();
  switch (spec.family) {
    case GraphFamily::kEr: return generate_er(spec.n, spec.b, rng);
    case GraphFamily::kSmallWorld: return generate_small_world(spec.n, spec.d, spec.b, rng);
    case GraphFamily::kRingRegular: return generate_ring_regular(spec.n, spec.d);
    case GraphFamily::kStarLike: return generate_star_like(spec.n, spec.target_edges, rng);
    case GraphFamily::kCustom: return *spec.custom;
  }
  throw ParameterError("unhandled graph family");
}

}  // namespace graphcs
