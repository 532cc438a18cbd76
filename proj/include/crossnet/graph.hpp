#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crossnet/matrix.hpp"

namespace crossnet {

using Edge = std::pair<std::size_t, std::size_t>;

// Simple undirected graph on nodes 0..N-1. Edges are stored normalized
// (first < second) and sorted, so two graphs with the same edge set compare
// equal regardless of how they were built.
class Graph {
 public:
  Graph() = default;

  // Throws ParameterError on self-loops, duplicates or out-of-range indices.
  Graph(std::size_t n_nodes, std::vector<Edge> edges);

  std::size_t n_nodes() const { return n_nodes_; }
  std::size_t n_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  // Neighbor lists, each sorted ascending.
  std::vector<std::vector<std::size_t>> adjacency() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_nodes_ = 0;
  std::vector<Edge> edges_;
};

enum class GraphFamily {
  ring,
  path,
  triangular_lattice,
  square_lattice,
  hexagonal_lattice,
  regular_random,
  watts_strogatz,
  erdos_renyi,
  barabasi_albert,
};

std::string_view to_string(GraphFamily family);
GraphFamily parse_graph_family(std::string_view name);
bool is_random_family(GraphFamily family);

// Family-specific meaning of `k`:
//   ring, watts_strogatz : neighbors on each side (degree 2k)
//   regular_random       : node degree
//   barabasi_albert      : edges attached by each arriving node
// Lattices use rows x cols; every other family uses n.
struct GraphSpec {
  GraphFamily family = GraphFamily::ring;
  std::size_t n = 100;
  std::size_t k = 10;
  double p = 0.0;
  std::size_t rows = 10;
  std::size_t cols = 11;
  std::uint64_t seed = 0;
  bool require_connected = false;
  std::size_t max_connect_retries = 100;

  // Node count of the graph this spec produces.
  std::size_t node_count() const;

  // Throws ParameterError when the family's parameter ranges are violated.
  void validate() const;
};

enum class LatticeKind { triangular, square, hexagonal };

// Graph Laplacian l_ij = k_i delta_ij - a_ij. Stored densely; the nonzero
// off-diagonal pattern is kept alongside for O(|E|) matrix-vector products.
class LaplacianMatrix {
 public:
  LaplacianMatrix() = default;
  explicit LaplacianMatrix(const Graph& g);

  std::size_t size() const { return dense_.size(); }
  const DenseMatrix& dense() const { return dense_; }
  double operator()(std::size_t i, std::size_t j) const { return dense_(i, j); }
  double trace() const;
  double degree(std::size_t i) const { return degree_[i]; }
  std::span<const std::size_t> neighbors(std::size_t i) const { return neighbors_[i]; }

  // out = L * x
  void apply(std::span<const double> x, std::span<double> out) const;

 private:
  DenseMatrix dense_;
  std::vector<double> degree_;
  std::vector<std::vector<std::size_t>> neighbors_;
};

LaplacianMatrix build_laplacian(const Graph& g);

Graph gen_ring(std::size_t n, std::size_t k);
Graph gen_path(std::size_t n);
Graph gen_complete(std::size_t n);
Graph gen_lattice(LatticeKind kind, std::size_t rows, std::size_t cols);
Graph gen_random(const GraphSpec& spec);

// Dispatches on spec.family; deterministic families ignore the seed.
Graph generate(const GraphSpec& spec);

std::vector<std::size_t> degrees(const Graph& g);
bool is_connected(const Graph& g);

// Edge-list text format: first line N, then one "i j" pair (i < j) per line.
void write_edge_list(std::ostream& os, const Graph& g);
Graph read_edge_list(std::istream& is);

}  // namespace crossnet
