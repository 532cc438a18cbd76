#include "crossnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "crossnet/error.hpp"
#include "crossnet/rng.hpp"

namespace crossnet {

namespace {

Edge normalized(std::size_t a, std::size_t b) { return a < b ? Edge{a, b} : Edge{b, a}; }

Graph from_edge_set(std::size_t n, const std::set<Edge>& edges) {
  return Graph(n, std::vector<Edge>(edges.begin(), edges.end()));
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

// Watts-Strogatz: rewire the far endpoint of each ring edge with probability p.
Graph gen_watts_strogatz(std::size_t n, std::size_t k, double p, Rng& rng) {
  std::vector<std::set<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t off = 1; off <= k; ++off) {
      const std::size_t j = (i + off) % n;
      adj[i].insert(j);
      adj[j].insert(i);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t off = 1; off <= k; ++off) {
      const std::size_t j = (i + off) % n;
      if (!rng.bernoulli(p)) continue;
      // The base edge may already have been rewired away from the other end.
      if (!adj[i].contains(j)) continue;
      if (adj[i].size() >= n - 1) continue;
      std::size_t w = 0;
      do {
        w = rng.below(n);
      } while (w == i || adj[i].contains(w));
      adj[i].erase(j);
      adj[j].erase(i);
      adj[i].insert(w);
      adj[w].insert(i);
    }
  }
  std::set<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j : adj[i])
      if (i < j) edges.insert({i, j});
  return from_edge_set(n, edges);
}

Graph gen_erdos_renyi(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

// Preferential attachment grown from a star on k+1 nodes.
Graph gen_barabasi_albert(std::size_t n, std::size_t k, Rng& rng) {
  std::set<Edge> edges;
  std::vector<std::size_t> endpoints;  // node i appears deg(i) times
  for (std::size_t leaf = 1; leaf <= k; ++leaf) {
    edges.insert({0, leaf});
    endpoints.push_back(0);
    endpoints.push_back(leaf);
  }
  for (std::size_t node = k + 1; node < n; ++node) {
    std::vector<std::size_t> targets;
    while (targets.size() < k) {
      const std::size_t t = endpoints[rng.below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (std::size_t t : targets) {
      edges.insert(normalized(node, t));
      endpoints.push_back(node);
      endpoints.push_back(t);
    }
  }
  return from_edge_set(n, edges);
}

// One pass of the stub-pairing construction; unsuitable pairs are returned to
// the stub pool and re-paired. Returns false when the remaining stubs cannot
// be completed into a simple graph.
bool try_regular_pairing(std::size_t n, std::size_t k, Rng& rng, std::set<Edge>& edges) {
  edges.clear();
  std::vector<std::size_t> stubs;
  stubs.reserve(n * k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t i = 0; i < n; ++i) stubs.push_back(i);

  while (!stubs.empty()) {
    std::map<std::size_t, std::size_t> leftover;
    rng.shuffle(stubs.begin(), stubs.end());
    for (std::size_t s = 0; s + 1 < stubs.size(); s += 2) {
      const Edge e = normalized(stubs[s], stubs[s + 1]);
      if (e.first != e.second && !edges.contains(e)) {
        edges.insert(e);
      } else {
        ++leftover[e.first];
        ++leftover[e.second];
      }
    }
    if (leftover.empty()) break;
    bool suitable = false;
    for (auto a = leftover.begin(); a != leftover.end() && !suitable; ++a)
      for (auto b = std::next(a); b != leftover.end(); ++b)
        if (!edges.contains({a->first, b->first})) {
          suitable = true;
          break;
        }
    if (!suitable) return false;
    stubs.clear();
    for (const auto& [node, count] : leftover) stubs.insert(stubs.end(), count, node);
  }
  return true;
}

Graph gen_regular_random(std::size_t n, std::size_t k, Rng& rng) {
  if (k == 0) return Graph(n, {});
  constexpr int kMaxAttempts = 10000;
  std::set<Edge> edges;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt)
    if (try_regular_pairing(n, k, rng, edges)) return from_edge_set(n, edges);
  throw NumericalError("regular-random: no simple " + std::to_string(k) + "-regular graph after " +
                       std::to_string(kMaxAttempts) + " pairing attempts");
}

Graph draw_once(const GraphSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  switch (spec.family) {
    case GraphFamily::regular_random:
      return gen_regular_random(spec.n, spec.k, rng);
    case GraphFamily::watts_strogatz:
      return gen_watts_strogatz(spec.n, spec.k, spec.p, rng);
    case GraphFamily::erdos_renyi:
      return gen_erdos_renyi(spec.n, spec.p, rng);
    case GraphFamily::barabasi_albert:
      return gen_barabasi_albert(spec.n, spec.k, rng);
    default:
      throw ParameterError("gen_random: family '" + std::string(to_string(spec.family)) +
                           "' is not random");
  }
}

}  // namespace

Graph::Graph(std::size_t n_nodes, std::vector<Edge> edges) : n_nodes_(n_nodes) {
  for (auto& e : edges) {
    if (e.first >= n_nodes || e.second >= n_nodes)
      throw ParameterError("edge (" + std::to_string(e.first) + ", " + std::to_string(e.second) +
                           ") out of range for " + std::to_string(n_nodes) + " nodes");
    if (e.first == e.second) throw ParameterError("self-loop at node " + std::to_string(e.first));
    e = normalized(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end())
    throw ParameterError("duplicate edge (" + std::to_string(dup->first) + ", " +
                         std::to_string(dup->second) + ")");
  edges_ = std::move(edges);
}

std::vector<std::vector<std::size_t>> Graph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(n_nodes_);
  for (const auto& [i, j] : edges_) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

std::string_view to_string(GraphFamily family) {
  switch (family) {
    case GraphFamily::ring: return "ring";
    case GraphFamily::path: return "path";
    case GraphFamily::triangular_lattice: return "triangular-lattice";
    case GraphFamily::square_lattice: return "square-lattice";
    case GraphFamily::hexagonal_lattice: return "hexagonal-lattice";
    case GraphFamily::regular_random: return "regular-random";
    case GraphFamily::watts_strogatz: return "watts-strogatz";
    case GraphFamily::erdos_renyi: return "erdos-renyi";
    case GraphFamily::barabasi_albert: return "barabasi-albert";
  }
  return "unknown";
}

GraphFamily parse_graph_family(std::string_view name) {
  for (auto f : {GraphFamily::ring, GraphFamily::path, GraphFamily::triangular_lattice,
                 GraphFamily::square_lattice, GraphFamily::hexagonal_lattice,
                 GraphFamily::regular_random, GraphFamily::watts_strogatz,
                 GraphFamily::erdos_renyi, GraphFamily::barabasi_albert})
    if (to_string(f) == name) return f;
  throw ParameterError("unknown graph family '" + std::string(name) + "'");
}

bool is_random_family(GraphFamily family) {
  return family == GraphFamily::regular_random || family == GraphFamily::watts_strogatz ||
         family == GraphFamily::erdos_renyi || family == GraphFamily::barabasi_albert;
}

std::size_t GraphSpec::node_count() const {
  switch (family) {
    case GraphFamily::triangular_lattice:
    case GraphFamily::square_lattice:
    case GraphFamily::hexagonal_lattice:
      return rows * cols;
    default:
      return n;
  }
}

void GraphSpec::validate() const {
  const std::string name(to_string(family));
  auto check_p = [&] {
    require(p >= 0.0 && p <= 1.0, name + ": p must lie in [0, 1]");
  };
  switch (family) {
    case GraphFamily::ring:
    case GraphFamily::watts_strogatz:
      require(n >= 3, name + ": requires N >= 3");
      require(k >= 1 && k <= (n - 1) / 2, name + ": requires 1 <= K <= (N-1)/2");
      if (family == GraphFamily::watts_strogatz) check_p();
      break;
    case GraphFamily::path:
      require(n >= 2, name + ": requires N >= 2");
      break;
    case GraphFamily::triangular_lattice:
    case GraphFamily::square_lattice:
    case GraphFamily::hexagonal_lattice:
      require(rows >= 2 && cols >= 2, name + ": requires rows, cols >= 2");
      break;
    case GraphFamily::regular_random:
      require(n >= 1, name + ": requires N >= 1");
      require(k < n, name + ": requires degree K < N");
      require((n * k) % 2 == 0, name + ": requires N*K even");
      break;
    case GraphFamily::erdos_renyi:
      require(n >= 1, name + ": requires N >= 1");
      check_p();
      break;
    case GraphFamily::barabasi_albert:
      require(k >= 1 && k + 1 <= n, name + ": requires 1 <= K < N");
      break;
  }
}

LaplacianMatrix::LaplacianMatrix(const Graph& g)
    : dense_(g.n_nodes()), degree_(g.n_nodes(), 0.0), neighbors_(g.adjacency()) {
  for (const auto& [i, j] : g.edges()) {
    dense_(i, j) = -1.0;
    dense_(j, i) = -1.0;
    degree_[i] += 1.0;
    degree_[j] += 1.0;
  }
  for (std::size_t i = 0; i < g.n_nodes(); ++i) dense_(i, i) = degree_[i];
}

double LaplacianMatrix::trace() const {
  double t = 0.0;
  for (double d : degree_) t += d;
  return t;
}

void LaplacianMatrix::apply(std::span<const double> x, std::span<double> out) const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = degree_[i] * x[i];
    for (std::size_t j : neighbors_[i]) acc -= x[j];
    out[i] = acc;
  }
}

LaplacianMatrix build_laplacian(const Graph& g) { return LaplacianMatrix(g); }

Graph gen_ring(std::size_t n, std::size_t k) {
  GraphSpec{.family = GraphFamily::ring, .n = n, .k = k}.validate();
  std::vector<Edge> edges;
  edges.reserve(n * k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t off = 1; off <= k; ++off) edges.push_back(normalized(i, (i + off) % n));
  return Graph(n, std::move(edges));
}

Graph gen_path(std::size_t n) {
  GraphSpec{.family = GraphFamily::path, .n = n}.validate();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

Graph gen_complete(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

Graph gen_lattice(LatticeKind kind, std::size_t rows, std::size_t cols) {
  require(rows >= 2 && cols >= 2, "lattice: requires rows, cols >= 2");
  auto id = [cols](std::size_t r, std::size_t c) { return r * cols + c; };
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 >= rows) continue;
      switch (kind) {
        case LatticeKind::square:
          edges.emplace_back(id(r, c), id(r + 1, c));
          break;
        case LatticeKind::triangular:
          edges.emplace_back(id(r, c), id(r + 1, c));
          if (c + 1 < cols) edges.emplace_back(id(r, c), id(r + 1, c + 1));
          break;
        case LatticeKind::hexagonal:
          // Brick-wall embedding: every other vertical rung is present.
          if ((r + c) % 2 == 0) edges.emplace_back(id(r, c), id(r + 1, c));
          break;
      }
    }
  }
  return Graph(rows * cols, std::move(edges));
}

Graph gen_random(const GraphSpec& spec) {
  spec.validate();
  if (!is_random_family(spec.family))
    throw ParameterError("gen_random: family '" + std::string(to_string(spec.family)) +
                         "' is not random");
  if (!spec.require_connected) return draw_once(spec, spec.seed);
  for (std::size_t attempt = 0; attempt <= spec.max_connect_retries; ++attempt) {
    const std::uint64_t seed = attempt == 0 ? spec.seed : derive_seed(spec.seed, attempt);
    Graph g = draw_once(spec, seed);
    if (is_connected(g)) return g;
  }
  throw NumericalError(std::string(to_string(spec.family)) + ": no connected realization after " +
                       std::to_string(spec.max_connect_retries + 1) + " draws");
}

Graph generate(const GraphSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case GraphFamily::ring: return gen_ring(spec.n, spec.k);
    case GraphFamily::path: return gen_path(spec.n);
    case GraphFamily::triangular_lattice:
      return gen_lattice(LatticeKind::triangular, spec.rows, spec.cols);
    case GraphFamily::square_lattice: return gen_lattice(LatticeKind::square, spec.rows, spec.cols);
    case GraphFamily::hexagonal_lattice:
      return gen_lattice(LatticeKind::hexagonal, spec.rows, spec.cols);
    default: return gen_random(spec);
  }
}

std::vector<std::size_t> degrees(const Graph& g) {
  std::vector<std::size_t> deg(g.n_nodes(), 0);
  for (const auto& [i, j] : g.edges()) {
    ++deg[i];
    ++deg[j];
  }
  return deg;
}

bool is_connected(const Graph& g) {
  const std::size_t n = g.n_nodes();
  if (n <= 1) return true;
  const auto adj = g.adjacency();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t visited = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j : adj[i]) {
      if (seen[j]) continue;
      seen[j] = 1;
      ++visited;
      stack.push_back(j);
    }
  }
  return visited == n;
}

void write_edge_list(std::ostream& os, const Graph& g) {
  os << g.n_nodes() << '\n';
  for (const auto& [i, j] : g.edges()) os << i << ' ' << j << '\n';
}

Graph read_edge_list(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("edge list: missing node count");
  std::size_t n = 0;
  {
    std::istringstream head(line);
    if (!(head >> n)) throw IoError("edge list: malformed node count '" + line + "'");
  }
  std::vector<Edge> edges;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    long long i = -1, j = -1;
    std::string extra;
    if (!(row >> i >> j) || (row >> extra) || i < 0 || j < 0)
      throw IoError("edge list: malformed line " + std::to_string(line_no) + ": '" + line + "'");
    edges.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  return Graph(n, std::move(edges));
}

}  // namespace crossnet
