#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "crossnet/error.hpp"
#include "crossnet/graph.hpp"
#include "crossnet/rng.hpp"

using namespace crossnet;

namespace {

GraphSpec random_spec(GraphFamily f, std::size_t n, std::size_t k, double p, std::uint64_t seed) {
  GraphSpec s;
  s.family = f;
  s.n = n;
  s.k = k;
  s.p = p;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("graph normalizes and sorts edges") {
  Graph g(4, {{2, 1}, {0, 3}, {1, 0}});
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}});
  CHECK(g == Graph(4, {{0, 1}, {1, 2}, {3, 0}}));
  const auto adj = g.adjacency();
  CHECK(adj[0] == std::vector<std::size_t>{1, 3});
  CHECK(adj[2] == std::vector<std::size_t>{1});
}

TEST_CASE("graph rejects invalid edges") {
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), ParameterError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), ParameterError);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), ParameterError);
}

TEST_CASE("family names round-trip") {
  for (auto f : {GraphFamily::ring, GraphFamily::path, GraphFamily::triangular_lattice,
                 GraphFamily::square_lattice, GraphFamily::hexagonal_lattice,
                 GraphFamily::regular_random, GraphFamily::watts_strogatz,
                 GraphFamily::erdos_renyi, GraphFamily::barabasi_albert})
    CHECK(parse_graph_family(to_string(f)) == f);
  CHECK_THROWS_AS(parse_graph_family("torus"), ParameterError);
  CHECK(is_random_family(GraphFamily::erdos_renyi));
  CHECK_FALSE(is_random_family(GraphFamily::ring));
}

TEST_CASE("ring is 2K-regular") {
  const Graph g = gen_ring(100, 10);
  CHECK(g.n_edges() == 1000);
  for (auto d : degrees(g)) CHECK(d == 20);
  CHECK(gen_ring(5, 1).n_edges() == 5);
  CHECK(gen_ring(5, 2) == gen_complete(5));
  CHECK_THROWS_AS(gen_ring(10, 5), ParameterError);
  CHECK_THROWS_AS(gen_ring(10, 0), ParameterError);
  CHECK_THROWS_AS(gen_ring(2, 1), ParameterError);
}

TEST_CASE("path graph") {
  const Graph g = gen_path(5);
  CHECK(g.n_edges() == 4);
  CHECK(degrees(g) == std::vector<std::size_t>{1, 2, 2, 2, 1});
  CHECK_THROWS_AS(gen_path(1), ParameterError);
}

TEST_CASE("lattices on 10 x 11 nodes") {
  const Graph sq = gen_lattice(LatticeKind::square, 10, 11);
  const Graph tri = gen_lattice(LatticeKind::triangular, 10, 11);
  const Graph hex = gen_lattice(LatticeKind::hexagonal, 10, 11);
  CHECK(sq.n_nodes() == 110);
  CHECK(sq.n_edges() == 10 * 10 + 9 * 11);
  CHECK(tri.n_edges() == sq.n_edges() + 9 * 10);
  CHECK(hex.n_edges() == 10 * 10 + 5 * 6 + 4 * 5);
  const auto dt = degrees(tri), ds = degrees(sq), dh = degrees(hex);
  CHECK(*std::max_element(dt.begin(), dt.end()) == 6);
  CHECK(*std::max_element(ds.begin(), ds.end()) == 4);
  CHECK(*std::max_element(dh.begin(), dh.end()) == 3);
  CHECK(is_connected(hex));
  CHECK_THROWS_AS(gen_lattice(LatticeKind::square, 1, 5), ParameterError);
}

TEST_CASE("laplacian structure") {
  const Graph g = gen_lattice(LatticeKind::triangular, 4, 5);
  const LaplacianMatrix l(g);
  const std::size_t n = l.size();
  double tr = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      row += l(i, j);
      CHECK(l(i, j) == l(j, i));
    }
    CHECK(row == 0.0);
    tr += l(i, i);
  }
  CHECK(l.trace() == doctest::Approx(2.0 * static_cast<double>(g.n_edges())));
  CHECK(tr == l.trace());

  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(static_cast<double>(i));
  l.apply(x, y);
  for (std::size_t i = 0; i < n; ++i) {
    double ref = 0;
    for (std::size_t j = 0; j < n; ++j) ref += l(i, j) * x[j];
    CHECK(y[i] == doctest::Approx(ref).epsilon(1e-14));
  }
}

TEST_CASE("watts-strogatz with p = 0 is the ring") {
  const auto s = random_spec(GraphFamily::watts_strogatz, 50, 4, 0.0, 7);
  CHECK(generate(s) == gen_ring(50, 4));
}

TEST_CASE("watts-strogatz rewiring keeps the edge count") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = generate(random_spec(GraphFamily::watts_strogatz, 60, 3, 0.3, seed));
    CHECK(g.n_edges() == 180);
  }
}

TEST_CASE("erdos-renyi extremes") {
  CHECK(generate(random_spec(GraphFamily::erdos_renyi, 20, 0, 0.0, 1)).n_edges() == 0);
  CHECK(generate(random_spec(GraphFamily::erdos_renyi, 20, 0, 1.0, 1)) == gen_complete(20));
  CHECK_THROWS_AS(generate(random_spec(GraphFamily::erdos_renyi, 20, 0, 1.5, 1)), ParameterError);
}

TEST_CASE("erdos-renyi edge density") {
  double edges = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    edges += static_cast<double>(generate(random_spec(GraphFamily::erdos_renyi, 100, 0, 0.3, seed)).n_edges());
  CHECK(edges / 20 == doctest::Approx(0.3 * 4950).epsilon(0.02));
}

TEST_CASE("regular random graphs are simple and regular") {
  for (std::size_t k : {3u, 8u, 16u, 40u}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Graph g = generate(random_spec(GraphFamily::regular_random, 100, k, 0, seed));
      for (auto d : degrees(g)) CHECK(d == k);
    }
  }
  CHECK_THROWS_AS(generate(random_spec(GraphFamily::regular_random, 9, 3, 0, 1)), ParameterError);
  CHECK_THROWS_AS(generate(random_spec(GraphFamily::regular_random, 10, 10, 0, 1)), ParameterError);
}

TEST_CASE("barabasi-albert edge count and minimum degree") {
  const std::size_t n = 100, k = 3;
  const Graph g = generate(random_spec(GraphFamily::barabasi_albert, n, k, 0, 5));
  CHECK(g.n_edges() == k + (n - k - 1) * k);
  const auto d = degrees(g);
  CHECK(*std::min_element(d.begin(), d.end()) >= k);
  CHECK(is_connected(g));
}

TEST_CASE("random generators are deterministic in the seed") {
  for (auto f : {GraphFamily::regular_random, GraphFamily::watts_strogatz,
                 GraphFamily::erdos_renyi, GraphFamily::barabasi_albert}) {
    const auto a = random_spec(f, 60, 4, 0.2, 11);
    auto b = a;
    b.seed = 12;
    CHECK(generate(a) == generate(a));
    CHECK_FALSE(generate(a) == generate(b));
  }
}

TEST_CASE("require_connected retries until connected") {
  auto s = random_spec(GraphFamily::erdos_renyi, 40, 0, 0.08, 3);
  s.require_connected = true;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    s.seed = seed;
    CHECK(is_connected(generate(s)));
  }
  s.p = 0.0;
  s.max_connect_retries = 3;
  CHECK_THROWS_AS(generate(s), NumericalError);
}

TEST_CASE("connectivity") {
  CHECK(is_connected(gen_ring(10, 1)));
  CHECK_FALSE(is_connected(Graph(4, {{0, 1}, {2, 3}})));
  CHECK(is_connected(Graph(1, {})));
}

TEST_CASE("edge list round trip") {
  const Graph g = generate(random_spec(GraphFamily::watts_strogatz, 30, 2, 0.4, 9));
  std::stringstream ss;
  write_edge_list(ss, g);
  CHECK(read_edge_list(ss) == g);
}

TEST_CASE("malformed edge lists") {
  std::istringstream empty("");
  CHECK_THROWS_AS(read_edge_list(empty), IoError);
  std::istringstream garbage("3\n0 x\n");
  CHECK_THROWS_AS(read_edge_list(garbage), IoError);
  std::istringstream loop("3\n1 1\n");
  CHECK_THROWS_AS(read_edge_list(loop), ParameterError);
  std::istringstream range("3\n0 5\n");
  CHECK_THROWS_AS(read_edge_list(range), ParameterError);
}
