#include <doctest.h>

#include <cmath>

#include "crossnet/error.hpp"
#include "crossnet/pde_bridge.hpp"
#include "crossnet/rng.hpp"

using namespace crossnet;

namespace {

double max_magnitude(const NetworkState& s) {
  double m = 1.0;
  for (double x : s.u) m = std::max(m, std::abs(x));
  for (double x : s.v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("mesh and scaling") {
  PdeParams p;
  p.ell = 2.0;
  p.n = 5;
  CHECK(p.mesh_size() == 0.5);
  const DiscretizedSkt d = discretize_skt_1d(p);
  CHECK(d.h == 0.5);
  CHECK(d.params.d12 == doctest::Approx(12.0));
  CHECK(d.params.d1 == doctest::Approx(0.12));
  CHECK(d.params.r1 == 5.0);
  CHECK(d.path == gen_path(5));
  p.n = 1;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p.n = 5;
  p.ell = 0;
  CHECK_THROWS_AS(discretize_skt_1d(p), ParameterError);
}

TEST_CASE("stencil annihilates constants") {
  PdeParams p;
  p.n = 10;
  p.r1 = p.r2 = p.a1 = p.a2 = p.b1 = p.b2 = 0;
  p.d11 = 0.5;
  p.d21 = 0.7;
  const NetworkState d = stencil_rhs(NetworkState::homogeneous(10, 0.8, 1.3), p);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(d.u[i] == 0.0);
    CHECK(d.v[i] == 0.0);
  }
}

TEST_CASE("linear profile has zero interior second difference") {
  PdeParams p;
  p.n = 8;
  p.r1 = p.r2 = p.a1 = p.a2 = p.b1 = p.b2 = 0;
  p.d12 = p.d21 = 0;
  p.d1 = p.d2 = 1.0;
  std::vector<double> u(8), v(8, 1.0);
  for (std::size_t i = 0; i < 8; ++i) u[i] = static_cast<double>(i);
  const NetworkState d = stencil_rhs(NetworkState(u, v), p);
  for (std::size_t i = 1; i + 1 < 8; ++i) CHECK(std::abs(d.u[i]) < 1e-10);
  CHECK(d.u[0] > 0);
  CHECK(d.u[7] < 0);
}

TEST_CASE("stencil equals the network rhs on the path graph") {
  Rng rng(4);
  for (std::size_t n : {2u, 5u, 17u, 64u}) {
    PdeParams p;
    p.n = n;
    p.ell = rng.uniform(0.5, 3);
    p.d11 = rng.uniform(0, 1);
    p.d22 = rng.uniform(0, 1);
    p.d21 = rng.uniform(0, 1);
    const DiscretizedSkt d = discretize_skt_1d(p);
    const LaplacianMatrix l(d.path);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> u(n), v(n);
      for (auto& x : u) x = rng.uniform(0, 2);
      for (auto& x : v) x = rng.uniform(0, 2);
      const NetworkState a = stencil_rhs(NetworkState(u, v), p);
      const NetworkState b = rhs_skt(NetworkState(u, v), d.params, l);
      const double tol = 1e-14 * max_magnitude(a) / (d.h * d.h) * 16;
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(a.u[i] - b.u[i]) <= tol);
        CHECK(std::abs(a.v[i] - b.v[i]) <= tol);
      }
    }
  }
}

TEST_CASE("stencil dimension mismatch") {
  PdeParams p;
  p.n = 4;
  CHECK_THROWS_AS(stencil_rhs(NetworkState::homogeneous(3, 1, 1), p), ParameterError);
}

TEST_CASE("continuum eigenvalues") {
  const auto c = continuum_neumann_eigenvalues(4, 2.0);
  CHECK(c[0] == 0.0);
  CHECK(c[1] == doctest::Approx(std::pow(std::numbers::pi / 2, 2)));
  CHECK(c[3] == doctest::Approx(std::pow(3 * std::numbers::pi / 2, 2)));
  CHECK_THROWS_AS(continuum_neumann_eigenvalues(3, -1), ParameterError);
}

TEST_CASE("scaled path spectrum approaches the continuum") {
  const double ell = 1.0;
  const auto cont = continuum_neumann_eigenvalues(4, ell);
  for (std::size_t j = 1; j < 4; ++j) {
    double prev = INFINITY;
    for (std::size_t n : {8u, 16u, 32u, 64u, 128u, 256u}) {
      const double rel = std::abs(scaled_path_spectrum(n, ell)[j] - cont[j]) / cont[j];
      CHECK(rel < prev);
      prev = rel;
    }
    CHECK(prev < 0.02);
  }
}
