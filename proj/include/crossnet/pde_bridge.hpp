#pragma once

#include <cstddef>
#include <vector>

#include "crossnet/dynamics.hpp"
#include "crossnet/graph.hpp"
#include "crossnet/stability.hpp"

namespace crossnet {

// 1-D SKT reaction-cross-diffusion system on [0, ell] with zero-flux
// boundaries, sampled on n equally spaced mesh nodes.
struct PdeParams {
  double d1 = 0.03, d2 = 0.03;
  double d11 = 0.0, d22 = 0.0;
  double d12 = 3.0, d21 = 0.0;
  double r1 = 5.0, r2 = 2.0;
  double a1 = 3.0, a2 = 3.0;
  double b1 = 1.0, b2 = 1.0;
  double ell = 1.0;
  std::size_t n = 2;

  // h = ell / (n - 1)
  double mesh_size() const;
  void validate() const;
};

struct DiscretizedSkt {
  SktParams params;  // diffusion coefficients scaled by 1/h^2
  Graph path;
  double h = 0.0;
};

DiscretizedSkt discretize_skt_1d(const PdeParams& p);

// Three-point finite-difference right-hand side. Ghost values mirror the
// boundary node (w_{-1} = w_0, w_n = w_{n-1}), which reproduces the corner-1
// path Laplacian exactly.
NetworkState stencil_rhs(const NetworkState& state, const PdeParams& p);

// Neumann eigenvalues (pi j / ell)^2, j = 0..count-1, of -d^2/dx^2 on [0, ell].
std::vector<double> continuum_neumann_eigenvalues(std::size_t count, double ell);

// Path spectrum scaled by 1/h^2, approximating the continuum eigenvalues.
std::vector<double> scaled_path_spectrum(std::size_t n, double ell);

}  // namespace crossnet
