#include "crossnet/pde_bridge.hpp"

#include <numbers>
#include <string>

#include "crossnet/error.hpp"
#include "crossnet/spectra.hpp"

namespace crossnet {

double PdeParams::mesh_size() const { return ell / static_cast<double>(n - 1); }

void PdeParams::validate() const {
  if (n < 2) throw ParameterError("pde: requires at least 2 mesh nodes");
  if (!(ell > 0.0)) throw ParameterError("pde: domain length must be positive");
  for (double c : {d1, d2, d11, d22, d12, d21})
    if (!(c >= 0.0)) throw ParameterError("pde: diffusion coefficients must be nonnegative");
}

DiscretizedSkt discretize_skt_1d(const PdeParams& p) {
  p.validate();
  const double h = p.mesh_size();
  const double scale = 1.0 / (h * h);
  SktParams s;
  s.r1 = p.r1;
  s.r2 = p.r2;
  s.a1 = p.a1;
  s.a2 = p.a2;
  s.b1 = p.b1;
  s.b2 = p.b2;
  s.d1 = p.d1 * scale;
  s.d2 = p.d2 * scale;
  s.d11 = p.d11 * scale;
  s.d22 = p.d22 * scale;
  s.d12 = p.d12 * scale;
  s.d21 = p.d21 * scale;
  return {s, gen_path(p.n), h};
}

NetworkState stencil_rhs(const NetworkState& state, const PdeParams& p) {
  p.validate();
  const std::size_t n = p.n;
  if (state.u.size() != n || state.v.size() != n)
    throw ParameterError("stencil_rhs: state has " + std::to_string(state.u.size()) +
                         " nodes, mesh has " + std::to_string(n));
  const double inv_h2 = 1.0 / (p.mesh_size() * p.mesh_size());
  const auto& u = state.u;
  const auto& v = state.v;
  auto second_difference = [n](auto&& w, std::size_t i) {
    const double left = w(i == 0 ? 0 : i - 1);
    const double right = w(i + 1 == n ? n - 1 : i + 1);
    return left - 2.0 * w(i) + right;
  };
  auto lin_u = [&](std::size_t j) { return u[j]; };
  auto lin_v = [&](std::size_t j) { return v[j]; };
  auto sq_u = [&](std::size_t j) { return u[j] * u[j]; };
  auto sq_v = [&](std::size_t j) { return v[j] * v[j]; };
  auto cross = [&](std::size_t j) { return u[j] * v[j]; };

  NetworkState out = NetworkState::homogeneous(n, 0.0, 0.0);
  out.t = state.t;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = u[i] * (p.r1 - p.a1 * u[i] - p.b1 * v[i]);
    const double g = v[i] * (p.r2 - p.b2 * u[i] - p.a2 * v[i]);
    out.u[i] = f + p.d1 * inv_h2 * second_difference(lin_u, i) +
               p.d11 * inv_h2 * second_difference(sq_u, i) +
               p.d12 * inv_h2 * second_difference(cross, i);
    out.v[i] = g + p.d2 * inv_h2 * second_difference(lin_v, i) +
               p.d22 * inv_h2 * second_difference(sq_v, i) +
               p.d21 * inv_h2 * second_difference(cross, i);
  }
  return out;
}

std::vector<double> continuum_neumann_eigenvalues(std::size_t count, double ell) {
  if (!(ell > 0.0)) throw ParameterError("continuum eigenvalues: domain length must be positive");
  std::vector<double> out(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double k = std::numbers::pi * static_cast<double>(j) / ell;
    out[j] = k * k;
  }
  return out;
}

std::vector<double> scaled_path_spectrum(std::size_t n, double ell) {
  PdeParams p;
  p.n = n;
  p.ell = ell;
  p.validate();
  const double h = p.mesh_size();
  std::vector<double> out = path_spectrum_closed_form(n);
  for (double& x : out) x /= h * h;
  return out;
}

}  // namespace crossnet
