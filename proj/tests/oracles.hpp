#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's numerics; formulas are written out from the model directly.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

struct Params {
  double r1 = 5, r2 = 2, a1 = 3, a2 = 3, b1 = 1, b2 = 1;
  double d1 = 0.03, d2 = 0.03, d11 = 0, d22 = 0, d12 = 3, d21 = 0;
};

struct Lin {
  double u, v;
  double j11, j12, j21, j22;
  double D11, D12, D21, D22;
};

// Cramer's rule for the coexistence state, hand-differentiated Jacobian and
// coupling linearization.
inline Lin linearize(const Params& p) {
  const double det = p.a1 * p.a2 - p.b1 * p.b2;
  Lin l{};
  l.u = (p.r1 * p.a2 - p.b1 * p.r2) / det;
  l.v = (p.a1 * p.r2 - p.b2 * p.r1) / det;
  l.j11 = p.r1 - 2 * p.a1 * l.u - p.b1 * l.v;
  l.j12 = -p.b1 * l.u;
  l.j21 = -p.b2 * l.v;
  l.j22 = p.r2 - p.b2 * l.u - 2 * p.a2 * l.v;
  l.D11 = p.d1 + 2 * p.d11 * l.u + p.d12 * l.v;
  l.D12 = p.d12 * l.u;
  l.D21 = p.d21 * l.v;
  l.D22 = p.d2 + 2 * p.d22 * l.v + p.d21 * l.u;
  return l;
}

// det(J - lambda D) by expanding the 2x2 determinant entrywise.
inline double det_m(const Lin& l, double lambda) {
  const double m11 = l.j11 - lambda * l.D11;
  const double m12 = l.j12 - lambda * l.D12;
  const double m21 = l.j21 - lambda * l.D21;
  const double m22 = l.j22 - lambda * l.D22;
  return m11 * m22 - m12 * m21;
}

// Largest real part of the eigenvalues of J - lambda D, via the quadratic formula.
inline double growth_rate(const Lin& l, double lambda) {
  const double tr = (l.j11 - lambda * l.D11) + (l.j22 - lambda * l.D22);
  const double dt = det_m(l, lambda);
  const double disc = tr * tr / 4 - dt;
  return disc >= 0 ? tr / 2 + std::sqrt(disc) : tr / 2;
}

struct SignChange {
  std::vector<double> down;  // det crosses from + to -
  std::vector<double> up;    // det crosses from - to +
};

// Scans det(M_lambda) on [0, hi] with the given step, reporting midpoints of
// each bracketing interval.
inline SignChange scan_det(const Lin& l, double hi, double step) {
  SignChange s;
  double prev = det_m(l, 0.0);
  for (std::size_t i = 1;; ++i) {
    const double x = static_cast<double>(i) * step;
    if (x > hi) break;
    const double cur = det_m(l, x);
    if (prev >= 0 && cur < 0) s.down.push_back(x - step / 2);
    if (prev < 0 && cur >= 0) s.up.push_back(x - step / 2);
    prev = cur;
  }
  return s;
}

// Circulant eigenvalues of the 2K-ring: 2K - 2 sum_m cos(2 pi m j / N).
inline std::vector<double> ring_eigenvalues(std::size_t n, std::size_t k) {
  std::vector<double> out;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0;
    for (std::size_t m = 1; m <= k; ++m)
      s += std::cos(2 * std::numbers::pi * static_cast<double>(m * j) / static_cast<double>(n));
    out.push_back(2.0 * static_cast<double>(k) - 2 * s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Path Laplacian eigenvalues 2 - 2 cos(pi j / N).
inline std::vector<double> path_eigenvalues(std::size_t n) {
  std::vector<double> out;
  for (std::size_t j = 0; j < n; ++j)
    out.push_back(2 - 2 * std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(n)));
  std::sort(out.begin(), out.end());
  return out;
}

// Dense Laplacian straight from an edge list.
inline std::vector<std::vector<double>> laplacian(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
  for (auto [i, j] : edges) {
    l[i][j] -= 1;
    l[j][i] -= 1;
    l[i][i] += 1;
    l[j][j] += 1;
  }
  return l;
}

// SKT network right-hand side with dense matrix-vector products.
inline void skt_rhs(const Params& p, const std::vector<std::vector<double>>& l,
                    const std::vector<double>& u, const std::vector<double>& v,
                    std::vector<double>& du, std::vector<double>& dv) {
  const std::size_t n = u.size();
  du.assign(n, 0);
  dv.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    double lu = 0, lv = 0;
    for (std::size_t j = 0; j < n; ++j) {
      lu += l[i][j] * (p.d1 * u[j] + p.d11 * u[j] * u[j] + p.d12 * u[j] * v[j]);
      lv += l[i][j] * (p.d2 * v[j] + p.d22 * v[j] * v[j] + p.d21 * u[j] * v[j]);
    }
    du[i] = u[i] * (p.r1 - p.a1 * u[i] - p.b1 * v[i]) - lu;
    dv[i] = v[i] * (p.r2 - p.b2 * u[i] - p.a2 * v[i]) - lv;
  }
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace oracle
