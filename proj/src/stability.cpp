#include "crossnet/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "crossnet/error.hpp"

namespace crossnet {

void SktParams::validate() const {
  for (double c : {d1, d2, d11, d22, d12, d21})
    if (!(c >= 0.0)) throw ParameterError("SKT: diffusion coefficients must be nonnegative");
}

Coexistence coexistence_equilibrium(const SktParams& p) {
  const double det = p.a1 * p.a2 - p.b1 * p.b2;
  if (det == 0.0)
    throw ParameterError("coexistence: degenerate competition matrix (a1*a2 - b1*b2 = 0)");
  const double u = (p.r1 * p.a2 - p.b1 * p.r2) / det;
  const double v = (p.a1 * p.r2 - p.b2 * p.r1) / det;
  if (!(u > 0.0 && v > 0.0))
    throw ParameterError("coexistence: no positive coexistence state (u*=" + std::to_string(u) +
                         ", v*=" + std::to_string(v) + ")");
  return {u, v};
}

Mat2 jacobian_at_equilibrium(const SktParams& p, const Coexistence& eq) {
  return {{{-p.a1 * eq.u_star, -p.b1 * eq.u_star}, {-p.b2 * eq.v_star, -p.a2 * eq.v_star}}};
}

Mat2 diffusion_linearization_skt(const SktParams& p, const Coexistence& eq) {
  const double u = eq.u_star;
  const double v = eq.v_star;
  return {{{p.d1 + 2.0 * p.d11 * u + p.d12 * v, p.d12 * u},
           {p.d21 * v, p.d2 + 2.0 * p.d22 * v + p.d21 * u}}};
}

Equilibrium skt_equilibrium(const SktParams& p) {
  p.validate();
  const Coexistence c = coexistence_equilibrium(p);
  return {c.u_star, c.v_star, jacobian_at_equilibrium(p, c), diffusion_linearization_skt(p, c)};
}

GeneralModel GeneralModel::from_skt(const SktParams& p) {
  GeneralModel m;
  m.f = [p](double u, double v) { return p.f(u, v); };
  m.g = [p](double u, double v) { return p.g(u, v); };
  m.d1 = p.d1;
  m.d2 = p.d2;
  m.d11 = p.d11;
  m.d22 = p.d22;
  m.d12 = p.d12;
  m.d21 = p.d21;
  auto identity = [](double x) { return x; };
  auto one = [](double) { return 1.0; };
  m.s1 = m.s2 = m.c1 = m.c2 = identity;
  m.ds1 = m.ds2 = m.dc1 = m.dc2 = one;
  m.jacobian = [p](double u, double v) {
    return Mat2{{{p.r1 - 2.0 * p.a1 * u - p.b1 * v, -p.b1 * u},
                 {-p.b2 * v, p.r2 - p.b2 * u - 2.0 * p.a2 * v}}};
  };
  return m;
}

void GeneralModel::validate() const {
  if (!f || !g) throw ParameterError("general model: reaction functions f, g are required");
  if (!s1 || !s2 || !c1 || !c2)
    throw ParameterError("general model: coupling functions s1, s2, c1, c2 are required");
  for (double c : {d1, d2, d11, d22, d12, d21})
    if (!(c >= 0.0)) throw ParameterError("general model: diffusion coefficients must be nonnegative");
}

double central_difference(const std::function<double(double)>& fn, double x) {
  const double h = 1e-6 * std::max(1.0, std::abs(x));
  return (fn(x + h) - fn(x - h)) / (2.0 * h);
}

Equilibrium general_linearization(const GeneralModel& m, double phi, double psi) {
  m.validate();
  auto derivative = [](const GeneralModel::Coupling& analytic, const GeneralModel::Coupling& fn,
                       double x) { return analytic ? analytic(x) : central_difference(fn, x); };

  Equilibrium eq;
  eq.u_star = phi;
  eq.v_star = psi;
  if (m.jacobian) {
    eq.jacobian = m.jacobian(phi, psi);
  } else {
    eq.jacobian = {{{central_difference([&](double x) { return m.f(x, psi); }, phi),
                     central_difference([&](double y) { return m.f(phi, y); }, psi)},
                    {central_difference([&](double x) { return m.g(x, psi); }, phi),
                     central_difference([&](double y) { return m.g(phi, y); }, psi)}}};
  }
  const double s1 = m.s1(phi), s2 = m.s2(psi);
  const double c1 = m.c1(psi), c2 = m.c2(phi);
  eq.diffusion = {{{m.d1 + m.d11 * (s1 + derivative(m.ds1, m.s1, phi) * phi) + m.d12 * c1,
                    m.d12 * derivative(m.dc1, m.c1, psi) * phi},
                   {m.d21 * derivative(m.dc2, m.c2, phi) * psi,
                    m.d2 + m.d22 * (s2 + derivative(m.ds2, m.s2, psi) * psi) + m.d21 * c2}}};
  return eq;
}

Mat2 characteristic_matrix(const Mat2& j, const Mat2& d, double lambda) {
  if (!(lambda >= 0.0))
    throw ParameterError("characteristic_matrix: Laplacian eigenvalue must be nonnegative");
  return {{{j[0][0] - lambda * d[0][0], j[0][1] - lambda * d[0][1]},
           {j[1][0] - lambda * d[1][0], j[1][1] - lambda * d[1][1]}}};
}

double dispersion_growth_rate(const Mat2& j, const Mat2& d, double lambda) {
  const Mat2 m = characteristic_matrix(j, d, lambda);
  const double tr = trace(m);
  const double dt = det(m);
  const double disc = tr * tr - 4.0 * dt;
  if (disc < 0.0) return 0.5 * tr;
  const double root = std::sqrt(disc);
  // Larger root; the smaller-magnitude one comes from the product of roots.
  if (tr >= 0.0) return 0.5 * (tr + root);
  const double big = 0.5 * (tr - root);
  return big != 0.0 ? dt / big : 0.0;
}

DetPolynomials det_polynomials(const SktParams& p, const Equilibrium& eq) {
  const Mat2& j = eq.jacobian;
  const Mat2& d = eq.diffusion;
  const double u = eq.u_star;
  const double v = eq.v_star;

  DetPolynomials out;
  out.alpha = v * (p.b2 * u - p.a2 * v);
  out.beta = u * (p.b1 * v - p.a1 * u);
  out.cross_term = p.d12 * out.alpha + p.d21 * out.beta;
  out.qa = det(d);
  out.qb = -(j[0][0] * d[1][1] + j[1][1] * d[0][0] - j[0][1] * d[1][0] - j[1][0] * d[0][1]);
  out.qc = det(j);

  if (p.d1 == p.d2) {
    // D* = d I + E, with E collecting the density-dependent terms.
    const Mat2 e{{{d[0][0] - p.d1, d[0][1]}, {d[1][0], d[1][1] - p.d2}}};
    DExpansion x;
    x.b2 = trace(e);
    x.b1 = -trace(j);
    x.c2 = det(e);
    x.c1 = -(j[0][0] * e[1][1] + j[1][1] * e[0][0] - j[0][1] * e[1][0] - j[1][0] * e[0][1]);
    x.c0 = det(j);
    out.in_d = x;
  }
  return out;
}

std::optional<Interval> negative_interval(double qa, double qb, double qc) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (qa == 0.0) {
    if (qb < 0.0 && qc > 0.0) return Interval{-qc / qb, inf};
    return std::nullopt;
  }
  const double disc = qb * qb - 4.0 * qa * qc;
  if (!(disc > 0.0)) return std::nullopt;
  // Larger-magnitude root first, the other from the product of roots.
  const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
  double r1 = q / qa;
  double r2 = qc / q;
  if (r1 > r2) std::swap(r1, r2);
  if (qa > 0.0) {
    if (r1 > 0.0) return Interval{r1, r2};
    return std::nullopt;
  }
  // Downward parabola: negative beyond the largest root.
  if (r2 > 0.0) return Interval{r2, inf};
  return std::nullopt;
}

InstabilityReport instability_region(const SktParams& p, const Equilibrium& eq) {
  InstabilityReport rep;
  rep.u_star = eq.u_star;
  rep.v_star = eq.v_star;
  rep.trace_jacobian = eq.trace_jacobian();
  rep.det_jacobian = eq.det_jacobian();
  rep.polynomials = det_polynomials(p, eq);
  const DetPolynomials& poly = rep.polynomials;

  if (poly.cross_term > 0.0) rep.lambda_star = rep.det_jacobian / poly.cross_term;
  rep.region = negative_interval(poly.qa, poly.qb, poly.qc);

  if (rep.region) {
    // Direct determinant just inside and just outside each endpoint.
    auto direct = [&](double lambda) {
      return det(characteristic_matrix(eq.jacobian, eq.diffusion, lambda));
    };
    const Interval& r = *rep.region;
    const double mid = std::isfinite(r.upper) ? 0.5 * (r.lower + r.upper) : 2.0 * r.lower + 1.0;
    const double eps = 1e-6 * std::max(1.0, r.lower);
    bool ok = direct(mid) < 0.0 && direct(std::max(0.0, r.lower - eps)) > 0.0;
    if (std::isfinite(r.upper)) ok = ok && direct(r.upper + 1e-6 * std::max(1.0, r.upper)) > 0.0;
    if (!ok) throw NumericalError("instability_region: roots fail the determinant sign check");
  }
  return rep;
}

std::vector<std::size_t> classify_modes(std::span<const double> eigenvalues,
                                        const InstabilityReport& report, double margin) {
  std::vector<std::size_t> out;
  if (!report.region) return out;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    if (report.region->contains_strictly(eigenvalues[i], margin)) out.push_back(i);
  return out;
}

}  // namespace crossnet
