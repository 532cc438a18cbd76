#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "crossnet/matrix.hpp"

namespace crossnet {

// Two-species competition model with linear, self- and cross-diffusion:
//   du = u (r1 - a1 u - b1 v) - d1 L u - d11 L u^2 - d12 L (u v)
//   dv = v (r2 - b2 u - a2 v) - d2 L v - d22 L v^2 - d21 L (u v)
// Defaults are the weak-competition reference set with d = 0.03.
struct SktParams {
  double r1 = 5.0;
  double r2 = 2.0;
  double a1 = 3.0;
  double a2 = 3.0;
  double b1 = 1.0;
  double b2 = 1.0;
  double d1 = 0.03;
  double d2 = 0.03;
  double d11 = 0.0;
  double d22 = 0.0;
  double d12 = 3.0;
  double d21 = 0.0;

  static SktParams reference() { return {}; }

  bool weak_competition() const { return a1 * a2 - b1 * b2 > 0.0; }

  double f(double u, double v) const { return u * (r1 - a1 * u - b1 * v); }
  double g(double u, double v) const { return v * (r2 - b2 * u - a2 * v); }

  // Throws ParameterError on negative diffusion coefficients.
  void validate() const;

  friend bool operator==(const SktParams&, const SktParams&) = default;
};

struct Coexistence {
  double u_star = 0.0;
  double v_star = 0.0;
};

// Homogeneous steady state of the node dynamics and its linearization.
struct Equilibrium {
  double u_star = 0.0;
  double v_star = 0.0;
  Mat2 jacobian{};   // J*
  Mat2 diffusion{};  // D*, linearization of the coupling terms
  double trace_jacobian() const { return trace(jacobian); }
  double det_jacobian() const { return det(jacobian); }
};

// Solves r1 = a1 u + b1 v, r2 = b2 u + a2 v. Throws ParameterError when the
// competition matrix is singular or a component is not strictly positive.
Coexistence coexistence_equilibrium(const SktParams& p);

Mat2 jacobian_at_equilibrium(const SktParams& p, const Coexistence& eq);
Mat2 diffusion_linearization_skt(const SktParams& p, const Coexistence& eq);

// Coexistence state plus J* and D*.
Equilibrium skt_equilibrium(const SktParams& p);

// General two-species network model
//   dphi = f - d1 L phi - d11 L (s1(phi) phi) - d12 L (c1(psi) phi)
//   dpsi = g - d2 L psi - d22 L (s2(psi) psi) - d21 L (c2(phi) psi)
// Derivatives that are not supplied are taken by central differences.
struct GeneralModel {
  using Reaction = std::function<double(double, double)>;
  using Coupling = std::function<double(double)>;

  Reaction f;
  Reaction g;
  double d1 = 0.0;
  double d2 = 0.0;
  double d11 = 0.0;
  double d22 = 0.0;
  double d12 = 0.0;
  double d21 = 0.0;
  Coupling s1, s2, c1, c2;
  Coupling ds1, ds2, dc1, dc2;              // optional
  std::function<Mat2(double, double)> jacobian;  // optional, [[f_phi, f_psi], [g_phi, g_psi]]

  // s_i(x) = x, c_i(x) = x with analytic derivatives.
  static GeneralModel from_skt(const SktParams& p);

  void validate() const;
};

double central_difference(const std::function<double(double)>& fn, double x);

// J* and D* of the general model at a homogeneous steady state.
Equilibrium general_linearization(const GeneralModel& m, double phi_star, double psi_star);

// M = J* - lambda D*. Throws ParameterError for lambda < 0.
Mat2 characteristic_matrix(const Mat2& jacobian, const Mat2& diffusion, double lambda);

// Largest real part among the eigenvalues of J* - lambda D*.
double dispersion_growth_rate(const Mat2& jacobian, const Mat2& diffusion, double lambda);

// det(M_lambda) = A(lambda) d^2 + B(lambda) d + C(lambda) for a shared linear
// diffusion d = d1 = d2, with
//   A = lambda^2, B = b2 lambda^2 + b1 lambda, C = c2 lambda^2 + c1 lambda + c0.
// Without self-diffusion c2 = 0 and c1 = -(d12 alpha + d21 beta).
struct DExpansion {
  double b2 = 0.0, b1 = 0.0;
  double c2 = 0.0, c1 = 0.0, c0 = 0.0;

  double a_coeff(double lambda) const { return lambda * lambda; }
  double b_coeff(double lambda) const { return (b2 * lambda + b1) * lambda; }
  double c_coeff(double lambda) const { return (c2 * lambda + c1) * lambda + c0; }
  double evaluate(double d, double lambda) const {
    return (a_coeff(lambda) * d + b_coeff(lambda)) * d + c_coeff(lambda);
  }
};

struct DetPolynomials {
  double alpha = 0.0;  // v* (b2 u* - a2 v*)
  double beta = 0.0;   // u* (b1 v* - a1 u*)
  double cross_term = 0.0;  // d12 alpha + d21 beta
  // det(M_lambda) = qa lambda^2 + qb lambda + qc
  double qa = 0.0, qb = 0.0, qc = 0.0;
  // Present only when d1 == d2.
  std::optional<DExpansion> in_d;

  double det_in_lambda(double lambda) const { return (qa * lambda + qb) * lambda + qc; }
};

DetPolynomials det_polynomials(const SktParams& p, const Equilibrium& eq);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;  // +infinity when det(M) stays negative for large lambda
  bool contains_strictly(double x, double margin) const {
    return x > lower + margin && x < upper - margin;
  }
};

struct InstabilityReport {
  double u_star = 0.0;
  double v_star = 0.0;
  double trace_jacobian = 0.0;
  double det_jacobian = 0.0;
  DetPolynomials polynomials;
  std::optional<double> lambda_star;
  std::optional<Interval> region;
  std::vector<std::size_t> unstable_modes;
};

// Positive interval on which qa x^2 + qb x + qc < 0, if any.
std::optional<Interval> negative_interval(double qa, double qb, double qc);

InstabilityReport instability_region(const SktParams& p, const Equilibrium& eq);

// Indices into the sorted spectrum whose eigenvalue lies strictly inside the
// instability region; eigenvalues within `margin` of an endpoint count as stable.
inline constexpr double kBoundaryMargin = 1e-9;
std::vector<std::size_t> classify_modes(std::span<const double> sorted_eigenvalues,
                                        const InstabilityReport& report,
                                        double margin = kBoundaryMargin);

}  // namespace crossnet
