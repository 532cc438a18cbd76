#include "crossnet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "crossnet/error.hpp"
#include "crossnet/rng.hpp"

namespace crossnet {

std::vector<double> NetworkState::packed() const {
  std::vector<double> y(u);
  y.insert(y.end(), v.begin(), v.end());
  return y;
}

NetworkState NetworkState::unpack(std::span<const double> y, double t) {
  const std::size_t n = y.size() / 2;
  return {std::vector<double>(y.begin(), y.begin() + n), std::vector<double>(y.begin() + n, y.end()),
          t};
}

NetworkState NetworkState::homogeneous(std::size_t n, double u, double v) {
  return {std::vector<double>(n, u), std::vector<double>(n, v)};
}

SktNetwork::SktNetwork(SktParams params, LaplacianMatrix laplacian)
    : params_(params), laplacian_(std::move(laplacian)) {
  params_.validate();
}

void SktNetwork::operator()(std::span<const double> y, std::span<double> dy) const {
  const std::size_t n = laplacian_.size();
  if (y.size() != 2 * n || dy.size() != 2 * n)
    throw ParameterError("rhs_skt: state length " + std::to_string(y.size()) +
                         " does not match 2N = " + std::to_string(2 * n));
  const SktParams& p = params_;
  const auto u = y.first(n);
  const auto v = y.subspan(n);
  // (L w)_i = k_i w_i - sum_{j ~ i} w_j with the total flux potentials
  // w_u = d1 u + d11 u^2 + d12 u v and w_v = d2 v + d22 v^2 + d21 u v.
  auto flux_u = [&](std::size_t j) { return p.d1 * u[j] + p.d11 * u[j] * u[j] + p.d12 * u[j] * v[j]; };
  auto flux_v = [&](std::size_t j) { return p.d2 * v[j] + p.d22 * v[j] * v[j] + p.d21 * u[j] * v[j]; };
  for (std::size_t i = 0; i < n; ++i) {
    double lu = laplacian_.degree(i) * flux_u(i);
    double lv = laplacian_.degree(i) * flux_v(i);
    for (std::size_t j : laplacian_.neighbors(i)) {
      lu -= flux_u(j);
      lv -= flux_v(j);
    }
    dy[i] = p.f(u[i], v[i]) - lu;
    dy[n + i] = p.g(u[i], v[i]) - lv;
  }
}

GeneralNetwork::GeneralNetwork(GeneralModel model, LaplacianMatrix laplacian)
    : model_(std::move(model)), laplacian_(std::move(laplacian)) {
  model_.validate();
}

void GeneralNetwork::operator()(std::span<const double> y, std::span<double> dy) const {
  const std::size_t n = laplacian_.size();
  if (y.size() != 2 * n || dy.size() != 2 * n)
    throw ParameterError("rhs_general: state length " + std::to_string(y.size()) +
                         " does not match 2N = " + std::to_string(2 * n));
  const GeneralModel& m = model_;
  const auto phi = y.first(n);
  const auto psi = y.subspan(n);
  std::vector<double> w_phi(n), w_psi(n), l_phi(n), l_psi(n);
  for (std::size_t j = 0; j < n; ++j) {
    w_phi[j] = m.d1 * phi[j] + m.d11 * m.s1(phi[j]) * phi[j] + m.d12 * m.c1(psi[j]) * phi[j];
    w_psi[j] = m.d2 * psi[j] + m.d22 * m.s2(psi[j]) * psi[j] + m.d21 * m.c2(phi[j]) * psi[j];
  }
  laplacian_.apply(w_phi, l_phi);
  laplacian_.apply(w_psi, l_psi);
  for (std::size_t i = 0; i < n; ++i) {
    dy[i] = m.f(phi[i], psi[i]) - l_phi[i];
    dy[n + i] = m.g(phi[i], psi[i]) - l_psi[i];
  }
}

namespace {

NetworkState evaluate(const NetworkRhs& rhs, const NetworkState& state) {
  if (state.u.size() != state.v.size())
    throw ParameterError("network state: u and v lengths differ");
  const std::vector<double> y = state.packed();
  std::vector<double> dy(y.size());
  rhs(y, dy);
  return NetworkState::unpack(dy, state.t);
}

double inf_norm(std::span<const double> x) {
  double m = 0.0;
  for (double xi : x) m = std::max(m, std::abs(xi));
  return m;
}

bool all_finite(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double xi) { return std::isfinite(xi); });
}

// Dormand-Prince 5(4) tableau.
namespace dp {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace dp

class DormandPrince {
 public:
  DormandPrince(const NetworkRhs& rhs, std::size_t dim) : rhs_(rhs), dim_(dim) {
    for (auto* k : {&k1, &k2, &k3, &k4, &k5, &k6, &k7, &tmp, &y_new})
      k->assign(dim, 0.0);
  }

  // Attempts one step of size h from (t, y) using k1 = f(y). On return,
  // y_new / k7 hold the candidate and its derivative, and the scaled RMS error
  // estimate is returned.
  double attempt(std::span<const double> y, double h, double rtol, double atol) {
    using namespace dp;
    stage(y, h, {{a21, &k1}}, k2);
    stage(y, h, {{a31, &k1}, {a32, &k2}}, k3);
    stage(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, k4);
    stage(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, k5);
    stage(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, k6);
    for (std::size_t i = 0; i < dim_; ++i)
      y_new[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    rhs_(y_new, k7);
    // Dominant-eigenvalue estimate |lambda| h from the last two stages.
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      num += (k7[i] - k6[i]) * (k7[i] - k6[i]);
      den += (y_new[i] - tmp[i]) * (y_new[i] - tmp[i]);
    }
    h_lambda = den > 0.0 ? h * std::sqrt(num / den) : 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      const double e =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      sum += (e / scale) * (e / scale);
    }
    return std::sqrt(sum / static_cast<double>(dim_));
  }

  std::vector<double> k1, k2, k3, k4, k5, k6, k7, tmp, y_new;
  double h_lambda = 0.0;

 private:
  struct Term {
    double a;
    const std::vector<double>* k;
  };

  void stage(std::span<const double> y, double h, std::initializer_list<Term> terms,
             std::vector<double>& out) {
    for (std::size_t i = 0; i < dim_; ++i) {
      double acc = 0.0;
      for (const Term& term : terms) acc += term.a * (*term.k)[i];
      tmp[i] = y[i] + h * acc;
    }
    rhs_(tmp, out);
  }

  const NetworkRhs& rhs_;
  std::size_t dim_;
};

double initial_step(const NetworkRhs& rhs, std::span<const double> y, std::span<const double> f0,
                    double rtol, double atol, double h_max) {
  const std::size_t n = y.size();
  double d0 = 0.0, d1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = atol + rtol * std::abs(y[i]);
    d0 += (y[i] / sc) * (y[i] / sc);
    d1 += (f0[i] / sc) * (f0[i] / sc);
  }
  d0 = std::sqrt(d0 / n);
  d1 = std::sqrt(d1 / n);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, h_max);
  std::vector<double> y1(n), f1(n);
  for (std::size_t i = 0; i < n; ++i) y1[i] = y[i] + h0 * f0[i];
  rhs(y1, f1);
  double d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = atol + rtol * std::abs(y[i]);
    d2 += ((f1[i] - f0[i]) / sc) * ((f1[i] - f0[i]) / sc);
  }
  d2 = std::sqrt(d2 / n) / h0;
  const double dmax = std::max(d1, d2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
  return std::min({100.0 * h0, h1, h_max});
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(steady_state_tol > 0.0))
    throw ParameterError("integrator: tolerances must be positive");
  if (!(t_max > 0.0)) throw ParameterError("integrator: t_max must be positive");
  if (max_steps == 0) throw ParameterError("integrator: max_steps must be positive");
}

NetworkState rhs_skt(const NetworkState& state, const SktParams& p, const LaplacianMatrix& l) {
  if (state.size() != l.size() || state.v.size() != l.size())
    throw ParameterError("rhs_skt: state has " + std::to_string(state.size()) +
                         " nodes, Laplacian has " + std::to_string(l.size()));
  return evaluate(SktNetwork(p, l), state);
}

NetworkState rhs_general(const NetworkState& state, const GeneralModel& m,
                         const LaplacianMatrix& l) {
  if (state.size() != l.size() || state.v.size() != l.size())
    throw ParameterError("rhs_general: state has " + std::to_string(state.size()) +
                         " nodes, Laplacian has " + std::to_string(l.size()));
  return evaluate(GeneralNetwork(m, l), state);
}

double rhs_inf_norm(const NetworkRhs& rhs, const NetworkState& state) {
  const NetworkState d = evaluate(rhs, state);
  return std::max(inf_norm(d.u), inf_norm(d.v));
}

SimulationResult integrate(const NetworkRhs& rhs, const NetworkState& init,
                           const IntegratorConfig& cfg) {
  cfg.validate();
  if (init.u.size() != init.v.size())
    throw ParameterError("integrate: u and v lengths differ");
  std::vector<double> y = init.packed();
  if (!all_finite(y)) throw ParameterError("integrate: initial state is not finite");

  const std::size_t dim = y.size();
  const double rtol = cfg.rel_tol;
  const double atol = cfg.abs_tol;
  const double clamp_floor = -10.0 * atol;
  constexpr double safe = 0.9, beta = 0.04, expo = 0.2 - beta * 0.75;
  constexpr double grow_limit = 10.0, shrink_limit = 0.2;
  constexpr double kStiffLimit = 2.5;

  DormandPrince dp(rhs, dim);
  SimulationResult res;
  res.min_entry = y.empty() ? 0.0 : *std::min_element(y.begin(), y.end());
  double t = init.t;
  const double t_end = init.t + cfg.t_max;

  auto record = [&](double time) { res.trajectory.push_back(NetworkState::unpack(y, time)); };
  auto finish = [&](StopReason why) {
    res.stop = why;
    res.final_state = NetworkState::unpack(y, t);
    res.final_residual = inf_norm(dp.k1);
    res.converged = res.final_residual <= cfg.steady_state_tol;
    if (res.converged) res.convergence_time = t;
    if (res.trajectory.empty() || res.trajectory.back().t != t) record(t);
    return res;
  };

  rhs(y, dp.k1);
  record(t);
  double next_sample = t + cfg.sample_interval;
  if (cfg.stop_at_steady_state && inf_norm(dp.k1) <= cfg.steady_state_tol)
    return finish(StopReason::steady_state);

  double h = initial_step(rhs, y, dp.k1, rtol, atol, t_end - t);
  double err_old = 1e-4;
  bool last_rejected = false;

  while (t < t_end) {
    if (res.steps >= cfg.max_steps) return finish(StopReason::max_steps);
    if (h < 1e-14 * std::max(1.0, std::abs(t)))
      throw NumericalError("integrate: step size underflow at t = " + std::to_string(t));
    h = std::min(h, t_end - t);

    const double err = dp.attempt(y, h, rtol, atol);
    if (!std::isfinite(err)) {
      if (h < 1e-10)
        throw NumericalError("integrate: non-finite state at t = " + std::to_string(t));
      h *= shrink_limit;
      ++res.rejected_steps;
      last_rejected = true;
      continue;
    }
    const double fac_err = std::pow(std::max(err, 1e-16), expo);
    if (err > 1.0) {
      h /= std::min(1.0 / shrink_limit, fac_err / safe);
      ++res.rejected_steps;
      last_rejected = true;
      continue;
    }

    // Accepted.
    double fac = fac_err / std::pow(err_old, beta) / safe;
    fac = std::clamp(fac, 1.0 / grow_limit, 1.0 / shrink_limit);
    double h_new = h / fac;
    // Stiffness cap: h * lambda_est <= 2.5, inside the real stability interval.
    if (dp.h_lambda > kStiffLimit) h_new = std::min(h_new, h * kStiffLimit / dp.h_lambda);
    if (last_rejected) h_new = std::min(h_new, h);
    err_old = std::max(err, 1e-4);
    last_rejected = false;
    t += h;
    ++res.steps;

    bool clamped = false;
    for (double& yi : dp.y_new) {
      if (yi >= 0.0) continue;
      res.min_entry = std::min(res.min_entry, yi);
      if (yi >= clamp_floor) {
        yi = 0.0;
        clamped = true;
      } else {
        res.positivity_violation = true;
      }
    }
    y.swap(dp.y_new);
    if (clamped)
      rhs(y, dp.k1);
    else
      dp.k1.swap(dp.k7);
    if (!all_finite(y))
      throw NumericalError("integrate: non-finite state at t = " + std::to_string(t));

    if (cfg.sample_interval <= 0.0 || t >= next_sample) {
      record(t);
      if (cfg.sample_interval > 0.0)
        while (next_sample <= t) next_sample += cfg.sample_interval;
    }
    if (cfg.stop_at_steady_state && inf_norm(dp.k1) <= cfg.steady_state_tol)
      return finish(StopReason::steady_state);
    h = h_new;
  }
  return finish(StopReason::t_max);
}

SimulationResult integrate(const SktNetwork& system, const NetworkState& init,
                           const IntegratorConfig& cfg) {
  if (init.size() != system.size())
    throw ParameterError("integrate: state has " + std::to_string(init.size()) +
                         " nodes, system has " + std::to_string(system.size()));
  NetworkRhs rhs = [&system](std::span<const double> y, std::span<double> dy) { system(y, dy); };
  return integrate(rhs, init, cfg);
}

NetworkState perturb_homogeneous(const Coexistence& eq, std::size_t n, double magnitude,
                                 std::uint64_t seed) {
  if (!(magnitude >= 0.0 && magnitude < 1.0))
    throw ParameterError("perturb_homogeneous: relative magnitude must lie in [0, 1)");
  Rng rng(seed);
  NetworkState s = NetworkState::homogeneous(n, eq.u_star, eq.v_star);
  if (magnitude == 0.0) return s;
  for (double& ui : s.u) ui *= 1.0 + rng.uniform(-magnitude, magnitude);
  for (double& vi : s.v) vi *= 1.0 + rng.uniform(-magnitude, magnitude);
  return s;
}

bool check_positivity(std::span<const NetworkState> trajectory, double abs_tol) {
  const double floor = -10.0 * abs_tol;
  auto ok = [floor](const std::vector<double>& x) {
    return std::all_of(x.begin(), x.end(), [floor](double xi) { return xi >= floor; });
  };
  return std::all_of(trajectory.begin(), trajectory.end(),
                     [&](const NetworkState& s) { return ok(s.u) && ok(s.v); });
}

PatternMetrics pattern_metrics(const NetworkState& s, const Coexistence& eq) {
  PatternMetrics m;
  const double n = static_cast<double>(s.size());
  if (s.size() == 0) return m;
  for (std::size_t i = 0; i < s.size(); ++i) {
    m.total_u += s.u[i];
    m.total_v += s.v[i];
  }
  const double mean_u = m.total_u / n;
  const double mean_v = m.total_v / n;
  double dev_u = 0.0, dev_v = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    dev_u = std::max(dev_u, std::abs(s.u[i] - mean_u));
    dev_v = std::max(dev_v, std::abs(s.v[i] - mean_v));
  }
  m.heterogeneity = dev_u + dev_v;
  m.pct_change_u = 100.0 * (m.total_u - n * eq.u_star) / (n * eq.u_star);
  m.pct_change_v = 100.0 * (m.total_v - n * eq.v_star) / (n * eq.v_star);
  return m;
}

std::vector<std::pair<double, double>> mode_amplitudes(const NetworkState& s,
                                                       const Coexistence& eq,
                                                       const DenseMatrix& vecs) {
  const std::size_t n = s.size();
  if (vecs.size() != n)
    throw ParameterError("mode_amplitudes: eigenvector basis has wrong dimension");
  std::vector<std::pair<double, double>> out(n, {0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) {
    const double du = s.u[i] - eq.u_star;
    const double dv = s.v[i] - eq.v_star;
    const auto row = vecs.row(i);
    for (std::size_t a = 0; a < n; ++a) {
      out[a].first += row[a] * du;
      out[a].second += row[a] * dv;
    }
  }
  return out;
}

std::vector<std::pair<double, double>> mode_amplitudes(const NetworkState& s,
                                                       const Coexistence& eq,
                                                       const Spectrum& spectrum) {
  if (!spectrum.eigenvectors)
    throw ParameterError("mode_amplitudes: spectrum has no eigenvectors");
  return mode_amplitudes(s, eq, *spectrum.eigenvectors);
}

}  // namespace crossnet
