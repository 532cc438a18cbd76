#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "crossnet/graph.hpp"
#include "crossnet/matrix.hpp"
#include "crossnet/spectra.hpp"
#include "crossnet/stability.hpp"

namespace crossnet {

struct NetworkState {
  std::vector<double> u;
  std::vector<double> v;
  double t = 0.0;

  NetworkState() = default;
  NetworkState(std::vector<double> u_, std::vector<double> v_, double t_ = 0.0)
      : u(std::move(u_)), v(std::move(v_)), t(t_) {}

  std::size_t size() const { return u.size(); }

  // Packs into [u_0..u_{N-1}, v_0..v_{N-1}].
  std::vector<double> packed() const;
  static NetworkState unpack(std::span<const double> y, double t = 0.0);

  static NetworkState homogeneous(std::size_t n, double u, double v);
};

// Right-hand side over the packed state y = [u; v].
using NetworkRhs = std::function<void(std::span<const double> y, std::span<double> dy)>;

// SKT network system bound to a graph Laplacian.
class SktNetwork {
 public:
  SktNetwork(SktParams params, LaplacianMatrix laplacian);

  std::size_t size() const { return laplacian_.size(); }
  const SktParams& params() const { return params_; }
  const LaplacianMatrix& laplacian() const { return laplacian_; }

  void operator()(std::span<const double> y, std::span<double> dy) const;

 private:
  SktParams params_;
  LaplacianMatrix laplacian_;
};

class GeneralNetwork {
 public:
  GeneralNetwork(GeneralModel model, LaplacianMatrix laplacian);

  std::size_t size() const { return laplacian_.size(); }
  void operator()(std::span<const double> y, std::span<double> dy) const;

 private:
  GeneralModel model_;
  LaplacianMatrix laplacian_;
};

// Time derivative of the SKT network system. Throws ParameterError on a
// dimension mismatch between state and Laplacian.
NetworkState rhs_skt(const NetworkState& state, const SktParams& p, const LaplacianMatrix& l);
NetworkState rhs_general(const NetworkState& state, const GeneralModel& m,
                         const LaplacianMatrix& l);

struct IntegratorConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double t_max = 5000.0;
  double steady_state_tol = 1e-9;
  std::size_t max_steps = 5'000'000;
  // Record a trajectory sample whenever at least this much time has elapsed
  // since the previous one; <= 0 records every accepted step.
  double sample_interval = 1.0;
  // Stop at steady state; disable to integrate through to t_max.
  bool stop_at_steady_state = true;

  void validate() const;
};

enum class StopReason { steady_state, t_max, max_steps };

struct SimulationResult {
  NetworkState final_state;
  bool converged = false;
  std::optional<double> convergence_time;
  double final_residual = 0.0;  // ||rhs(final)||_inf
  StopReason stop = StopReason::t_max;
  std::vector<NetworkState> trajectory;
  bool positivity_violation = false;
  double min_entry = 0.0;  // smallest entry seen before clamping
  std::size_t steps = 0;
  std::size_t rejected_steps = 0;
};

// Dormand-Prince 5(4) with PI step-size control. Entries in [-10 abs_tol, 0)
// are clamped to zero after each accepted step; deeper negative excursions set
// positivity_violation. Throws NumericalError on step-size underflow or a
// non-finite state.
SimulationResult integrate(const NetworkRhs& rhs, const NetworkState& init,
                           const IntegratorConfig& cfg);
SimulationResult integrate(const SktNetwork& system, const NetworkState& init,
                           const IntegratorConfig& cfg);

// u_i = u*(1 + e_i), v_i = v*(1 + h_i), with e, h uniform in [-magnitude, magnitude].
// Requires 0 <= magnitude < 1.
NetworkState perturb_homogeneous(const Coexistence& eq, std::size_t n, double magnitude,
                                 std::uint64_t seed);

// True iff every sampled entry is >= -10 abs_tol.
bool check_positivity(std::span<const NetworkState> trajectory, double abs_tol);

struct PatternMetrics {
  double heterogeneity = 0.0;  // max_i |u_i - mean u| + max_i |v_i - mean v|
  double total_u = 0.0;
  double total_v = 0.0;
  double pct_change_u = 0.0;  // relative to N u*
  double pct_change_v = 0.0;
};

PatternMetrics pattern_metrics(const NetworkState& final_state, const Coexistence& eq);

// Projections (c_a, b_a) of (u - u*, v - v*) on each eigenvector column.
std::vector<std::pair<double, double>> mode_amplitudes(const NetworkState& state,
                                                       const Coexistence& eq,
                                                       const DenseMatrix& eigenvectors);
// Throws ParameterError when the spectrum was computed without eigenvectors.
std::vector<std::pair<double, double>> mode_amplitudes(const NetworkState& state,
                                                       const Coexistence& eq,
                                                       const Spectrum& spectrum);

double rhs_inf_norm(const NetworkRhs& rhs, const NetworkState& state);

}  // namespace crossnet
