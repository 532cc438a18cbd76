#include "crossnet/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "crossnet/error.hpp"

namespace crossnet {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& x) {
  if (!x || !std::isfinite(*x)) return nullptr;
  return *x;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw IoError("cannot create directory '" + dir.string() + "'" +
                  (ec ? ": " + ec.message() : std::string()));
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + file.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write to '" + file.string() + "' failed");
}

void write_json(const std::filesystem::path& file, const json& j) {
  write_text(file, j.dump(2) + "\n");
}

std::string spectrum_csv(std::span<const double> eigenvalues) {
  std::string s = "index,eigenvalue\n";
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    s += std::to_string(i) + "," + format_double(eigenvalues[i]) + "\n";
  return s;
}

std::string ensemble_csv(const SpectralStats& stats) {
  std::string s = "index,mean,variance,realizations\n";
  for (std::size_t i = 0; i < stats.mean.size(); ++i)
    s += std::to_string(i) + "," + format_double(stats.mean[i]) + "," +
         format_double(stats.variance[i]) + "," + std::to_string(stats.realizations) + "\n";
  return s;
}

std::string trajectory_csv(std::span<const NetworkState> samples) {
  const std::size_t n = samples.empty() ? 0 : samples.front().size();
  std::string s = "t";
  for (std::size_t i = 0; i < n; ++i) s += ",u_" + std::to_string(i);
  for (std::size_t i = 0; i < n; ++i) s += ",v_" + std::to_string(i);
  s += "\n";
  for (const auto& st : samples) {
    s += format_double(st.t);
    for (double x : st.u) s += "," + format_double(x);
    for (double x : st.v) s += "," + format_double(x);
    s += "\n";
  }
  return s;
}

std::string final_state_csv(const NetworkState& state) {
  std::string s = "node,u,v\n";
  for (std::size_t i = 0; i < state.size(); ++i)
    s += std::to_string(i) + "," + format_double(state.u[i]) + "," + format_double(state.v[i]) +
         "\n";
  return s;
}

json stability_json(const InstabilityReport& r) {
  json j;
  j["u_star"] = r.u_star;
  j["v_star"] = r.v_star;
  j["trace_J"] = r.trace_jacobian;
  j["det_J"] = r.det_jacobian;
  j["alpha"] = r.polynomials.alpha;
  j["beta"] = r.polynomials.beta;
  j["lambda_star"] = optional_number(r.lambda_star);
  if (r.region) {
    j["lambda_star_1"] = r.region->lower;
    j["lambda_star_2"] = optional_number(r.region->upper);
    j["region_unbounded"] = !std::isfinite(r.region->upper);
  } else {
    j["lambda_star_1"] = nullptr;
    j["lambda_star_2"] = nullptr;
    j["region_unbounded"] = false;
  }
  j["unstable_modes"] = r.unstable_modes;
  return j;
}

json graph_spec_json(const GraphSpec& g) {
  json j{{"family", std::string(to_string(g.family))}, {"nodes", g.node_count()},
         {"seed", g.seed}};
  switch (g.family) {
    case GraphFamily::triangular_lattice:
    case GraphFamily::square_lattice:
    case GraphFamily::hexagonal_lattice:
      j["rows"] = g.rows;
      j["cols"] = g.cols;
      break;
    default:
      j["n"] = g.n;
      j["k"] = g.k;
      j["p"] = g.p;
      break;
  }
  if (is_random_family(g.family)) {
    j["require_connected"] = g.require_connected;
    j["max_connect_retries"] = g.max_connect_retries;
  }
  return j;
}

json skt_params_json(const SktParams& s) {
  return {{"r1", s.r1},   {"r2", s.r2},   {"a1", s.a1},   {"a2", s.a2},
          {"b1", s.b1},   {"b2", s.b2},   {"d1", s.d1},   {"d2", s.d2},
          {"d11", s.d11}, {"d22", s.d22}, {"d12", s.d12}, {"d21", s.d21}};
}

json metrics_json(const PatternMetrics& m) {
  return {{"heterogeneity", m.heterogeneity}, {"total_u", m.total_u},
          {"total_v", m.total_v},             {"pct_change_u", m.pct_change_u},
          {"pct_change_v", m.pct_change_v}};
}

json convergence_json(const SimulationResult& r) {
  const char* stop = r.stop == StopReason::steady_state ? "steady_state"
                     : r.stop == StopReason::t_max      ? "t_max"
                                                        : "max_steps";
  return {{"converged", r.converged},
          {"convergence_time", optional_number(r.convergence_time)},
          {"final_time", r.final_state.t},
          {"final_residual", r.final_residual},
          {"stop", stop},
          {"steps", r.steps},
          {"rejected_steps", r.rejected_steps},
          {"positivity_violation", r.positivity_violation},
          {"min_entry", r.min_entry}};
}

}  // namespace crossnet
