#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "crossnet/dynamics.hpp"
#include "crossnet/experiments.hpp"
#include "crossnet/spectra.hpp"
#include "crossnet/stability.hpp"

namespace crossnet {

// 17 significant digits, round-trip exact for doubles.
std::string format_double(double x);

// Creates the directory (and parents). Throws IoError on failure.
void ensure_directory(const std::filesystem::path& dir);

void write_text(const std::filesystem::path& file, const std::string& text);
void write_json(const std::filesystem::path& file, const nlohmann::json& j);

std::string spectrum_csv(std::span<const double> eigenvalues);
std::string ensemble_csv(const SpectralStats& stats);
std::string trajectory_csv(std::span<const NetworkState> samples);
std::string final_state_csv(const NetworkState& state);

// Missing threshold or region fields are null; an unbounded region has
// lambda_star_2 = null and region_unbounded = true.
nlohmann::json stability_json(const InstabilityReport& report);

nlohmann::json graph_spec_json(const GraphSpec& spec);
nlohmann::json skt_params_json(const SktParams& p);
nlohmann::json metrics_json(const PatternMetrics& m);
nlohmann::json convergence_json(const SimulationResult& r);

}  // namespace crossnet
