#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "topolattice/dynamics.hpp"
#include "topolattice/lattice.hpp"
#include "topolattice/observables.hpp"

namespace topolattice {

enum class ExperimentKind { PpdcSweep, TptsSweep, DisorderEnsemble, SingleRun };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::PpdcSweep;
  CouplingModel coupling = Parametric{1.0, 1.0, 0.9};
  int cells = 5;
  std::vector<double> z_grid_mm;       // PPDC runs
  double z_mm = 0.0;                   // TPTS runs / single-run
  Excitation excitation;               // edge-based; defaults to the central cell
  double disorder_amplitude_um = 0.0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> sweep_delta_d_um;  // geometric TPTS sweep offsets
  std::vector<double> sweep_j1_per_mm;   // direct TPTS sweep (j2 fixed by coupling)
  std::vector<double> sweep_w;           // parametric TPTS sweep (g, t fixed by coupling)
  int oracle_nk = 2048;
  std::string output;
};

struct RunRecord {
  std::string config_hash;  // FNV-1a over the canonical config serialization
  ExperimentKind kind = ExperimentKind::PpdcSweep;
  std::string csv_header;
  std::vector<std::string> csv_rows;
  nlohmann::json summary;
  bool light_cone_ok = true;
};

/// Parses and validates a config. Unknown keys and out-of-range values fail
/// with a field-path diagnostic; nothing is computed or written on failure.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical JSON form of a config (used for hashing and round-trips).
nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// Known preset names: fig1, fig2a, fig2b, fig2c, fig2d, fig3b, fig4d.
ExperimentConfig preset_config(const std::string& name);

RunRecord run_config(const ExperimentConfig& cfg, ExecPolicy policy = ExecPolicy::Parallel);

/// Writes the CSV and a `<stem>.summary.json` sidecar next to it.
void emit_csv(const RunRecord& record, const std::filesystem::path& csv_path);

}  // namespace topolattice
