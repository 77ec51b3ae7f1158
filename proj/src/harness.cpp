#include "topolattice/harness.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "topolattice/errors.hpp"
#include "topolattice/momentum_oracle.hpp"

namespace topolattice {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.contains(it.key()))
      throw ConfigError("config: unknown key '" + path + it.key() + "'");
}

double get_number(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw ConfigError("config: missing '" + path + key + "'");
  if (!obj[key].is_number()) throw ConfigError("config: '" + path + key + "' must be a number");
  return obj[key].get<double>();
}

CouplingModel parse_coupling(const json& j) {
  if (!j.is_object()) throw ConfigError("config: 'coupling' must be an object");
  const std::string model = j.value("model", "");
  if (model == "direct") {
    reject_unknown_keys(j, {"model", "j1_per_mm", "j2_per_mm"}, "coupling.");
    return Direct{get_number(j, "j1_per_mm", "coupling."), get_number(j, "j2_per_mm", "coupling.")};
  }
  if (model == "parametric") {
    reject_unknown_keys(j, {"model", "g_per_mm", "t", "w"}, "coupling.");
    return Parametric{get_number(j, "g_per_mm", "coupling."), get_number(j, "t", "coupling."),
                      get_number(j, "w", "coupling.")};
  }
  if (model == "geometric") {
    reject_unknown_keys(j, {"model", "d1_um", "d2_um", "calib"}, "coupling.");
    Geometric g{get_number(j, "d1_um", "coupling."), get_number(j, "d2_um", "coupling."), {}};
    if (j.contains("calib")) {
      const json& c = j["calib"];
      reject_unknown_keys(c, {"j_ref_per_mm", "d_ref_um", "xi_um"}, "coupling.calib.");
      if (c.contains("j_ref_per_mm")) g.calib.j_ref = c["j_ref_per_mm"].get<double>();
      if (c.contains("d_ref_um")) g.calib.d_ref_um = c["d_ref_um"].get<double>();
      if (c.contains("xi_um")) g.calib.xi_um = c["xi_um"].get<double>();
    }
    return g;
  }
  throw ConfigError("config: 'coupling.model' must be direct, parametric or geometric");
}

json coupling_to_json(const CouplingModel& model) {
  return std::visit(
      [](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Direct>)
          return {{"model", "direct"}, {"j1_per_mm", m.j1}, {"j2_per_mm", m.j2}};
        else if constexpr (std::is_same_v<T, Parametric>)
          return {{"model", "parametric"}, {"g_per_mm", m.g}, {"t", m.t}, {"w", m.w}};
        else
          return {{"model", "geometric"},
                  {"d1_um", m.d1_um},
                  {"d2_um", m.d2_um},
                  {"calib",
                   {{"j_ref_per_mm", m.calib.j_ref},
                    {"d_ref_um", m.calib.d_ref_um},
                    {"xi_um", m.calib.xi_um}}}};
      },
      model);
}

std::vector<double> make_z_grid(double z_min, double z_max, double z_step) {
  if (!(z_step > 0.0)) throw ConfigError("config: 'z_step_mm' must be > 0");
  if (z_min > z_max) throw ConfigError("config: 'z_min_mm' must be <= 'z_max_mm'");
  std::vector<double> grid;
  const int n = static_cast<int>(std::floor((z_max - z_min) / z_step + 1e-9)) + 1;
  grid.reserve(n);
  for (int i = 0; i < n; ++i) grid.push_back(z_min + i * z_step);
  return grid;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(const std::string& s) {
  std::ostringstream os;
  os << std::hex << fnv1a(s);
  return os.str();
}

ExperimentKind parse_kind(const std::string& s) {
  if (s == "ppdc-sweep") return ExperimentKind::PpdcSweep;
  if (s == "tpts-sweep") return ExperimentKind::TptsSweep;
  if (s == "disorder-ensemble") return ExperimentKind::DisorderEnsemble;
  if (s == "single-run") return ExperimentKind::SingleRun;
  throw ConfigError("config: 'experiment' must be one of ppdc-sweep, tpts-sweep, "
                    "disorder-ensemble, single-run; got '" + s + "'");
}

std::string kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::PpdcSweep: return "ppdc-sweep";
    case ExperimentKind::TptsSweep: return "tpts-sweep";
    case ExperimentKind::DisorderEnsemble: return "disorder-ensemble";
    case ExperimentKind::SingleRun: return "single-run";
  }
  return "?";
}

constexpr const char* kPpdcHeader = "z_mm,ppdc,ppdc_oracle,edge_intensity";
constexpr const char* kTptsHeader =
    "j1_per_mm,j2_per_mm,ratio,delta_d_um,seed,s_t,s_t_closed_form,edge_intensity";

/// One TPTS sweep point with its nominal metadata.
struct SweepEntry {
  CouplingModel model;
  double j1, j2;
  double delta_d_um;  // nan for non-geometric sweeps
};

std::vector<SweepEntry> build_sweep_entries(const ExperimentConfig& cfg) {
  std::vector<SweepEntry> entries;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (!cfg.sweep_delta_d_um.empty()) {
    if (!std::holds_alternative<Geometric>(cfg.coupling))
      throw ConfigError("config: 'sweep.delta_d_um' requires a geometric coupling model");
    const auto base = std::get<Geometric>(cfg.coupling);
    for (double dd : cfg.sweep_delta_d_um) {
      Geometric g = base;
      g.d1_um = base.calib.d_ref_um - dd;
      g.d2_um = base.calib.d_ref_um + dd;
      const auto [j1, j2] = nominal_couplings(CouplingModel{g});
      entries.push_back({g, j1, j2, dd});
    }
  } else if (!cfg.sweep_j1_per_mm.empty()) {
    if (!std::holds_alternative<Direct>(cfg.coupling))
      throw ConfigError("config: 'sweep.j1_per_mm' requires a direct coupling model");
    const double j2 = std::get<Direct>(cfg.coupling).j2;
    for (double j1 : cfg.sweep_j1_per_mm) entries.push_back({Direct{j1, j2}, j1, j2, nan});
  } else {
    if (!std::holds_alternative<Parametric>(cfg.coupling))
      throw ConfigError("config: 'sweep.w' requires a parametric coupling model");
    const auto base = std::get<Parametric>(cfg.coupling);
    for (double w : cfg.sweep_w) {
      Parametric p = base;
      p.w = w;
      const auto [j1, j2] = nominal_couplings(CouplingModel{p});
      entries.push_back({p, j1, j2, nan});
    }
  }
  return entries;
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: root must be an object");
  reject_unknown_keys(j,
                      {"schema", "experiment", "coupling", "cells", "z_mm", "z_min_mm",
                       "z_max_mm", "z_step_mm", "excitation", "disorder", "sweep", "oracle_nk",
                       "output"},
                      "");
  if (!j.contains("schema") || !j["schema"].is_number_integer() || j["schema"].get<int>() != 1)
    throw ConfigError("config: 'schema' must be the integer 1");

  ExperimentConfig cfg;
  if (!j.contains("experiment") || !j["experiment"].is_string())
    throw ConfigError("config: missing string 'experiment'");
  cfg.kind = parse_kind(j["experiment"].get<std::string>());

  if (!j.contains("coupling")) throw ConfigError("config: missing 'coupling'");
  cfg.coupling = parse_coupling(j["coupling"]);

  if (!j.contains("cells") || !j["cells"].is_number_integer())
    throw ConfigError("config: missing integer 'cells'");
  cfg.cells = j["cells"].get<int>();
  if (cfg.cells < 2) throw ConfigError("config: 'cells' must be >= 2");

  const bool has_grid = j.contains("z_min_mm") || j.contains("z_max_mm") || j.contains("z_step_mm");
  if (cfg.kind == ExperimentKind::PpdcSweep) {
    if (!has_grid) throw ConfigError("config: ppdc-sweep needs z_min_mm/z_max_mm/z_step_mm");
    cfg.z_grid_mm = make_z_grid(get_number(j, "z_min_mm", ""), get_number(j, "z_max_mm", ""),
                                get_number(j, "z_step_mm", ""));
  } else {
    if (has_grid && cfg.kind != ExperimentKind::PpdcSweep)
      throw ConfigError("config: z grid keys are only valid for ppdc-sweep");
    cfg.z_mm = get_number(j, "z_mm", "");
    if (!(cfg.z_mm > 0.0)) throw ConfigError("config: 'z_mm' must be > 0");
    if (cfg.kind == ExperimentKind::SingleRun) cfg.z_grid_mm = {cfg.z_mm};
  }

  cfg.excitation.cell = (cfg.cells + 1) / 2;  // central unit cell by default
  if (j.contains("excitation")) {
    const json& e = j["excitation"];
    reject_unknown_keys(e, {"cell", "sublattice"}, "excitation.");
    if (e.contains("cell")) cfg.excitation.cell = e["cell"].get<int>();
    if (e.contains("sublattice")) {
      const std::string s = e["sublattice"].get<std::string>();
      if (s != "a" && s != "b")
        throw ConfigError("config: 'excitation.sublattice' must be \"a\" or \"b\"");
      cfg.excitation.sublattice = s == "a" ? Sublattice::A : Sublattice::B;
    }
  }

  if (j.contains("disorder")) {
    const json& d = j["disorder"];
    reject_unknown_keys(d, {"amplitude_um", "seeds"}, "disorder.");
    cfg.disorder_amplitude_um = get_number(d, "amplitude_um", "disorder.");
    if (cfg.disorder_amplitude_um < 0.0)
      throw ConfigError("config: 'disorder.amplitude_um' must be >= 0");
    if (!d.contains("seeds") || !d["seeds"].is_array())
      throw ConfigError("config: 'disorder.seeds' must be an explicit array");
    for (const auto& s : d["seeds"]) cfg.seeds.push_back(s.get<std::uint64_t>());
    if (cfg.disorder_amplitude_um > 0.0 && cfg.seeds.empty())
      throw ConfigError("config: 'disorder.seeds' must not be empty");
    if (cfg.disorder_amplitude_um > 0.0 && !std::holds_alternative<Geometric>(cfg.coupling))
      throw ConfigError("config: disorder requires a geometric coupling model");
  }

  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    reject_unknown_keys(s, {"delta_d_um", "j1_per_mm", "w"}, "sweep.");
    if (s.contains("delta_d_um"))
      for (const auto& v : s["delta_d_um"]) cfg.sweep_delta_d_um.push_back(v.get<double>());
    if (s.contains("j1_per_mm"))
      for (const auto& v : s["j1_per_mm"]) cfg.sweep_j1_per_mm.push_back(v.get<double>());
    if (s.contains("w"))
      for (const auto& v : s["w"]) cfg.sweep_w.push_back(v.get<double>());
    const int lists = (!cfg.sweep_delta_d_um.empty()) + (!cfg.sweep_j1_per_mm.empty()) +
                      (!cfg.sweep_w.empty());
    if (lists > 1)
      throw ConfigError("config: 'sweep' must give exactly one of delta_d_um, j1_per_mm, w");
  }

  const bool is_sweep =
      cfg.kind == ExperimentKind::TptsSweep || cfg.kind == ExperimentKind::DisorderEnsemble;
  if (is_sweep && cfg.sweep_delta_d_um.empty() && cfg.sweep_j1_per_mm.empty() &&
      cfg.sweep_w.empty())
    throw ConfigError("config: '" + kind_name(cfg.kind) + "' needs a 'sweep' list");
  if (cfg.kind == ExperimentKind::DisorderEnsemble) {
    if (!(cfg.disorder_amplitude_um > 0.0) || cfg.seeds.empty())
      throw ConfigError("config: disorder-ensemble needs disorder amplitude > 0 and seeds");
    if (cfg.sweep_delta_d_um.empty())
      throw ConfigError("config: disorder-ensemble needs a geometric 'sweep.delta_d_um' list");
  }

  if (j.contains("oracle_nk")) {
    cfg.oracle_nk = j["oracle_nk"].get<int>();
    if (cfg.oracle_nk < 64) throw ConfigError("config: 'oracle_nk' must be >= 64");
  }
  if (j.contains("output")) cfg.output = j["output"].get<std::string>();

  // Validate physical parameters and excitation range up front.
  nominal_couplings(cfg.coupling);
  if (cfg.excitation.cell < 1 || cfg.excitation.cell > cfg.cells)
    throw ConfigError("config: 'excitation.cell' out of range [1, " + std::to_string(cfg.cells) + "]");
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config: invalid JSON in " + path.string() + ": " + e.what());
  }
  return parse_config(j);
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["schema"] = 1;
  j["experiment"] = kind_name(cfg.kind);
  j["coupling"] = coupling_to_json(cfg.coupling);
  j["cells"] = cfg.cells;
  if (cfg.kind == ExperimentKind::PpdcSweep) {
    j["z_min_mm"] = cfg.z_grid_mm.front();
    j["z_max_mm"] = cfg.z_grid_mm.back();
    j["z_step_mm"] = cfg.z_grid_mm.size() > 1 ? cfg.z_grid_mm[1] - cfg.z_grid_mm[0] : 1.0;
  } else {
    j["z_mm"] = cfg.z_mm;
  }
  j["excitation"] = {{"cell", cfg.excitation.cell},
                     {"sublattice", cfg.excitation.sublattice == Sublattice::A ? "a" : "b"}};
  if (cfg.disorder_amplitude_um > 0.0)
    j["disorder"] = {{"amplitude_um", cfg.disorder_amplitude_um}, {"seeds", cfg.seeds}};
  if (!cfg.sweep_delta_d_um.empty()) j["sweep"] = {{"delta_d_um", cfg.sweep_delta_d_um}};
  if (!cfg.sweep_j1_per_mm.empty()) j["sweep"] = {{"j1_per_mm", cfg.sweep_j1_per_mm}};
  if (!cfg.sweep_w.empty()) j["sweep"] = {{"w", cfg.sweep_w}};
  j["oracle_nk"] = cfg.oracle_nk;
  if (!cfg.output.empty()) j["output"] = cfg.output;
  return j;
}

ExperimentConfig preset_config(const std::string& name) {
  json j;
  j["schema"] = 1;
  auto ppdc = [&](double w, double t, int cells, double z0, double z1) {
    j["experiment"] = "ppdc-sweep";
    j["coupling"] = {{"model", "parametric"}, {"g_per_mm", 1.0}, {"t", t}, {"w", w}};
    j["cells"] = cells;
    j["z_min_mm"] = z0;
    j["z_max_mm"] = z1;
    j["z_step_mm"] = 0.2;
  };
  if (name == "fig1" || name == "fig2b") {
    ppdc(0.9, 1.0, 5, 20.0, 30.0);
  } else if (name == "fig2a") {
    ppdc(0.1, 1.0, 5, 20.0, 30.0);
  } else if (name == "fig2c") {
    ppdc(0.1, 0.5, 9, 7.0, 16.0);
  } else if (name == "fig2d") {
    ppdc(0.9, 0.5, 9, 7.0, 16.0);
  } else if (name == "fig3b") {
    // Continuous transition driven through w: S_t rises to the critical point
    // at w = 0.5 and falls beyond it.
    j["experiment"] = "tpts-sweep";
    j["coupling"] = {{"model", "parametric"}, {"g_per_mm", 0.25}, {"t", 0.8}, {"w", 0.5}};
    j["cells"] = 101;
    j["z_mm"] = 80.0;
    std::vector<double> ws;
    for (int i = 1; i <= 19; ++i) ws.push_back(0.05 * i);
    j["sweep"] = {{"w", ws}};
  } else if (name == "fig4d") {
    j["experiment"] = "tpts-sweep";
    j["coupling"] = {{"model", "geometric"}, {"d1_um", 20.0}, {"d2_um", 20.0}};
    j["cells"] = 21;
    j["z_mm"] = 18.0;
    j["sweep"] = {{"delta_d_um", {-2.0, -1.5, -1.0, -0.5, -0.2, 0.0, 0.2, 0.5, 1.0, 1.5, 2.0}}};
  } else {
    throw ConfigError("unknown preset '" + name +
                      "'; expected fig1, fig2a, fig2b, fig2c, fig2d, fig3b or fig4d");
  }
  return parse_config(j);
}

namespace {

RunRecord run_ppdc(const ExperimentConfig& cfg, ExecPolicy policy) {
  std::optional<DisorderSpec> disorder;
  if (cfg.disorder_amplitude_um > 0.0)
    disorder = DisorderSpec{cfg.disorder_amplitude_um, cfg.seeds.front()};
  const auto lattice = build_lattice(cfg.coupling, cfg.cells, disorder);
  const auto run = ppdc_series(lattice, cfg.z_grid_mm, cfg.excitation, policy);
  const auto [j1, j2] = nominal_couplings(cfg.coupling);

  RunRecord rec;
  rec.kind = cfg.kind;
  rec.csv_header = kPpdcHeader;
  for (size_t i = 0; i < cfg.z_grid_mm.size(); ++i) {
    const double z = cfg.z_grid_mm[i];
    const double oracle_value =
        j1 == j2 ? std::numeric_limits<double>::quiet_NaN()
                 : oracle::analytic_ppdc(j1, j2, z, cfg.oracle_nk);
    rec.csv_rows.push_back(fmt(z) + "," + fmt(run.series.values[i]) + "," + fmt(oracle_value) +
                           "," + fmt(run.edge_intensity[i]));
  }
  rec.summary = {{"nu_raw", run.estimate.nu_raw},
                 {"nu_rounded", run.estimate.nu_rounded},
                 {"center", run.estimate.center},
                 {"spread", run.estimate.spread}};
  rec.light_cone_ok = run.estimate.light_cone_ok;
  return rec;
}

// splitmix64 finalizer; decorrelates the disorder streams of sweep points
// that share an ensemble seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t idx) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (idx + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

RunRecord run_tpts(const ExperimentConfig& cfg, ExecPolicy policy) {
  const auto entries = build_sweep_entries(cfg);
  const bool ensemble = cfg.kind == ExperimentKind::DisorderEnsemble;
  const std::vector<std::uint64_t> seeds = ensemble ? cfg.seeds : std::vector<std::uint64_t>{0};

  RunRecord rec;
  rec.kind = cfg.kind;
  rec.csv_header = kTptsHeader;
  rec.summary = json::object();
  json argmax_indices = json::array();
  json argmax_ratios = json::array();

  for (std::uint64_t seed : seeds) {
    std::vector<LatticeSpec> lattices;
    lattices.reserve(entries.size());
    for (const auto& e : entries) {
      std::optional<DisorderSpec> disorder;
      if (ensemble)
        disorder = DisorderSpec{cfg.disorder_amplitude_um, mix_seed(seed, lattices.size())};
      lattices.push_back(build_lattice(e.model, cfg.cells, disorder));
    }
    const auto sweep = tpts_sweep(lattices, cfg.z_mm, cfg.excitation.sublattice, policy);
    for (size_t i = 0; i < entries.size(); ++i) {
      const auto& e = entries[i];
      const auto& p = sweep.points[i];
      rec.csv_rows.push_back(fmt(e.j1) + "," + fmt(e.j2) + "," + fmt(e.j1 / e.j2) + "," +
                             fmt(e.delta_d_um) + "," + std::to_string(seed) + "," + fmt(p.s_t) +
                             "," + fmt(oracle::analytic_tpts(e.j1, e.j2)) + "," +
                             fmt(p.edge_intensity));
      if (p.edge_intensity >= kLightConeThreshold) rec.light_cone_ok = false;
    }
    argmax_indices.push_back(sweep.argmax_index);
    argmax_ratios.push_back(entries[sweep.argmax_index].j1 / entries[sweep.argmax_index].j2);
  }

  if (ensemble) {
    rec.summary = {{"argmax_index", argmax_indices}, {"argmax_ratio", argmax_ratios}};
  } else {
    rec.summary = {{"argmax_index", argmax_indices[0]}, {"argmax_ratio", argmax_ratios[0]}};
  }
  return rec;
}

}  // namespace

RunRecord run_config(const ExperimentConfig& cfg, ExecPolicy policy) {
  RunRecord rec;
  switch (cfg.kind) {
    case ExperimentKind::PpdcSweep:
    case ExperimentKind::SingleRun:
      rec = run_ppdc(cfg, policy);
      break;
    case ExperimentKind::TptsSweep:
    case ExperimentKind::DisorderEnsemble:
      rec = run_tpts(cfg, policy);
      break;
  }
  rec.config_hash = hash_hex(config_to_json(cfg).dump());
  return rec;
}

void emit_csv(const RunRecord& record, const std::filesystem::path& csv_path) {
  {
    std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file " + csv_path.string());
    out << record.csv_header << "\n";
    for (const auto& row : record.csv_rows) out << row << "\n";
    if (!out) throw IoError("write failed for " + csv_path.string());
  }
  std::filesystem::path sidecar = csv_path;
  sidecar.replace_extension(".summary.json");
  std::ofstream side(sidecar, std::ios::binary | std::ios::trunc);
  if (!side) throw IoError("cannot open sidecar file " + sidecar.string());
  side << record.summary.dump(2) << "\n";
  if (!side) throw IoError("write failed for " + sidecar.string());
}

}  // namespace topolattice
