// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run via `ctest -R acceptance` or directly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "topolattice/dynamics.hpp"
#include "topolattice/harness.hpp"
#include "topolattice/lattice.hpp"
#include "topolattice/momentum_oracle.hpp"
#include "topolattice/observables.hpp"

using namespace topolattice;
using clk = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what, double elapsed_s) {
  std::printf("[%s] criterion %2d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
              elapsed_s);
  if (!ok) ++failures;
}

struct Timer {
  clk::time_point start = clk::now();
  double elapsed() const { return std::chrono::duration<double>(clk::now() - start).count(); }
};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void criterion_1_and_2() {
  for (auto [criterion, name, lo, hi] :
       {std::tuple{1, "fig2a", -0.15, 0.15}, {2, "fig2b", 0.85, 1.15}}) {
    Timer t;
    const auto rec = run_config(preset_config(name));
    const double nu = rec.summary["nu_raw"].get<double>();
    const double el = t.elapsed();
    std::ostringstream os;
    os << "winding recovery " << name << ": nu_raw = " << nu << " in [" << lo << ", " << hi << "]";
    report(criterion, nu >= lo && nu <= hi && el < 1.0, os.str(), el);
  }
}

void criterion_3() {
  Timer t;
  const double c_trivial = run_config(preset_config("fig2c")).summary["center"].get<double>();
  const double c_nontrivial = run_config(preset_config("fig2d")).summary["center"].get<double>();
  const double el = t.elapsed();
  std::ostringstream os;
  os << "18-site centers: " << c_trivial << " (target 0 +- 0.1), " << c_nontrivial
     << " (target 0.5 +- 0.1)";
  report(3, std::abs(c_trivial) <= 0.1 && std::abs(c_nontrivial - 0.5) <= 0.1 && el < 1.0,
         os.str(), el);
}

void criterion_4() {
  Timer t;
  const int cells = 201;
  const std::vector<double> js{0.04, 0.07, 0.10, 0.13, 0.16};
  double worst = 0.0;
  for (double j1 : js)
    for (double j2 : js) {
      if (j1 == j2) continue;
      const double z = 0.9 * ((cells - 1) / 2) / (2.0 * std::max(j1, j2));
      const auto p = tpts(build_lattice(Direct{j1, j2}, cells), z);
      const double limit = oracle::analytic_tpts(j1, j2);
      worst = std::max(worst, std::abs(p.s_t - limit) / limit);
    }
  const double el = t.elapsed();
  std::ostringstream os;
  os << "TPTS closed form on 5x5 grid, N = 201: worst relative error " << worst << " <= 0.05";
  report(4, worst <= 0.05 && el < 30.0, os.str(), el);
}

void criterion_5() {
  Timer t;
  const auto cfg = preset_config("fig4d");
  const auto rec = run_config(cfg);
  const int argmax = rec.summary["argmax_index"].get<int>();
  std::vector<double> s_t;
  for (const auto& row : rec.csv_rows) {
    std::istringstream is(row);
    std::string field;
    for (int i = 0; i < 6; ++i) std::getline(is, field, ',');
    s_t.push_back(std::stod(field));
  }
  bool mono = true;
  for (int i = 0; i < argmax; ++i) mono = mono && s_t[i] < s_t[i + 1];
  for (size_t i = argmax; i + 1 < s_t.size(); ++i) mono = mono && s_t[i] > s_t[i + 1];
  const bool at_zero = cfg.sweep_delta_d_um[argmax] == 0.0;
  const double el = t.elapsed();
  std::ostringstream os;
  os << "transition-point detection: argmax at delta_d = " << cfg.sweep_delta_d_um[argmax]
     << ", monotone flanks " << (mono ? "yes" : "no");
  report(5, at_zero && mono && el < 5.0, os.str(), el);
}

void criterion_6() {
  Timer t;
  auto j = config_to_json(preset_config("fig4d"));
  j["experiment"] = "disorder-ensemble";
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
  j["disorder"] = {{"amplitude_um", 0.1}, {"seeds", seeds}};
  const auto cfg = parse_config(j);
  const auto rec = run_config(cfg);
  int good = 0;
  for (const auto& idx : rec.summary["argmax_index"])
    if (std::abs(cfg.sweep_delta_d_um[idx.get<int>()]) <= 0.2 + 1e-12) ++good;
  const double el = t.elapsed();
  std::ostringstream os;
  os << "disorder robustness: argmax within one step of delta_d = 0 in " << good << "/10 seeds";
  report(6, good >= 9 && el < 60.0, os.str(), el);
}

void criterion_7() {
  Timer t;
  const double j1 = 0.15, j2 = 0.05;
  const int cells = 400, cell = 200;
  const auto lat = build_lattice(Direct{j1, j2}, cells);
  std::vector<double> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(static_cast<double>(i));
  const auto run = ppdc_series(lat, grid, Excitation{cell, Sublattice::A});
  double worst = 0.0;
  for (size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst,
                     std::abs(run.series.values[i] - oracle::analytic_ppdc(j1, j2, grid[i])));
  const double el = t.elapsed();
  std::ostringstream os;
  os << "oracle equivalence, N = 400: max |real-space - analytic| = " << worst << " <= 1e-2";
  report(7, worst <= 1e-2 && run.estimate.light_cone_ok && el < 60.0, os.str(), el);
}

void criterion_8() {
  Timer t;
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> unif(0.05, 1.5);
  double worst_integer = 0.0, worst_tpts = 0.0;
  int tested = 0;
  while (tested < 50) {
    const double j1 = unif(rng), j2 = unif(rng);
    if (std::abs(j1 - j2) < 0.05 * std::max(j1, j2)) continue;
    ++tested;
    const auto r = oracle::winding_integral(j1, j2, 2048);
    worst_integer = std::max(worst_integer, std::abs(r.nu_raw - std::round(r.nu_raw)));
    worst_tpts = std::max(worst_tpts,
                          std::abs(oracle::tpts_integral(j1, j2) - oracle::analytic_tpts(j1, j2)));
  }
  const double el = t.elapsed();
  std::ostringstream os;
  os << "quadrature: worst integerness defect " << worst_integer << ", worst TPTS mismatch "
     << worst_tpts << " (both <= 1e-6)";
  report(8, worst_integer <= 1e-6 && worst_tpts <= 1e-6, os.str(), el);
}

void criterion_9() {
  Timer t;
  const std::vector<LatticeSpec> matrix = {
      build_lattice(Direct{1.0, 0.0}, 5),
      build_lattice(Direct{0.15, 0.05}, 50),
      build_lattice(Direct{0.05, 0.15}, 50),
      build_lattice(Parametric{1.0, 1.0, 0.9}, 5),
      build_lattice(Parametric{1.0, 0.5, 0.1}, 9),
      build_lattice(Geometric{19.5, 20.5, {}}, 21),
      build_lattice(Geometric{20.0, 20.0, {}}, 21, DisorderSpec{0.1, 11}),
  };
  double worst_unitarity = 0.0, worst_residual_ratio = 0.0, worst_pairing = 0.0,
         worst_semigroup = 0.0;
  for (const auto& lat : matrix) {
    const auto h = assemble_hamiltonian(lat);
    const auto d = decompose(h);
    const int n = lat.site_count();

    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) dense(i, i + 1) = dense(i + 1, i) = h.off_diagonal[i];
    const double h_norm = d.eigenvalues.cwiseAbs().maxCoeff();
    const double residual =
        (dense * d.vectors - d.vectors * d.eigenvalues.asDiagonal()).cwiseAbs().maxCoeff();
    worst_residual_ratio = std::max(worst_residual_ratio, residual / (1e-10 * h_norm));

    for (int i = 0; i < n; ++i)
      worst_pairing = std::max(worst_pairing, std::abs(d.eigenvalues[i] + d.eigenvalues[n - 1 - i]));

    const auto s0 = single_site_excitation(lat, (lat.num_cells + 1) / 2, Sublattice::A);
    for (double z = 2.5; z <= 30.0; z += 2.5) {
      const auto s = evolve(s0, d, z);
      worst_unitarity = std::max(worst_unitarity, std::abs(s.amplitudes.squaredNorm() - 1.0));
      const auto split = evolve(evolve(s0, d, 0.4 * z), d, 0.6 * z);
      worst_semigroup =
          std::max(worst_semigroup, (split.amplitudes - s.amplitudes).cwiseAbs().maxCoeff());
    }
  }
  const double el = t.elapsed();
  std::ostringstream os;
  os << "numerical contracts: unitarity " << worst_unitarity << " <= 1e-12, residual/contract "
     << worst_residual_ratio << " <= 1, pairing " << worst_pairing << " <= 1e-10, semigroup "
     << worst_semigroup << " <= 1e-10";
  report(9,
         worst_unitarity <= 1e-12 && worst_residual_ratio <= 1.0 && worst_pairing <= 1e-10 &&
             worst_semigroup <= 1e-10,
         os.str(), el);
}

void criterion_10() {
  Timer t;
  const auto dir = std::filesystem::temp_directory_path() / "topolattice_acceptance";
  std::filesystem::create_directories(dir);
  bool ok = true;
  for (const char* name : {"fig2b", "fig4d"}) {
    const auto cfg = preset_config(name);
#ifdef _OPENMP
    omp_set_num_threads(1);
#endif
    emit_csv(run_config(cfg), dir / (std::string(name) + "_t1.csv"));
#ifdef _OPENMP
    omp_set_num_threads(4);
#endif
    emit_csv(run_config(cfg), dir / (std::string(name) + "_tn.csv"));
    emit_csv(run_config(cfg), dir / (std::string(name) + "_tn2.csv"));
    ok = ok && read_file(dir / (std::string(name) + "_t1.csv")) ==
                   read_file(dir / (std::string(name) + "_tn.csv"));
    ok = ok && read_file(dir / (std::string(name) + "_tn.csv")) ==
                   read_file(dir / (std::string(name) + "_tn2.csv"));
  }
  report(10, ok, "determinism: byte-identical CSV across reruns and thread counts", t.elapsed());
}

}  // namespace

int main() {
  criterion_1_and_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (failures) std::printf("%d criterion(s) FAILED\n", failures);
  else std::printf("all criteria passed\n");
  return failures == 0 ? 0 : 1;
}
