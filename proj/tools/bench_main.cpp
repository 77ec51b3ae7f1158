// Compares the serial reference kernels against the OpenMP ones and checks
// that both produce identical results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "topolattice/dynamics.hpp"
#include "topolattice/lattice.hpp"
#include "topolattice/observables.hpp"

using namespace topolattice;
using clk = std::chrono::steady_clock;

namespace {

double seconds(clk::time_point a, clk::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

template <typename F>
double timed(F&& f, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = clk::now();
    f();
    best = std::min(best, seconds(t0, clk::now()));
  }
  return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP\n");
#endif

  // Kernel 1: z-grid propagation + PPDC series, N = 400 cells, 201 z points.
  const auto lattice = build_lattice(Direct{0.15, 0.05}, 400);
  std::vector<double> z_grid;
  for (int i = 0; i <= 200; ++i) z_grid.push_back(0.25 * i);
  const Excitation exc{200, Sublattice::A};

  PpdcRun serial_run, parallel_run;
  const double t_serial =
      timed([&] { serial_run = ppdc_series(lattice, z_grid, exc, ExecPolicy::Serial); });
  const double t_parallel =
      timed([&] { parallel_run = ppdc_series(lattice, z_grid, exc, ExecPolicy::Parallel); });

  bool identical = serial_run.series.values == parallel_run.series.values;
  std::printf("ppdc_series (800 sites, 201 z): serial %.3fs  openmp %.3fs  speedup %.2fx  %s\n",
              t_serial, t_parallel, t_serial / t_parallel,
              identical ? "bit-identical" : "MISMATCH");

  // Kernel 2: TPTS sweep, 32 lattices of 101 cells.
  std::vector<LatticeSpec> lattices;
  for (int i = 0; i < 32; ++i)
    lattices.push_back(build_lattice(Direct{0.05 + 0.01 * i, 0.2}, 101));
  TptsSweep s_serial, s_parallel;
  const double t_sweep_serial =
      timed([&] { s_serial = tpts_sweep(lattices, 60.0, Sublattice::A, ExecPolicy::Serial); });
  const double t_sweep_parallel =
      timed([&] { s_parallel = tpts_sweep(lattices, 60.0, Sublattice::A, ExecPolicy::Parallel); });

  identical = true;
  for (size_t i = 0; i < lattices.size(); ++i)
    identical = identical && s_serial.points[i].s_t == s_parallel.points[i].s_t;
  std::printf("tpts_sweep (32 x 202 sites):    serial %.3fs  openmp %.3fs  speedup %.2fx  %s\n",
              t_sweep_serial, t_sweep_parallel, t_sweep_serial / t_sweep_parallel,
              identical ? "bit-identical" : "MISMATCH");
  return 0;
}
