#include "topolattice/observables.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>

#include "topolattice/errors.hpp"

namespace topolattice {

double ppdc(const IntensityDistribution& dist, int num_cells, int origin_cell) {
  if (dist.probabilities.size() % 2 != 0 ||
      dist.probabilities.size() != static_cast<size_t>(2 * num_cells))
    throw DomainError("ppdc: distribution must have 2N sites");
  double sum = 0.0;
  for (int x = 1; x <= num_cells; ++x) {
    const double pa = dist.probabilities[2 * (x - 1)];
    const double pb = dist.probabilities[2 * (x - 1) + 1];
    sum += static_cast<double>(x - origin_cell) * (pa - pb);
  }
  return sum;
}

double gppc(const IntensityDistribution& dist, int num_cells) {
  if (dist.probabilities.size() != static_cast<size_t>(2 * num_cells))
    throw DomainError("gppc: distribution must have 2N sites");
  if (num_cells % 2 == 0)
    throw DomainError("gppc: center-based labels need an odd cell count (no silent re-centering)");
  const int m = (num_cells - 1) / 2;
  double sum = 0.0;
  for (int x = -m; x <= m; ++x) {
    const int c0 = x + m;
    sum += static_cast<double>(x) * x *
           (dist.probabilities[2 * c0] + dist.probabilities[2 * c0 + 1]);
  }
  return sum;
}

double edge_cell_intensity(const IntensityDistribution& dist) {
  const auto& p = dist.probabilities;
  if (p.size() < 4) throw DomainError("edge_cell_intensity: need at least 2 cells");
  return p[0] + p[1] + p[p.size() - 2] + p[p.size() - 1];
}

PpdcRun ppdc_series(const LatticeSpec& lattice, std::span<const double> z_grid_mm,
                    const Excitation& excitation, ExecPolicy policy) {
  if (z_grid_mm.empty()) throw DomainError("ppdc_series: empty z grid");
  const auto spec = decompose(assemble_hamiltonian(lattice));
  const auto psi0 = single_site_excitation(lattice, excitation.cell, excitation.sublattice);
  const auto dists = propagate_grid(psi0, spec, z_grid_mm, policy);

  PpdcRun run;
  run.series.kind = ObservableKind::Ppdc;
  run.series.grid.assign(z_grid_mm.begin(), z_grid_mm.end());
  run.series.values.reserve(dists.size());
  run.edge_intensity.reserve(dists.size());
  for (const auto& d : dists) {
    run.series.values.push_back(ppdc(d, lattice.num_cells, excitation.cell));
    run.edge_intensity.push_back(edge_cell_intensity(d));
  }

  double mean = 0.0;
  for (double v : run.series.values) mean += v;
  mean /= static_cast<double>(run.series.values.size());
  double var = 0.0;
  for (double v : run.series.values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(run.series.values.size());

  run.estimate.center = mean;
  run.estimate.nu_raw = 2.0 * mean;
  run.estimate.nu_rounded = static_cast<int>(std::lround(run.estimate.nu_raw));
  run.estimate.spread = std::sqrt(var);
  run.estimate.light_cone_ok = run.edge_intensity.back() < kLightConeThreshold;
  return run;
}

WindingEstimate winding_from_dynamics(const LatticeSpec& lattice,
                                      std::span<const double> z_grid_mm,
                                      const Excitation& excitation, ExecPolicy policy) {
  return ppdc_series(lattice, z_grid_mm, excitation, policy).estimate;
}

TptsPoint tpts(const LatticeSpec& lattice, double z_mm, Sublattice sub) {
  if (!(z_mm > 0.0))
    throw DomainError("tpts: z must be > 0 (S_t is a long-distance limit)");
  const auto spec = decompose(assemble_hamiltonian(lattice));
  const auto psi0 = single_site_excitation(lattice, 0, sub, IndexingConvention::CenterBased);
  const auto dist = intensity(evolve(psi0, spec, z_mm));
  return {gppc(dist, lattice.num_cells) / (z_mm * z_mm), edge_cell_intensity(dist)};
}

TptsSweep tpts_sweep(std::span<const LatticeSpec> lattices, double z_mm, Sublattice sub,
                     ExecPolicy policy) {
  if (lattices.empty()) throw DomainError("tpts_sweep: empty lattice list");
  const auto n = static_cast<std::ptrdiff_t>(lattices.size());
  TptsSweep sweep;
  sweep.points.resize(lattices.size());
  std::vector<std::exception_ptr> errors(lattices.size());

  auto point = [&](std::ptrdiff_t i) {
    try {
      sweep.points[i] = tpts(lattices[i], z_mm, sub);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) point(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) point(i);
  }

  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (errors[i]) {
      try {
        std::rethrow_exception(errors[i]);
      } catch (const std::exception& e) {
        throw DomainError("tpts_sweep: point " + std::to_string(i) + ": " + e.what());
      }
    }
  }

  sweep.argmax_index = 0;
  for (std::ptrdiff_t i = 1; i < n; ++i)
    if (sweep.points[i].s_t > sweep.points[sweep.argmax_index].s_t)
      sweep.argmax_index = static_cast<int>(i);
  return sweep;
}

}  // namespace topolattice
