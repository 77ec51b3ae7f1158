#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "topolattice/dynamics.hpp"
#include "topolattice/lattice.hpp"

namespace topolattice {

enum class ObservableKind { Ppdc, Tpts };

struct ObservableSeries {
  std::vector<double> grid;    // z in mm (PPDC) or sweep coordinate (TPTS)
  std::vector<double> values;  // dimensionless
  ObservableKind kind = ObservableKind::Ppdc;
};

struct WindingEstimate {
  double center = 0.0;   // oscillation center, arithmetic mean over the z-grid
  double nu_raw = 0.0;   // 2 * center
  int nu_rounded = 0;
  double spread = 0.0;   // standard deviation of the series
  bool light_cone_ok = true;  // edge intensity below threshold at max z
};

struct Excitation {
  int cell = 1;  // edge-based label
  Sublattice sublattice = Sublattice::A;
};

/// Population difference center sum_x (x - origin_cell)(p_a - p_b) with
/// edge-based labels x = 1..N. origin_cell = 0 is the plain edge-based value;
/// passing the excitation cell gives the excitation-relative value used for
/// winding estimates.
double ppdc(const IntensityDistribution& dist, int num_cells, int origin_cell = 0);

/// Generalized population center sum_x x^2 (p_a + p_b), center-based labels.
/// Requires odd cell count.
double gppc(const IntensityDistribution& dist, int num_cells);

/// Total intensity on the outermost unit cell at each end.
double edge_cell_intensity(const IntensityDistribution& dist);

/// Edge intensity above this at max z marks a run as light-cone violating.
inline constexpr double kLightConeThreshold = 1e-3;

struct PpdcRun {
  ObservableSeries series;            // excitation-relative PPDC per z
  std::vector<double> edge_intensity; // per z
  WindingEstimate estimate;
};

/// Evolves the excitation over the z-grid and averages the excitation-relative
/// PPDC into a winding estimate.
PpdcRun ppdc_series(const LatticeSpec& lattice, std::span<const double> z_grid_mm,
                    const Excitation& excitation, ExecPolicy policy = ExecPolicy::Parallel);

WindingEstimate winding_from_dynamics(const LatticeSpec& lattice,
                                      std::span<const double> z_grid_mm,
                                      const Excitation& excitation,
                                      ExecPolicy policy = ExecPolicy::Parallel);

struct TptsPoint {
  double s_t = 0.0;            // cell^2 mm^-2
  double edge_intensity = 0.0;
};

/// S_t = GPPC(z)/z^2 for a central-cell excitation. z must be > 0.
TptsPoint tpts(const LatticeSpec& lattice, double z_mm,
               Sublattice sub = Sublattice::A);

struct TptsSweep {
  std::vector<TptsPoint> points;  // one per input lattice, input order
  int argmax_index = -1;
};

/// S_t for each lattice at the same z; lattices evaluate in parallel.
TptsSweep tpts_sweep(std::span<const LatticeSpec> lattices, double z_mm,
                     Sublattice sub = Sublattice::A,
                     ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace topolattice
