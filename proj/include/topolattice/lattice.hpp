#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace topolattice {

/// Exponential coupling-vs-separation law J(d) = j_ref * exp(-(d - d_ref)/xi),
/// the standard mode-overlap decay for adjacent waveguides.
struct CouplingCalibration {
  double j_ref = 0.25;    // mm^-1, coupling at the reference separation
  double d_ref_um = 20.0; // um, lattice constant
  double xi_um = 2.5;     // um, decay length
};

/// Bond strengths given directly, in mm^-1.
struct Direct {
  double j1;
  double j2;
};

/// J1 = g(1 + t cos(w pi)), J2 = g(1 - t cos(w pi)).
struct Parametric {
  double g;  // mm^-1, mean coupling
  double t;  // dimensionless, in [0, 1]
  double w;  // dimensionless, in (0, 1); w > 0.5 gives J1 < J2
};

/// Bond strengths from waveguide separations through the calibration law.
struct Geometric {
  double d1_um;  // intra-cell separation
  double d2_um;  // inter-cell separation
  CouplingCalibration calib;
};

using CouplingModel = std::variant<Direct, Parametric, Geometric>;

/// Uniform perturbation on [-amplitude, +amplitude] applied to every realized
/// waveguide separation. Identical seed implies identical bonds.
struct DisorderSpec {
  double amplitude_um = 0.0;
  std::uint64_t seed = 0;
};

enum class Phase { Trivial, Nontrivial, Critical };

/// Open SSH chain: 2N sites, 2N-1 bonds alternating intra/inter-cell,
/// starting with the intra-cell bond of cell 1.
struct LatticeSpec {
  int num_cells = 0;
  std::vector<double> bonds;  // mm^-1, length 2N-1

  int site_count() const { return 2 * num_cells; }
};

/// Cell labels: EdgeBased runs x = 1..N from the edge (PPDC convention),
/// CenterBased runs x = -M..M from the middle (requires odd N, GPPC convention).
enum class IndexingConvention { EdgeBased, CenterBased };

std::pair<double, double> parametric_couplings(double g, double t, double w);

double separation_to_coupling(double d_um, const CouplingCalibration& calib);

/// Disorder-free (J1, J2) for any coupling model.
std::pair<double, double> nominal_couplings(const CouplingModel& model);

/// Builds the bond sequence. Disorder is only meaningful for Geometric models
/// (each separation gets an independent uniform draw before conversion).
LatticeSpec build_lattice(const CouplingModel& model, int num_cells,
                          const std::optional<DisorderSpec>& disorder = {});

Phase classify_phase(double j1, double j2);

}  // namespace topolattice
