#include "topolattice/lattice.hpp"

#include <cmath>
#include <random>
#include <string>

#include "topolattice/errors.hpp"

namespace topolattice {

namespace {

// Uniform draw on [-amp, +amp] from the raw engine output. Avoids
// std::uniform_real_distribution, whose output is implementation-defined;
// realized lattices must be bit-identical across toolchains.
double symmetric_uniform(std::mt19937_64& rng, double amp) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  return amp * (2.0 * u - 1.0);
}

}  // namespace

std::pair<double, double> parametric_couplings(double g, double t, double w) {
  if (!(g > 0.0)) throw DomainError("parametric_couplings: g must be > 0, got " + std::to_string(g));
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("parametric_couplings: t must be in [0, 1], got " + std::to_string(t));
  if (!(w > 0.0 && w < 1.0)) throw DomainError("parametric_couplings: w must be in (0, 1), got " + std::to_string(w));
  const double delta = g * t * std::cos(w * M_PI);
  return {g + delta, g - delta};
}

double separation_to_coupling(double d_um, const CouplingCalibration& calib) {
  if (!(d_um > 0.0)) throw DomainError("separation_to_coupling: separation must be > 0, got " + std::to_string(d_um));
  if (!(calib.j_ref > 0.0)) throw DomainError("separation_to_coupling: j_ref must be > 0");
  if (!(calib.xi_um > 0.0)) throw DomainError("separation_to_coupling: xi must be > 0");
  return calib.j_ref * std::exp(-(d_um - calib.d_ref_um) / calib.xi_um);
}

std::pair<double, double> nominal_couplings(const CouplingModel& model) {
  return std::visit(
      [](const auto& m) -> std::pair<double, double> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Direct>) {
          if (m.j1 < 0.0 || m.j2 < 0.0) throw DomainError("Direct couplings must be >= 0");
          return {m.j1, m.j2};
        } else if constexpr (std::is_same_v<T, Parametric>) {
          return parametric_couplings(m.g, m.t, m.w);
        } else {
          return {separation_to_coupling(m.d1_um, m.calib),
                  separation_to_coupling(m.d2_um, m.calib)};
        }
      },
      model);
}

LatticeSpec build_lattice(const CouplingModel& model, int num_cells,
                          const std::optional<DisorderSpec>& disorder) {
  if (num_cells < 2) throw DomainError("build_lattice: need at least 2 cells, got " + std::to_string(num_cells));

  const bool geometric = std::holds_alternative<Geometric>(model);
  if (disorder && disorder->amplitude_um > 0.0 && !geometric)
    throw DomainError("build_lattice: disorder is geometric; use a Geometric coupling model");

  LatticeSpec lat;
  lat.num_cells = num_cells;
  const int n_bonds = 2 * num_cells - 1;
  lat.bonds.reserve(n_bonds);

  if (geometric && disorder && disorder->amplitude_um > 0.0) {
    const auto& geo = std::get<Geometric>(model);
    std::mt19937_64 rng(disorder->seed);
    for (int b = 0; b < n_bonds; ++b) {
      const double nominal = (b % 2 == 0) ? geo.d1_um : geo.d2_um;
      const double d = nominal + symmetric_uniform(rng, disorder->amplitude_um);
      lat.bonds.push_back(separation_to_coupling(d, geo.calib));
    }
  } else {
    const auto [j1, j2] = nominal_couplings(model);
    for (int b = 0; b < n_bonds; ++b) lat.bonds.push_back(b % 2 == 0 ? j1 : j2);
  }
  return lat;
}

Phase classify_phase(double j1, double j2) {
  if (j1 < 0.0 || j2 < 0.0) throw DomainError("classify_phase: couplings must be >= 0");
  if (j1 == 0.0 && j2 == 0.0) throw DomainError("classify_phase: both couplings are zero");
  constexpr double tau_crit = 1e-12;  // relative; nominal bookkeeping only
  const double scale = std::max(j1, j2);
  if (std::abs(j1 - j2) <= tau_crit * scale) return Phase::Critical;
  return j1 < j2 ? Phase::Nontrivial : Phase::Trivial;
}

}  // namespace topolattice
