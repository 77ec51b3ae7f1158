#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "topolattice/lattice.hpp"

namespace topolattice {

/// Data-parallel kernels either run their loop under OpenMP or serially.
/// Results are bit-identical: each loop iteration is an independent,
/// serially-computed point written to its own slot.
enum class ExecPolicy { Serial, Parallel };

/// Real symmetric tridiagonal matrix with zero diagonal; off_diagonal[i]
/// couples sites i and i+1 (mm^-1).
struct Hamiltonian {
  int dim = 0;
  std::vector<double> off_diagonal;
};

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;  // ascending, mm^-1
  Eigen::MatrixXd vectors;      // orthonormal columns
};

enum class Sublattice { A, B };

struct FieldState {
  Eigen::VectorXcd amplitudes;
  double z_mm = 0.0;
};

struct IntensityDistribution {
  std::vector<double> probabilities;
  double z_mm = 0.0;
};

Hamiltonian assemble_hamiltonian(const LatticeSpec& lattice);

/// Dense symmetric eigensolve. Enforces the residual contract
/// ||H v - lambda v|| <= 1e-10 ||H|| and orthonormality, else throws NumericError.
SpectralDecomposition decompose(const Hamiltonian& h);

FieldState single_site_excitation(const LatticeSpec& lattice, int cell, Sublattice sub,
                                  IndexingConvention convention = IndexingConvention::EdgeBased);

/// psi(z0 + dz) = V diag(exp(-i lambda dz)) V^T psi(z0). Norm-preserving;
/// dz may be negative (reverse propagation).
FieldState evolve(const FieldState& state0, const SpectralDecomposition& spec, double dz_mm);

IntensityDistribution intensity(const FieldState& state);

/// Intensity distributions at every z in z_grid, propagated from state0.
/// The OpenMP kernel; ExecPolicy::Serial is the reference path.
std::vector<IntensityDistribution> propagate_grid(const FieldState& state0,
                                                  const SpectralDecomposition& spec,
                                                  std::span<const double> z_grid_mm,
                                                  ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace topolattice
