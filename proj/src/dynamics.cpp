#include "topolattice/dynamics.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "topolattice/errors.hpp"

namespace topolattice {

Hamiltonian assemble_hamiltonian(const LatticeSpec& lattice) {
  if (lattice.num_cells < 1 || lattice.bonds.size() != static_cast<size_t>(2 * lattice.num_cells - 1))
    throw DomainError("assemble_hamiltonian: malformed LatticeSpec");
  for (double b : lattice.bonds)
    if (!std::isfinite(b) || b < 0.0)
      throw DomainError("assemble_hamiltonian: bonds must be finite and >= 0");
  return Hamiltonian{lattice.site_count(), lattice.bonds};
}

namespace {

Eigen::MatrixXd dense(const Hamiltonian& h) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(h.dim, h.dim);
  for (int i = 0; i + 1 < h.dim; ++i) m(i, i + 1) = m(i + 1, i) = h.off_diagonal[i];
  return m;
}

}  // namespace

SpectralDecomposition decompose(const Hamiltonian& h) {
  const Eigen::MatrixXd m = dense(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw NumericError("decompose: eigensolver failed to converge");

  SpectralDecomposition d{solver.eigenvalues(), solver.eigenvectors()};

  // Residual and orthonormality contracts.
  const double h_norm = d.eigenvalues.cwiseAbs().maxCoeff();
  const double tol = 1e-10 * std::max(h_norm, 1.0e-30);
  const double residual =
      (m * d.vectors - d.vectors * d.eigenvalues.asDiagonal()).cwiseAbs().maxCoeff();
  if (residual > tol)
    throw NumericError("decompose: residual " + std::to_string(residual) +
                       " exceeds contract 1e-10*||H|| = " + std::to_string(tol));
  const double ortho =
      (d.vectors.transpose() * d.vectors - Eigen::MatrixXd::Identity(h.dim, h.dim))
          .cwiseAbs()
          .maxCoeff();
  if (ortho > 1e-10)
    throw NumericError("decompose: eigenvector orthonormality defect " + std::to_string(ortho));
  return d;
}

FieldState single_site_excitation(const LatticeSpec& lattice, int cell, Sublattice sub,
                                  IndexingConvention convention) {
  const int n = lattice.num_cells;
  int cell0;  // 0-based cell index
  if (convention == IndexingConvention::EdgeBased) {
    if (cell < 1 || cell > n)
      throw DomainError("single_site_excitation: edge-based cell must be in [1, " +
                        std::to_string(n) + "], got " + std::to_string(cell));
    cell0 = cell - 1;
  } else {
    if (n % 2 == 0)
      throw DomainError("single_site_excitation: center-based labels need an odd cell count");
    const int m = (n - 1) / 2;
    if (cell < -m || cell > m)
      throw DomainError("single_site_excitation: center-based cell must be in [" +
                        std::to_string(-m) + ", " + std::to_string(m) + "], got " +
                        std::to_string(cell));
    cell0 = cell + m;
  }
  FieldState s;
  s.amplitudes = Eigen::VectorXcd::Zero(lattice.site_count());
  s.amplitudes[2 * cell0 + (sub == Sublattice::B ? 1 : 0)] = 1.0;
  s.z_mm = 0.0;
  return s;
}

FieldState evolve(const FieldState& state0, const SpectralDecomposition& spec, double dz_mm) {
  if (state0.amplitudes.size() != spec.eigenvalues.size())
    throw DomainError("evolve: state/decomposition dimension mismatch");
  const Eigen::VectorXcd coeffs = spec.vectors.transpose() * state0.amplitudes;
  Eigen::VectorXcd rotated(coeffs.size());
  for (Eigen::Index i = 0; i < coeffs.size(); ++i)
    rotated[i] = coeffs[i] * std::polar(1.0, -spec.eigenvalues[i] * dz_mm);
  return FieldState{spec.vectors * rotated, state0.z_mm + dz_mm};
}

IntensityDistribution intensity(const FieldState& state) {
  IntensityDistribution d;
  d.z_mm = state.z_mm;
  d.probabilities.resize(state.amplitudes.size());
  for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i)
    d.probabilities[i] = std::norm(state.amplitudes[i]);
  return d;
}

std::vector<IntensityDistribution> propagate_grid(const FieldState& state0,
                                                  const SpectralDecomposition& spec,
                                                  std::span<const double> z_grid_mm,
                                                  ExecPolicy policy) {
  if (state0.amplitudes.size() != spec.eigenvalues.size())
    throw DomainError("propagate_grid: state/decomposition dimension mismatch");
  const Eigen::VectorXcd coeffs = spec.vectors.transpose() * state0.amplitudes;
  const auto n_z = static_cast<std::ptrdiff_t>(z_grid_mm.size());
  std::vector<IntensityDistribution> out(z_grid_mm.size());

  auto point = [&](std::ptrdiff_t i) {
    const double dz = z_grid_mm[i];
    Eigen::VectorXcd rotated(coeffs.size());
    for (Eigen::Index j = 0; j < coeffs.size(); ++j)
      rotated[j] = coeffs[j] * std::polar(1.0, -spec.eigenvalues[j] * dz);
    const Eigen::VectorXcd amps = spec.vectors * rotated;
    IntensityDistribution d;
    d.z_mm = state0.z_mm + dz;
    d.probabilities.resize(amps.size());
    for (Eigen::Index j = 0; j < amps.size(); ++j) d.probabilities[j] = std::norm(amps[j]);
    out[i] = std::move(d);
  };

  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n_z; ++i) point(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n_z; ++i) point(i);
  }
  return out;
}

}  // namespace topolattice
