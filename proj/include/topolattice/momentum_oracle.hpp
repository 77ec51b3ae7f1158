#pragma once

namespace topolattice::oracle {

/// One point of the Bloch Hamiltonian h(k) = d_x tau_x + d_y tau_y.
struct BlochPoint {
  double k;
  double d_x, d_y;     // mm^-1
  double energy;       // mm^-1, upper band
  double n_x, n_y;     // unit winding vector, valid when energy > 0
};

BlochPoint bloch_point(double j1, double j2, double k);

/// Upper band energy sqrt(J1^2 + J2^2 + 2 J1 J2 cos k).
double dispersion(double j1, double j2, double k);

struct WindingResult {
  double nu_raw;
  int nu;
};

/// (1/2pi) \oint (n x d_k n) dk by periodic trapezoid quadrature over n_k
/// uniform points. Requires an open gap (j1 != j2).
WindingResult winding_integral(double j1, double j2, int n_k = 2048);

/// Bulk PPDC trajectory for an a-sublattice excitation, measured relative to
/// the excitation cell: nu/2 - (1/4pi) \int cos(2 E z) (n x d_k n) dk, with
/// both terms on the same quadrature grid so the z = 0 value is exactly 0.
double analytic_ppdc(double j1, double j2, double z_mm, int n_k = 2048);

/// Long-distance TPTS limit min(J1, J2)^2 / 2; continuous at J1 = J2.
double analytic_tpts(double j1, double j2);

/// (1/2pi) \int (d_k E)^2 dk with the analytic derivative
/// d_k E = -J1 J2 sin k / E. Bounded at the gapless point.
double tpts_integral(double j1, double j2, int n_k = 4096);

}  // namespace topolattice::oracle
