#include "topolattice/momentum_oracle.hpp"

#include <cmath>
#include <string>

#include "topolattice/errors.hpp"

namespace topolattice::oracle {

namespace {

void require_valid(double j1, double j2) {
  if (j1 < 0.0 || j2 < 0.0 || !std::isfinite(j1) || !std::isfinite(j2))
    throw DomainError("momentum oracle: couplings must be finite and >= 0");
}

void require_gapped(double j1, double j2) {
  require_valid(j1, j2);
  if (j1 == j2) throw DomainError("momentum oracle: gap closed at J1 = J2, winding undefined");
}

void require_grid(int n_k) {
  if (n_k < 64) throw DomainError("momentum oracle: n_k must be >= 64, got " + std::to_string(n_k));
}

// n x d_k n = (d_x d_k d_y - d_y d_k d_x) / E^2 = (J2^2 + J1 J2 cos k) / E^2.
double winding_cross(double j1, double j2, double k) {
  const double e2 = j1 * j1 + j2 * j2 + 2.0 * j1 * j2 * std::cos(k);
  return (j2 * j2 + j1 * j2 * std::cos(k)) / e2;
}

}  // namespace

double dispersion(double j1, double j2, double k) {
  require_valid(j1, j2);
  const double e2 = j1 * j1 + j2 * j2 + 2.0 * j1 * j2 * std::cos(k);
  return std::sqrt(std::max(e2, 0.0));
}

BlochPoint bloch_point(double j1, double j2, double k) {
  require_valid(j1, j2);
  BlochPoint p;
  p.k = k;
  p.d_x = j1 + j2 * std::cos(k);
  p.d_y = j2 * std::sin(k);
  p.energy = std::hypot(p.d_x, p.d_y);
  if (p.energy > 0.0) {
    p.n_x = p.d_x / p.energy;
    p.n_y = p.d_y / p.energy;
  } else {
    p.n_x = p.n_y = 0.0;
  }
  return p;
}

WindingResult winding_integral(double j1, double j2, int n_k) {
  require_gapped(j1, j2);
  require_grid(n_k);
  // Periodic trapezoid = plain mean over the uniform grid.
  double sum = 0.0;
  for (int i = 0; i < n_k; ++i) {
    const double k = -M_PI + 2.0 * M_PI * i / n_k;
    sum += winding_cross(j1, j2, k);
  }
  const double nu_raw = sum / n_k;
  return {nu_raw, static_cast<int>(std::lround(nu_raw))};
}

double analytic_ppdc(double j1, double j2, double z_mm, int n_k) {
  require_gapped(j1, j2);
  require_grid(n_k);
  if (z_mm < 0.0) throw DomainError("analytic_ppdc: z must be >= 0");
  double nu_term = 0.0, osc_term = 0.0;
  for (int i = 0; i < n_k; ++i) {
    const double k = -M_PI + 2.0 * M_PI * i / n_k;
    const double cross = winding_cross(j1, j2, k);
    nu_term += cross;
    osc_term += std::cos(2.0 * dispersion(j1, j2, k) * z_mm) * cross;
  }
  return 0.5 * (nu_term - osc_term) / n_k;
}

double analytic_tpts(double j1, double j2) {
  require_valid(j1, j2);
  const double jmin = std::min(j1, j2);
  return 0.5 * jmin * jmin;
}

double tpts_integral(double j1, double j2, int n_k) {
  require_valid(j1, j2);
  require_grid(n_k);
  const double scale = j1 * j1 + j2 * j2;
  double sum = 0.0;
  for (int i = 0; i < n_k; ++i) {
    const double k = -M_PI + 2.0 * M_PI * i / n_k;
    const double e2 = j1 * j1 + j2 * j2 + 2.0 * j1 * j2 * std::cos(k);
    double integrand;
    if (e2 > 1e-14 * scale) {
      const double de = j1 * j2 * std::sin(k);  // numerator of -E d_k E
      integrand = de * de / e2;
    } else {
      // Gapless point k = +-pi with J1 = J2: limit J1 J2 (1 - cos k)/2.
      integrand = j1 * j2 * (1.0 - std::cos(k)) * 0.5;
    }
    sum += integrand;
  }
  return sum / n_k;
}

}  // namespace topolattice::oracle
