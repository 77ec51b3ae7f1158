#include <doctest.h>

#include <cmath>
#include <random>

#include "topolattice/errors.hpp"
#include "topolattice/momentum_oracle.hpp"

using namespace topolattice;

TEST_CASE("winding integral on the dimerized limits") {
  CHECK(oracle::winding_integral(1.0, 0.0).nu == 0);
  CHECK(std::abs(oracle::winding_integral(1.0, 0.0).nu_raw) < 1e-12);
  CHECK(oracle::winding_integral(0.0, 1.0).nu == 1);
  CHECK(oracle::winding_integral(0.0, 1.0).nu_raw == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("winding integral classifies both phases") {
  CHECK(oracle::winding_integral(0.5, 1.0).nu == 1);
  CHECK(oracle::winding_integral(1.0, 0.5).nu == 0);
  CHECK_THROWS_AS(oracle::winding_integral(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(oracle::winding_integral(1.0, 0.5, 32), DomainError);
}

TEST_CASE("winding integral is near-integer and scale invariant") {
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> unif(0.05, 1.5);
  for (int i = 0; i < 40; ++i) {
    double j1 = unif(rng), j2 = unif(rng);
    if (std::abs(j1 - j2) < 0.05 * std::max(j1, j2)) continue;
    const auto r = oracle::winding_integral(j1, j2);
    CHECK(std::abs(r.nu_raw - r.nu) <= 1e-6);
    const double c = 0.1 + unif(rng);
    CHECK(oracle::winding_integral(c * j1, c * j2).nu_raw ==
          doctest::Approx(r.nu_raw).epsilon(1e-12));
  }
}

TEST_CASE("winding integrand matches a finite-difference cross product") {
  // Independent check of the closed-form n x d_k n used by the quadrature.
  const double j1 = 0.4, j2 = 0.9, dk = 1e-6;
  for (double k = -3.0; k <= 3.0; k += 0.37) {
    const auto p0 = oracle::bloch_point(j1, j2, k - dk);
    const auto p1 = oracle::bloch_point(j1, j2, k + dk);
    const auto p = oracle::bloch_point(j1, j2, k);
    const double fd_cross =
        p.n_x * (p1.n_y - p0.n_y) / (2 * dk) - p.n_y * (p1.n_x - p0.n_x) / (2 * dk);
    const double analytic = (j2 * j2 + j1 * j2 * std::cos(k)) / (p.energy * p.energy);
    CHECK(fd_cross == doctest::Approx(analytic).epsilon(1e-7));
  }
}

TEST_CASE("dispersion closed form and band edges") {
  CHECK(oracle::dispersion(0.3, 0.7, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(oracle::dispersion(0.3, 0.7, M_PI) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(oracle::dispersion(1.0, 1.0, M_PI / 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  const auto p = oracle::bloch_point(0.3, 0.7, 1.1);
  CHECK(std::hypot(p.n_x, p.n_y) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("analytic PPDC vanishes at z = 0 and oscillates about nu/2") {
  CHECK(std::abs(oracle::analytic_ppdc(0.5, 1.0, 0.0)) < 1e-14);
  CHECK(std::abs(oracle::analytic_ppdc(1.0, 0.5, 0.0)) < 1e-14);
  double mean = 0.0;
  int count = 0;
  for (double z = 100.0; z <= 200.0; z += 0.5, ++count)
    mean += oracle::analytic_ppdc(0.5, 1.0, z);
  mean /= count;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.02));
  CHECK_THROWS_AS(oracle::analytic_ppdc(1.0, 1.0, 5.0), DomainError);
}

TEST_CASE("closed-form TPTS branches") {
  CHECK(oracle::analytic_tpts(0.5, 1.0) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(oracle::analytic_tpts(1.0, 0.5) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(oracle::analytic_tpts(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("TPTS quadrature agrees with the closed form") {
  CHECK(std::abs(oracle::tpts_integral(1.0, 0.0)) < 1e-15);  // flat band
  CHECK(oracle::tpts_integral(0.5, 1.0) == doctest::Approx(0.125).epsilon(1e-6));
  // Kink in the integrand at the gapless point: looser tolerance.
  CHECK(std::abs(oracle::tpts_integral(1.0, 1.0) - 0.5) < 1e-4);
}

TEST_CASE("TPTS quadrature equals the closed form on a coupling grid") {
  for (int a = 1; a <= 10; ++a)
    for (int b = 1; b <= 10; ++b) {
      if (a == b) continue;
      const double j1 = 0.1 * a, j2 = 0.1 * b;
      CHECK(std::abs(oracle::tpts_integral(j1, j2) - oracle::analytic_tpts(j1, j2)) < 1e-6);
    }
}

TEST_CASE("band edges at the grid endpoints") {
  for (auto [j1, j2] : {std::pair{0.3, 0.7}, {1.2, 0.4}}) {
    CHECK(std::abs(oracle::dispersion(j1, j2, 0.0) - (j1 + j2)) < 1e-12);
    CHECK(std::abs(oracle::dispersion(j1, j2, M_PI) - std::abs(j1 - j2)) < 1e-12);
  }
}
