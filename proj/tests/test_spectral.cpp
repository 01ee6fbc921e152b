#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "nodoid/spectral.hpp"

using namespace nodoid;

namespace {

ProfileSolution spectral_profile(double tau) {
  return solve_profile(tau, 2048, 1);
}

}  // namespace

TEST_CASE("phase folding") {
  CHECK(fold_phase(0.0) == 0.0);
  CHECK(fold_phase(M_PI) == M_PI);
  CHECK(fold_phase(-M_PI) == M_PI);
  CHECK(fold_phase(3.0 * M_PI) == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(fold_phase(-0.4) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(fold_phase(2.0 * M_PI + 0.3) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(fold_phase(M_PI + 0.1) == doctest::Approx(M_PI - 0.1).epsilon(1e-12));
}

TEST_CASE("potential of the cylinder is exactly 1") {
  const ProfileSolution p = spectral_profile(1.0);
  QuasiPeriodicOperator op = build_operator(p, 0, 0.0, 64);
  CHECK(op.potential_coeffs[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t m = 1; m < op.potential_coeffs.size(); ++m)
    CHECK(std::abs(op.potential_coeffs[m]) <= 1e-14);
  CHECK(op.q(0.63) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("operator offset uses the period") {
  const ProfileSolution p = spectral_profile(-2.0);
  QuasiPeriodicOperator op = build_operator(p, 3, 0.0, 64);
  // 9 * s(-2)^2 with s(-2) = 0.472503165464879 from the AGM oracle
  CHECK(op.offset == doctest::Approx(2.0093331723689776).epsilon(1e-10));
}

TEST_CASE("potential bounds and parity structure for a nodoid") {
  const ProfileSolution p = spectral_profile(-1.5);
  QuasiPeriodicOperator op = build_operator(p, 0, 0.0, 128);
  const double s2 = p.s_tau * p.s_tau;
  const double tau2 = p.tau * p.tau;
  for (int i = 0; i < 64; ++i) {
    const double q = op.q(2.0 * M_PI * i / 64);
    CHECK(q >= s2 * tau2 - 1e-12);
    CHECK(q <= s2 * (tau2 + 2.0) + 1e-12);
  }
  // sigma is antisymmetric about the half period, so q has no odd harmonics.
  for (std::size_t m = 1; m < op.potential_coeffs.size(); m += 2)
    CHECK(std::abs(op.potential_coeffs[m]) <= 1e-13);
  // and the even ones decay below 1e-14 before truncation
  double tail = 0.0;
  for (std::size_t m = 100; m < op.potential_coeffs.size(); ++m)
    tail = std::max(tail, std::abs(op.potential_coeffs[m]));
  CHECK(tail <= 1e-14);
}

TEST_CASE("potential far in the nodoid family approaches 1") {
  const ProfileSolution p = spectral_profile(-40.0);
  QuasiPeriodicOperator op = build_operator(p, 0, 0.0, 64);
  for (int i = 0; i < 32; ++i)
    CHECK(std::abs(op.q(2.0 * M_PI * i / 32) - 1.0) <= 3.0 / (40.0 * 40.0));
}

TEST_CASE("operator preconditions") {
  const ProfileSolution p = spectral_profile(-1.0);
  CHECK_THROWS_AS(build_operator(p, -1, 0.0, 64), std::invalid_argument);
  CHECK_THROWS_AS(build_operator(p, 0, 0.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(build_operator(p, 0, 0.0, 2000), std::invalid_argument);
}

TEST_CASE("constant potential eigenvalues match the closed forms") {
  const ProfileSolution p = spectral_profile(1.0);

  QuasiPeriodicOperator op0 = build_operator(p, 0, 0.0, 64);
  EigenDecomposition d0 = eigensolve_galerkin(op0, 32, 4);
  CHECK(d0.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
  // constant ground state
  const auto u0 = d0.eigenfunction(0, 0.0);
  const auto u1 = d0.eigenfunction(0, 1.9);
  CHECK(std::abs(u0 - u1) <= 1e-10);

  QuasiPeriodicOperator oppi = build_operator(p, 0, M_PI, 64);
  EigenDecomposition dpi = eigensolve_galerkin(oppi, 32, 4);
  CHECK(dpi.eigenvalues[0] == doctest::Approx(-0.75).epsilon(1e-12));
  CHECK(dpi.eigenvalues[1] == doctest::Approx(-0.75).epsilon(1e-12));

  QuasiPeriodicOperator opa = build_operator(p, 0, 1.0, 64);
  EigenDecomposition da = eigensolve_galerkin(opa, 32, 5);
  for (int k = 0; k < 5; ++k)
    CHECK(da.eigenvalues[k] ==
          doctest::Approx(limit_band(k, 1.0)).epsilon(1e-12));
}

TEST_CASE("limit band closed forms") {
  CHECK(limit_band(0, 0.0) == doctest::Approx(-1.0));
  CHECK(limit_band(0, M_PI) == doctest::Approx(-0.75));
  CHECK(limit_band(1, M_PI) == doctest::Approx(-0.75));
  CHECK(limit_band(1, 0.0) == doctest::Approx(0.0));
  CHECK(limit_band(2, 0.0) == doctest::Approx(0.0));
  CHECK(limit_band(2, M_PI) == doctest::Approx(1.25));
  CHECK(limit_band(3, M_PI) == doctest::Approx(1.25));
  CHECK(limit_band(3, 0.0) == doctest::Approx(3.0));
  CHECK(limit_band(4, 0.0) == doctest::Approx(3.0));
}

TEST_CASE("eigensolve preconditions and convergence guard") {
  const ProfileSolution p = spectral_profile(-1.0);
  QuasiPeriodicOperator op = build_operator(p, 0, 0.0, 64);
  CHECK_THROWS_AS(eigensolve_galerkin(op, 10, 4), std::invalid_argument);
  // checked solve converges comfortably for this analytic potential
  EigenDecomposition dec = eigensolve_checked(op, 3);
  CHECK(dec.eigenvalues.size() == 3);
}

TEST_CASE("quasiperiodic boundary relation holds by construction") {
  const ProfileSolution p = spectral_profile(-1.0);
  const double alpha = 1.3;
  QuasiPeriodicOperator op = build_operator(p, 0, alpha, 513);
  EigenDecomposition dec = eigensolve_checked(op, 2);
  const std::complex<double> phase(std::cos(alpha), std::sin(alpha));
  for (int k = 0; k < 2; ++k) {
    const auto at_pi = dec.eigenfunction(k, M_PI);
    const auto at_mpi = dec.eigenfunction(k, -M_PI);
    CHECK(std::abs(at_pi - phase * at_mpi) <= 1e-12);
  }
}

TEST_CASE("exact identities: sinh/cosh fields and the axial field") {
  for (double tau : {-0.5, -1.0, -5.0}) {
    const ProfileSolution p = spectral_profile(tau);
    const double s2 = p.s_tau * p.s_tau;
    QuasiPeriodicOperator op = build_operator(p, 0, 0.0, 129);
    EigenDecomposition dec = eigensolve_galerkin(op, 64, 3);
    CHECK(std::abs(dec.eigenvalues[1] + s2) <= 1e-8);
    CHECK(std::abs(dec.eigenvalues[2]) <= 1e-8);
  }
  for (double tau : {0.3, 1.0}) {
    const ProfileSolution p = spectral_profile(tau);
    const double s2 = p.s_tau * p.s_tau;
    QuasiPeriodicOperator op = build_operator(p, 0, 0.0, 129);
    EigenDecomposition dec = eigensolve_galerkin(op, 64, 1);
    CHECK(std::abs(dec.eigenvalues[0] + s2) <= 1e-8);
  }
}

TEST_CASE("band function ground state bounds") {
  const double tau = -2.0;
  const ProfileSolution p = spectral_profile(tau);
  const double s2 = p.s_tau * p.s_tau;
  for (double alpha : {0.0, 1.0, M_PI}) {
    const double mu = alpha / (2.0 * M_PI);
    const double l0 = band_function(p, 0, alpha);
    CHECK(l0 >= -2.0 * s2 + mu * mu - tau * tau * s2 - 1e-8);
    CHECK(l0 <= mu * mu - tau * tau * s2 + 1e-8);
  }
}

TEST_CASE("band table: nodoid band layout") {
  const ProfileSolution p = spectral_profile(-1.0);
  const double s2 = p.s_tau * p.s_tau;
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(M_PI * i / 10);
  const BandTable table = band_table(p, 4, grid);

  // only B_0 and B_1 reach the negative half-line
  CHECK(table.bands[0][1] < 0.0);
  CHECK(table.bands[1][1] == doctest::Approx(-s2).epsilon(1e-7));
  CHECK(table.bands[1][1] < 0.0);
  CHECK(std::abs(table.bands[2][0]) <= 1e-8);  // B_2 = [0, lambda_2(pi)]
  CHECK(table.bands[2][1] > 0.0);

  // no band reduces to a point
  for (const auto& b : table.bands) CHECK(b[1] - b[0] > 1e-6);

  // even band functions nondecreasing, odd nonincreasing on [0, pi]
  for (std::size_t k = 0; k < table.lambda.size(); ++k)
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const double step = table.lambda[k][i] - table.lambda[k][i - 1];
      if (k % 2 == 0)
        CHECK(step >= -1e-9);
      else
        CHECK(step <= 1e-9);
    }

  // interlacing chain at the sampled endpoints
  CHECK(table.lambda[0][0] <= table.lambda[0][10] + 1e-9);
  CHECK(table.lambda[0][10] <= table.lambda[1][10] + 1e-9);
  CHECK(table.lambda[1][10] <= table.lambda[1][0] + 1e-9);
  CHECK(table.lambda[1][0] <= table.lambda[2][0] + 1e-9);
}

TEST_CASE("band table: constant potential reproduces the limit bands") {
  const ProfileSolution p = spectral_profile(1.0);
  std::vector<double> grid = {0.0, M_PI / 2.0, M_PI};
  const BandTable table = band_table(p, 3, grid);
  CHECK(table.bands[0][0] == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(table.bands[0][1] == doctest::Approx(-0.75).epsilon(1e-10));
  CHECK(table.bands[1][0] == doctest::Approx(-0.75).epsilon(1e-10));
  CHECK(table.bands[1][1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
  CHECK(table.bands[2][0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
  CHECK(table.bands[2][1] == doctest::Approx(1.25).epsilon(1e-10));
}

TEST_CASE("band table preconditions") {
  const ProfileSolution p = spectral_profile(-1.0);
  CHECK_THROWS_AS(band_table(p, 2, {0.0, M_PI}), std::invalid_argument);
  CHECK_THROWS_AS(band_table(p, 4, {0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("phase symmetry by folding") {
  const ProfileSolution p = spectral_profile(-1.5);
  const double a = 0.9;
  CHECK(band_function(p, 1, a) ==
        doctest::Approx(band_function(p, 1, -a)).epsilon(1e-12));
  CHECK(band_function(p, 0, 2.0 * M_PI - a) ==
        doctest::Approx(band_function(p, 0, a)).epsilon(1e-12));
}

TEST_CASE("geometric Jacobi fields are numerical null fields") {
  const ProfileSolution nod = spectral_profile(-1.0);
  CHECK(jacobi_field_residual(nod, JacobiField::Axial) <= 1e-8);
  CHECK(jacobi_field_residual(nod, JacobiField::Transverse) <= 1e-8);
  const ProfileSolution und = spectral_profile(0.5);
  CHECK(jacobi_field_residual(und, JacobiField::Transverse) <= 1e-8);
  CHECK(jacobi_field_residual(und, JacobiField::Axial) <= 1e-8);
}

TEST_CASE("monodromy trace of the constant potential") {
  const ProfileSolution p = spectral_profile(1.0);
  QuasiPeriodicOperator op = build_operator(p, 0, 0.0, 64);
  for (double nu : {-0.5, 0.3, 2.0}) {
    const double expected = 2.0 * std::cos(2.0 * M_PI * std::sqrt(nu + 1.0));
    CHECK(monodromy_trace(op, nu) == doctest::Approx(expected).epsilon(1e-9));
  }
  CHECK(monodromy_trace(op, -1.0) == doctest::Approx(2.0).epsilon(1e-10));
  // below the spectrum the trace exceeds 2
  CHECK(monodromy_trace(op, -1.5) > 2.0);
}

TEST_CASE("monodromy finds the bottom eigenvalue of the constant potential") {
  const ProfileSolution p = spectral_profile(1.0);
  QuasiPeriodicOperator op = build_operator(p, 0, 0.0, 64);
  const std::vector<double> roots = eigensolve_monodromy(op, -1.5, -0.5);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("monodromy throws when the bracket has no crossing") {
  const ProfileSolution p = spectral_profile(1.0);
  QuasiPeriodicOperator op = build_operator(p, 0, 0.0, 64);
  CHECK_THROWS_AS(eigensolve_monodromy(op, -3.0, -1.5), std::runtime_error);
}

TEST_CASE("monodromy agrees with Galerkin eigenvalues") {
  for (double tau : {-0.5, -1.0, -3.0, -10.0}) {
    const ProfileSolution p = spectral_profile(tau);
    for (double alpha : {0.0, 1.0, M_PI}) {
      QuasiPeriodicOperator op = build_operator(p, 0, alpha, 513);
      EigenDecomposition gal = eigensolve_checked(op, 6);
      const std::vector<double> mon = monodromy_eigenvalues(op, 6);
      for (int k = 0; k < 6; ++k)
        CHECK(std::abs(gal.eigenvalues[k] - mon[k]) <= 1e-7);
    }
  }
}

TEST_CASE("monodromy resolves the doubly degenerate pi-phase pairs") {
  const ProfileSolution p = spectral_profile(-1.0);
  QuasiPeriodicOperator op = build_operator(p, 0, M_PI, 513);
  EigenDecomposition gal = eigensolve_checked(op, 4);
  // the pi edges touch: eigenvalues come in exactly degenerate pairs
  CHECK(std::abs(gal.eigenvalues[0] - gal.eigenvalues[1]) <= 1e-9);
  CHECK(std::abs(gal.eigenvalues[2] - gal.eigenvalues[3]) <= 1e-9);
  const std::vector<double> mon = monodromy_eigenvalues(op, 4);
  for (int k = 0; k < 4; ++k)
    CHECK(std::abs(gal.eigenvalues[k] - mon[k]) <= 1e-7);
}

TEST_CASE("band functions converge to the limit operator") {
  const ProfileSolution p50 = spectral_profile(-50.0);
  const ProfileSolution p25 = spectral_profile(-25.0);
  double e50 = 0.0, e25 = 0.0;
  for (int k = 0; k <= 3; ++k) {
    e50 = std::max(e50, std::abs(band_function(p50, k, 1.0) -
                                 limit_band(k, 1.0)));
    e25 = std::max(e25, std::abs(band_function(p25, k, 1.0) -
                                 limit_band(k, 1.0)));
  }
  CHECK(e50 <= 5e-3);
  const double ratio = e25 / e50;
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("ground eigenfunction approaches the limit plane wave") {
  const ProfileSolution p = spectral_profile(-50.0);
  for (double alpha : {0.0, 1.0, M_PI / 2.0}) {
    QuasiPeriodicOperator op = build_operator(p, 0, alpha, 129);
    EigenDecomposition dec = eigensolve_checked(op, 1);
    // fraction of the n = 0 basis vector e^{i mu t}; L^2 distance after
    // phase alignment is sqrt(2 (1 - frac))
    const double frac =
        std::abs(dec.eigenvectors[0][dec.n_modes]) * std::sqrt(2.0 * M_PI);
    CHECK(std::sqrt(2.0 * (1.0 - std::min(frac, 1.0))) <= 5e-3);
  }
}

TEST_CASE("axial zero position is reported for unduloids") {
  const ProfileSolution p = spectral_profile(0.5);
  const int pos = axial_zero_position(p);
  CHECK((pos == 1 || pos == 2));
  const ProfileSolution nod = spectral_profile(-0.5);
  CHECK_THROWS_AS(axial_zero_position(nod), std::domain_error);
}
