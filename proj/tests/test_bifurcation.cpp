#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nodoid/bifurcation.hpp"

using namespace nodoid;

TEST_CASE("symmetry class validation and mode phases") {
  CHECK_THROWS_AS(make_symmetry(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_symmetry(3, 2.0), std::invalid_argument);
  const SymmetryClass sym = make_symmetry(3, M_PI / 6.0);
  CHECK(mode_phase(sym, 1) == doctest::Approx(M_PI / 2.0).epsilon(1e-14));
  CHECK(mode_phase(sym, 2) == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK(mode_phase(sym, 3) == doctest::Approx(M_PI / 2.0).epsilon(1e-12));
  CHECK(mode_phase(sym, 4) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("index vanishes in the stable range") {
  const IndexReport r1 = morse_index(-1.0, make_symmetry(2, 0.0));
  CHECK(r1.index == 0);
  CHECK(r1.contributions.empty());
  CHECK(r1.n0_excluded);

  const IndexReport r2 = morse_index(-0.5, make_symmetry(5, 0.3));
  CHECK(r2.index == 0);

  // computable (and zero) on the unduloid side as well
  const IndexReport r3 = morse_index(0.5, make_symmetry(2, 0.0));
  CHECK(r3.index == 0);
}

TEST_CASE("index cutoff bound") {
  const IndexReport r = morse_index(-3.0, make_symmetry(2, 0.0));
  // sqrt(tau^2 + 2) = sqrt(11) ~ 3.317; n = 2 is the first with n j > bound
  CHECK(r.n_cutoff == 2);
  CHECK(r.n_cutoff * 2 > std::sqrt(11.0));
}

TEST_CASE("index is invariant under alpha -> -alpha") {
  const IndexReport plus = morse_index(-3.0, make_symmetry(3, 0.2));
  const IndexReport minus = morse_index(-3.0, make_symmetry(3, -0.2));
  CHECK(plus.index == minus.index);
}

TEST_CASE("first bifurcation for j = 2 sits in the bracket") {
  const SymmetryClass sym = make_symmetry(2, 0.0);
  const BifurcationPoint p = first_bifurcation(sym);
  CHECK(p.tau_star > -2.0);
  CHECK(p.tau_star < -std::sqrt(2.0));
  CHECK(p.band_index == 0);
  CHECK_FALSE(p.conjectural);

  // the crossing eigenvalue really vanishes there
  const ProfileSolution prof = solve_profile(p.tau_star, 2048, 1);
  const double s2 = prof.s_tau * prof.s_tau;
  const double f = band_function(prof, 0, 0.0) + 4.0 * s2;
  CHECK(std::abs(f) <= 1e-8);

  // index jumps from 0 to >= 1 across the crossing
  CHECK(morse_index(p.tau_star + 0.05, sym).index == 0);
  CHECK(morse_index(p.tau_star - 0.05, sym).index >= 1);

  // stored eigenfunction: unit L^2 norm, phi(0) real positive, and the
  // correct quasiperiodicity (beta = 0 here, so 2 pi periodic)
  CHECK(std::abs(p.phi(0.0).imag()) <= 1e-12);
  CHECK(p.phi(0.0).real() > 0.0);
  CHECK(std::abs(p.phi(2.0 * M_PI) - p.phi(0.0)) <= 1e-10);
}

TEST_CASE("first bifurcation brackets for a larger order") {
  const BifurcationPoint p = first_bifurcation(make_symmetry(10, 0.0));
  CHECK(p.tau_star > -10.0);
  CHECK(p.tau_star < -std::sqrt(98.0));
}

TEST_CASE("index jumps by the crossing multiplicity for several classes") {
  const SymmetryClass classes[] = {make_symmetry(2, 0.0),
                                   make_symmetry(3, M_PI / 6.0),
                                   make_symmetry(8, 0.0)};
  for (const SymmetryClass& sym : classes) {
    const BifurcationPoint p = first_bifurcation(sym);
    CHECK(morse_index(p.tau_star + 0.05, sym).index == 0);
    CHECK(morse_index(p.tau_star - 0.05, sym).index >= 1);
  }
}

TEST_CASE("asymptotic law with a nonzero screw angle") {
  // beta = fold(16 * pi/32) = pi/2, so the limit predicts
  // tau -> -j / sqrt(1 - (beta/2pi)^2) with an O(1/j) remainder.
  const BifurcationPoint p = first_bifurcation(make_symmetry(16, M_PI / 32.0));
  const double mu = 0.25;
  const double predicted = -16.0 / std::sqrt(1.0 - mu * mu);
  CHECK(std::abs(p.tau_star - predicted) <= 8.0 / 16.0);
}

TEST_CASE("transversality slope at a large-j crossing") {
  BifurcationPoint p = first_bifurcation(make_symmetry(8, 0.0));
  CHECK(p.slope < 0.0);
  // leading term -2 j^2 / |tau|^3 dominates by a factor ~ j^2
  const double lead = -2.0 * 64.0 / std::pow(std::abs(p.tau_star), 3);
  CHECK(std::abs(p.slope - lead) <= 0.1 * std::abs(lead));
  // recompute with a different step; the slope is stable
  const double again = transversality(p, 5e-5);
  CHECK(again == doctest::Approx(p.slope).epsilon(1e-4));
}

TEST_CASE("transversality finite difference is exact on the limit surrogate") {
  // With s = -1/tau the flow is F(tau) = j^2 / tau^2 + const; the central
  // difference along decreasing tau reproduces -2 j^2 / |tau|^3 exactly up
  // to O(h^2).
  const int j = 8;
  const double tau = -8.0;
  const double h = 1e-4;
  auto f = [&](double x) { return j * j / (x * x) - 1.0; };
  const double slope = (f(tau - h) - f(tau + h)) / (2.0 * h);
  CHECK(slope ==
        doctest::Approx(-2.0 * j * j / std::pow(std::abs(tau), 3))
            .epsilon(1e-8));
  CHECK(slope < 0.0);
}

TEST_CASE("second crossing is empty for j = 2, alpha = 0") {
  // lambda_1(tau, 0) = -s^2 makes the flow 3 s^2 > 0 everywhere
  const auto p = second_crossing(make_symmetry(2, 0.0));
  CHECK_FALSE(p.has_value());
}

TEST_CASE("second crossing exists for j = 16, alpha = pi/32") {
  const SymmetryClass sym = make_symmetry(16, M_PI / 32.0);
  const BifurcationPoint first = first_bifurcation(sym);
  const auto second = second_crossing(sym);
  REQUIRE(second.has_value());
  CHECK(second->conjectural);
  CHECK(second->band_index == 1);
  CHECK(second->tau_star < first.tau_star);
  // consistent with -j / sqrt(1 - (beta/2pi - 1)^2) to O(1/j)
  const double mu = second->beta / (2.0 * M_PI);
  const double seed = -16.0 / std::sqrt(1.0 - (mu - 1.0) * (mu - 1.0));
  CHECK(std::abs(second->tau_star - seed) <= 8.0 / 16.0);
}

TEST_CASE("critical tau star is attained at j = 2, alpha = 0") {
  const double tstar = critical_tau_star(3, 3);
  CHECK(tstar > -2.0);
  CHECK(tstar < -std::sqrt(2.0));
  const BifurcationPoint p20 = first_bifurcation(make_symmetry(2, 0.0));
  CHECK(tstar >= p20.tau_star - 1e-9);
  CHECK(tstar == doctest::Approx(p20.tau_star).epsilon(1e-7));
}

TEST_CASE("spectral flow table") {
  const SymmetryClass sym = make_symmetry(2, 0.3);
  CHECK_THROWS_AS(spectral_flow_table(sym, {-2.0, -1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(spectral_flow_table(sym, {0.5}), std::invalid_argument);

  const auto rows = spectral_flow_table(sym, {-0.5});
  CHECK(!rows.empty());
  for (const FlowRow& r : rows) {
    CHECK(r.value > 0.0);  // tau^2 < 2 exclusion
    CHECK(r.n >= 1);
    CHECK(r.k >= 0);
    CHECK(r.k <= 2);
  }
}
