#include "nodoid/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "nodoid/bifurcation.hpp"
#include "nodoid/delaunay.hpp"
#include "nodoid/spectral.hpp"
#include "nodoid/surface.hpp"

namespace nodoid::acceptance {

namespace {

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }

  void note(const std::string& what) {
    if (detail.tellp() > 0) detail << "; ";
    detail << what;
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

// lambda_k(tau, alpha) for j = 0 at a fixed Galerkin size.
double lambda_fixed(const ProfileSolution& profile, int k, double alpha,
                    int n_modes) {
  QuasiPeriodicOperator op =
      build_operator(profile, 0, alpha, 2 * n_modes + 1);
  return eigensolve_galerkin(op, n_modes, k + 1).eigenvalues[k];
}

CriterionResult criterion_period_oracles() {
  Check c;
  for (double tau : {-10.0, -2.0, -1.0, -0.5, 0.3, 0.7, 0.999}) {
    const double sq = compute_period(tau, PeriodMethod::Quadrature).s_tau;
    const double se = compute_period(tau, PeriodMethod::Elliptic).s_tau;
    const double rel = std::abs(sq - se) / se;
    c.require(rel <= 1e-10,
              "tau=" + fmt(tau) + " method disagreement " + fmt(rel));
  }
  const double s1 = period_s(-1.0);
  c.require(std::abs(s1 - 0.834626841674073) <= 1e-9,
            "s(-1) = " + fmt(s1));
  const double s999 = period_s(0.999);
  c.require(std::abs(s999 - 1.0) <= 1e-3, "s(0.999) = " + fmt(s999));
  return {1, "period oracle agreement (quadrature vs elliptic)", c.pass,
          c.detail.str()};
}

CriterionResult criterion_energy_drift() {
  Check c;
  for (double tau : {-5.0, -1.0, 0.5}) {
    const ProfileSolution p = solve_profile(tau, 256, 4, 1e-12);
    c.require(p.energy_error <= 1e-10,
              "tau=" + fmt(tau) + " energy drift " + fmt(p.energy_error));
  }
  return {2, "ODE energy drift over 4 periods", c.pass, c.detail.str()};
}

CriterionResult criterion_asymptotic_rates() {
  Check c;
  auto sup_gamma_err = [](double tau) {
    const ProfileSolution p = solve_profile(tau, 2048, 1);
    double sup = 0.0;
    for (int i = 0; i < 512; ++i) {
      const double t = 2.0 * M_PI * i / 512;
      sup = std::max(sup, std::abs(gamma(p, t) - std::cos(t)));
    }
    return sup;
  };
  const double e20 = sup_gamma_err(-20.0);
  const double e40 = sup_gamma_err(-40.0);
  const double ratio = e20 / e40;
  c.require(ratio >= 3.5 && ratio <= 4.5,
            "gamma error ratio (-20 vs -40) = " + fmt(ratio));

  // The O(|tau|^-3) remainder of s_tau = -1/tau + ...: its coefficient
  // |tau|^3 |s_tau + 1/tau| must be stable (within 20%) as tau doubles,
  // and the tau^2-scaled remainder stays bounded.
  double cmin = 1e300, cmax = 0.0;
  for (double tau : {-10.0, -20.0, -40.0, -80.0}) {
    const double rem = std::abs(period_s(tau) + 1.0 / tau);
    cmin = std::min(cmin, std::pow(std::abs(tau), 3) * rem);
    cmax = std::max(cmax, std::pow(std::abs(tau), 3) * rem);
    c.require(tau * tau * rem <= 0.05,
              "tau=" + fmt(tau) + " tau^2 remainder " + fmt(tau * tau * rem));
  }
  c.require(cmax / cmin <= 1.2, "remainder coefficient spread " +
                                    fmt(cmax / cmin) + " (cmax=" + fmt(cmax) +
                                    ")");
  return {3, "large-|tau| rates: gamma -> cos t, s_tau -> -1/tau", c.pass,
          c.detail.str()};
}

CriterionResult criterion_exact_identities() {
  Check c;
  for (double tau : {-0.5, -1.0, -2.0, -5.0}) {
    const ProfileSolution p = solve_profile(tau, 2048, 1);
    const double s2 = p.s_tau * p.s_tau;
    const double l1 = lambda_fixed(p, 1, 0.0, 64);
    const double l2 = lambda_fixed(p, 2, 0.0, 64);
    c.require(std::abs(l1 + s2) <= 1e-8,
              "tau=" + fmt(tau) + " |lambda_1(0)+s^2| = " + fmt(std::abs(l1 + s2)));
    c.require(std::abs(l2) <= 1e-8,
              "tau=" + fmt(tau) + " |lambda_2(0)| = " + fmt(std::abs(l2)));
  }
  for (double tau : {0.3, 0.7, 1.0}) {
    const ProfileSolution p = solve_profile(tau, 2048, 1);
    const double s2 = p.s_tau * p.s_tau;
    const double l0 = lambda_fixed(p, 0, 0.0, 64);
    c.require(std::abs(l0 + s2) <= 1e-8,
              "tau=" + fmt(tau) + " |lambda_0(0)+s^2| = " + fmt(std::abs(l0 + s2)));
  }
  return {4, "exact eigenvalue identities at 64 modes", c.pass, c.detail.str()};
}

CriterionResult criterion_ground_state_bounds() {
  Check c;
  const double slack = 1e-8;
  for (double tau : {-0.5, -1.0, -2.0, -5.0}) {
    const ProfileSolution p = solve_profile(tau, 2048, 1);
    const double s2 = p.s_tau * p.s_tau;
    for (double alpha : {0.0, M_PI / 2.0, M_PI}) {
      const double mu = alpha / (2.0 * M_PI);
      const double l0 = band_function(p, 0, alpha);
      const double lower = -2.0 * s2 + mu * mu - tau * tau * s2;
      const double upper = mu * mu - tau * tau * s2;
      c.require(l0 >= lower - slack && l0 <= upper + slack,
                "tau=" + fmt(tau) + " alpha=" + fmt(alpha) + " lambda_0=" +
                    fmt(l0) + " outside [" + fmt(lower) + ", " + fmt(upper) +
                    "]");
    }
  }
  return {5, "ground-state band bounds", c.pass, c.detail.str()};
}

CriterionResult criterion_limit_bands() {
  Check c;
  auto max_err = [](double tau) {
    const ProfileSolution p = solve_profile(tau, 2048, 1);
    double e = 0.0;
    for (double alpha : {0.0, M_PI / 2.0, M_PI})
      for (int k = 0; k <= 3; ++k)
        e = std::max(e, std::abs(band_function(p, k, alpha) -
                                 limit_band(k, alpha)));
    return e;
  };
  const double e50 = max_err(-50.0);
  const double e25 = max_err(-25.0);
  c.require(e50 <= 5e-3, "max limit-band error at tau=-50: " + fmt(e50));
  const double ratio = e25 / e50;
  c.require(ratio >= 3.5 && ratio <= 4.5,
            "limit-band error ratio (-25 vs -50) = " + fmt(ratio));
  return {6, "limit band structure as tau -> -inf", c.pass, c.detail.str()};
}

CriterionResult criterion_oracle_equivalence() {
  Check c;
  const struct {
    double tau, alpha;
  } cases[] = {{-3.0, 1.0}, {-1.0, M_PI}, {-10.0, 0.0}};
  for (const auto& cs : cases) {
    const ProfileSolution p = solve_profile(cs.tau, 2048, 1);
    QuasiPeriodicOperator op = build_operator(p, 0, cs.alpha, 513);
    EigenDecomposition gal = eigensolve_checked(op, 5);
    const std::vector<double> mon = monodromy_eigenvalues(op, 5);
    for (int k = 0; k < 5; ++k) {
      const double diff = std::abs(gal.eigenvalues[k] - mon[k]);
      c.require(diff <= 1e-7, "tau=" + fmt(cs.tau) + " alpha=" +
                                  fmt(cs.alpha) + " k=" + std::to_string(k) +
                                  " |galerkin-monodromy| = " + fmt(diff));
    }
  }
  return {7, "Galerkin vs monodromy eigenvalues", c.pass, c.detail.str()};
}

CriterionResult criterion_bifurcation_brackets() {
  Check c;
  for (int j : {2, 3, 4, 6, 8, 10, 12}) {
    const BifurcationPoint p = first_bifurcation(make_symmetry(j, 0.0));
    const double lo = -static_cast<double>(j);
    const double hi = -std::sqrt(static_cast<double>(j) * j - 2.0);
    c.require(p.tau_star > lo && p.tau_star < hi,
              "j=" + std::to_string(j) + " tau=" + fmt(p.tau_star) +
                  " outside (" + fmt(lo) + ", " + fmt(hi) + ")");
    if (j == 2)
      c.require(p.tau_star > -2.0 && p.tau_star < -1.4142136,
                "tau_{2,0} = " + fmt(p.tau_star));
  }
  return {8, "bifurcation value brackets", c.pass, c.detail.str()};
}

CriterionResult criterion_asymptotic_law() {
  Check c;
  double cmax = 0.0;
  for (int j : {8, 16, 32}) {
    const BifurcationPoint p = first_bifurcation(make_symmetry(j, 0.0));
    const double cj = j * std::abs(p.tau_star + j);
    cmax = std::max(cmax, cj);
    c.note("j=" + std::to_string(j) + ": j|tau+j| = " + fmt(cj));
  }
  c.require(cmax <= 1.0, "max j|tau_{j,0}+j| = " + fmt(cmax) + " > 1.0");
  return {9, "asymptotic law tau_{j,0} = -j + O(1/j)", c.pass, c.detail.str()};
}

CriterionResult criterion_transversality() {
  Check c;
  for (int j : {8, 16, 32}) {
    for (double alpha : {0.0, M_PI / (2.0 * j)}) {
      BifurcationPoint p = first_bifurcation(make_symmetry(j, alpha));
      c.require(p.slope < 0.0, "j=" + std::to_string(j) + " alpha=" +
                                   fmt(alpha) + " slope=" + fmt(p.slope));
    }
  }
  return {10, "transversal eigenvalue crossings", c.pass, c.detail.str()};
}

CriterionResult criterion_index_flow() {
  Check c;
  const SymmetryClass sym = make_symmetry(2, 0.0);
  const IndexReport at12 = morse_index(-1.2, sym);
  c.require(at12.index == 0, "I_{2,0}(-1.2) = " + std::to_string(at12.index));
  const BifurcationPoint p = first_bifurcation(sym);
  const IndexReport below = morse_index(p.tau_star - 0.05, sym);
  c.require(below.index >= 1, "I_{2,0}(tau*-0.05) = " +
                                  std::to_string(below.index));

  // If zero lies inside B_0(tau) + j^2 s^2 then B_0(tau) + 4 j^2 s^2 stays
  // positive, along a 50-point grid.
  for (int j : {2, 3}) {
    for (int i = 0; i < 50; ++i) {
      const double tau = -1.5 - 4.5 * i / 49.0;
      const ProfileSolution prof = solve_profile(tau, 2048, 1);
      const double s2 = prof.s_tau * prof.s_tau;
      const double lo = band_function(prof, 0, 0.0);
      const double hi = band_function(prof, 0, M_PI);
      if (lo + j * j * s2 <= 0.0 && hi + j * j * s2 >= 0.0)
        c.require(lo + 4.0 * j * j * s2 > 0.0,
                  "j=" + std::to_string(j) + " tau=" + fmt(tau) +
                      " min(B_0)+4j^2s^2 = " + fmt(lo + 4.0 * j * j * s2));
    }
  }
  return {11, "index flow and band-shift exclusion", c.pass, c.detail.str()};
}

CriterionResult criterion_geometry() {
  Check c;
  // Discrete mean curvature of the tau = -1 nodoid.
  const ProfileSolution pm1 = solve_profile(-1.0, 2048, 1);
  const PointMap map = delaunay_pointmap(pm1);
  const double ts[] = {0.33, 1.12, 2.27, 3.61, 4.95};
  const double qs[] = {0.25, 1.71, 3.93};
  auto max_h_err = [&](double h) {
    double e = 0.0;
    for (double t : ts)
      for (double q : qs) {
        const SurfaceFrame f = surface_point(pm1, t, q);
        e = std::max(e, std::abs(mean_curvature_numeric(map, t, q, h,
                                                        &f.normal) -
                                 1.0));
      }
    return e;
  };
  const double err4 = max_h_err(1e-4);
  c.require(err4 <= 1e-3, "max |H-1| on D_{-1} at h=1e-4: " + fmt(err4));
  const double ratio = max_h_err(1e-3) / max_h_err(5e-4);
  c.require(ratio >= 3.5 && ratio <= 4.5,
            "curvature Richardson ratio = " + fmt(ratio));

  // Cylinder mesh radius.
  const ProfileSolution p1 = solve_profile(1.0, 256, 1);
  const SurfaceMesh cyl = mesh_delaunay(p1, 1, 32, 32);
  double rad_err = 0.0;
  for (const auto& v : cyl.vertices)
    rad_err = std::max(rad_err,
                       std::abs(std::hypot(v[0], v[1]) - 0.5));
  c.require(rad_err <= 1e-12, "cylinder radius error " + fmt(rad_err));

  // CMC defect of the perturbed surface is quadratic in eta.
  const BifurcationPoint bp = first_bifurcation(make_symmetry(2, 0.0));
  const ProfileSolution pstar = solve_profile(bp.tau_star, 2048, 1);
  auto defect = [&](double eta) {
    const PointMap pert = perturbed_pointmap(pstar, bp, eta);
    double d = 0.0;
    for (double t : ts)
      for (double q : qs) {
        const SurfaceFrame f = surface_point(pstar, t, q);
        d = std::max(d, std::abs(mean_curvature_numeric(pert, t, q, 2e-4,
                                                        &f.normal) -
                                 1.0));
      }
    return d;
  };
  const double d1 = defect(0.01);
  const double d2 = defect(0.005);
  const double eta_ratio = d1 / d2;
  c.require(eta_ratio >= 3.5 && eta_ratio <= 4.5,
            "defect ratio eta=0.01/0.005: " + fmt(eta_ratio) + " (defects " +
                fmt(d1) + ", " + fmt(d2) + ")");
  return {12, "geometry: H = 1, cylinder radius, quadratic defect", c.pass,
          c.detail.str()};
}

CriterionResult criterion_tau_star() {
  Check c;
  const double tstar = critical_tau_star(4, 5);
  c.require(tstar > -2.0 && tstar < -std::sqrt(2.0),
            "tau_* = " + fmt(tstar));
  c.note("tau_* = " + fmt(tstar));
  return {13, "first instability tau_* in (-2, -sqrt(2))", c.pass,
          c.detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_all(std::ostream& log) {
  using Runner = std::function<CriterionResult()>;
  const Runner runners[] = {
      criterion_period_oracles,    criterion_energy_drift,
      criterion_asymptotic_rates,  criterion_exact_identities,
      criterion_ground_state_bounds, criterion_limit_bands,
      criterion_oracle_equivalence, criterion_bifurcation_brackets,
      criterion_asymptotic_law,    criterion_transversality,
      criterion_index_flow,        criterion_geometry,
      criterion_tau_star};

  std::vector<CriterionResult> results;
  int id = 0;
  for (const Runner& run : runners) {
    ++id;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r{id, "criterion", false, ""};
    try {
      r = run();
    } catch (const std::exception& ex) {
      r.id = id;
      r.pass = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    log << (r.pass ? "PASS" : "FAIL") << " " << r.id << ": " << r.name;
    if (!r.detail.empty()) log << " [" << r.detail << "]";
    log << " (" << static_cast<int>(secs * 1000) << " ms)\n";
    log.flush();
    results.push_back(std::move(r));
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace nodoid::acceptance
