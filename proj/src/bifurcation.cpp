#include "nodoid/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nodoid/numerics.hpp"

namespace nodoid {

SymmetryClass make_symmetry(int j, double alpha) {
  if (j < 2) throw std::invalid_argument("SymmetryClass: j >= 2");
  if (std::abs(alpha) > M_PI / j + 1e-15)
    throw std::invalid_argument("SymmetryClass: |alpha| <= pi/j");
  return {j, alpha};
}

double mode_phase(const SymmetryClass& sym, int n) {
  return fold_phase(n * sym.j * sym.alpha);
}

std::complex<double> BifurcationPoint::phi(double t) const {
  const double mu = beta / (2.0 * M_PI);
  std::complex<double> u(0.0, 0.0);
  for (int n = -n_modes; n <= n_modes; ++n)
    u += phi_coeffs[n + n_modes] *
         std::exp(std::complex<double>(0.0, (n + mu) * t));
  return u;
}

namespace {

// lambda_k(tau, beta) + s_tau^2 j^2, evaluated at fixed Galerkin size.
double flow_value(double tau, const SymmetryClass& sym, double beta, int k,
                  int n_modes, const BifurcationOptions& opts) {
  const ProfileSolution profile =
      solve_profile(tau, opts.samples_per_period, 1);
  QuasiPeriodicOperator op =
      build_operator(profile, sym.j, beta, 2 * n_modes + 1);
  EigenDecomposition dec = eigensolve_galerkin(op, n_modes, k + 1);
  return dec.eigenvalues[k];
}

BifurcationPoint locate_crossing(const SymmetryClass& sym, int band_index,
                                 double lo, double hi, bool conjectural,
                                 const BifurcationOptions& opts) {
  const double beta = fold_phase(sym.j * sym.alpha);
  auto coarse = [&](double tau) {
    return flow_value(tau, sym, beta, band_index, opts.coarse_modes, opts);
  };
  const double root0 =
      brent_root(coarse, lo, hi, opts.tau_tol, opts.f_tol).root;

  // Polish with the finer discretization on a small interval around the
  // coarse root.
  auto fine = [&](double tau) {
    return flow_value(tau, sym, beta, band_index, opts.polish_modes, opts);
  };
  const double w = std::max(1e-6, 1e3 * opts.tau_tol);
  double a = root0 - w;
  double b = root0 + w;
  double root = root0;
  double fa = fine(a);
  double fb = fine(b);
  if (fa * fb <= 0.0) {
    root = brent_root(fine, a, b, opts.tau_tol, opts.f_tol).root;
  } else {
    a = root0 - 64.0 * w;
    b = root0 + 64.0 * w;
    root = brent_root(fine, a, b, opts.tau_tol, opts.f_tol).root;
  }

  BifurcationPoint point;
  point.symmetry = sym;
  point.tau_star = root;
  point.band_index = band_index;
  point.conjectural = conjectural;
  point.beta = beta;

  const ProfileSolution profile =
      solve_profile(root, opts.samples_per_period, 1);
  QuasiPeriodicOperator op =
      build_operator(profile, sym.j, beta, 2 * opts.polish_modes + 1);
  EigenDecomposition dec =
      eigensolve_galerkin(op, opts.polish_modes, band_index + 1);
  point.n_modes = opts.polish_modes;
  point.phi_coeffs = dec.eigenvectors[band_index];
  // Phase-normalize the crossing eigenfunction: phi(0) real and positive
  // (the coefficients are real, so this is a sign choice).
  double at0 = 0.0;
  for (double c : point.phi_coeffs) at0 += c;
  if (at0 < 0.0)
    for (double& c : point.phi_coeffs) c = -c;

  transversality(point, 1e-4, opts);
  return point;
}

}  // namespace

IndexReport morse_index(double tau, const SymmetryClass& sym) {
  classify(tau);
  IndexReport report;
  report.tau = tau;
  report.symmetry = sym;

  const ProfileSolution profile = solve_profile(tau, 2048, 1);
  const double s2 = profile.s_tau * profile.s_tau;
  const double bound = std::sqrt(tau * tau + 2.0);
  int cutoff = 1;
  while (cutoff * sym.j <= bound) ++cutoff;
  report.n_cutoff = cutoff;

  const int n_coeffs = std::min(513, profile.samples_per_period / 2);
  for (int n = 1; n <= cutoff; ++n) {
    const double beta = mode_phase(sym, n);
    QuasiPeriodicOperator op = build_operator(profile, 0, beta, n_coeffs);
    EigenDecomposition dec = eigensolve_checked(op, 3);
    for (int k = 0; k <= 2; ++k) {
      const double val =
          dec.eigenvalues[k] + s2 * static_cast<double>(n) * n * sym.j * sym.j;
      if (val < 0.0) report.contributions.push_back({n, k, val});
    }
  }
  report.index = static_cast<int>(report.contributions.size());
  return report;
}

BifurcationPoint first_bifurcation(const SymmetryClass& sym,
                                   const BifurcationOptions& opts) {
  const double beta = fold_phase(sym.j * sym.alpha);
  const double mu = beta / (2.0 * M_PI);
  const double seed = -sym.j / std::sqrt(1.0 - mu * mu);
  const double lo = std::min(-static_cast<double>(sym.j) - 1.0, 1.2 * seed);
  const double hi =
      -std::sqrt(std::max(static_cast<double>(sym.j) * sym.j - 2.0, 2.0));

  auto coarse = [&](double tau) {
    return flow_value(tau, sym, beta, 0, opts.coarse_modes, opts);
  };
  double a = lo, b = hi;
  if (coarse(a) * coarse(b) > 0.0) {
    a = 1.5 * lo - 2.0;  // widen once, then give up
    if (coarse(a) * coarse(b) > 0.0)
      throw std::runtime_error(
          "first_bifurcation: no sign change in bracket after widening");
  }
  return locate_crossing(sym, 0, a, b, false, opts);
}

std::optional<BifurcationPoint> second_crossing(
    const SymmetryClass& sym, const BifurcationOptions& opts) {
  const double beta = fold_phase(sym.j * sym.alpha);
  const double mu = beta / (2.0 * M_PI);
  auto f = [&](double tau) {
    return flow_value(tau, sym, beta, 1, opts.coarse_modes, opts);
  };

  // Scan around the large-j seed; with beta = 0 the flow is
  // s^2 (j^2 - 1) > 0 everywhere and the scan comes up empty.
  const double arg = 1.0 - (mu - 1.0) * (mu - 1.0);
  const double seed =
      (arg > 1e-9) ? -sym.j / std::sqrt(arg) : -4.0 * sym.j;
  const double lo = std::min(1.6 * seed, -2.0 * sym.j);
  const double hi = -std::sqrt(std::max(sym.j * sym.j - 2.0, 2.0)) * 0.5;

  const int n_scan = 48;
  double prev_tau = hi;
  double prev_f = f(hi);
  for (int i = 1; i <= n_scan; ++i) {
    const double tau = hi + (lo - hi) * i / n_scan;
    const double fi = f(tau);
    if (prev_f * fi <= 0.0)
      return locate_crossing(sym, 1, tau, prev_tau, true, opts);
    prev_tau = tau;
    prev_f = fi;
  }
  return std::nullopt;
}

double transversality(BifurcationPoint& point, double h,
                      const BifurcationOptions& opts) {
  if (!(h > 0.0)) throw std::invalid_argument("transversality: h > 0");
  const SymmetryClass& sym = point.symmetry;
  const double fm = flow_value(point.tau_star - h, sym, point.beta,
                               point.band_index, opts.polish_modes, opts);
  const double fp = flow_value(point.tau_star + h, sym, point.beta,
                               point.band_index, opts.polish_modes, opts);
  point.slope = (fm - fp) / (2.0 * h);
  return point.slope;
}

double critical_tau_star(int j_max, int alpha_samples,
                         const BifurcationOptions& opts) {
  if (j_max < 2) throw std::invalid_argument("critical_tau_star: j_max >= 2");
  if (alpha_samples < 1)
    throw std::invalid_argument("critical_tau_star: alpha_samples >= 1");
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 2; j <= j_max; ++j) {
    for (int i = 0; i < alpha_samples; ++i) {
      // Uniform samples of [-pi/j, pi/j]; the index is invariant under
      // alpha -> -alpha, so only |alpha| matters.
      const double alpha = (alpha_samples == 1)
                               ? 0.0
                               : -M_PI / j + 2.0 * M_PI / j * i /
                                     (alpha_samples - 1);
      const BifurcationPoint p = first_bifurcation(make_symmetry(j, alpha), opts);
      best = std::max(best, p.tau_star);
    }
  }
  return best;
}

std::vector<FlowRow> spectral_flow_table(const SymmetryClass& sym,
                                         const std::vector<double>& tau_grid,
                                         const BifurcationOptions& opts) {
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    if (tau_grid[i] >= 0.0)
      throw std::invalid_argument("spectral_flow_table: grid must be < 0");
    if (i > 0 && tau_grid[i] >= tau_grid[i - 1])
      throw std::invalid_argument(
          "spectral_flow_table: grid must be strictly decreasing");
  }
  std::vector<FlowRow> rows;
  for (double tau : tau_grid) {
    const ProfileSolution profile =
        solve_profile(tau, opts.samples_per_period, 1);
    const double s2 = profile.s_tau * profile.s_tau;
    const double bound = std::sqrt(tau * tau + 2.0);
    int cutoff = 1;
    while (cutoff * sym.j <= bound) ++cutoff;
    const int n_coeffs = std::min(513, profile.samples_per_period / 2);
    for (int n = 1; n <= cutoff; ++n) {
      QuasiPeriodicOperator op =
          build_operator(profile, 0, mode_phase(sym, n), n_coeffs);
      EigenDecomposition dec = eigensolve_checked(op, 3);
      for (int k = 0; k <= 2; ++k)
        rows.push_back({tau, n, k,
                        dec.eigenvalues[k] +
                            s2 * static_cast<double>(n) * n * sym.j * sym.j});
    }
  }
  return rows;
}

}  // namespace nodoid
