#ifndef NODOID_BIFURCATION_HPP
#define NODOID_BIFURCATION_HPP

#include <complex>
#include <optional>
#include <vector>

#include "nodoid/spectral.hpp"

namespace nodoid {

// Symmetry class of a screw-motion-invariant perturbation: j-fold rotation
// (j >= 2) combined with a screw of angle alpha in [-pi/j, pi/j]. The n-th
// axial Fourier mode of a symmetric function is quasiperiodic with phase
// fold_phase(n * j * alpha).
struct SymmetryClass {
  int j = 2;
  double alpha = 0.0;
};

SymmetryClass make_symmetry(int j, double alpha);

/// Folded quasiperiodicity phase beta_n of the n-th axial mode.
double mode_phase(const SymmetryClass& sym, int n);

struct IndexContribution {
  int n;
  int k;
  double eigenvalue;  // lambda_k(tau, beta_n) + s_tau^2 n^2 j^2 < 0
};

// Morse index on the symmetric subspace. The axial mode n = 0 is excluded:
// the symmetric subspace decomposes over n in Z \ {0}, and the reflection
// symmetry pairs n with -n, so each pair is counted once through its
// representative n >= 1 (recorded in `n0_excluded`).
struct IndexReport {
  double tau = 0.0;
  SymmetryClass symmetry;
  int index = 0;
  std::vector<IndexContribution> contributions;
  int n_cutoff = 0;  // smallest n with n * j > sqrt(tau^2 + 2)
  bool n0_excluded = true;
};

/// Counts negative eigenvalues lambda_k(tau, beta_n) + s_tau^2 n^2 j^2 over
/// n >= 1, k in {0, 1, 2}. Beyond n_cutoff no contribution is possible
/// since lambda_0 >= -(tau^2 + 2) s_tau^2. Bands k >= 1 cannot contribute
/// for tau < 0 (only B_0 and B_1 reach the negative axis and B_1 tops at
/// -s_tau^2 < s_tau^2 n^2 j^2); k up to 2 is scanned anyway.
IndexReport morse_index(double tau, const SymmetryClass& sym);

struct BifurcationPoint {
  SymmetryClass symmetry;
  double tau_star = 0.0;
  int band_index = 0;   // k of the crossing eigenvalue
  double slope = 0.0;   // d/d(-tau) of the crossing eigenvalue at tau_star;
                        // negative at a transversal crossing
  bool conjectural = false;  // true for the second-band crossing
  double beta = 0.0;         // folded phase fold_phase(j * alpha)
  int n_modes = 0;
  std::vector<double> phi_coeffs;  // crossing eigenfunction coefficients

  /// Crossing eigenfunction phi(t) = sum c_n e^{i (n + beta/2pi) t},
  /// unit L^2 norm, phi(0) real.
  std::complex<double> phi(double t) const;
};

struct BifurcationOptions {
  double tau_tol = 1e-10;
  double f_tol = 1e-12;
  int coarse_modes = 64;   // Galerkin size while bracketing
  int polish_modes = 128;  // final refinement
  int samples_per_period = 2048;
};

/// First bifurcation value tau_{j,alpha}: the Brent root of
/// F(tau) = lambda_0(tau, fold(j alpha)) + s_tau^2 j^2 in the bracket
/// [-j - 1, -sqrt(max(j^2 - 2, 2))], widened once if needed. The flow is
/// evaluated at coarse_modes during bracketing and polished at polish_modes.
/// Stores the crossing eigenfunction and the transversality slope.
BifurcationPoint first_bifurcation(const SymmetryClass& sym,
                                   const BifurcationOptions& opts = {});

/// Conjectural second crossing: root of lambda_1(tau, fold(j alpha)) +
/// s_tau^2 j^2, located by scanning around the large-j seed
/// -j / sqrt(1 - (beta/2pi - 1)^2). Empty when no bracket is found (for
/// beta = 0 the flow equals s_tau^2 (j^2 - 1) > 0, so no root exists).
std::optional<BifurcationPoint> second_crossing(
    const SymmetryClass& sym, const BifurcationOptions& opts = {});

/// Central finite-difference slope of the crossing eigenvalue along
/// decreasing tau, (F(tau - h) - F(tau + h)) / (2h); recorded into the
/// point and returned. Negative at a transversal crossing; the large-j
/// leading term is -2 j^2 / |tau|^3.
double transversality(BifurcationPoint& point, double h = 1e-4,
                      const BifurcationOptions& opts = {});

/// max over j in [2, j_max] and alpha sampled in [-pi/j, pi/j] of
/// tau_{j,alpha}: the first instability as tau decreases from 0.
double critical_tau_star(int j_max, int alpha_samples = 9,
                         const BifurcationOptions& opts = {});

struct FlowRow {
  double tau;
  int n;
  int k;
  double value;  // lambda_k(tau, beta_n) + s_tau^2 n^2 j^2
};

/// Spectral flow samples along a strictly decreasing negative tau grid.
std::vector<FlowRow> spectral_flow_table(const SymmetryClass& sym,
                                         const std::vector<double>& tau_grid,
                                         const BifurcationOptions& opts = {});

}  // namespace nodoid

#endif
