#include "nodoid/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "nodoid/numerics.hpp"

namespace nodoid {

double fold_phase(double alpha) {
  double a = std::fmod(alpha, 2.0 * M_PI);
  if (a > M_PI) a -= 2.0 * M_PI;
  if (a <= -M_PI) a += 2.0 * M_PI;
  return std::abs(a);
}

double QuasiPeriodicOperator::q(double t) const {
  double v = potential_coeffs.empty() ? 0.0 : potential_coeffs[0];
  for (std::size_t m = 1; m < potential_coeffs.size(); ++m)
    v += 2.0 * potential_coeffs[m] * std::cos(m * t);
  return v;
}

QuasiPeriodicOperator build_operator(const ProfileSolution& profile, int j,
                                     double alpha, int n_coeffs) {
  if (j < 0) throw std::invalid_argument("build_operator: j >= 0");
  if (n_coeffs < 16) throw std::invalid_argument("build_operator: n_coeffs >= 16");
  const int N = profile.samples_per_period;
  if (N < 2 * n_coeffs)
    throw std::invalid_argument(
        "build_operator: samples_per_period must be >= 2 * n_coeffs");

  QuasiPeriodicOperator op;
  op.tau = profile.tau;
  op.s_tau = profile.s_tau;
  op.j = j;
  op.alpha = fold_phase(alpha);
  op.offset = profile.s_tau * profile.s_tau * static_cast<double>(j) * j;

  const double s2t2 = profile.s_tau * profile.s_tau * profile.tau * profile.tau;
  std::vector<double> qv(N);
  for (int i = 0; i < N; ++i)
    qv[i] = s2t2 * std::cosh(2.0 * profile.grid[i].sigma);

  op.potential_coeffs.resize(n_coeffs);
  for (int m = 0; m < n_coeffs; ++m) {
    double acc = 0.0;
    const double w = 2.0 * M_PI * m / N;
    for (int i = 0; i < N; ++i) acc += qv[i] * std::cos(w * i);
    op.potential_coeffs[m] = acc / N;
  }

  double tail = 0.0;
  for (int m = std::max(1, n_coeffs - 5); m < n_coeffs; ++m)
    tail = std::max(tail, std::abs(op.potential_coeffs[m]));
  if (tail > 1e-12) {
    std::ostringstream msg;
    msg << "build_operator: insufficient potential coefficient decay, tail = "
        << tail;
    throw std::runtime_error(msg.str());
  }
  return op;
}

namespace {

double qhat(const QuasiPeriodicOperator& op, int m) {
  const std::size_t idx = static_cast<std::size_t>(std::abs(m));
  // Beyond the stored coefficients the validated tail is below 1e-12.
  return idx < op.potential_coeffs.size() ? op.potential_coeffs[idx] : 0.0;
}

Eigen::MatrixXd galerkin_matrix(const QuasiPeriodicOperator& op, int n_modes) {
  const int dim = 2 * n_modes + 1;
  const double mu = op.alpha / (2.0 * M_PI);
  Eigen::MatrixXd A(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const double nr = r - n_modes + mu;
    for (int c = 0; c < dim; ++c) {
      A(r, c) = -qhat(op, r - c);
      if (r == c) A(r, c) += nr * nr + op.offset;
    }
  }
  return A;
}

}  // namespace

std::complex<double> EigenDecomposition::eigenfunction(int k, double t) const {
  const std::vector<double>& c = eigenvectors.at(k);
  const double mu = op.alpha / (2.0 * M_PI);
  std::complex<double> u(0.0, 0.0);
  for (int n = -n_modes; n <= n_modes; ++n)
    u += c[n + n_modes] *
         std::exp(std::complex<double>(0.0, (n + mu) * t));
  return u;
}

EigenDecomposition eigensolve_galerkin(const QuasiPeriodicOperator& op,
                                       int n_modes, int k_max) {
  if (k_max < 1) throw std::invalid_argument("eigensolve_galerkin: k_max >= 1");
  if (n_modes < 2 * k_max + 8)
    throw std::invalid_argument(
        "eigensolve_galerkin: n_modes must be >= 2 * k_max + 8");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      galerkin_matrix(op, n_modes));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolve_galerkin: eigensolver failed");

  EigenDecomposition dec;
  dec.op = op;
  dec.n_modes = n_modes;
  dec.eigenvalues.resize(k_max);
  dec.eigenvectors.resize(k_max);
  const double scale = 1.0 / std::sqrt(2.0 * M_PI);  // unit L^2([-pi,pi])
  for (int k = 0; k < k_max; ++k) {
    dec.eigenvalues[k] = solver.eigenvalues()(k);
    Eigen::VectorXd v = solver.eigenvectors().col(k);
    int imax = 0;
    for (int i = 1; i < v.size(); ++i)
      if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
    if (v(imax) < 0.0) v = -v;
    dec.eigenvectors[k].resize(v.size());
    for (int i = 0; i < v.size(); ++i) dec.eigenvectors[k][i] = scale * v(i);
  }
  return dec;
}

EigenDecomposition eigensolve_checked(const QuasiPeriodicOperator& op,
                                      int k_max, double tol, int start,
                                      int cap) {
  int n = std::max(start, 2 * k_max + 8);
  if (cap < 2 * n)
    throw std::invalid_argument(
        "eigensolve_checked: cap leaves no room to verify convergence "
        "(profile sampled too coarsely for this spectral resolution?)");
  EigenDecomposition coarse = eigensolve_galerkin(op, n, k_max);
  while (2 * n <= cap) {
    EigenDecomposition fine = eigensolve_galerkin(op, 2 * n, k_max);
    double shift = 0.0;
    for (int k = 0; k < k_max; ++k)
      shift = std::max(shift,
                       std::abs(fine.eigenvalues[k] - coarse.eigenvalues[k]));
    if (shift < tol) return fine;
    n *= 2;
    coarse = std::move(fine);
  }
  std::ostringstream msg;
  msg << "eigensolve_checked: eigenvalues not converged to " << tol
      << " at n_modes = " << n;
  throw std::runtime_error(msg.str());
}

namespace {

// The potential is lambda-independent, so it is tabulated once on the RK4
// stage grid (half steps) and reused across all discriminant evaluations.
struct MonodromyGrid {
  int steps;
  std::vector<double> q_half;  // q at t_i = i * h / 2, i = 0..2*steps
};

MonodromyGrid make_monodromy_grid(const QuasiPeriodicOperator& op, int steps) {
  MonodromyGrid grid;
  grid.steps = steps;
  grid.q_half.resize(2 * steps + 1);
  // Trim the stored coefficient tail to the machine floor first.
  int m_top = static_cast<int>(op.potential_coeffs.size());
  while (m_top > 1 && std::abs(op.potential_coeffs[m_top - 1]) < 1e-15)
    --m_top;
  const double h2 = M_PI / steps;
  for (int i = 0; i <= 2 * steps; ++i) {
    const double t = h2 * i;
    double v = op.potential_coeffs.empty() ? 0.0 : op.potential_coeffs[0];
    for (int m = 1; m < m_top; ++m)
      v += 2.0 * op.potential_coeffs[m] * std::cos(m * t);
    grid.q_half[i] = v;
  }
  return grid;
}

// Transfer matrix of -u'' - q u = nu u over [0, 2pi], optionally with the
// nu-derivative (variational) system integrated alongside.
struct Monodromy {
  double m11, m22;
  double d11, d22;
};

// One RK4 step of the joint system for both fundamental solutions and
// their nu-derivatives: y = (u, u', v, v', a, a', b, b') with
// u'' = -w u and a'' = -w a - u (same for v, b).
template <bool WithDerivative>
void joint_rhs(const double* y, double w, double* dy) {
  dy[0] = y[1];
  dy[1] = -w * y[0];
  dy[2] = y[3];
  dy[3] = -w * y[2];
  if constexpr (WithDerivative) {
    dy[4] = y[5];
    dy[5] = -w * y[4] - y[0];
    dy[6] = y[7];
    dy[7] = -w * y[6] - y[2];
  }
}

template <bool WithDerivative>
Monodromy integrate_monodromy(const MonodromyGrid& grid, double nu) {
  constexpr int kDim = WithDerivative ? 8 : 4;
  const int steps = grid.steps;
  const double h = 2.0 * M_PI / steps;
  double y[8] = {1, 0, 0, 1, 0, 0, 0, 0};
  double k1[8], k2[8], k3[8], k4[8], u[8];
  for (int i = 0; i < steps; ++i) {
    const double wA = grid.q_half[2 * i] + nu;
    const double wB = grid.q_half[2 * i + 1] + nu;
    const double wC = grid.q_half[2 * i + 2] + nu;
    joint_rhs<WithDerivative>(y, wA, k1);
    for (int d = 0; d < kDim; ++d) u[d] = y[d] + 0.5 * h * k1[d];
    joint_rhs<WithDerivative>(u, wB, k2);
    for (int d = 0; d < kDim; ++d) u[d] = y[d] + 0.5 * h * k2[d];
    joint_rhs<WithDerivative>(u, wB, k3);
    for (int d = 0; d < kDim; ++d) u[d] = y[d] + h * k3[d];
    joint_rhs<WithDerivative>(u, wC, k4);
    for (int d = 0; d < kDim; ++d)
      y[d] += h / 6.0 * (k1[d] + 2.0 * (k2[d] + k3[d]) + k4[d]);
  }
  return {y[0], y[3], y[4], y[7]};
}

}  // namespace

double monodromy_trace(const QuasiPeriodicOperator& op, double lambda,
                       int steps) {
  const MonodromyGrid grid = make_monodromy_grid(op, steps);
  const Monodromy m = integrate_monodromy<false>(grid, lambda - op.offset);
  return m.m11 + m.m22;
}

std::pair<double, double> monodromy_trace_d(const QuasiPeriodicOperator& op,
                                            double lambda, int steps) {
  const MonodromyGrid grid = make_monodromy_grid(op, steps);
  const Monodromy m = integrate_monodromy<true>(grid, lambda - op.offset);
  return {m.m11 + m.m22, m.d11 + m.d22};
}

std::vector<double> eigensolve_monodromy(const QuasiPeriodicOperator& op,
                                         double lo, double hi, double x_tol,
                                         int steps) {
  if (!(lo < hi))
    throw std::invalid_argument("eigensolve_monodromy: need lo < hi");
  const double target = 2.0 * std::cos(op.alpha);
  const MonodromyGrid grid = make_monodromy_grid(op, steps);
  auto disc = [&](double lam) {
    const Monodromy m = integrate_monodromy<false>(grid, lam - op.offset);
    return m.m11 + m.m22 - target;
  };
  auto disc_d = [&](double lam) {
    const Monodromy m = integrate_monodromy<true>(grid, lam - op.offset);
    return m.d11 + m.d22;
  };

  // Galerkin seeds covering the bracket.
  std::vector<double> seeds;
  for (int k_max = 8; k_max <= 64; k_max *= 2) {
    EigenDecomposition dec = eigensolve_checked(op, k_max);
    seeds = dec.eigenvalues;
    if (seeds.back() > hi) break;
  }
  std::vector<double> inside;
  for (double s : seeds)
    if (s >= lo - 1e-9 && s <= hi + 1e-9) inside.push_back(s);
  if (inside.empty())
    throw std::runtime_error(
        "eigensolve_monodromy: no sign change in bracket (no Galerkin "
        "eigenvalue inside)");

  // Cluster seeds; exact degeneracies (touching band edges at alpha = 0 or
  // pi) arrive as numerically equal pairs.
  std::vector<std::pair<double, int>> clusters;  // (center, multiplicity)
  for (double s : inside) {
    if (!clusters.empty() && std::abs(s - clusters.back().first) < 1e-6) {
      clusters.back().first =
          (clusters.back().first * clusters.back().second + s) /
          (clusters.back().second + 1);
      clusters.back().second += 1;
    } else {
      clusters.push_back({s, 1});
    }
  }

  std::vector<double> roots;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const double c = clusters[i].first;
    double gap = 1e-3;
    if (i > 0) gap = std::min(gap, 0.25 * (c - clusters[i - 1].first));
    if (i + 1 < clusters.size())
      gap = std::min(gap, 0.25 * (clusters[i + 1].first - c));
    const double delta = std::max(gap, 1e-7);

    bool done = false;
    if (clusters[i].second == 1) {
      const double fa = disc(c - delta);
      const double fb = disc(c + delta);
      if (fa == 0.0) {
        roots.push_back(c - delta);
        done = true;
      } else if (fb == 0.0) {
        roots.push_back(c + delta);
        done = true;
      } else if (fa * fb < 0.0) {
        roots.push_back(
            brent_root(disc, c - delta, c + delta, x_tol, 1e-12).root);
        done = true;
      }
    }
    if (!done) {
      // Tangential root: locate the critical point of the trace and check
      // that the discriminant actually touches zero there.
      double a = c - delta, b = c + delta;
      double da = disc_d(a), db = disc_d(b);
      if (da * db > 0.0) {
        a = c - 4.0 * delta;
        b = c + 4.0 * delta;
        da = disc_d(a);
        db = disc_d(b);
      }
      if (da * db > 0.0)
        throw std::runtime_error(
            "eigensolve_monodromy: no sign change in bracket near seed");
      const double crit = brent_root(disc_d, a, b, x_tol, 0.0).root;
      if (std::abs(disc(crit)) > 1e-6)
        throw std::runtime_error(
            "eigensolve_monodromy: discriminant does not reach the "
            "quasiperiodic level at the critical point");
      for (int r = 0; r < std::max(2, clusters[i].second); ++r)
        roots.push_back(crit);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> monodromy_eigenvalues(const QuasiPeriodicOperator& op,
                                          int count, int steps) {
  EigenDecomposition dec = eigensolve_checked(op, count + 2);
  const double lo = dec.eigenvalues.front() - 0.05;
  const double last = dec.eigenvalues[count - 1];
  const double next = dec.eigenvalues[count];
  const double hi =
      last + std::max(1e-5, 0.25 * std::max(next - last, 0.0));
  std::vector<double> all = eigensolve_monodromy(op, lo, hi, 1e-10, steps);
  if (static_cast<int>(all.size()) < count)
    throw std::runtime_error(
        "monodromy_eigenvalues: fewer roots found than requested");
  all.resize(count);
  return all;
}

double band_function(const ProfileSolution& profile, int k, double alpha) {
  if (k < 0) throw std::invalid_argument("band_function: k >= 0");
  const int n_coeffs =
      std::min(513, profile.samples_per_period / 2);
  QuasiPeriodicOperator op = build_operator(profile, 0, alpha, n_coeffs);
  const int cap = std::min(256, (n_coeffs - 1) / 2);
  EigenDecomposition dec = eigensolve_checked(op, k + 1, 1e-9, 64, cap);
  return dec.eigenvalues[k];
}

BandTable band_table(const ProfileSolution& profile, int k_max,
                     std::vector<double> alpha_grid) {
  if (k_max < 3) throw std::invalid_argument("band_table: k_max >= 3");
  for (double& a : alpha_grid) a = fold_phase(a);
  std::sort(alpha_grid.begin(), alpha_grid.end());
  alpha_grid.erase(std::unique(alpha_grid.begin(), alpha_grid.end()),
                   alpha_grid.end());
  if (alpha_grid.empty() || alpha_grid.front() != 0.0 ||
      std::abs(alpha_grid.back() - M_PI) > 1e-15)
    throw std::invalid_argument("band_table: alpha grid must contain 0 and pi");

  BandTable table;
  table.tau = profile.tau;
  table.alpha_grid = alpha_grid;
  table.lambda.assign(k_max + 1, std::vector<double>(alpha_grid.size()));

  const int n_coeffs = std::min(513, profile.samples_per_period / 2);
  const int cap = std::min(256, (n_coeffs - 1) / 2);
  for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
    QuasiPeriodicOperator op =
        build_operator(profile, 0, alpha_grid[i], n_coeffs);
    EigenDecomposition dec = eigensolve_checked(op, k_max + 1, 1e-9, 64, cap);
    for (int k = 0; k <= k_max; ++k) table.lambda[k][i] = dec.eigenvalues[k];
  }

  const std::size_t i0 = 0;
  const std::size_t ipi = alpha_grid.size() - 1;
  table.bands.resize(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    if (k % 2 == 0)
      table.bands[k] = {table.lambda[k][i0], table.lambda[k][ipi]};
    else
      table.bands[k] = {table.lambda[k][ipi], table.lambda[k][i0]};
  }

  // Interlacing chain is a theorem; a violation means the discretization is
  // broken, not the spectrum.
  const double slack = 1e-9;
  for (int k = 0; k <= k_max; ++k) {
    const bool even = (k % 2 == 0);
    const double at0 = table.lambda[k][i0];
    const double atpi = table.lambda[k][ipi];
    if (even && atpi < at0 - slack)
      throw std::runtime_error("band_table: interlacing violated "
                               "(discretization failure)");
    if (!even && at0 < atpi - slack)
      throw std::runtime_error("band_table: interlacing violated "
                               "(discretization failure)");
    if (k + 1 <= k_max) {
      const double edge = even ? atpi : at0;
      const double next = even ? table.lambda[k + 1][ipi]
                               : table.lambda[k + 1][i0];
      if (next < edge - slack)
        throw std::runtime_error("band_table: interlacing violated "
                                 "(discretization failure)");
    }
  }
  return table;
}

double jacobi_field_residual(const ProfileSolution& profile, JacobiField field,
                             int n_modes) {
  const int N = profile.samples_per_period;
  const int j = (field == JacobiField::Axial) ? 0 : 1;
  const int n_coeffs = std::min(513, N / 2);
  QuasiPeriodicOperator op = build_operator(profile, j, 0.0, n_coeffs);

  std::vector<double> fv(N);
  for (int i = 0; i < N; ++i) {
    const ProfileSample& g = profile.grid[i];
    if (field == JacobiField::Axial)
      fv[i] = g.dsigma;
    else
      fv[i] = (profile.tau > 0.0) ? std::cosh(g.sigma) : std::sinh(g.sigma);
  }

  const int dim = 2 * n_modes + 1;
  Eigen::VectorXcd c(dim);
  for (int n = -n_modes; n <= n_modes; ++n) {
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i < N; ++i) {
      const double t = 2.0 * M_PI * i / N;
      acc += fv[i] * std::exp(std::complex<double>(0.0, -n * t));
    }
    c(n + n_modes) = acc / static_cast<double>(N);
  }

  const Eigen::MatrixXd A = galerkin_matrix(op, n_modes);
  const Eigen::VectorXcd r = A * c;

  double sup = 0.0;
  const int n_eval = 1024;
  for (int i = 0; i < n_eval; ++i) {
    const double t = 2.0 * M_PI * i / n_eval;
    std::complex<double> v(0.0, 0.0);
    for (int n = -n_modes; n <= n_modes; ++n)
      v += r(n + n_modes) * std::exp(std::complex<double>(0.0, n * t));
    sup = std::max(sup, std::abs(v));
  }
  return sup;
}

double limit_band(int k, double alpha) {
  if (k < 0) throw std::invalid_argument("limit_band: k >= 0");
  const double mu = fold_phase(alpha) / (2.0 * M_PI);
  if (k % 2 == 0) {
    const double m = k / 2;
    return (m + mu) * (m + mu) - 1.0;
  }
  const double m = (k + 1) / 2;
  return (m - mu) * (m - mu) - 1.0;
}

int axial_zero_position(const ProfileSolution& profile) {
  if (profile.tau <= 0.0)
    throw std::domain_error("axial_zero_position: defined for tau > 0");
  const double l1 = band_function(profile, 1, 0.0);
  const double l2 = band_function(profile, 2, 0.0);
  return (std::abs(l1) <= std::abs(l2)) ? 1 : 2;
}

}  // namespace nodoid
