#ifndef NODOID_NUMERICS_HPP
#define NODOID_NUMERICS_HPP

#include <array>
#include <cstddef>
#include <functional>

namespace nodoid {

/// Complete elliptic integral of the first kind K(k), evaluated from the
/// complementary modulus k' = sqrt(1 - k^2) by the arithmetic-geometric mean.
/// Taking k' directly avoids the 1 - k^2 cancellation when k is close to 1.
double elliptic_K_complement(double kprime);

struct QuadratureResult {
  double value;
  double error;      // accumulated local error estimate
  int evaluations;
};

/// Adaptive Gauss-Kronrod (G7, K15) quadrature on [a, b] to absolute
/// tolerance abs_tol. Throws std::runtime_error if the recursion depth is
/// exhausted before the tolerance is met; the message carries the achieved
/// error estimate.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    int max_depth = 60);

struct RootResult {
  double root;
  double f_root;
  int iterations;
};

/// Brent's method on a bracketing interval [a, b] with f(a) * f(b) <= 0.
/// Stops when the bracket width falls below x_tol or |f| below f_tol.
RootResult brent_root(const std::function<double(double)>& f, double a,
                      double b, double x_tol, double f_tol = 0.0,
                      int max_iter = 200);

/// Quintic Hermite interpolation on [x0, x1] from endpoint values, slopes
/// and second derivatives. C^2 across a grid when the endpoint data agree.
double quintic_value(double x0, double x1, double y0, double y1, double d0,
                     double d1, double a0, double a1, double x);

/// One classical fourth-order Runge-Kutta step of y' = f(t, y).
template <std::size_t N, typename F>
std::array<double, N> rk4_step(const F& f, double t,
                               const std::array<double, N>& y, double h) {
  std::array<double, N> k1 = f(t, y);
  std::array<double, N> u;
  for (std::size_t i = 0; i < N; ++i) u[i] = y[i] + 0.5 * h * k1[i];
  std::array<double, N> k2 = f(t + 0.5 * h, u);
  for (std::size_t i = 0; i < N; ++i) u[i] = y[i] + 0.5 * h * k2[i];
  std::array<double, N> k3 = f(t + 0.5 * h, u);
  for (std::size_t i = 0; i < N; ++i) u[i] = y[i] + h * k3[i];
  std::array<double, N> k4 = f(t + h, u);
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i)
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
  return out;
}

}  // namespace nodoid

#endif
