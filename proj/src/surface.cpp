#include "nodoid/surface.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>

namespace nodoid {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 sub(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

Vec3 add(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

Vec3 scale(const Vec3& a, double c) { return {c * a[0], c * a[1], c * a[2]}; }

double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

void make_grid_faces(SurfaceMesh& mesh) {
  mesh.faces.clear();
  mesh.faces.reserve(static_cast<std::size_t>(mesh.rows - 1) * mesh.cols);
  for (int r = 0; r + 1 < mesh.rows; ++r) {
    for (int c = 0; c < mesh.cols; ++c) {
      const int cn = (c + 1) % mesh.cols;  // closed in theta
      mesh.faces.push_back({r * mesh.cols + c, (r + 1) * mesh.cols + c,
                            (r + 1) * mesh.cols + cn, r * mesh.cols + cn});
    }
  }
}

// FD normal of an arbitrary map, oriented along `orient`.
Vec3 fd_normal(const PointMap& map, double t, double theta, double h,
               const Vec3& orient) {
  const Vec3 xt = scale(sub(map(t + h, theta), map(t - h, theta)), 0.5 / h);
  const Vec3 xq = scale(sub(map(t, theta + h), map(t, theta - h)), 0.5 / h);
  Vec3 n = cross(xt, xq);
  const double len = norm(n);
  if (len < 1e-300) throw std::runtime_error("fd_normal: degenerate tangent");
  n = scale(n, 1.0 / len);
  if (dot(n, orient) < 0.0) n = scale(n, -1.0);
  return n;
}

}  // namespace

SurfaceMesh mesh_delaunay(const ProfileSolution& profile, int periods,
                          int res_t, int res_theta) {
  if (res_t < 16 || res_theta < 16)
    throw std::invalid_argument("mesh_delaunay: resolution must be >= 16");
  if (periods < 1 || periods > profile.periods)
    throw std::invalid_argument(
        "mesh_delaunay: periods outside the profile's sampled range");

  SurfaceMesh mesh;
  mesh.rows = periods * res_t;
  mesh.cols = res_theta;
  const std::size_t nv = static_cast<std::size_t>(mesh.rows) * mesh.cols;
  mesh.vertices.reserve(nv);
  mesh.normals.reserve(nv);
  mesh.param_coords.reserve(nv);

  for (int r = 0; r < mesh.rows; ++r) {
    const double t = 2.0 * M_PI * r / res_t;
    for (int c = 0; c < res_theta; ++c) {
      const double theta = 2.0 * M_PI * c / res_theta;
      const SurfaceFrame f = surface_point(profile, t, theta);
      mesh.vertices.push_back(f.position);
      mesh.normals.push_back(f.normal);
      mesh.param_coords.push_back({t, theta});
    }
  }
  make_grid_faces(mesh);
  return mesh;
}

double mean_curvature_numeric(const PointMap& pointmap, double t, double theta,
                              double h, const Vec3* orientation) {
  if (!(h > 0.0)) throw std::invalid_argument("mean_curvature_numeric: h > 0");
  const Vec3 x00 = pointmap(t, theta);
  const Vec3 xp = pointmap(t + h, theta);
  const Vec3 xm = pointmap(t - h, theta);
  const Vec3 yp = pointmap(t, theta + h);
  const Vec3 ym = pointmap(t, theta - h);
  const Vec3 xpyp = pointmap(t + h, theta + h);
  const Vec3 xpym = pointmap(t + h, theta - h);
  const Vec3 xmyp = pointmap(t - h, theta + h);
  const Vec3 xmym = pointmap(t - h, theta - h);

  const Vec3 xt = scale(sub(xp, xm), 0.5 / h);
  const Vec3 xq = scale(sub(yp, ym), 0.5 / h);
  const Vec3 xtt = scale(add(sub(xp, scale(x00, 2.0)), xm), 1.0 / (h * h));
  const Vec3 xqq = scale(add(sub(yp, scale(x00, 2.0)), ym), 1.0 / (h * h));
  const Vec3 xtq = scale(sub(add(xpyp, xmym), add(xpym, xmyp)),
                         0.25 / (h * h));

  const double E = dot(xt, xt);
  const double F = dot(xt, xq);
  const double G = dot(xq, xq);
  const double denom = E * G - F * F;
  if (denom < 1e-14)
    throw std::runtime_error("mean_curvature_numeric: degenerate metric");

  Vec3 n = cross(xt, xq);
  n = scale(n, 1.0 / norm(n));
  if (orientation && dot(n, *orientation) < 0.0) n = scale(n, -1.0);

  const double e = -dot(n, xtt);
  const double f = -dot(n, xtq);
  const double g = -dot(n, xqq);
  return (e * G - 2.0 * f * F + g * E) / (2.0 * denom);
}

PointMap delaunay_pointmap(const ProfileSolution& profile) {
  return [profile](double t, double theta) {
    return surface_point(profile, t, theta).position;
  };
}

double perturbation_height(const BifurcationPoint& point, double eta, double t,
                           double theta) {
  // The stored eigenfunction carries the folded phase; the sign of the
  // actual screw phase wrap(j * alpha) selects the conjugate branch so that
  // w(t + 2pi, theta) = w(t, theta + alpha) holds with the signed alpha.
  double wrapped = std::fmod(point.symmetry.j * point.symmetry.alpha, 2.0 * M_PI);
  if (wrapped > M_PI) wrapped -= 2.0 * M_PI;
  if (wrapped <= -M_PI) wrapped += 2.0 * M_PI;
  const double sgn = (wrapped < 0.0) ? -1.0 : 1.0;
  const std::complex<double> ph =
      (sgn > 0.0) ? point.phi(t) : std::conj(point.phi(t));
  const std::complex<double> mode =
      std::exp(std::complex<double>(0.0, point.symmetry.j * theta));
  return eta * std::real(ph * mode);
}

PointMap perturbed_pointmap(const ProfileSolution& profile,
                            const BifurcationPoint& point, double eta) {
  return [profile, point, eta](double t, double theta) {
    const SurfaceFrame f = surface_point(profile, t, theta);
    const double w = perturbation_height(point, eta, t, theta);
    return add(f.position, scale(f.normal, w));
  };
}

SurfaceMesh mesh_perturbed(const ProfileSolution& profile,
                           const BifurcationPoint& point, double eta,
                           int res_t, int res_theta) {
  if (res_t < 16 || res_theta < 16)
    throw std::invalid_argument("mesh_perturbed: resolution must be >= 16");
  if (point.phi_coeffs.empty())
    throw std::invalid_argument("mesh_perturbed: point carries no eigenfunction");

  const double min_radius =
      0.5 * std::abs(profile.tau) * std::exp(initial_sigma(profile.tau));
  if (std::abs(eta) > 0.1 * min_radius)
    std::fprintf(stderr,
                 "mesh_perturbed: warning: |eta| = %g exceeds 0.1 * minimal "
                 "radius = %g; the normal graph may fold\n",
                 std::abs(eta), 0.1 * min_radius);

  const PointMap map = perturbed_pointmap(profile, point, eta);

  SurfaceMesh mesh;
  mesh.rows = profile.periods * res_t;
  mesh.cols = res_theta;
  const double h = 1e-5;
  for (int r = 0; r < mesh.rows; ++r) {
    const double t = 2.0 * M_PI * r / res_t;
    // The FD normal stencil stays one step inside the sampled range.
    const double tn =
        std::clamp(t, h, 2.0 * M_PI * profile.periods - h);
    for (int c = 0; c < res_theta; ++c) {
      const double theta = 2.0 * M_PI * c / res_theta;
      const SurfaceFrame base = surface_point(profile, t, theta);
      mesh.vertices.push_back(map(t, theta));
      mesh.normals.push_back(eta == 0.0
                                 ? base.normal
                                 : fd_normal(map, tn, theta, h, base.normal));
      mesh.param_coords.push_back({t, theta});
    }
  }
  make_grid_faces(mesh);
  return mesh;
}

}  // namespace nodoid
