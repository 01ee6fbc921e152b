#ifndef NODOID_SURFACE_HPP
#define NODOID_SURFACE_HPP

#include <array>
#include <functional>
#include <vector>

#include "nodoid/bifurcation.hpp"
#include "nodoid/delaunay.hpp"

namespace nodoid {

// Quad mesh of a parametrized tube. Vertices are stored in parametrization
// order (rows in t, columns in theta, theta wrapped); self-intersections of
// nodoid meshes in ambient space are kept as-is, the parametrized sheet is
// the object of interest.
struct SurfaceMesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<double, 3>> normals;
  std::vector<std::array<int, 4>> faces;
  std::vector<std::array<double, 2>> param_coords;  // (t, theta) per vertex
  int rows = 0;  // samples along t
  int cols = 0;  // samples along theta (closed)
};

/// Uniform (t, theta) grid mesh of the Delaunay surface: res_t samples per
/// period (rows = periods * res_t, t_i = 2 pi i / res_t), res_theta samples
/// around. Requires res_t >= 16 and res_theta >= 16 and periods within the
/// profile's sampled range.
SurfaceMesh mesh_delaunay(const ProfileSolution& profile, int periods,
                          int res_t, int res_theta);

using PointMap = std::function<std::array<double, 3>(double, double)>;

/// Mean curvature of an arbitrary C^2 pointmap by central differences of
/// the first and second fundamental forms:
///   H = (eG - 2fF + gE) / (2 (EG - F^2)).
/// Sign convention: the unit sphere with outward normal has H = +1 (so a
/// cylinder of radius 1/2 has principal curvatures 2 and 0). The normal is
/// the normalized cross product of the tangents, flipped if needed to align
/// with `orientation` (pass the stored surface normal to fix the sign).
/// Throws on a degenerate metric (EG - F^2 < 1e-14).
double mean_curvature_numeric(const PointMap& pointmap, double t, double theta,
                              double h = 1e-4,
                              const std::array<double, 3>* orientation = nullptr);

/// Pointmap of the Delaunay parametrization (for curvature checks).
PointMap delaunay_pointmap(const ProfileSolution& profile);

/// Normal graph of the first-order bifurcated perturbation:
///   X(t, theta) + eta * Re(phi(t) e^{i j theta}) * N(t, theta)
/// over the profile's full sampled range, with phi the stored crossing
/// eigenfunction of `point`. Warns on stderr when |eta| exceeds a tenth of
/// the minimal tube radius. Mesh normals are recomputed from the perturbed
/// map by central differences.
SurfaceMesh mesh_perturbed(const ProfileSolution& profile,
                           const BifurcationPoint& point, double eta,
                           int res_t, int res_theta);

/// The graph height w(t, theta) used by mesh_perturbed.
double perturbation_height(const BifurcationPoint& point, double eta, double t,
                           double theta);

/// Pointmap of the perturbed surface.
PointMap perturbed_pointmap(const ProfileSolution& profile,
                            const BifurcationPoint& point, double eta);

}  // namespace nodoid

#endif
