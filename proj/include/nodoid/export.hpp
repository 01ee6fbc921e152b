#ifndef NODOID_EXPORT_HPP
#define NODOID_EXPORT_HPP

#include <string>
#include <vector>

#include "nodoid/bifurcation.hpp"
#include "nodoid/delaunay.hpp"
#include "nodoid/spectral.hpp"
#include "nodoid/surface.hpp"

namespace nodoid {

enum class MeshFormat { OBJ, PLY, CSV };

/// OBJ: text v/vn/f records, 1-based indices, quad faces.
/// PLY: binary little-endian, float vertex properties x,y,z,nx,ny,nz.
/// CSV: one vertex per row, columns x,y,z,nx,ny,nz,t,theta.
/// I/O failures are reported with the offending path.
void export_mesh(const SurfaceMesh& mesh, MeshFormat format,
                 const std::string& path);

/// Picks the format from the file extension (.obj/.ply/.csv).
MeshFormat mesh_format_from_path(const std::string& path);

void write_profile_csv(const ProfileSolution& profile, const std::string& path);
void write_profile_json(const ProfileSolution& profile, const std::string& path,
                        double ode_tol);

void write_band_csv(const BandTable& table, const std::string& path);
void write_band_json(const BandTable& table, const std::string& path);

void write_flow_csv(const std::vector<FlowRow>& rows, const std::string& path);
void write_flow_json(const std::vector<FlowRow>& rows, const std::string& path);

void write_bifurcation_csv(const std::vector<BifurcationPoint>& points,
                           const std::string& path);
/// Full record including the stored crossing eigenfunction coefficients.
void write_bifurcation_json(const BifurcationPoint& point,
                            const std::string& path);

/// Debug dump of the potential's Fourier coefficients.
void write_potential_csv(const QuasiPeriodicOperator& op,
                         const std::string& path);

}  // namespace nodoid

#endif
