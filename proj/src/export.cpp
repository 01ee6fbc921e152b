#include "nodoid/export.hpp"

#include <cstdint>
#include <fstream>
#include <json.hpp>
#include <stdexcept>

namespace nodoid {

namespace {

std::ofstream open_or_throw(const std::string& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

void finish_or_throw(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

constexpr int kDigits = 15;

void write_obj(const SurfaceMesh& mesh, const std::string& path) {
  std::ofstream out = open_or_throw(path);
  out.precision(kDigits);
  for (const auto& v : mesh.vertices)
    out << "v " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  for (const auto& n : mesh.normals)
    out << "vn " << n[0] << ' ' << n[1] << ' ' << n[2] << '\n';
  for (const auto& f : mesh.faces) {
    out << 'f';
    for (int idx : f) out << ' ' << idx + 1 << "//" << idx + 1;
    out << '\n';
  }
  finish_or_throw(out, path);
}

void write_ply(const SurfaceMesh& mesh, const std::string& path) {
  std::ofstream out = open_or_throw(path, true);
  out << "ply\nformat binary_little_endian 1.0\n"
      << "element vertex " << mesh.vertices.size() << '\n'
      << "property float x\nproperty float y\nproperty float z\n"
      << "property float nx\nproperty float ny\nproperty float nz\n"
      << "element face " << mesh.faces.size() << '\n'
      << "property list uchar int vertex_indices\nend_header\n";
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    float rec[6];
    for (int k = 0; k < 3; ++k) {
      rec[k] = static_cast<float>(mesh.vertices[i][k]);
      rec[3 + k] = static_cast<float>(mesh.normals[i][k]);
    }
    out.write(reinterpret_cast<const char*>(rec), sizeof(rec));
  }
  for (const auto& f : mesh.faces) {
    const std::uint8_t n = 4;
    std::int32_t idx[4] = {f[0], f[1], f[2], f[3]};
    out.write(reinterpret_cast<const char*>(&n), 1);
    out.write(reinterpret_cast<const char*>(idx), sizeof(idx));
  }
  finish_or_throw(out, path);
}

void write_mesh_csv(const SurfaceMesh& mesh, const std::string& path) {
  std::ofstream out = open_or_throw(path);
  out.precision(kDigits);
  out << "x,y,z,nx,ny,nz,t,theta\n";
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const auto& v = mesh.vertices[i];
    const auto& n = mesh.normals[i];
    const auto& p = mesh.param_coords[i];
    out << v[0] << ',' << v[1] << ',' << v[2] << ',' << n[0] << ',' << n[1]
        << ',' << n[2] << ',' << p[0] << ',' << p[1] << '\n';
  }
  finish_or_throw(out, path);
}

}  // namespace

void export_mesh(const SurfaceMesh& mesh, MeshFormat format,
                 const std::string& path) {
  switch (format) {
    case MeshFormat::OBJ: write_obj(mesh, path); return;
    case MeshFormat::PLY: write_ply(mesh, path); return;
    case MeshFormat::CSV: write_mesh_csv(mesh, path); return;
  }
  throw std::invalid_argument("export_mesh: unknown format");
}

MeshFormat mesh_format_from_path(const std::string& path) {
  const auto pos = path.find_last_of('.');
  const std::string ext = (pos == std::string::npos) ? "" : path.substr(pos);
  if (ext == ".obj") return MeshFormat::OBJ;
  if (ext == ".ply") return MeshFormat::PLY;
  if (ext == ".csv") return MeshFormat::CSV;
  throw std::invalid_argument("unrecognized mesh extension: " + path);
}

void write_profile_csv(const ProfileSolution& profile,
                       const std::string& path) {
  std::ofstream out = open_or_throw(path);
  out.precision(kDigits);
  out << "s,t,sigma,dsigma,kappa\n";
  for (const ProfileSample& g : profile.grid)
    out << g.s << ',' << g.s / profile.s_tau << ',' << g.sigma << ','
        << g.dsigma << ',' << g.kappa << '\n';
  finish_or_throw(out, path);
}

void write_profile_json(const ProfileSolution& profile,
                        const std::string& path, double ode_tol) {
  nlohmann::json j;
  j["tau"] = profile.tau;
  j["s_tau"] = profile.s_tau;
  j["samples_per_period"] = profile.samples_per_period;
  j["periods"] = profile.periods;
  j["tolerances"]["ode"] = ode_tol;
  j["tolerances"]["achieved_ode_error"] = profile.ode_error;
  j["tolerances"]["energy_error"] = profile.energy_error;
  std::ofstream out = open_or_throw(path);
  out << j.dump(2) << '\n';
  finish_or_throw(out, path);
}

void write_band_csv(const BandTable& table, const std::string& path) {
  std::ofstream out = open_or_throw(path);
  out.precision(kDigits);
  out << "tau,k,alpha,lambda\n";
  for (std::size_t k = 0; k < table.lambda.size(); ++k)
    for (std::size_t i = 0; i < table.alpha_grid.size(); ++i)
      out << table.tau << ',' << k << ',' << table.alpha_grid[i] << ','
          << table.lambda[k][i] << '\n';
  finish_or_throw(out, path);
}

void write_band_json(const BandTable& table, const std::string& path) {
  nlohmann::json j;
  j["tau"] = table.tau;
  j["alpha_grid"] = table.alpha_grid;
  for (const auto& b : table.bands) j["bands"].push_back({b[0], b[1]});
  j["lambda"] = table.lambda;
  std::ofstream out = open_or_throw(path);
  out << j.dump(2) << '\n';
  finish_or_throw(out, path);
}

void write_flow_csv(const std::vector<FlowRow>& rows,
                    const std::string& path) {
  std::ofstream out = open_or_throw(path);
  out.precision(kDigits);
  out << "tau,n,k,value\n";
  for (const FlowRow& r : rows)
    out << r.tau << ',' << r.n << ',' << r.k << ',' << r.value << '\n';
  finish_or_throw(out, path);
}

void write_flow_json(const std::vector<FlowRow>& rows,
                     const std::string& path) {
  nlohmann::json j = nlohmann::json::array();
  for (const FlowRow& r : rows)
    j.push_back({{"tau", r.tau}, {"n", r.n}, {"k", r.k}, {"value", r.value}});
  std::ofstream out = open_or_throw(path);
  out << j.dump(2) << '\n';
  finish_or_throw(out, path);
}

void write_bifurcation_csv(const std::vector<BifurcationPoint>& points,
                           const std::string& path) {
  std::ofstream out = open_or_throw(path);
  out.precision(kDigits);
  out << "j,alpha,tau,band_index,slope,conjectural\n";
  for (const BifurcationPoint& p : points)
    out << p.symmetry.j << ',' << p.symmetry.alpha << ',' << p.tau_star << ','
        << p.band_index << ',' << p.slope << ','
        << (p.conjectural ? 1 : 0) << '\n';
  finish_or_throw(out, path);
}

void write_bifurcation_json(const BifurcationPoint& point,
                            const std::string& path) {
  nlohmann::json j;
  j["j"] = point.symmetry.j;
  j["alpha"] = point.symmetry.alpha;
  j["beta"] = point.beta;
  j["tau"] = point.tau_star;
  j["band_index"] = point.band_index;
  j["slope"] = point.slope;
  j["conjectural"] = point.conjectural;
  j["n_modes"] = point.n_modes;
  j["phi_coeffs"] = point.phi_coeffs;
  std::ofstream out = open_or_throw(path);
  out << j.dump(2) << '\n';
  finish_or_throw(out, path);
}

void write_potential_csv(const QuasiPeriodicOperator& op,
                         const std::string& path) {
  std::ofstream out = open_or_throw(path);
  out.precision(kDigits);
  out << "m,qhat\n";
  for (std::size_t m = 0; m < op.potential_coeffs.size(); ++m)
    out << m << ',' << op.potential_coeffs[m] << '\n';
  finish_or_throw(out, path);
}

}  // namespace nodoid
