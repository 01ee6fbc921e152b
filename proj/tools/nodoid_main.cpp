// Command-line front end for the Delaunay surface laboratory: profiles and
// periods, Bloch band tables, spectral flow, Morse indices, bifurcation
// values, mesh export and the verification suite. All output is
// deterministic; numeric values are printed with 15 significant digits.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "nodoid/acceptance.hpp"
#include "nodoid/bifurcation.hpp"
#include "nodoid/delaunay.hpp"
#include "nodoid/export.hpp"
#include "nodoid/spectral.hpp"
#include "nodoid/surface.hpp"

namespace {

struct RunConfig {
  double ode_tol = 1e-12;
  double quad_tol = 1e-13;   // relative, period quadrature
  double eigen_tol = 1e-9;
  double root_tol = 1e-10;
  int samples_per_period = 2048;
  int alpha_samples = 9;       // tau_* search resolution per j
  const bool seedless = true;  // everything is deterministic; not an option
  std::string out_dir = ".";
};

void validate(const RunConfig& cfg) {
  if (!(cfg.ode_tol > 0) || !(cfg.quad_tol > 0) || !(cfg.eigen_tol > 0) ||
      !(cfg.root_tol > 0))
    throw std::invalid_argument("config: tolerances must be positive");
  if (cfg.samples_per_period < 16)
    throw std::invalid_argument("config: samples_per_period >= 16");
}

// Optional key = value config file; unknown keys are rejected.
void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key, eq, value;
    if (!(ls >> key)) continue;
    if (!(ls >> eq >> value) || eq != "=")
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    if (key == "ode_tol") cfg.ode_tol = std::stod(value);
    else if (key == "quad_tol") cfg.quad_tol = std::stod(value);
    else if (key == "eigen_tol") cfg.eigen_tol = std::stod(value);
    else if (key == "root_tol") cfg.root_tol = std::stod(value);
    else if (key == "samples_per_period") cfg.samples_per_period = std::stoi(value);
    else if (key == "alpha_samples") cfg.alpha_samples = std::stoi(value);
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "seedless") {
      if (value != "true")
        throw std::invalid_argument("config: seedless is fixed to true");
    } else
      throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return dir.back() == '/' ? dir + name : dir + "/" + name;
}

std::ostream& num(std::ostream& os) {
  os.precision(15);
  return os;
}

int cmd_profile(const RunConfig& cfg, double tau, int samples, int periods) {
  const nodoid::ProfileSolution p =
      nodoid::solve_profile(tau, samples, periods, cfg.ode_tol);
  const std::string csv = join_path(cfg.out_dir, "profile.csv");
  const std::string json = join_path(cfg.out_dir, "profile.json");
  nodoid::write_profile_csv(p, csv);
  nodoid::write_profile_json(p, json, cfg.ode_tol);
  num(std::cout) << "tau = " << tau << "\ns_tau = " << p.s_tau
                 << "\nperiod = " << p.period()
                 << "\nenergy_error = " << p.energy_error
                 << "\node_error_estimate = " << p.ode_error << "\nwrote "
                 << csv << " and " << json << "\n";
  return 0;
}

int cmd_period(double tau) {
  const auto q = nodoid::compute_period(tau, nodoid::PeriodMethod::Quadrature);
  const auto e = nodoid::compute_period(tau, nodoid::PeriodMethod::Elliptic);
  num(std::cout) << "s_tau (quadrature) = " << q.s_tau
                 << "\ns_tau (elliptic)   = " << e.s_tau
                 << "\ndifference         = " << q.s_tau - e.s_tau << "\n";
  return 0;
}

int cmd_bands(const RunConfig& cfg, double tau, int kmax, int alphas,
              const std::string& potential_out) {
  const nodoid::ProfileSolution p =
      nodoid::solve_profile(tau, cfg.samples_per_period, 1, cfg.ode_tol);
  std::vector<double> grid(alphas);
  for (int i = 0; i < alphas; ++i)
    grid[i] = M_PI * i / (alphas - 1);
  const nodoid::BandTable table = nodoid::band_table(p, kmax, grid);
  const std::string csv = join_path(cfg.out_dir, "bands.csv");
  const std::string json = join_path(cfg.out_dir, "bands.json");
  nodoid::write_band_csv(table, csv);
  nodoid::write_band_json(table, json);
  for (std::size_t k = 0; k < table.bands.size(); ++k)
    num(std::cout) << "B_" << k << " = [" << table.bands[k][0] << ", "
                   << table.bands[k][1] << "]\n";
  if (tau > 0.0) {
    // Where the axial translation null field sits is only known to be the
    // second or third eigenvalue; report the observed position.
    std::cout << "axial zero eigenvalue observed at k = "
              << nodoid::axial_zero_position(p) << "\n";
  }
  if (!potential_out.empty()) {
    nodoid::QuasiPeriodicOperator op = nodoid::build_operator(
        p, 0, 0.0, std::min(513, cfg.samples_per_period / 2));
    nodoid::write_potential_csv(op, potential_out);
    std::cout << "wrote potential coefficients to " << potential_out << "\n";
  }
  std::cout << "wrote " << csv << " and " << json << "\n";
  return 0;
}

int cmd_flow(const RunConfig& cfg, int j, double alpha, double tau_from,
             double tau_to, int steps) {
  if (!(tau_from > tau_to))
    throw std::invalid_argument("flow: need tau-from > tau-to (decreasing)");
  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i)
    grid[i] = tau_from + (tau_to - tau_from) * i / (steps - 1);
  nodoid::BifurcationOptions opts;
  opts.tau_tol = cfg.root_tol;
  opts.samples_per_period = cfg.samples_per_period;
  const auto rows =
      nodoid::spectral_flow_table(nodoid::make_symmetry(j, alpha), grid, opts);
  const std::string csv = join_path(cfg.out_dir, "flow.csv");
  const std::string json = join_path(cfg.out_dir, "flow.json");
  nodoid::write_flow_csv(rows, csv);
  nodoid::write_flow_json(rows, json);
  std::cout << "wrote " << rows.size() << " rows to " << csv << " and " << json
            << "\n";
  return 0;
}

int cmd_index(double tau, int j, double alpha) {
  const nodoid::IndexReport rep =
      nodoid::morse_index(tau, nodoid::make_symmetry(j, alpha));
  num(std::cout) << "tau = " << rep.tau << "\nj = " << rep.symmetry.j
                 << "\nalpha = " << rep.symmetry.alpha
                 << "\nindex = " << rep.index
                 << "\nn_cutoff = " << rep.n_cutoff
                 << "\naxial mode n = 0 excluded (symmetric subspace)\n";
  for (const auto& cnt : rep.contributions)
    num(std::cout) << "  n = " << cnt.n << ", k = " << cnt.k
                   << ", eigenvalue = " << cnt.eigenvalue << "\n";
  return 0;
}

int cmd_bifurcate(const RunConfig& cfg, int j, double alpha, bool second,
                  bool write_files, bool tau_star) {
  nodoid::BifurcationOptions opts;
  opts.tau_tol = cfg.root_tol;
  opts.samples_per_period = cfg.samples_per_period;
  if (tau_star) {
    // --j is the largest rotational order scanned
    const double t = nodoid::critical_tau_star(j, cfg.alpha_samples, opts);
    num(std::cout) << "tau_* = " << t << " (j up to " << j << ", "
                   << cfg.alpha_samples << " alpha samples per j)\n";
    return 0;
  }
  const nodoid::SymmetryClass sym = nodoid::make_symmetry(j, alpha);
  const nodoid::BifurcationPoint p = nodoid::first_bifurcation(sym, opts);
  num(std::cout) << "j = " << j << "\nalpha = " << alpha
                 << "\ntau = " << p.tau_star
                 << "\nband_index = " << p.band_index
                 << "\nslope = " << p.slope << "\n";
  std::vector<nodoid::BifurcationPoint> found = {p};
  if (second) {
    const auto sp = nodoid::second_crossing(sym, opts);
    if (sp) {
      num(std::cout) << "second crossing (conjectural): tau = " << sp->tau_star
                     << ", band_index = " << sp->band_index
                     << ", slope = " << sp->slope << "\n";
      found.push_back(*sp);
    } else {
      std::cout << "second crossing (conjectural): none found\n";
    }
  }
  if (write_files) {
    const std::string csv = join_path(cfg.out_dir, "bifurcation.csv");
    const std::string json = join_path(cfg.out_dir, "bifurcation.json");
    nodoid::write_bifurcation_csv(found, csv);
    nodoid::write_bifurcation_json(p, json);
    std::cout << "wrote " << csv << " and " << json << "\n";
  }
  return 0;
}

int cmd_mesh(const RunConfig& cfg, double tau, std::optional<int> j,
             double alpha, double eta, int periods, int res_t, int res_theta,
             const std::string& out) {
  const nodoid::ProfileSolution p =
      nodoid::solve_profile(tau, cfg.samples_per_period, periods, cfg.ode_tol);
  nodoid::SurfaceMesh mesh;
  if (j) {
    nodoid::BifurcationOptions opts;
    opts.tau_tol = cfg.root_tol;
    opts.samples_per_period = cfg.samples_per_period;
    const nodoid::BifurcationPoint point =
        nodoid::first_bifurcation(nodoid::make_symmetry(*j, alpha), opts);
    // Perturbations live on the surface at the crossing value.
    const nodoid::ProfileSolution pstar = nodoid::solve_profile(
        point.tau_star, cfg.samples_per_period, periods, cfg.ode_tol);
    num(std::cout) << "meshing perturbed surface at tau_{j,alpha} = "
                   << point.tau_star << " (requested tau ignored for the "
                   << "perturbed branch)\n";
    mesh = nodoid::mesh_perturbed(pstar, point, eta, res_t, res_theta);
  } else {
    mesh = nodoid::mesh_delaunay(p, periods, res_t, res_theta);
  }
  nodoid::export_mesh(mesh, nodoid::mesh_format_from_path(out), out);
  std::cout << "wrote " << mesh.vertices.size() << " vertices, "
            << mesh.faces.size() << " faces to " << out << "\n";
  return 0;
}

int cmd_verify() {
  const auto results = nodoid::acceptance::run_all(std::cout);
  return nodoid::acceptance::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delaunay surface laboratory: profiles, Bloch bands, "
               "bifurcations, meshes"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env = std::getenv("NODOID_OUTPUT_DIR")) cfg.out_dir = env;
  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file");
  std::string out_dir_flag;
  app.add_option("--out-dir", out_dir_flag, "output directory (overrides env)");

  auto* profile = app.add_subcommand("profile", "solve the profile ODE");
  double tau = -1.0;
  int samples = 256, periods = 1;
  profile->add_option("--tau", tau, "Delaunay parameter")->required();
  profile->add_option("--samples", samples, "samples per period");
  profile->add_option("--periods", periods, "number of periods");

  auto* period = app.add_subcommand("period", "period by both methods");
  period->add_option("--tau", tau, "Delaunay parameter")->required();
  std::string method = "both";
  period->add_option("--method", method, "quadrature|elliptic|both");

  auto* bands = app.add_subcommand("bands", "band table");
  int kmax = 5, alphas = 11;
  std::string potential_out;
  bands->add_option("--tau", tau, "Delaunay parameter")->required();
  bands->add_option("--kmax", kmax, "highest band index");
  bands->add_option("--alphas", alphas, "alpha grid size on [0, pi]")
      ->check(CLI::Range(2, 10000));
  bands->add_option("--potential-out", potential_out,
                    "dump potential Fourier coefficients to this CSV");

  auto* flow = app.add_subcommand("flow", "spectral flow table");
  int jj = 2;
  double alpha = 0.0, tau_from = -1.5, tau_to = -6.0;
  int steps = 20;
  flow->add_option("--j", jj, "rotational order")->required();
  flow->add_option("--alpha", alpha, "screw angle");
  flow->add_option("--tau-from", tau_from, "start (closer to 0)")->required();
  flow->add_option("--tau-to", tau_to, "end (more negative)")->required();
  flow->add_option("--steps", steps, "grid size")->check(CLI::Range(2, 100000));

  auto* index = app.add_subcommand("index", "Morse index report");
  index->add_option("--tau", tau, "Delaunay parameter")->required();
  index->add_option("--j", jj, "rotational order")->required();
  index->add_option("--alpha", alpha, "screw angle");

  auto* bifurcate = app.add_subcommand("bifurcate", "locate tau_{j,alpha}");
  bool second = false, bif_files = false, tau_star = false;
  bifurcate->add_option("--j", jj, "rotational order")->required();
  bifurcate->add_option("--alpha", alpha, "screw angle");
  bifurcate->add_flag("--second", second,
                      "also scan for the (conjectural) second-band crossing");
  bifurcate->add_flag("--write", bif_files,
                      "also write bifurcation.csv / bifurcation.json");
  bifurcate->add_flag("--tau-star", tau_star,
                      "estimate the first instability over all orders up to "
                      "--j (alpha resolution from --alpha-samples / config)");
  int alpha_samples_flag = 0;
  app.add_option("--alpha-samples", alpha_samples_flag,
                 "alpha samples per order in the tau_* search");

  auto* mesh = app.add_subcommand("mesh", "export surface geometry");
  std::string mesh_out = "surface.obj";
  int res_t = 64, res_theta = 64;
  std::optional<int> mesh_j;
  double eta = 0.0;
  mesh->add_option("--tau", tau, "Delaunay parameter")->required();
  mesh->add_option("--j", mesh_j, "perturb with this rotational order");
  mesh->add_option("--alpha", alpha, "screw angle of the perturbation");
  mesh->add_option("--eta", eta, "graph amplitude of the perturbation");
  mesh->add_option("--periods", periods, "periods along the axis");
  mesh->add_option("--res-t", res_t, "axial resolution per period");
  mesh->add_option("--res-theta", res_theta, "angular resolution");
  mesh->add_option("--out", mesh_out, "output path (.obj/.ply/.csv)");

  app.add_subcommand("verify", "run the verification suite");

  // global options (--config, --out-dir) are accepted after a subcommand too
  for (CLI::App* sc : app.get_subcommands([](CLI::App*) { return true; }))
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // usage errors exit 2; --help exits 0
  }

  try {
    if (!config_path.empty()) load_config_file(config_path, cfg);
    if (!out_dir_flag.empty()) cfg.out_dir = out_dir_flag;  // flags win
    if (alpha_samples_flag > 0) cfg.alpha_samples = alpha_samples_flag;
    validate(cfg);

    if (app.got_subcommand("profile"))
      return cmd_profile(cfg, tau, samples, periods);
    if (app.got_subcommand("period")) return cmd_period(tau);
    if (app.got_subcommand("bands"))
      return cmd_bands(cfg, tau, kmax, alphas, potential_out);
    if (app.got_subcommand("flow"))
      return cmd_flow(cfg, jj, alpha, tau_from, tau_to, steps);
    if (app.got_subcommand("index")) return cmd_index(tau, jj, alpha);
    if (app.got_subcommand("bifurcate"))
      return cmd_bifurcate(cfg, jj, alpha, second, bif_files, tau_star);
    if (app.got_subcommand("mesh"))
      return cmd_mesh(cfg, tau, mesh_j, alpha, eta, periods, res_t, res_theta,
                      join_path(cfg.out_dir, mesh_out));
    if (app.got_subcommand("verify")) return cmd_verify();
  } catch (const std::domain_error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "numerical failure: " << ex.what() << "\n";
    return 1;
  }
  return 2;
}
