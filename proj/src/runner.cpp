#include "hfk/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "hfk/tensor_calc.hpp"

namespace hfk::runner {

namespace {
using nlohmann::json;
namespace fs = std::filesystem;
constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Vec3 vec3_of(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3)
    throw ConfigError(what + " must be an array of 3 numbers");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

void reject_unknown(const json& j, const std::vector<std::string>& keys,
                    const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const auto& k : keys)
      if (it.key() == k) known = true;
    if (!known)
      throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
  }
}

models::InitialDataModel parse_model(const json& j) {
  reject_unknown(j,
                 {"type", "mass", "center", "momentum", "k_even_amplitude",
                  "perturbation"},
                 "model");
  const std::string type = j.value("type", "euclidean");
  const double mass = j.value("mass", 1.0);
  const Vec3 center =
      j.contains("center") ? vec3_of(j["center"], "model.center") : Vec3::Zero();
  const Vec3 momentum = j.contains("momentum")
                            ? vec3_of(j["momentum"], "model.momentum")
                            : Vec3::Zero();
  if (type == "euclidean") return models::InitialDataModel::euclidean();
  if (type == "schwarzschild")
    return models::InitialDataModel::schwarzschild(mass, center);
  if (type == "perturbed-schwarzschild") {
    models::Perturbation pert;
    if (j.contains("perturbation")) {
      const auto& p = j["perturbation"];
      reject_unknown(p, {"amplitude", "exponent", "parity", "direction"},
                     "model.perturbation");
      pert.amplitude = p.value("amplitude", 0.0);
      pert.exponent = p.value("exponent", 2.0);
      pert.parity = p.value("parity", 1);
      if (p.contains("direction"))
        pert.direction =
            vec3_of(p["direction"], "model.perturbation.direction").normalized();
    }
    return models::InitialDataModel::perturbed_schwarzschild(mass, center,
                                                             pert);
  }
  if (type == "harmonic")
    return models::InitialDataModel::harmonic(mass, momentum,
                                              j.value("k_even_amplitude", 0.0));
  if (type == "york") return models::InitialDataModel::york(mass, momentum);
  throw ConfigError("unknown model type \"" + type + "\"");
}
}  // namespace

ExperimentKind experiment_from_name(const std::string& name) {
  if (name == "validate") return ExperimentKind::Validate;
  if (name == "solve-leaf") return ExperimentKind::SolveLeaf;
  if (name == "foliate") return ExperimentKind::Foliate;
  if (name == "energy-report") return ExperimentKind::EnergyReport;
  if (name == "center-report") return ExperimentKind::CenterReport;
  if (name == "monotonicity-report") return ExperimentKind::MonotonicityReport;
  throw ConfigError("unknown experiment kind \"" + name + "\"");
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(j,
                 {"model", "l_max", "n_theta", "n_phi", "radii", "beta",
                  "delta_tilde", "solver", "minimize", "xi", "xi_override",
                  "recenter_q", "out_dir"},
                 "config");
  ExperimentConfig c;
  if (!j.contains("model")) throw ConfigError("config needs a model block");
  c.model = parse_model(j["model"]);
  c.l_max = j.value("l_max", 12);
  c.n_theta = j.value("n_theta", 32);
  c.n_phi = j.value("n_phi", 32);
  if (c.l_max < 4) throw ConfigError("l_max must be >= 4");
  if (2 * c.l_max >= c.n_phi || c.l_max >= c.n_theta)
    throw ConfigError("grid too small for the band limit");
  if (j.contains("radii")) {
    c.radii = j["radii"].get<std::vector<double>>();
    for (size_t i = 0; i < c.radii.size(); ++i) {
      if (c.radii[i] <= 0.0) throw ConfigError("radii must be positive");
      if (i > 0 && c.radii[i] <= c.radii[i - 1])
        throw ConfigError("radii must be strictly increasing");
    }
  }
  c.beta = j.value("beta", 0.49);
  if (!(c.beta >= 0.0 && c.beta < 0.5))
    throw ConfigError("beta must lie in [0, 1/2)");
  if (j.contains("solver")) {
    const auto& s = j["solver"];
    reject_unknown(s, {"tol", "area_tol", "max_iter", "fd_step_rel"},
                   "solver");
    c.solver.tol = s.value("tol", c.solver.tol);
    c.solver.area_tol = s.value("area_tol", c.solver.area_tol);
    c.solver.max_iter = s.value("max_iter", c.solver.max_iter);
    c.solver.fd_step_rel = s.value("fd_step_rel", c.solver.fd_step_rel);
  }
  c.solver.delta_tilde = j.value("delta_tilde", c.solver.delta_tilde);
  if (!(c.solver.tol > 0.0) || !(c.solver.area_tol > 0.0) ||
      !(c.solver.fd_step_rel > 0.0))
    throw ConfigError("solver tolerances must be positive");
  if (!(c.solver.delta_tilde > 0.0 && c.solver.delta_tilde < 0.5))
    throw ConfigError("delta_tilde must lie in (0, 1/2)");
  if (j.contains("minimize")) {
    const auto& m = j["minimize"];
    reject_unknown(m, {"grad_tol", "fd_step", "max_newton", "multistart",
                       "seed"},
                   "minimize");
    c.minimize.grad_tol = m.value("grad_tol", c.minimize.grad_tol);
    c.minimize.fd_step = m.value("fd_step", c.minimize.fd_step);
    c.minimize.max_newton = m.value("max_newton", c.minimize.max_newton);
    c.minimize.multistart = m.value("multistart", c.minimize.multistart);
    c.minimize.seed = m.value("seed", c.minimize.seed);
  }
  if (!(c.minimize.grad_tol > 0.0) || !(c.minimize.fd_step > 0.0))
    throw ConfigError("minimize tolerances must be positive");
  if (j.contains("xi")) c.xi = vec3_of(j["xi"], "xi");
  if (j.contains("recenter_q"))
    c.recenter_q = vec3_of(j["recenter_q"], "recenter_q");
  if (j.contains("xi_override")) {
    std::vector<Vec3> ov;
    for (const auto& row : j["xi_override"])
      ov.push_back(vec3_of(row, "xi_override entry"));
    c.xi_override = std::move(ov);
  }
  c.out_dir = j.value("out_dir", c.out_dir);
  return c;
}

namespace {

json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json leaf_json(const reduction::FoliationLeaf& leaf) {
  json u;
  u["l_max"] = leaf.sol.u.l_max;
  u["coeffs"] = leaf.sol.u.a;
  return json{{"r", leaf.sol.r},
              {"xi", vec_json(leaf.sol.xi)},
              {"lambda", leaf.sol.lambda},
              {"iterations", leaf.sol.iterations},
              {"residual_scaled", leaf.sol.residual_scaled},
              {"residual_full_scaled", leaf.sol.residual_full_scaled},
              {"area_rel_error", leaf.sol.area_rel_error},
              {"u", u},
              {"area", leaf.area},
              {"hawking_energy", leaf.hawking_energy},
              {"int_f", leaf.int_f},
              {"int_f_minus_lambda", leaf.int_f_minus_lambda},
              {"balance_residual", leaf.balance_residual},
              {"max_g", leaf.max_g},
              {"euclidean_center", vec_json(leaf.euclidean_center)},
              {"G_value", leaf.G_value},
              {"G_gradient", vec_json(leaf.G_gradient)},
              {"hessian_eigenvalues", vec_json(leaf.hessian_eigenvalues)},
              {"minimizer", leaf.minimizer}};
}

struct OutputDir {
  fs::path root;
  explicit OutputDir(const std::string& dir) : root(dir) {
    fs::create_directories(root);
    fs::create_directories(root / "plot");
  }
  std::ofstream file(const std::string& name) const {
    std::ofstream os(root / name);
    if (!os) throw Error("cannot write " + (root / name).string());
    return os;
  }
  std::ofstream plot(const std::string& name) const {
    std::ofstream os(root / "plot" / name);
    if (!os) throw Error("cannot write plot " + name);
    return os;
  }
};

void write_series(const OutputDir& out, const std::string& name,
                  const std::vector<double>& x, const std::vector<double>& y) {
  auto os = out.plot(name);
  os << "# r value\n";
  for (size_t i = 0; i < x.size(); ++i)
    os << fmt(x[i]) << " " << fmt(y[i]) << "\n";
}

class Manifest {
 public:
  Manifest(const ExperimentConfig& c, const std::string& kind) {
    j_["version"] = kVersion;
    j_["experiment"] = kind;
    j_["workers"] = worker_count();
    j_["model"] = c.model.name();
    if (!c.model.modelling_note().empty())
      j_["modelling_note"] = c.model.modelling_note();
    j_["l_max"] = c.l_max;
    j_["n_theta"] = c.n_theta;
    j_["n_phi"] = c.n_phi;
    j_["radii"] = c.radii;
    j_["beta"] = c.beta;
    j_["solver"] = {{"tol", c.solver.tol},
                    {"area_tol", c.solver.area_tol},
                    {"max_iter", c.solver.max_iter},
                    {"fd_step_rel", c.solver.fd_step_rel},
                    {"delta_tilde", c.solver.delta_tilde}};
    j_["minimize"] = {{"grad_tol", c.minimize.grad_tol},
                      {"fd_step", c.minimize.fd_step},
                      {"max_newton", c.minimize.max_newton},
                      {"multistart", c.minimize.multistart},
                      {"seed", c.minimize.seed}};
    start_ = std::chrono::steady_clock::now();
    const auto now = std::chrono::system_clock::now();
    j_["started_unix_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            now.time_since_epoch())
            .count();
  }
  void stage(const std::string& name) {
    const auto now = std::chrono::steady_clock::now();
    stages_[name] =
        std::chrono::duration<double, std::milli>(now - start_).count();
  }
  void save(const OutputDir& out) {
    j_["wall_ms"] = stages_;
    auto os = out.file("manifest.json");
    os << j_.dump(2) << "\n";
  }

 private:
  json j_;
  json stages_ = json::object();
  std::chrono::steady_clock::time_point start_;
};

int run_validate(const ExperimentConfig& c, const OutputDir& out,
                 Manifest& man) {
  const surf::Discretization disc(c.l_max, c.n_theta, c.n_phi);
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    std::printf("%s %s\n", ok ? "PASS" : "FAIL", name.c_str());
    if (!ok) ++failures;
  };

  // Transform round-trip on a deterministic band-limited field.
  {
    sh::SphericalHarmonicField f(c.l_max);
    for (int i = 0; i < sh::coeff_count(c.l_max); ++i)
      f.a[i] = std::sin(1.0 + i);
    const auto back = disc.basis_user.analyze(disc.basis_user.synthesize(f));
    double err = 0.0;
    for (int i = 0; i < sh::coeff_count(c.l_max); ++i)
      err = std::max(err, std::abs(back.a[i] - f.a[i]));
    check("sh-round-trip", err <= 1e-12);
  }
  // Metric-jet consistency on the configured model.
  {
    double worst = 0.0;
    const double r0 = std::max(6.0, 6.0 * c.model.mass());
    for (const Vec3 d : {Vec3(1, 0, 0), Vec3(0.2, -0.5, 0.84)}) {
      const Vec3 x = r0 * d.normalized();
      const auto jet = c.model.metric_jet(x);
      const double h = 1e-4 * x.norm();
      for (int a = 0; a < 3; ++a) {
        const Mat3 fd = (c.model.metric_jet(x + h * Vec3::Unit(a)).g -
                         c.model.metric_jet(x - h * Vec3::Unit(a)).g) /
                        (2.0 * h);
        worst = std::max(worst, (fd - jet.dg[a]).cwiseAbs().maxCoeff());
      }
    }
    check("metric-jet-fd-consistency", worst <= 1e-6);
  }
  // Round-sphere geometry in flat data.
  {
    surf::GraphSurface s;
    s.r = 3.0;
    s.u = sh::SphericalHarmonicField(c.l_max);
    const auto geom = surf::build_surface_geometry(
        models::InitialDataModel::euclidean(), s, disc);
    bool ok = std::abs(geom.area - 4.0 * kPi * 9.0) <= 1e-9 * geom.area;
    for (int i = 0; i < geom.n_nodes(); i += 17)
      ok = ok && std::abs(geom.H[i] - 2.0 / 3.0) <= 1e-10;
    check("flat-round-sphere-geometry", ok);
  }
  // Flat leaves are exact fixed points of the reduction.
  {
    reduction::LeafSolver solver(models::InitialDataModel::euclidean(), disc,
                                 c.solver);
    const auto sol = solver.solve(Vec3::Zero(), 5.0);
    check("flat-leaf-fixed-point",
          sol.iterations <= 2 && std::abs(sol.lambda) <= 1e-10);
  }
  // Reduced-energy closed form.
  {
    bool ok = std::abs(reduction::G1_closed_form(0.0)) <= 1e-12;
    ok = ok && std::abs(reduction::G1_series(0.5) -
                        reduction::G1_closed_form(0.5)) <=
                   1e-10 * reduction::G1_closed_form(0.5);
    for (double t : {0.05, 0.1, 0.2, 0.4})
      ok = ok && reduction::G1_radial_derivative(t) >= 256.0 * kPi * t;
    check("reduced-energy-closed-form", ok);
  }
  // Balance identity on a Schwarzschild symmetry sphere.
  {
    const auto model = models::InitialDataModel::schwarzschild(1.0);
    surf::GraphSurface s;
    s.r = 12.0;
    s.u = sh::SphericalHarmonicField(c.l_max);
    const auto geom = surf::build_surface_geometry(model, s, disc);
    const auto res = fun::el_residual(geom);
    const auto pack = fun::monotonicity_pack(geom, res.lambda, c.beta);
    check("balance-identity",
          std::abs(pack.balance_residual) <= 1e-6 * 4.0 * kPi);
    check("g-nonpositive", pack.max_g <= 1e-12);
  }
  man.stage("validate");
  auto os = out.file("summary.csv");
  os << "check,result\nall," << (failures == 0 ? "pass" : "fail") << "\n";
  return failures == 0 ? 0 : 3;
}

int run_solve_leaf(const ExperimentConfig& c, const OutputDir& out,
                   Manifest& man) {
  if (c.radii.empty()) throw ConfigError("solve-leaf needs one radius");
  const surf::Discretization disc(c.l_max, c.n_theta, c.n_phi);
  reduction::LeafSolver solver(c.model, disc, c.solver);
  const auto sol = solver.solve(c.xi, c.radii.front());
  man.stage("solve");

  const auto geom = solver.geometry(sol);
  const auto pack = fun::monotonicity_pack(geom, sol.lambda, c.beta);
  reduction::FoliationLeaf leaf;
  leaf.sol = sol;
  leaf.area = geom.area;
  leaf.hawking_energy = fun::hawking_energy(geom);
  leaf.int_f = pack.int_f;
  leaf.int_f_minus_lambda = pack.int_f_minus_lambda;
  leaf.balance_residual = pack.balance_residual;
  leaf.max_g = pack.max_g;
  leaf.euclidean_center = surf::euclidean_center(geom);

  json ar;
  ar["schema_version"] = kLeafArchiveSchemaVersion;
  ar["leaves"] = json::array({leaf_json(leaf)});
  out.file("leaves.json") << ar.dump(2) << "\n";
  sol.u.save((out.root / "u_coefficients.txt").string(), c.n_theta, c.n_phi);

  auto os = out.file("summary.csv");
  os << "r,lambda,hawking_energy,area_rel_error,residual_scaled,int_f,"
        "balance_residual\n";
  os << fmt(sol.r) << "," << fmt(sol.lambda) << ","
     << fmt(leaf.hawking_energy) << "," << fmt(sol.area_rel_error) << ","
     << fmt(sol.residual_scaled) << "," << fmt(leaf.int_f) << ","
     << fmt(leaf.balance_residual) << "\n";
  man.stage("report");
  return 0;
}

void write_leaves_archive(const OutputDir& out,
                          const reduction::FoliationReport& rep) {
  json ar;
  ar["schema_version"] = kLeafArchiveSchemaVersion;
  json rows = json::array();
  for (const auto& leaf : rep.leaves) rows.push_back(leaf_json(leaf));
  ar["leaves"] = rows;
  json margins = json::array();
  for (double m : rep.ordering_margins) margins.push_back(m);
  ar["ordering_margins"] = margins;
  ar["min_margin"] = rep.min_margin;
  ar["support_containment"] = rep.support_containment;
  out.file("leaves.json") << ar.dump(2) << "\n";
}

int run_foliate(const ExperimentConfig& c, const OutputDir& out,
                Manifest& man) {
  const surf::Discretization disc(c.l_max, c.n_theta, c.n_phi);
  reduction::LeafSolver solver(c.model, disc, c.solver);
  const auto rep =
      reduction::build_foliation(solver, c.radii, c.minimize, c.xi_override);
  man.stage("foliation");
  write_leaves_archive(out, rep);

  auto os = out.file("summary.csv");
  os << "r,xi_x,xi_y,xi_z,lambda,hawking_energy,int_f,int_f_minus_lambda,"
        "balance_residual,residual_scaled,ordering_margin\n";
  std::vector<double> rs, es;
  for (size_t i = 0; i < rep.leaves.size(); ++i) {
    const auto& leaf = rep.leaves[i];
    const double margin =
        (i == 0) ? std::numeric_limits<double>::quiet_NaN()
                 : rep.ordering_margins[i - 1];
    os << fmt(leaf.sol.r) << "," << fmt(leaf.sol.xi[0]) << ","
       << fmt(leaf.sol.xi[1]) << "," << fmt(leaf.sol.xi[2]) << ","
       << fmt(leaf.sol.lambda) << "," << fmt(leaf.hawking_energy) << ","
       << fmt(leaf.int_f) << "," << fmt(leaf.int_f_minus_lambda) << ","
       << fmt(leaf.balance_residual) << "," << fmt(leaf.sol.residual_scaled)
       << "," << fmt(margin) << "\n";
    rs.push_back(leaf.sol.r);
    es.push_back(leaf.hawking_energy);
  }
  write_series(out, "hawking_energy.dat", rs, es);
  man.stage("report");
  return 0;
}

int run_energy_report(const ExperimentConfig& c, const OutputDir& out,
                      Manifest& man) {
  const surf::Discretization disc(c.l_max, c.n_theta, c.n_phi);
  reduction::LeafSolver solver(c.model, disc, c.solver);
  const auto rep =
      reduction::build_foliation(solver, c.radii, c.minimize, c.xi_override);
  man.stage("foliation");

  auto os = out.file("summary.csv");
  os << "r,hawking_energy,adm_integral,adm_gauss_assembly,abs_E_minus_m,"
        "abs_adm_minus_m\n";
  std::vector<double> rs, es, devs;
  const double m = c.model.mass();
  for (const auto& leaf : rep.leaves) {
    const auto adm = centers::adm_energy(c.model, leaf.sol.r, disc);
    os << fmt(leaf.sol.r) << "," << fmt(leaf.hawking_energy) << ","
       << fmt(adm.adm) << "," << fmt(adm.adm_gauss) << ","
       << fmt(std::abs(leaf.hawking_energy - m)) << ","
       << fmt(std::abs(adm.adm - m)) << "\n";
    rs.push_back(leaf.sol.r);
    es.push_back(leaf.hawking_energy);
    devs.push_back(std::abs(leaf.hawking_energy - m));
  }
  write_series(out, "hawking_energy.dat", rs, es);
  write_series(out, "hawking_energy_deviation.dat", rs, devs);
  write_leaves_archive(out, rep);
  man.stage("report");
  return 0;
}

int run_center_report(const ExperimentConfig& c, const OutputDir& out,
                      Manifest& man) {
  const surf::Discretization disc(c.l_max, c.n_theta, c.n_phi);
  reduction::LeafSolver solver(c.model, disc, c.solver);
  const auto rep =
      reduction::build_foliation(solver, c.radii, c.minimize, c.xi_override);
  man.stage("foliation");
  const auto cr = centers::foliation_center_estimate(rep.leaves, c.model, disc);
  man.stage("centers");

  auto os = out.file("summary.csv");
  os << "r,leaf_center_x,leaf_center_y,leaf_center_z,rxi_x,rxi_y,rxi_z,"
        "cH_x,cH_y,cH_z,stcmc_x,stcmc_y,stcmc_z,cf_x,cf_y,cf_z,"
        "recentred_x,recentred_y,recentred_z,abs_rxi_minus_cf\n";
  std::vector<double> rs, devs;
  for (size_t i = 0; i < cr.radii.size(); ++i) {
    const double dev = (cr.r_xi[i] - cr.c_f[i]).norm();
    // Recentred variant on the sphere S_r(q): C_H + Z(q).
    const Vec3 chz =
        cr.c_H[i] +
        centers::recentred_Z(c.model, cr.radii[i], c.recenter_q, disc);
    os << fmt(cr.radii[i]);
    for (const Vec3* v :
         {&cr.leaf_centers[i], &cr.r_xi[i], &cr.c_H[i], &cr.stcmc_corr[i],
          &cr.c_f[i], &chz})
      os << "," << fmt((*v)[0]) << "," << fmt((*v)[1]) << "," << fmt((*v)[2]);
    os << "," << fmt(dev) << "\n";
    rs.push_back(cr.radii[i]);
    devs.push_back(dev);
  }
  write_series(out, "center_agreement.dat", rs, devs);

  json summary;
  summary["c_f_extrapolated"] = vec_json(cr.c_f_extrapolated);
  summary["extrapolation_converged"] = cr.extrapolation_converged;
  out.file("centers.json") << summary.dump(2) << "\n";
  write_leaves_archive(out, rep);
  man.stage("report");
  return 0;
}

int run_monotonicity_report(const ExperimentConfig& c, const OutputDir& out,
                            Manifest& man) {
  const surf::Discretization disc(c.l_max, c.n_theta, c.n_phi);
  reduction::LeafSolver solver(c.model, disc, c.solver);
  const auto rep =
      reduction::build_foliation(solver, c.radii, c.minimize, c.xi_override);
  man.stage("foliation");

  auto os = out.file("summary.csv");
  os << "r,hawking_energy,int_f,int_f_minus_lambda,max_g,balance_residual,"
        "int_f_beta,dE_ds_unit_speed\n";
  std::vector<double> rs, ifs;
  for (const auto& leaf : rep.leaves) {
    const auto geom = solver.geometry(leaf.sol);
    const auto pack = fun::monotonicity_pack(geom, leaf.sol.lambda, c.beta);
    double int_f_beta = 0.0;
    for (int i = 0; i < geom.n_nodes(); ++i)
      int_f_beta += geom.dmu[i] * pack.f_beta[i];
    std::vector<double> one(geom.n_nodes(), 1.0);
    const double dE = fun::energy_variation(geom, leaf.sol.lambda, one);
    os << fmt(leaf.sol.r) << "," << fmt(leaf.hawking_energy) << ","
       << fmt(pack.int_f) << "," << fmt(pack.int_f_minus_lambda) << ","
       << fmt(pack.max_g) << "," << fmt(pack.balance_residual) << ","
       << fmt(int_f_beta) << "," << fmt(dE) << "\n";
    rs.push_back(leaf.sol.r);
    ifs.push_back(pack.int_f);
  }
  write_series(out, "int_f.dat", rs, ifs);
  write_leaves_archive(out, rep);
  man.stage("report");
  return 0;
}

}  // namespace

int run(ExperimentKind kind, const ExperimentConfig& config) {
  const OutputDir out(config.out_dir);
  std::string kind_name;
  switch (kind) {
    case ExperimentKind::Validate: kind_name = "validate"; break;
    case ExperimentKind::SolveLeaf: kind_name = "solve-leaf"; break;
    case ExperimentKind::Foliate: kind_name = "foliate"; break;
    case ExperimentKind::EnergyReport: kind_name = "energy-report"; break;
    case ExperimentKind::CenterReport: kind_name = "center-report"; break;
    case ExperimentKind::MonotonicityReport:
      kind_name = "monotonicity-report";
      break;
  }
  Manifest man(config, kind_name);
  int status = 0;
  try {
    switch (kind) {
      case ExperimentKind::Validate:
        status = run_validate(config, out, man);
        break;
      case ExperimentKind::SolveLeaf:
        status = run_solve_leaf(config, out, man);
        break;
      case ExperimentKind::Foliate:
        status = run_foliate(config, out, man);
        break;
      case ExperimentKind::EnergyReport:
        status = run_energy_report(config, out, man);
        break;
      case ExperimentKind::CenterReport:
        status = run_center_report(config, out, man);
        break;
      case ExperimentKind::MonotonicityReport:
        status = run_monotonicity_report(config, out, man);
        break;
    }
  } catch (const HypothesisViolation& e) {
    std::fprintf(stderr, "hypothesis violation: %s\n", e.what());
    status = 4;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    status = 3;
  }
  man.save(out);
  return status;
}

}  // namespace hfk::runner
