#include "mmadv/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mmadv {

namespace fs = std::filesystem;
using json = nlohmann::json;

double fit_convergence(const std::vector<double>& n_e,
                       const std::vector<double>& errors) {
  if (n_e.size() != errors.size() || n_e.size() < 3)
    throw std::invalid_argument("fit_convergence: need >= 3 resolutions");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(n_e.size());
  for (int i = 0; i < n; ++i) {
    if (!(errors[i] > 0.0))
      throw std::invalid_argument("fit_convergence: errors must be positive");
    const double x = std::log(1.0 / n_e[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

VelocityModel velocity_from_spec(const std::string& spec,
                                 const PeriodicMesh1D&) {
  if (spec.rfind("const:", 0) == 0) {
    const double v = std::stod(spec.substr(6));
    return VelocityModel::analytic([v](double) { return v; });
  }
  if (spec == "manufactured") {
    return VelocityModel::analytic([](double x) {
      return 0.4 + 0.2 * (1.0 + std::sin(2.0 * M_PI * x));
    });
  }
  throw std::invalid_argument("unknown velocity spec: " + spec);
}

namespace {

double manufactured_q(double x) {
  return 0.5 * (1.0 - std::cos(2.0 * M_PI * x));
}
double manufactured_dq(double x) { return M_PI * std::sin(2.0 * M_PI * x); }
double manufactured_u(double x) {
  return 0.4 + 0.2 * (1.0 + std::sin(2.0 * M_PI * x));
}

}  // namespace

double tanh_profile(double x) {
  return x < 0.5 ? 0.5 + 0.5 * std::tanh(200.0 * (x - 0.4))
                 : 0.5 + 0.5 * std::tanh(200.0 * (0.6 - x));
}

ConvergenceResult converge_flux(int p, const std::vector<int>& resolutions,
                                double dt_over_ne, int quad_points) {
  ConvergenceResult out;
  out.resolutions = resolutions;
  for (const int ne : resolutions) {
    PeriodicMesh1D mesh(ne, 1.0, p);
    const VelocityModel vel = VelocityModel::analytic(manufactured_u);
    const Field q = project_to_Q(mesh, manufactured_q, quad_points);
    auto exact_flux = [](double x) {
      return manufactured_u(x) * manufactured_q(x);
    };

    const Field F = solve_flux(mesh, vel, q, {}, quad_points);
    out.error_original.push_back(l2_error(F, exact_flux));

    const double dt = dt_over_ne / ne;
    DisplacementField shift(Direction::Downstream, dt, vel);
    const Field Fpg = solve_flux(mesh, vel, q, shift, quad_points);
    out.error_pg.push_back(l2_error(Fpg, exact_flux));
  }
  std::vector<double> nes(resolutions.begin(), resolutions.end());
  out.slope_original = fit_convergence(nes, out.error_original);
  out.slope_pg = fit_convergence(nes, out.error_pg);
  return out;
}

ConvergenceResult converge_material(int p, const std::vector<int>& resolutions,
                                    double dt_over_ne, int quad_points) {
  ConvergenceResult out;
  out.resolutions = resolutions;
  for (const int ne : resolutions) {
    PeriodicMesh1D mesh(ne, 1.0, p);
    const VelocityModel vel = VelocityModel::analytic(manufactured_u);
    const Field q = project_to_Q(mesh, manufactured_q, quad_points);
    auto exact_tendency = [](double x) {
      return -manufactured_u(x) * manufactured_dq(x);
    };

    const AdvectionOperator B = build_B(mesh, vel, quad_points);
    const Field tB = apply_tendency(mesh, B, q, quad_points);
    out.error_original.push_back(l2_error(tB, exact_tendency));

    const double dt = dt_over_ne / ne;
    const AdvectionOperator Bpg = build_B_PG(mesh, vel, dt, quad_points);
    const Field tBpg = apply_tendency(mesh, Bpg, q, quad_points);
    out.error_pg.push_back(l2_error(tBpg, exact_tendency));
  }
  std::vector<double> nes(resolutions.begin(), resolutions.end());
  out.slope_original = fit_convergence(nes, out.error_original);
  out.slope_pg = fit_convergence(nes, out.error_pg);
  return out;
}

namespace {

class Config {
 public:
  Config(const ConfigMap& map, std::set<std::string> allowed)
      : map_(map), allowed_(std::move(allowed)) {
    for (const auto& [k, v] : map_) {
      if (!allowed_.count(k))
        throw std::invalid_argument("unknown config key: " + k);
    }
  }
  std::string get(const std::string& key, const std::string& def) const {
    auto it = map_.find(key);
    return it == map_.end() ? def : it->second;
  }
  double get_d(const std::string& key, double def) const {
    auto it = map_.find(key);
    return it == map_.end() ? def : std::stod(it->second);
  }
  int get_i(const std::string& key, int def) const {
    auto it = map_.find(key);
    return it == map_.end() ? def : std::stoi(it->second);
  }
  std::vector<int> get_ilist(const std::string& key,
                             const std::string& def) const {
    std::vector<int> out;
    std::stringstream ss(get(key, def));
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
  }

 private:
  ConfigMap map_;
  std::set<std::string> allowed_;
};

void write_manifest(const std::string& out_dir, const std::string& name,
                    const ConfigMap& config, double wall_seconds) {
  json m;
  m["experiment"] = name;
  m["config"] = config;
  m["library_version"] = "0.1.0";
  m["wall_clock_seconds"] = wall_seconds;
  std::ofstream f(fs::path(out_dir) / "manifest.json");
  f << m.dump(2) << "\n";
}

void write_convergence_csv(const ConvergenceResult& r, const fs::path& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::fprintf(f, "ne,error_original,error_pg\n");
  for (size_t i = 0; i < r.resolutions.size(); ++i)
    std::fprintf(f, "%d,%.17g,%.17g\n", r.resolutions[i], r.error_original[i],
                 r.error_pg[i]);
  std::fprintf(f, "# slope_original,%.17g\n# slope_pg,%.17g\n",
               r.slope_original, r.slope_pg);
  std::fclose(f);
}

void write_field_csv(const Field& field, int samples, const fs::path& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::fprintf(f, "x,value\n");
  const double L = field.mesh->length();
  for (int i = 0; i < samples; ++i) {
    const double x = i * L / samples;
    std::fprintf(f, "%.17g,%.17g\n", x, sample_one(field, x));
  }
  std::fclose(f);
}

void write_dofs_csv(const Field& field, const fs::path& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::fprintf(f, "dof_index,coeff\n");
  for (Eigen::Index i = 0; i < field.coeffs.size(); ++i)
    std::fprintf(f, "%ld,%.17g\n", static_cast<long>(i), field.coeffs[i]);
  std::fclose(f);
}

void write_field2d_csv(const Field2D& q, int samples, const fs::path& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::fprintf(f, "x,y,value\n");
  const double L = q.mesh->length();
  for (int i = 0; i < samples; ++i)
    for (int j = 0; j < samples; ++j) {
      const double x = (i + 0.5) * L / samples;
      const double y = (j + 0.5) * L / samples;
      std::fprintf(f, "%.17g,%.17g,%.17g\n", x, y, sample2d(q, x, y));
    }
  std::fclose(f);
}

void write_text(const fs::path& path, const std::string& body) {
  std::ofstream f(path);
  f << body;
}

void experiment_converge(const std::string& name, const ConfigMap& cfg_map,
                         const std::string& out_dir) {
  Config cfg(cfg_map, {"p", "ne", "dt-over-ne", "quad"});
  const int p = cfg.get_i("p", 3);
  const std::vector<int> nes = cfg.get_ilist("ne", "8,16,32,64,128");
  const double dt_over_ne = cfg.get_d("dt-over-ne", 0.1);
  const int quad = cfg.get_i("quad", -1);
  const ConvergenceResult r =
      name == "converge-flux" ? converge_flux(p, nes, dt_over_ne, quad)
                              : converge_material(p, nes, dt_over_ne, quad);
  write_convergence_csv(r, fs::path(out_dir) / "convergence.csv");
  write_text(fs::path(out_dir) / "plot_convergence.gp",
             "set logscale xy\nset xlabel 'n_e'\nset ylabel 'L2 error'\n"
             "set datafile separator ','\n"
             "plot 'convergence.csv' using 1:2 with linespoints title "
             "'original', '' using 1:3 with linespoints title 'PG'\n");
}

void experiment_advect1d(const ConfigMap& cfg_map, const std::string& out_dir) {
  Config cfg(cfg_map,
             {"p", "ne", "u", "dt", "T", "operator", "quad", "tuning",
              "record-every", "scheme"});
  const int p = cfg.get_i("p", 5);
  const int ne = cfg.get_i("ne", 20);
  const double dt = cfg.get_d("dt", 0.005);
  const double T = cfg.get_d("T", 2.5);
  const double tuning = cfg.get_d("tuning", 1.0);
  const int quad = cfg.get_i("quad", -1);
  const OperatorKind kind = operator_kind_from_string(cfg.get("operator", "A"));

  PeriodicMesh1D mesh(ne, 1.0, p);
  const VelocityModel vel =
      velocity_from_spec(cfg.get("u", "const:0.4"), mesh);
  const AdvectionOperator op =
      build_operator(kind, mesh, vel, dt, quad, tuning);
  const Field q0 = project_to_Q(mesh, tanh_profile, quad);

  TimeLoopConfig loop;
  loop.dt = dt;
  loop.n_steps = static_cast<int>(std::llround(T / dt));
  loop.scheme = cfg.get("scheme", "centered") == "rk3" ? Scheme::Rk3
                                                       : Scheme::Centered;
  loop.record_every = cfg.get_i("record-every", 10);
  const RunResult result = run(loop, op, q0);

  write_history_csv(result.history,
                    (fs::path(out_dir) / "diagnostics.csv").string());
  write_field_csv(result.final_state, 8 * ne * p,
                  fs::path(out_dir) / "final_state.csv");
  write_dofs_csv(result.final_state, fs::path(out_dir) / "final_dofs.csv");
  write_field_csv(q0, 8 * ne * p, fs::path(out_dir) / "initial_state.csv");
  write_text(fs::path(out_dir) / "plot_advect1d.gp",
             "set datafile separator ','\nset xlabel 'x'\nset ylabel 'q'\n"
             "plot 'initial_state.csv' using 1:2 with lines title 'initial', "
             "'final_state.csv' using 1:2 with lines title 'final'\n");
}

void experiment_dispersion(const ConfigMap& cfg_map,
                           const std::string& out_dir) {
  Config cfg(cfg_map, {"p", "ne", "u", "dt", "quad", "tuning"});
  const int p = cfg.get_i("p", 3);
  const int ne = cfg.get_i("ne", 40);
  const double dt = cfg.get_d("dt", 0.005);
  const double tuning = cfg.get_d("tuning", 1.0);
  const int quad = cfg.get_i("quad", -1);

  PeriodicMesh1D mesh(ne, 1.0, p);
  const VelocityModel vel =
      velocity_from_spec(cfg.get("u", "const:0.4"), mesh);
  for (const OperatorKind kind :
       {OperatorKind::A, OperatorKind::A_PG, OperatorKind::B_PG}) {
    const AdvectionOperator op =
        build_operator(kind, mesh, vel, dt, quad, tuning);
    const auto records = dispersion_relation(mesh, op);
    write_dispersion_csv(records, (fs::path(out_dir) /
                                   ("dispersion_" + to_string(kind) + ".csv"))
                                      .string());
  }
  write_text(fs::path(out_dir) / "plot_dispersion.gp",
             "set datafile separator ','\nset xlabel 'k'\n"
             "plot 'dispersion_A.csv' using 1:3 title 'A imag', "
             "'dispersion_A_PG.csv' using 1:3 title 'A_{PG} imag', "
             "'dispersion_B_PG.csv' using 1:3 title 'B_{PG} imag', "
             "'dispersion_A_PG.csv' using 1:2 title 'A_{PG} real'\n");
}

void experiment_stability(const ConfigMap& cfg_map,
                          const std::string& out_dir) {
  Config cfg(cfg_map, {"p", "ne", "u", "dt", "cfl-max", "cfl-count", "quad"});
  const int p = cfg.get_i("p", 3);
  const int ne = cfg.get_i("ne", 20);
  const double u = cfg.get_d("u", 0.4);
  const double dt = cfg.get_d("dt", 0.005);
  const int quad = cfg.get_i("quad", -1);

  PeriodicMesh1D mesh(ne, 1.0, p);
  const VelocityModel vel = VelocityModel::analytic([u](double) { return u; });
  const Eigen::MatrixXd MQ = mass_Q(mesh, quad);

  // unit-circle plots for the centered map of A, A_PG, B_PG at fixed dt
  for (const OperatorKind kind :
       {OperatorKind::A, OperatorKind::A_PG, OperatorKind::B_PG}) {
    const AdvectionOperator op = build_operator(kind, mesh, vel, dt, quad);
    const Eigenpairs amp = amplification_spectrum(MQ, op.matrix, dt);
    std::FILE* f = std::fopen((fs::path(out_dir) /
                               ("stab_region_" + to_string(kind) + ".csv"))
                                  .c_str(),
                              "w");
    if (!f) throw std::runtime_error("cannot open stab_region csv");
    std::fprintf(f, "omega_re,omega_im\n");
    for (Eigen::Index i = 0; i < amp.values.size(); ++i)
      std::fprintf(f, "%.17g,%.17g\n", amp.values[i].real(),
                   amp.values[i].imag());
    std::fclose(f);
  }

  // CFL x wavenumber scan of the A_PG map
  const double cfl_max = cfg.get_d("cfl-max", 1.0);
  const int cfl_count = cfg.get_i("cfl-count", 10);
  std::vector<double> cfls;
  for (int i = 1; i <= cfl_count; ++i) cfls.push_back(cfl_max * i / cfl_count);
  const StabilityScan scan = stability_scan(mesh, u, cfls);
  write_scan_csv(scan, (fs::path(out_dir) / "a_stability.csv").string());
  write_text(fs::path(out_dir) / "plot_stability.gp",
             "set datafile separator ','\n"
             "set xlabel 'CFL'\nset ylabel 'k'\n"
             "splot 'a_stability.csv' using 1:2:3 with points palette "
             "title '|omega|'\n");
}

void experiment_advect2d(const ConfigMap& cfg_map, const std::string& out_dir) {
  Config cfg(cfg_map,
             {"kind", "p", "ne", "ux", "uy", "dt", "T", "upwind", "snapshots"});
  const std::string kind = cfg.get("kind", "translation");
  const int p = cfg.get_i("p", 3);
  const int ne = cfg.get_i("ne", 16);
  const bool upwind = cfg.get_i("upwind", 1) != 0;

  Report2D rep;
  if (kind == "translation") {
    const double ux = cfg.get_d("ux", 1.0);
    const double uy = cfg.get_d("uy", 0.5);
    const double T = cfg.get_d("T", 2.0);
    const double dt = cfg.get_d("dt", 1.0 / (12.0 * ne));
    rep = run_translation2d(ne, p, ux, uy, dt, T, upwind);
  } else if (kind == "deformational") {
    const double T = cfg.get_d("T", 1.5);
    const double dt = cfg.get_d("dt", T / (96.0 * ne / 8));
    rep = run_deformational2d(ne, p, dt, T, upwind);
  } else {
    throw std::invalid_argument("advect2d kind must be translation|deformational");
  }

  write_field2d_csv(rep.final_state, cfg.get_i("snapshots", 2 * ne * p),
                    fs::path(out_dir) / "final_state.csv");
  json report;
  report["kind"] = kind;
  report["l2_error_final"] = rep.l2_error_final;
  report["max_step_mass_error"] = rep.max_step_mass_error;
  report["final_mass"] = rep.final_diag.mass;
  report["final_energy"] = rep.final_diag.energy;
  report["final_total_variation"] = rep.final_diag.total_variation;
  report["final_max_abs"] = rep.final_diag.max_abs;
  report["mass_error_series"] = rep.mass_error;
  report["times"] = rep.times;
  std::ofstream rf(fs::path(out_dir) / "report.json");
  rf << report.dump(2) << "\n";
}

}  // namespace

void run_experiment(const std::string& name, const ConfigMap& config,
                    const std::string& out_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  fs::create_directories(out_dir);
  if (name == "converge-flux" || name == "converge-material") {
    experiment_converge(name, config, out_dir);
  } else if (name == "advect1d") {
    experiment_advect1d(config, out_dir);
  } else if (name == "dispersion") {
    experiment_dispersion(config, out_dir);
  } else if (name == "stability") {
    experiment_stability(config, out_dir);
  } else if (name == "advect2d") {
    experiment_advect2d(config, out_dir);
  } else {
    throw std::invalid_argument("unknown experiment: " + name);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_manifest(out_dir, name, config, secs);
}

}  // namespace mmadv
