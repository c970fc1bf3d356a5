// Command-line harness for the advection experiments. Talks to the shared
// library exclusively through the C API.
#include <cstdio>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "mmadv/mmadv.h"

namespace {

struct ExperimentArgs {
  std::map<std::string, std::string> values;
  std::string out_dir = "out";
};

void add_option(CLI::App* cmd, ExperimentArgs& args, const std::string& flag,
                const std::string& key, const std::string& help) {
  cmd->add_option_function<std::string>(
      flag, [&args, key](const std::string& v) { args.values[key] = v; }, help);
}

int run(const std::string& name, const ExperimentArgs& args) {
  mmadv_config* cfg = mmadv_config_create();
  for (const auto& [k, v] : args.values) mmadv_config_set(cfg, k.c_str(), v.c_str());
  const mmadv_status st =
      mmadv_run_experiment(name.c_str(), cfg, args.out_dir.c_str());
  mmadv_config_destroy(cfg);
  if (st != MMADV_OK) {
    std::fprintf(stderr, "mmadv: %s failed: %s\n", name.c_str(),
                 mmadv_last_error());
    return st == MMADV_ERR_INVALID_ARGUMENT ? 2 : 3;
  }
  std::printf("wrote results to %s\n", args.out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed mimetic spectral element advection experiments"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value config file");
  app.allow_config_extras(CLI::config_extras_mode::error);

  ExperimentArgs args;
  app.add_option("-o,--out", args.out_dir, "Output directory");

  auto* cflux = app.add_subcommand("converge-flux", "Mass flux L2 convergence");
  auto* cmat =
      app.add_subcommand("converge-material", "Material operator convergence");
  for (auto* cmd : {cflux, cmat}) {
    add_option(cmd, args, "--p", "p", "Polynomial degree");
    add_option(cmd, args, "--ne", "ne", "Comma-separated element counts");
    add_option(cmd, args, "--dt-over-ne", "dt-over-ne", "Upwinding dt * n_e");
    add_option(cmd, args, "--quad", "quad", "Quadrature points per element");
  }

  auto* adv = app.add_subcommand("advect1d", "Advect the tanh profile");
  add_option(adv, args, "--p", "p", "Polynomial degree");
  add_option(adv, args, "--ne", "ne", "Element count");
  add_option(adv, args, "--u", "u", "Velocity spec (const:<v>|manufactured)");
  add_option(adv, args, "--dt", "dt", "Time step");
  add_option(adv, args, "--T", "T", "Final time");
  add_option(adv, args, "--operator", "operator", "A|B|A_PG|B_PG|S|S_PG");
  add_option(adv, args, "--scheme", "scheme", "centered|rk3");
  add_option(adv, args, "--tuning", "tuning", "Upwind distance factor");
  add_option(adv, args, "--record-every", "record-every", "Diagnostic stride");
  add_option(adv, args, "--quad", "quad", "Quadrature points per element");

  auto* disp = app.add_subcommand("dispersion", "Dispersion relations");
  add_option(disp, args, "--p", "p", "Polynomial degree");
  add_option(disp, args, "--ne", "ne", "Element count");
  add_option(disp, args, "--u", "u", "Velocity spec");
  add_option(disp, args, "--dt", "dt", "Upwinding time step");
  add_option(disp, args, "--tuning", "tuning", "Upwind distance factor");
  add_option(disp, args, "--quad", "quad", "Quadrature points per element");

  auto* stab = app.add_subcommand("stability", "Amplification spectra and scan");
  add_option(stab, args, "--p", "p", "Polynomial degree");
  add_option(stab, args, "--ne", "ne", "Element count");
  add_option(stab, args, "--u", "u", "Constant velocity value");
  add_option(stab, args, "--dt", "dt", "Time step for the circle plots");
  add_option(stab, args, "--cfl-max", "cfl-max", "Largest scanned CFL");
  add_option(stab, args, "--cfl-count", "cfl-count", "Scan resolution");
  add_option(stab, args, "--quad", "quad", "Quadrature points per element");

  auto* a2d = app.add_subcommand("advect2d", "Doubly periodic plane tests");
  add_option(a2d, args, "--kind", "kind", "translation|deformational");
  add_option(a2d, args, "--p", "p", "Polynomial degree");
  add_option(a2d, args, "--ne", "ne", "Elements per dimension");
  add_option(a2d, args, "--ux", "ux", "Translation velocity x");
  add_option(a2d, args, "--uy", "uy", "Translation velocity y");
  add_option(a2d, args, "--dt", "dt", "Time step");
  add_option(a2d, args, "--T", "T", "Final time");
  add_option(a2d, args, "--upwind", "upwind", "1 to enable upwinding, 0 off");
  add_option(a2d, args, "--snapshots", "snapshots", "Grid size of CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  return run(app.get_subcommands().front()->get_name(), args);
}
