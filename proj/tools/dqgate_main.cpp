#include <iostream>

#include <CLI11.hpp>

#include "dqgate/cli.hpp"

int main(int argc, char** argv) {
  using dqgate::cli::Command;
  dqgate::cli::RunConfig cfg;

  CLI::App app{"Two-spin gate simulation, exchange tables and XOR pulse design"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dqgate 0.1.0");

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("-o,--out", cfg.output_path, "Output file (default stdout)");
    sub->add_option("--rel-tol", cfg.rel_tol, "Integrator relative tolerance");
    sub->add_option("--abs-tol", cfg.abs_tol, "Integrator absolute tolerance");
  };

  auto* sim = app.add_subcommand("simulate", "Propagator trajectory of a pulse file as CSV");
  sim->add_option("-c,--config", cfg.config_path, "Pulse definition file")
      ->required()
      ->check(CLI::ExistingFile);
  add_common(sim);

  auto* exch = app.add_subcommand("exchange", "Heitler-London exchange J over a field sweep");
  exch->add_option("--preset", cfg.preset, "Material preset")->capture_default_str();
  exch->add_option("--sweep", cfg.sweep, "Field grid B=start:stop:step (tesla)")
      ->capture_default_str();
  exch->add_option("--dB", cfg.field_difference,
                   "B1 - B2 at every grid point (tesla)");
  double d = 0.0;
  auto* d_opt = exch->add_option("--d", d, "Half separation in Bohr radii");
  add_common(exch);

  auto* des = app.add_subcommand("design-xor", "Design an XOR pulse and print it as JSON");
  des->add_option("--family", cfg.family, "proportional, constant or adiabatic")
      ->capture_default_str();
  des->add_option("--n", cfg.n, "Winding index n")->capture_default_str();
  des->add_option("--m", cfg.m, "Index m")->capture_default_str();
  des->add_option("--shape", cfg.shape, "q(t) shape: constant, sech, ramp");
  des->add_option("--amplitude", cfg.amplitude, "q amplitude (rad/ps)");
  des->add_option("--rate", cfg.rate, "sech rate (rad/ps)");
  des->add_option("--rise-time", cfg.rise_time, "ramp rise time (ps)");
  des->add_option("--c", cfg.c, "Constant B- of the sech family (rad/ps)");
  des->add_option("--window", cfg.window, "Longest admissible gate time (ps)");
  des->add_option("--J-ueV", cfg.exchange_uev, "Constant exchange (micro eV)");
  des->add_option("--bminus-mT", cfg.bminus_mt,
                  "Field difference giving B- (millitesla, g = -0.44)");
  des->add_option("--preset", cfg.preset, "Material preset");
  add_common(des);

  auto* ver = app.add_subcommand("verify", "Closed forms against the numerical oracle");
  ver->add_option("--seed", cfg.seed, "Seed for the random pulse set")
      ->capture_default_str();
  add_common(ver);

  CLI11_PARSE(app, argc, argv);

  if (sim->parsed()) cfg.command = Command::Simulate;
  if (exch->parsed()) cfg.command = Command::Exchange;
  if (des->parsed()) cfg.command = Command::DesignXor;
  if (ver->parsed()) cfg.command = Command::Verify;
  if (d_opt->count() > 0) cfg.d = d;

  return dqgate::cli::run(cfg, std::cout, std::cerr);
}
