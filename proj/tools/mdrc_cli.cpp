#include <string>

#include <CLI11.hpp>

#include "mdrc/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Controller synthesis and closed-loop simulation for "
               "second-order discrete-time plants with mismatched disturbances"};
  app.require_subcommand(1);

  std::string out_dir = "out";
  bool verify = false;
  std::string config_path;

  auto* example1 = app.add_subcommand(
      "example1", "Benchmark plant: preview compensation vs. DC-nulling baseline");
  example1->add_option("--out", out_dir, "Output directory")->capture_default_str();
  example1->add_flag("--verify", verify, "Run and print the oracle checks");

  auto* pmdc = app.add_subcommand(
      "pmdc", "PMDC motor speed control under a load-torque step");
  pmdc->add_option("--out", out_dir, "Output directory")->capture_default_str();
  pmdc->add_flag("--verify", verify, "Run and print the oracle checks");

  auto* sim = app.add_subcommand("simulate", "Run a scenario described by a JSON config");
  sim->add_option("--config", config_path, "Path to the scenario config")->required();
  sim->add_option("--out", out_dir, "Output directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (example1->parsed())
    return mdrc::execute_guarded([&] { return mdrc::run_example1(out_dir, verify); });
  if (pmdc->parsed())
    return mdrc::execute_guarded([&] { return mdrc::run_pmdc(out_dir, verify); });
  return mdrc::execute_guarded(
      [&] { return mdrc::run_config_file(config_path, out_dir); });
}
