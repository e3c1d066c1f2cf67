#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
  namespace ps = polarspinor::cli;

  CLI::App app{"Polar-form spinor toolkit: bilinears, classification, polar decomposition, "
               "Dirac residuals and plane-wave expansion."};
  app.set_version_flag("--version", std::string(POLARSPINOR_VERSION));
  app.require_subcommand(1, 1);

  ps::JobSpec job;
  std::string output;
  const std::map<std::string, std::string> help = {
      {"classify", "Lounesto class of a spinor"},
      {"bilinears", "bilinear covariants of a spinor"},
      {"fierz", "Fierz identity residuals"},
      {"polar", "polar decomposition (regular or singular)"},
      {"dirac-check", "component and polar Dirac residuals at a point"},
      {"flagpole-matrix", "flagpole Dirac matrix from R_mu, B_mu or a connection"},
      {"expand", "doubly-chiral plane-wave expansion along a path"}};

  for (const auto& name : ps::commands()) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("input", job.input_path, "input JSON document")->required();
    sub->add_option("-o,--output", output, "report file (default: standard output)");
    sub->add_option("--tol-class", job.tol_class, "classification tolerance")->capture_default_str();
    sub->add_option("--tol-residual", job.tol_residual, "residual tolerance")->capture_default_str();
    sub->add_option("--fd-step", job.fd_step, "finite-difference step")->capture_default_str();
    sub->callback([&job, name] { job.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ps::kInputFailure;
  }
  if (!output.empty()) job.output_path = output;

  const ps::RunResult result = ps::run(job);
  const auto dest = ps::report_destination(job);
  if (dest) {
    std::ofstream out(*dest, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write report to " << dest->string() << "\n";
      return ps::kInputFailure;
    }
    out << result.text();
  } else {
    std::cout << result.text();
  }
  if (result.exit_code != ps::kPass) {
    const auto& r = result.report;
    if (r.contains("error")) std::cerr << "error: " << r["error"].get<std::string>() << "\n";
    if (r.contains("failed_check"))
      std::cerr << "tolerance failure: " << r["failed_check"].get<std::string>() << "\n";
  }
  return result.exit_code;
}
