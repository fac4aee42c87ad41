#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "anisoperim/error.hpp"
#include "experiment.hpp"

#ifndef ANISOPERIM_VERSION
#define ANISOPERIM_VERSION "unknown"
#endif

int main(int argc, char** argv) {
  using namespace anisoperim;
  CLI::App app{"Anisotropic perimeter symmetrization experiments"};
  app.require_subcommand(1);

  std::string source, out;
  bool parallel = false;
  auto* run = app.add_subcommand("run", "Run a config file or a built-in preset");
  run->add_option("config", source, "Config path or preset name")->required();
  run->add_option("--out", out, "Output directory (overrides the config)");
  run->add_flag("--parallel", parallel, "Run suites concurrently");
  auto* list = app.add_subcommand("presets", "List built-in experiments");
  auto* version = app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*version) {
    std::cout << "anisoperim " << ANISOPERIM_VERSION << '\n';
    return 0;
  }
  if (*list) {
    for (const auto& p : cli::presets()) std::cout << p.name << "\t" << p.description << '\n';
    return 0;
  }

  cli::ExperimentConfig config;
  try {
    if (const auto* preset = cli::find_preset(source)) {
      std::istringstream in(preset->text);
      config = cli::parse_config(in, preset->name);
      config.output = preset->name;
    } else {
      config = cli::load_config(source);
    }
    if (!out.empty()) config.output = out;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  try {
    return cli::run(config, parallel, std::cout);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
