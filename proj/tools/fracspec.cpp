#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fracspec/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Fourier spectral solvers for fractional PDEs on the periodic torus"};
  app.require_subcommand(1);

  std::string config;
  for (const auto& name : fracspec::cli::command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "key = value configuration file");
    sub->allow_extras();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fracspec::cli::kExitConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::optional<std::filesystem::path> path =
      config.empty() ? std::nullopt : std::optional<std::filesystem::path>(config);
  return fracspec::cli::run_command(sub->get_name(), path, sub->remaining(), std::cout, std::cerr);
}
