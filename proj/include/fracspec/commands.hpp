// Subcommands of the fracspec command-line tool.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fracspec/config.hpp"

namespace fracspec::cli {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitIo = 3 };

// Each command reads its keys from `cfg`, writes artifacts into the
// directory named by the `out` key and a manifest.txt echoing the resolved
// configuration. Progress lines go to `log`.
void cmd_poisson(const RunConfig& cfg, std::ostream& log);
void cmd_denoise(const RunConfig& cfg, std::ostream& log);
void cmd_denoise_opt(const RunConfig& cfg, std::ostream& log);
void cmd_allen_cahn(const RunConfig& cfg, std::ostream& log);
void cmd_cahn_hilliard(const RunConfig& cfg, std::ostream& log);
void cmd_converge(const RunConfig& cfg, std::ostream& log);

const std::vector<std::string>& command_names();

/// Loads the optional config file, applies "--key value" overrides, runs the
/// command and maps failures to exit codes (2 config, 3 I/O).
int run_command(const std::string& command, const std::optional<std::filesystem::path>& config,
                const std::vector<std::string>& overrides, std::ostream& log, std::ostream& err);

}  // namespace fracspec::cli
