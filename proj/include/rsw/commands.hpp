#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace rsw {

enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_config_error = 2, exit_runtime_abort = 3 };

// Command-line values; unset entries fall back to the config file.
struct CommandOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> output;
  std::optional<bool> oracle;
  std::string scope = "all";
  std::optional<std::filesystem::path> mutation;
};

int cmd_verify(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_evolve(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_dispersion(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_beam(const CommandOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace rsw
