#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "trimod/io.hpp"

namespace trimod::cli {

inline constexpr int kSuccess = 0;
inline constexpr int kNegative = 1;
inline constexpr int kInputError = 2;

struct CommandResult {
  int exit_code = kSuccess;
  std::string report;   // human-readable, printed to stdout (stderr for input errors)
  std::string data;     // extra stdout payload such as CSV
  std::optional<io::json> machine;
  std::optional<std::string> json_path;
};

// Arguments exclude the program name.
CommandResult run(const std::vector<std::string>& args);

// run() plus printing and writing the --json report.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trimod::cli
