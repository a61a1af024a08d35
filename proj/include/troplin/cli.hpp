#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace troplin::cli {

/// Exit codes of the command line tool.
enum ExitCode : int { ok = 0, usage_error = 1, check_failed = 2 };

enum class ColorMode { automatic, always, never };

/// Reads TROPLIN_COLOR ("auto", "always", "never"); unset means auto.
ColorMode color_mode_from_env();

/// Runs the tool on `args` (without the program name). `out_is_terminal`
/// decides colouring in automatic mode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        bool out_is_terminal = false);

}  // namespace troplin::cli
