#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "coprime/json.hpp"

namespace coprime {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int falsified = 1;
inline constexpr int budget = 2;
inline constexpr int usage = 64;
inline constexpr int internal = 70;
}  // namespace exit_code

/// Entry point behind the `coprime` binary. argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The document with its "diagnostics" member removed, for comparing runs.
ordered_json without_diagnostics(ordered_json doc);

}  // namespace coprime
