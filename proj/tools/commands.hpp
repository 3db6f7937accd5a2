#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shepherd::cli {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "SHEPHERD_OUT_DIR";

/// Entry point of the `shepherd` tool. args excludes the program name.
/// Returns the process exit code; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace shepherd::cli
