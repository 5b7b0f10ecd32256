#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nfpr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Runs the `nfpr` command line. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// OUT with its extension replaced by ".nfprf".
std::string default_sidecar_path(const std::string& out_path);

}  // namespace nfpr::cli
