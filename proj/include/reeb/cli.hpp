#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace reeb::cli {

inline constexpr const char* kToolName = "reeb";
inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchema = 1;

// Runs one subcommand. Returns 0 on success, 1 on a domain error, 2 on a
// usage error. Output is deterministic for identical inputs.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace reeb::cli
