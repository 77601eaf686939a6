#pragma once

// Command-line front end. `run` is the whole program minus process setup, so
// it can be driven in-process (tests compare outputs across thread counts).

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperlat::cli {

inline constexpr const char* kVersion = "0.1.0";

/// args excludes the program name. Returns 0 when a verdict was delivered
/// (including Unresolved), 1 on input errors, 2 on budget errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperlat::cli
