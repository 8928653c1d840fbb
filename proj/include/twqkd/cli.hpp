#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "twqkd/attack_model.hpp"

namespace twqkd {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitUsage = 2, kExitInputFile = 3 };

/// identity | symmetric:<qf> | phase:<d> | file:<path>.
/// Throws ConfigError for a malformed spec, FormatError for an unreadable file.
AncillaOverlaps parse_attack_spec(const std::string& spec);

/// Entry point shared by the executable and tests. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twqkd
