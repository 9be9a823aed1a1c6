#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bellqft::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kValidation = 2, kNumerical = 3 };

/// Runs one command line. CSV goes to `out` unless --out names a file;
/// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a, used for the configuration digest in output headers.
std::uint64_t fnv1a(const std::string& text) noexcept;

}  // namespace bellqft::cli
