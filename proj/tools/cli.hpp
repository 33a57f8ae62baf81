#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mobius::cli {

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kFail = 2;
inline constexpr int kInconclusive = 3;
inline constexpr int kUsage = 64;
inline constexpr int kData = 65;
inline constexpr int kInternal = 70;

/// Runs one command line (without the program name). Reports go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The one invocation per theorem id printed by --list.
struct Invocation {
    std::string theorem_id;
    std::vector<std::string> args;
};
const std::vector<Invocation>& invocations();

/// Every theorem id known to the bounds, delta and harmonic modules.
std::vector<std::string> registry_ids();

}  // namespace mobius::cli
