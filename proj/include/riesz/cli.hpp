#pragma once

#include <iosfwd>

namespace riesz::cli {

enum ExitCode : int { ok = 0, usage = 1, domain = 2, size_cap = 3 };

/// Runs one subcommand (component, validate, converge, ga, basis, filter).
/// Results go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace riesz::cli
