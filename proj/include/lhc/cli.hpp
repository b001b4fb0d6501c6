#pragma once

#include <iosfwd>

namespace lhc::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    /// Verified / colorable / minor present / certificate accepted.
    positive = 0,
    /// A successful negative determination: refuted, not colorable, minor-free, rejected.
    negative = 1,
    usage_error = 2,
    resource_limit = 3,
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace lhc::cli
