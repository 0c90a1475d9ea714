#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace modzeros::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kInvalidInput = 2,
    kNumericalFailure = 3,
};

/// Runs one subcommand; args exclude the program name. Data goes to `out`
/// (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Resolves "--m" values: an integer, "last", or "last-N" relative to ell.
/// Throws std::invalid_argument for malformed text or last-N with N > ell.
int resolve_vanishing_order(const std::string& text, int ell);

/// k_min, k_min + step, ... when step > 0, otherwise k_min, 2 k_min, 4 k_min, ...
/// Throws std::invalid_argument unless 0 < k_min <= k_max, step >= 0, all even.
std::vector<int> weight_grid(int k_min, int k_max, int k_step);

} // namespace modzeros::cli
