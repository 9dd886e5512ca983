#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace rmdirac::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_check_failed = 1,
    exit_invalid_input = 2,
    exit_no_bound_states = 3,
    exit_not_converged = 4,
};

int cmd_potential(const RunConfig& rc, const std::optional<std::string>& preset, std::ostream& out);
int cmd_spectrum(const RunConfig& rc, std::ostream& out);
int cmd_wavefunction(const RunConfig& rc, std::ostream& out);
int cmd_pekeris(const RunConfig& rc, std::ostream& out);
int cmd_validate(const RunConfig& rc, std::ostream& out);

/// Full front end: parses argv, runs one command, maps library errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rmdirac::cli
