#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "allee/bifurcation.hpp"
#include "allee/config.hpp"

namespace allee {

inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 1;
inline constexpr int exit_numerical = 2;

/// Transcritical (analytic) and Hopf (root-found) points of the swept parameter
/// that fall inside the sweep range. Hopf brackets come from the config when
/// given, otherwise from sign changes of tr(J_E5) on the sweep grid.
std::vector<CriticalPoint> critical_points_in_range(const RunConfig& cfg, std::vector<std::string>* notes = nullptr);

/// Runs one of equilibria, stability, simulate, sweep, critical, basin and
/// writes its report to `out`. Returns the process exit code.
int run_subcommand(std::string_view name, const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line: argument parsing, config loading, overrides, dispatch.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace allee
