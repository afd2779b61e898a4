#pragma once

#include <cstddef>
#include <iosfwd>

#include "qsub_cli/run_config.hpp"

namespace qsub::cli {

/// Figure presets: omega = 1 and the temperature pairs (T_a, T_b) = (100, 50)
/// ("hot a") and (50, 100) ("hot b").
inline constexpr double kHotTemp = 100.0;
inline constexpr double kColdTemp = 50.0;

/// Each command writes its CSV (or text report) to `out` and returns an exit code.
int run_figure(const RunConfig& cfg, std::ostream& out);
int run_sweep(const RunConfig& cfg, std::ostream& out);
int run_compare(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int run_audit(const RunConfig& cfg, std::ostream& out);

/// Threads for sweep cells: QSUB_THERMO_THREADS if set to a positive integer,
/// otherwise the hardware concurrency; never more than `cells`.
unsigned sweep_threads(std::size_t cells);

}  // namespace qsub::cli
