#pragma once

#include <iosfwd>

namespace qsub::cli {

/// Parses argv, dispatches the subcommand and maps library errors to exit
/// codes. CSV goes to --out (or `out`), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qsub::cli
