#pragma once

namespace foldex::cli {

/// Entry point of the foldex tool. Returns the process exit code: 0 on
/// success, 2 when detection ran but found no folds, 1 on any error.
int run(int argc, const char* const* argv);

/// Applies FOLDEX_LOG (trace, debug, info, warn, error, off) to the
/// diagnostic logger on stderr. Unset means warn.
void configure_logging();

}  // namespace foldex::cli
