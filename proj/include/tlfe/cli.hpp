#ifndef TLFE_CLI_HPP
#define TLFE_CLI_HPP

#include <iosfwd>

namespace tlfe {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUnsatisfiable = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `tlfe` command line tool. Subcommands: compile,
/// commits, run, bench, render. Returns 0 on success, 1 when a run ends
/// unsatisfiable, 2 on usage or input errors.
///
/// Log verbosity is read from TLFE_LOG (quiet, info, debug; default info).
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tlfe

#endif  // TLFE_CLI_HPP
