#ifndef HEBBNET_TOOLS_CLI_HPP_
#define HEBBNET_TOOLS_CLI_HPP_

#include <iosfwd>

namespace hebbnet::cli {

/// Default data directory when --data-dir is absent.
inline constexpr const char* kDataDirEnv = "HEBBNET_DATA_DIR";

/// Entry point of the `hebbnet` tool. Results go to `out`, diagnostics to
/// `err`. Returns the process exit status: 0 on success, 1 when a command
/// fails, and CLI11's nonzero code on usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hebbnet::cli

#endif  // HEBBNET_TOOLS_CLI_HPP_
