#ifndef SRN_CLI_HPP
#define SRN_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace srn {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "1";

enum ExitCode { kExitOk = 0, kExitVerdictLimited = 1, kExitInputError = 2, kExitInternal = 3 };

/// Runs one `srn` command. `args` excludes the program name. The JSON report
/// goes to `out`, usage text and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace srn

#endif  // SRN_CLI_HPP
