#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

namespace ww {

enum class Command { kernel, decay, regions, quotient, nlw, norms };

/// Parsed command line: flag values are kept as strings and converted by
/// the dispatcher, rationals exactly.
struct RunConfig {
  Command command = Command::regions;
  std::map<std::string, std::string> parameters;
  std::filesystem::path output_dir;
};

/// Bad or missing flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitAdmissibility = 2;
inline constexpr int kExitConvergence = 3;

/// Output directory used when --out is absent.
inline constexpr const char* kOutputDirEnv = "WIENERWAVE_OUT";

/// JSON summaries carry this in "schema_version".
inline constexpr int kSchemaVersion = 1;

/// Runs a parsed config; JSON summary to out, diagnostics to err.
[[nodiscard]] int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with --threads applied and runs it.
[[nodiscard]] int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace ww
