// Command-line front end and report serialization.
//
// Every command produces a ReportEnvelope:
//   {"version", "command", "params", "payload", "warnings", "timestamp"}
// with payload variants keyed by "kind": "scroll_report", "sweep", "probe" or
// "bound". Big integers and rationals are decimal strings; complex numbers are
// [re, im] pairs.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "abelscroll/scroll_invariants.hpp"
#include "abelscroll/theorem_verifier.hpp"
#include "abelscroll/theta_geometry.hpp"

namespace abelscroll {

using Json = nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 3;

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr double kDefaultTol = 1e-8;
inline constexpr const char* kOutputDirEnv = "ABELSCROLL_OUTPUT_DIR";

enum class Command { invariants, verify, family, very_ample_bound, probe_elliptic, probe_surface };
enum class OutputFormat { json, csv, text };

std::string to_string(Command c);
std::string to_string(OutputFormat f);

struct RunConfig {
  Command command = Command::invariants;

  // invariants
  int n = 2;
  int k = 2;
  int l = 7;
  BigInt cn{14};
  bool paper_check = false;
  bool expect_smooth = false;

  // verify
  SweepRange n_range{1, 60};
  SweepRange k_range{1, 60};

  // family
  int family_k_max = 10;

  // probes
  int m = 5;
  Complex tau{0.0, 1.0};
  int d = 7;
  Eigen::Matrix2cd omega = default_surface_period();
  std::vector<TorsionSpec> torsion;  // empty: command default
  std::size_t samples = 200;
  std::uint64_t seed = kDefaultSeed;
  double tol = kDefaultTol;
  std::optional<KernelIsa> kernel;   // empty: runtime detection

  std::optional<std::string> output_path;
  OutputFormat format = OutputFormat::json;

  static Eigen::Matrix2cd default_surface_period();
};

struct ReportEnvelope {
  std::string version;
  std::string command;
  Json params;
  Json payload;
  std::vector<std::string> warnings;
  std::string timestamp;
};

struct RunOutcome {
  ReportEnvelope envelope;
  int exit_code = kExitOk;
};

/// Thrown for malformed or inconsistent configuration; maps to exit code 3.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses argv (argv[0] is the program name). Throws UsageError; the message
/// includes the usage text.
RunConfig parse_args(int argc, const char* const* argv);

/// Dispatches to the verifier or probe behind `config.command`. Throws
/// UsageError for parameters the modules reject.
RunOutcome run(const RunConfig& config);

/// 1 if any probe failed, else 2 if any was inconclusive, else 0.
int probe_exit_code(const ProbeSummary& summary);

std::string render(const ReportEnvelope& env, OutputFormat format);

/// Writes to `path` through a temporary file and a rename.
void write_atomic(const std::string& path, const std::string& contents);

/// Full CLI: parse, run, render, write. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Serialization of payload pieces. The from_json functions invert to_json.
Json to_json(const ScrollReport& r);
ScrollReport scroll_report_from_json(const Json& j);
Json to_json(const SweepResult& s);
SweepResult sweep_from_json(const Json& j);
Json to_json(const ProbeSummary& s);
ProbeSummary probe_summary_from_json(const Json& j);
Json to_json(const ReportEnvelope& env);
ReportEnvelope envelope_from_json(const Json& j);

/// CSV header and rows for a payload; columns depend on payload kind.
std::string payload_csv(const Json& payload);

}  // namespace abelscroll
