#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "etaq/congruence.hpp"

namespace etaq::cli {

inline constexpr const char* kVersion = "0.1.0";

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPrecision = 3;
inline constexpr int kExitInternal = 1;

// One command invocation and its payload. Numeric payload values are decimal
// strings so that arbitrarily large coefficients survive JSON round trips.
struct OutputRecord {
  std::string command;
  std::string spec;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::string version = kVersion;

  nlohmann::json to_json() const;
  static OutputRecord from_json(const nlohmann::json& j);
  // Sorted keys, two-space indent, trailing newline.
  std::string dump() const;
};

struct ExpandArgs {
  std::string spec;
  std::int64_t precision = 20;
  std::int64_t start = 0;
  std::optional<std::int64_t> index;
  std::optional<std::int64_t> modulus;
};

struct ScanArgs {
  std::string spec;
  std::int64_t horizon = kDefaultScanHorizon;
  std::vector<std::int64_t> primes;  // empty: use the class bound
  std::int64_t cap = 13;
};

struct ResidueArgs {
  std::string spec;
  std::int64_t ell = 0;
  std::int64_t a = 0;
  std::int64_t horizon = kDefaultRefuteHorizon;
  std::int64_t max_sturm = kDefaultMaxSturmPrecision;
};

struct ClassifyArgs {
  std::int64_t from = 2;
  std::int64_t to = 30;
  std::int64_t horizon = 5'000;
};

struct AuditArgs {
  std::string spec;
  std::int64_t from = 7;
  std::int64_t to = 31;
  std::int64_t horizon = kDefaultRefuteHorizon;
};

struct FormArgs {
  std::string form;  // delta, E4, E6 or F
  std::int64_t ell = 5;
  std::string spec;  // for F
  std::optional<std::int64_t> precision;
};

OutputRecord cmd_expand(const ExpandArgs& args);
OutputRecord cmd_scan(const ScanArgs& args);
OutputRecord cmd_refute(const ResidueArgs& args);
OutputRecord cmd_certify(const ResidueArgs& args);
OutputRecord cmd_classify(const ClassifyArgs& args);
OutputRecord cmd_audit(const AuditArgs& args);
OutputRecord cmd_theta_cycle(const FormArgs& args);
OutputRecord cmd_filtration(const FormArgs& args);

std::string render_human(const OutputRecord& record);
// Only classify has a CSV form.
std::string render_csv(const OutputRecord& record);

// Full command line: parses argv, runs one subcommand, writes to out/err and
// returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace etaq::cli
