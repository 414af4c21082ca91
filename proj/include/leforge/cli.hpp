#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

namespace leforge {

inline constexpr const char* kVersion = "leforge 0.1.0";

enum ExitCode : int { kOk = 0, kVerdictFailed = 1, kPrecondition = 2, kParse = 3, kResource = 4 };

/// Command-line overrides; unset fields fall back to the job's options.
struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> k_max;
  std::optional<unsigned> max_degree;
};

struct RunResult {
  nlohmann::json report;
  int exit_code = kOk;
};

/// Parse and run a job document. Never throws for bad input; errors land in
/// report["error"] with the matching exit code.
RunResult run_job_text(const std::string& text, const RunOverrides& ov = {});
RunResult run_job(const nlohmann::json& job, const RunOverrides& ov = {});

std::string render_json(const nlohmann::json& report);
std::string render_text(const nlohmann::json& report);

/// "PASS 2 = 2" or "FAIL 3 ≠ 2".
std::string render_verdict(bool pass, std::int64_t lhs, std::int64_t rhs);

}  // namespace leforge
