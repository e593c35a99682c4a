#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace jd {

struct CaseResult {
  std::string id;
  std::string expected;
  std::string computed;
  std::string status;  // "pass" | "fail" | "skipped-resource"
};

struct SuiteParams {
  int genus = 0;  // 0 = suite default range
  uint64_t seed = 0x6a64;
  bool timings = false;
};

struct Report {
  std::string suite;
  std::map<std::string, std::string> params;
  std::vector<CaseResult> cases;
  bool passed = true;   // false iff any case failed; skips never count as pass
  long wall_ms = 0;

  std::string to_json(bool with_timings) const;
  std::string summary() const;
};

using SuiteFn = Report (*)(const SuiteParams&);

const std::vector<std::string>& suite_names();
bool suite_exists(const std::string& id);

// Runs a registered suite; throws std::invalid_argument for unknown ids.
Report run_suite(const std::string& id, const SuiteParams& params);

}  // namespace jd
