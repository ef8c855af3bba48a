#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "isoplab/report.hpp"

namespace isoplab {

struct AcceptanceOptions {
  std::uint64_t seed = 1;
  /// Reduced instance counts; the checks themselves are unchanged.
  bool quick = false;
};

struct CriterionResult {
  CriterionResult(int id, std::string title) : id(id), title(std::move(title)) {}

  int id;
  std::string title;
  bool passed = false;
  std::size_t instances = 0;
  std::size_t failures = 0;
  /// Logged observations that do not fail the criterion.
  std::size_t findings = 0;
  /// Exact counts and a digest of every per-instance report.
  Json summary = Json::object();
  std::vector<std::string> messages;

  Json to_json() const;
  /// "[PASS] 1. <title> (...)" style scorecard line.
  std::string scorecard_line() const;
};

/// Criteria 1-7.
std::vector<CriterionResult> run_criteria(const AcceptanceOptions& opts);

/// Criteria 1-7 followed by criterion 8, which reruns 1-7 with the same seed
/// and compares the serialized machine reports byte for byte.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

/// One JSON object per criterion, newline-terminated; free of timings.
std::string machine_report(const std::vector<CriterionResult>& results);

}  // namespace isoplab
