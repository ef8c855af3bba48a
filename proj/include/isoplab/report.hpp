#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "isoplab/rational.hpp"

namespace isoplab {

using Json = nlohmann::ordered_json;

enum class ReportKind {
  Lemma31,
  HalfMass,
  PreimageBound,
  DisplacementBound,
  Theorem,
  Csc,
  BoundaryCmp,
};

std::string_view to_string(ReportKind kind);

enum class Relation { Equal, Less, LessEqual, Greater, GreaterEqual };

std::string_view to_string(Relation rel);
bool evaluate(const Rational& lhs, Relation rel, const Rational& rhs);

/// One exact comparison `lhs rel rhs`. Required conditions decide the
/// verdict; the others are recorded as findings.
struct Condition {
  std::string name;
  Rational lhs;
  Relation relation;
  Rational rhs;
  bool required = true;

  bool holds() const { return evaluate(lhs, relation, rhs); }
};

/// Exact record of a single check. The first condition is the headline
/// comparison and supplies lhs/rhs in the serialized form.
struct VerificationReport {
  ReportKind kind;
  std::string group;
  std::string set_descriptor;
  std::optional<std::size_t> d;
  std::optional<std::string> gamma0;
  std::vector<Condition> conditions;
  Json details = Json::object();
  /// Echo of the run configuration that produced the report.
  Json config = Json::object();

  const Condition& headline() const { return conditions.front(); }
  const Rational& lhs() const { return headline().lhs; }
  const Rational& rhs() const { return headline().rhs; }
  bool strict() const;

  /// Recomputed from the stored quantities on every call.
  bool holds() const;

  /// lhs / rhs when rhs is non-zero.
  std::optional<Rational> sharpness() const;

  /// Failed non-required conditions, e.g. the right-multiplication boundary
  /// comparison in a non-abelian group.
  std::vector<std::string> findings() const;

  Json to_json() const;
};

/// Single-line JSON (one report per line in JSONL output).
std::string to_jsonl(const VerificationReport& report);

/// CSV header and row matching the flat JSON fields.
std::string csv_header();
std::string to_csv_row(const VerificationReport& report);

/// One human-readable line; rationals are printed exactly.
std::string to_human(const VerificationReport& report);

}  // namespace isoplab
