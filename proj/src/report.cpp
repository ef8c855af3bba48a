#include "isoplab/report.hpp"

#include <sstream>

namespace isoplab {

std::string_view to_string(ReportKind kind) {
  switch (kind) {
    case ReportKind::Lemma31: return "lemma31";
    case ReportKind::HalfMass: return "half_mass";
    case ReportKind::PreimageBound: return "preimage_bound";
    case ReportKind::DisplacementBound: return "displacement_bound";
    case ReportKind::Theorem: return "theorem";
    case ReportKind::Csc: return "csc";
    case ReportKind::BoundaryCmp: return "boundary_cmp";
  }
  return "unknown";
}

std::string_view to_string(Relation rel) {
  switch (rel) {
    case Relation::Equal: return "==";
    case Relation::Less: return "<";
    case Relation::LessEqual: return "<=";
    case Relation::Greater: return ">";
    case Relation::GreaterEqual: return ">=";
  }
  return "?";
}

bool evaluate(const Rational& lhs, Relation rel, const Rational& rhs) {
  switch (rel) {
    case Relation::Equal: return lhs == rhs;
    case Relation::Less: return lhs < rhs;
    case Relation::LessEqual: return lhs <= rhs;
    case Relation::Greater: return lhs > rhs;
    case Relation::GreaterEqual: return lhs >= rhs;
  }
  return false;
}

bool VerificationReport::strict() const {
  auto rel = headline().relation;
  return rel == Relation::Less || rel == Relation::Greater;
}

bool VerificationReport::holds() const {
  for (const auto& c : conditions)
    if (c.required && !c.holds()) return false;
  return !conditions.empty();
}

std::optional<Rational> VerificationReport::sharpness() const {
  if (rhs().num() == 0) return std::nullopt;
  return lhs() / rhs();
}

std::vector<std::string> VerificationReport::findings() const {
  std::vector<std::string> out;
  for (const auto& c : conditions) {
    if (c.required || c.holds()) continue;
    out.push_back(c.name + ": " + c.lhs.to_string() + " " + std::string(to_string(c.relation)) +
                  " " + c.rhs.to_string() + " is false");
  }
  return out;
}

namespace {

Json optional_field(const auto& v) {
  if (v) return Json(*v);
  return Json(nullptr);
}

}  // namespace

Json VerificationReport::to_json() const {
  Json j;
  j["kind"] = to_string(kind);
  j["group"] = group;
  j["set_descriptor"] = set_descriptor;
  j["d"] = optional_field(d);
  j["gamma0"] = optional_field(gamma0);
  j["lhs_num"] = lhs().num();
  j["lhs_den"] = lhs().den();
  j["rhs_num"] = rhs().num();
  j["rhs_den"] = rhs().den();
  j["relation"] = to_string(headline().relation);
  j["strict"] = strict();
  j["verdict"] = holds() ? "holds" : "fails";
  auto sharp = sharpness();
  j["sharpness_num"] = sharp ? Json(sharp->num()) : Json(nullptr);
  j["sharpness_den"] = sharp ? Json(sharp->den()) : Json(nullptr);
  Json conds = Json::array();
  for (const auto& c : conditions) {
    conds.push_back({{"name", c.name},
                     {"lhs", c.lhs.to_string()},
                     {"relation", to_string(c.relation)},
                     {"rhs", c.rhs.to_string()},
                     {"required", c.required},
                     {"holds", c.holds()}});
  }
  j["conditions"] = std::move(conds);
  j["details"] = details;
  j["findings"] = findings();
  j["config"] = config;
  return j;
}

std::string to_jsonl(const VerificationReport& report) { return report.to_json().dump(); }

std::string csv_header() {
  return "kind,group,set_descriptor,d,gamma0,lhs_num,lhs_den,rhs_num,rhs_den,verdict,"
         "sharpness_num,sharpness_den";
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

std::string to_csv_row(const VerificationReport& r) {
  std::ostringstream os;
  auto sharp = r.sharpness();
  os << to_string(r.kind) << ',' << csv_quote(r.group) << ',' << csv_quote(r.set_descriptor)
     << ',' << (r.d ? std::to_string(*r.d) : "") << ','
     << csv_quote(r.gamma0.value_or("")) << ',' << r.lhs().num() << ',' << r.lhs().den() << ','
     << r.rhs().num() << ',' << r.rhs().den() << ',' << (r.holds() ? "holds" : "fails") << ','
     << (sharp ? std::to_string(sharp->num()) : "") << ','
     << (sharp ? std::to_string(sharp->den()) : "");
  return os.str();
}

std::string to_human(const VerificationReport& r) {
  std::ostringstream os;
  os << to_string(r.kind) << " [" << r.group << ", " << r.set_descriptor;
  if (r.d) os << ", d=" << *r.d;
  if (r.gamma0) os << ", gamma0=" << *r.gamma0;
  os << "]: ";
  for (std::size_t i = 0; i < r.conditions.size(); ++i) {
    const auto& c = r.conditions[i];
    if (i) os << "; ";
    os << c.name << ' ' << c.lhs << ' ' << to_string(c.relation) << ' ' << c.rhs
       << (c.holds() ? " ok" : (c.required ? " FAILED" : " (finding)"));
  }
  os << " => " << (r.holds() ? "holds" : "FAILS");
  return os.str();
}

}  // namespace isoplab
