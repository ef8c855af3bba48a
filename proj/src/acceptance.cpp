#include "isoplab/acceptance.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include "isoplab/error.hpp"
#include "isoplab/group.hpp"
#include "isoplab/isoperimetry.hpp"
#include "isoplab/metric.hpp"
#include "isoplab/oracle.hpp"
#include "isoplab/random.hpp"
#include "isoplab/search.hpp"

namespace isoplab {

namespace {

constexpr std::array<const char*, 6> kFamilies = {"z",         "zd:2",       "free:2",
                                                  "cyclic:12", "dihedral:6", "heisenberg"};
constexpr std::size_t kMaxSetSize = 60;
constexpr std::size_t kMaxRadius = 4;       // d in {0, ..., 4}
constexpr std::size_t kMaxGammaLength = 5;  // ||gamma0|| <= 5

// Stream salts keep the criteria's random instances independent.
constexpr std::uint64_t kSaltLemma = 0x4c454d4d41333100ULL;
constexpr std::uint64_t kSaltTransport = 0x5452414e53504f52ULL;
constexpr std::uint64_t kSaltBoundary = 0x424f554e44415259ULL;
constexpr std::uint64_t kSaltLayers = 0x4c41594552530000ULL;

/// FNV-1a over the serialized per-instance reports.
class Digest {
 public:
  void add(std::string_view text) {
    for (unsigned char ch : text) {
      hash_ ^= ch;
      hash_ *= 0x100000001b3ULL;
    }
    hash_ ^= '\n';
    hash_ *= 0x100000001b3ULL;
  }
  std::string hex() const {
    std::ostringstream os;
    os << std::hex << hash_;
    return os.str();
  }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

struct Instance {
  GroupSpec spec;
  FiniteSubset set;
  std::string descriptor;
};

/// Smallest radius whose ball holds at least `count` elements, or the
/// saturation radius of a finite group.
std::size_t radius_for(const GroupSpec& spec, std::size_t count) {
  BallTable table(spec, 0);
  while (table.size() < count && !table.saturated()) table.extend(table.radius() + 1);
  return table.radius();
}

/// Random non-empty D of size 1..min(60, Card(group)), alternately sampled
/// uniformly from a ball twice its size or grown as a connected set.
Instance random_instance(const GroupSpec& spec, SplitMix64& rng, std::size_t max_size) {
  std::size_t limit = max_size;
  if (auto order = group_order(spec)) limit = std::min<std::size_t>(limit, *order);
  const std::size_t size = static_cast<std::size_t>(rng.between(1, limit));
  const bool connected = rng.below(2) == 1;
  const std::uint64_t seed = rng.next();
  SetDescriptor desc = connected ? SetDescriptor::connected(size, seed)
                                 : SetDescriptor::uniform_in_ball(
                                       size, radius_for(spec, 2 * size), seed);
  return Instance{spec, generate_set(spec, desc), desc.provenance()};
}

void note_failure(CriterionResult& r, const std::string& message) {
  ++r.failures;
  if (r.messages.size() < 5) r.messages.push_back(message);
}

std::string where(const Instance& inst) { return inst.spec.name() + " " + inst.descriptor; }

// ---------------------------------------------------------------------------

struct LemmaFamilyRuns {
  CriterionResult lemma{1, "Ball-average identity exact (A = B = C)"};
  CriterionResult half_mass{2, "Half-mass witness displacement > Card(D)/2"};
  CriterionResult csc{6, "CSC inequality and boundary comparison"};
};

LemmaFamilyRuns run_lemma_family(const AcceptanceOptions& opts) {
  LemmaFamilyRuns out;
  const std::size_t count = opts.quick ? 60 : 510;
  Digest lemma_digest, half_digest, csc_digest;
  std::set<std::string> families;
  std::size_t admissible = 0, right_findings = 0, csc_checked = 0;

  for (std::size_t i = 0; i < count; ++i) {
    SplitMix64 rng(trial_seed(opts.seed ^ kSaltLemma, i));
    const GroupSpec spec = GroupSpec::parse(kFamilies[i % kFamilies.size()]);
    Instance inst = random_instance(spec, rng, kMaxSetSize);
    const std::size_t d = static_cast<std::size_t>(rng.below(kMaxRadius + 1));
    CheckOptions check;
    check.set_descriptor = inst.descriptor;

    ++out.lemma.instances;
    families.insert(spec.name());
    try {
      VerificationReport r = lemma31_check(spec, inst.set, d, check);
      lemma_digest.add(to_jsonl(r));
      if (!r.holds()) note_failure(out.lemma, to_human(r));
    } catch (const Error& e) {
      note_failure(out.lemma, where(inst) + ": " + e.what());
    }

    const bool below_half = below_half_order(spec, inst.set.size());
    if (below_half) {
      ++admissible;
      ++out.half_mass.instances;
      try {
        HalfMassResult hm = half_mass_witness(spec, inst.set, check);
        half_digest.add(to_jsonl(hm.report));
        const bool independent =
            Rational(static_cast<std::int64_t>(displacement(spec, hm.witness.x, inst.set))) >
                Rational(static_cast<std::int64_t>(inst.set.size()), 2) &&
            word_length(spec, hm.witness.x) <= hm.witness.d;
        if (!hm.report.holds() || !independent) note_failure(out.half_mass, to_human(hm.report));
      } catch (const Error& e) {
        note_failure(out.half_mass, where(inst) + ": " + e.what());
      }
    }

    ++out.csc.instances;
    try {
      if (below_half) {
        ++csc_checked;
        VerificationReport c = verify_csc(spec, inst.set, check);
        csc_digest.add(to_jsonl(c));
        if (!c.holds()) note_failure(out.csc, to_human(c));
      }
      VerificationReport b = boundary_comparison(spec, inst.set, check);
      csc_digest.add(to_jsonl(b));
      if (!b.holds()) note_failure(out.csc, to_human(b));
      if (!b.findings().empty()) {
        ++right_findings;
        if (out.csc.messages.size() < 5)
          out.csc.messages.push_back("finding (right convention): " + to_human(b));
      }
    } catch (const Error& e) {
      note_failure(out.csc, where(inst) + ": " + e.what());
    }
  }

  const std::size_t required = opts.quick ? 60 : 500;
  out.lemma.passed = out.lemma.failures == 0 && out.lemma.instances >= required &&
                     families.size() >= 5;
  out.lemma.summary = {{"instances", out.lemma.instances},
                       {"required_instances", required},
                       {"families", families.size()},
                       {"failures", out.lemma.failures},
                       {"digest", lemma_digest.hex()}};

  out.half_mass.passed = out.half_mass.failures == 0 && admissible > 0;
  out.half_mass.summary = {{"instances", out.half_mass.instances},
                           {"failures", out.half_mass.failures},
                           {"digest", half_digest.hex()}};

  out.csc.findings = right_findings;
  out.csc.passed = out.csc.failures == 0 && csc_checked > 0;
  out.csc.summary = {{"instances", out.csc.instances},
                     {"csc_checked", csc_checked},
                     {"failures", out.csc.failures},
                     {"right_convention_findings", right_findings},
                     {"digest", csc_digest.hex()}};
  return out;
}

CriterionResult run_transport(const AcceptanceOptions& opts) {
  CriterionResult res{3, "Transport map: f(x) in dD, max preimage <= k <= d"};
  const std::size_t count = opts.quick ? 40 : 210;
  Digest digest;
  std::size_t moved_total = 0;

  for (std::size_t i = 0; i < count; ++i) {
    SplitMix64 rng(trial_seed(opts.seed ^ kSaltTransport, i));
    const GroupSpec spec = GroupSpec::parse(kFamilies[i % kFamilies.size()]);
    BallTable lengths(spec, kMaxGammaLength);
    std::size_t k = static_cast<std::size_t>(rng.between(1, kMaxGammaLength));
    while (lengths.layers()[k].empty()) --k;  // finite groups have small diameter
    const auto& layer = lengths.layers()[k];
    const Element gamma0 = layer[static_cast<std::size_t>(rng.below(layer.size()))];
    const std::size_t d = static_cast<std::size_t>(rng.between(k, kMaxGammaLength));
    Instance inst = random_instance(spec, rng, kMaxSetSize);
    CheckOptions check;
    check.set_descriptor = inst.descriptor;

    ++res.instances;
    try {
      TransportMapRecord rec = transport_map(spec, gamma0, inst.set);
      VerificationReport pre = preimage_counts(spec, rec, d, check);
      VerificationReport disp = displacement_bound_check(spec, gamma0, inst.set, d, check);
      digest.add(to_jsonl(pre));
      digest.add(to_jsonl(disp));
      moved_total += rec.entries.size();

      const FiniteSubset& boundary = rec.boundary;
      bool ok = pre.holds() && disp.holds() && rec.length() == k && rec.max_preimage() <= k &&
                k <= d;
      for (const auto& entry : rec.entries) {
        ok = ok && oracle::at_distance_one(spec, entry.image, inst.set) &&
             inst.set.contains(entry.omega) &&
             entry.index >= 1 && entry.index <= k;
        // no later path point may lie in dD
        Element p = entry.omega;
        for (std::size_t n = 1; n <= k; ++n) {
          p = multiply(spec, spec.generators().elements[rec.word[n - 1]], p);
          if (n > entry.index && boundary.contains(p)) ok = false;
          if (n == entry.index && p != entry.image) ok = false;
        }
      }
      if (rec.entries.size() > k * boundary.size()) ok = false;
      if (!ok)
        note_failure(res, where(inst) + " gamma0=" + format_element(spec, gamma0) + ": " +
                              to_human(pre) + " | " + to_human(disp));
    } catch (const Error& e) {
      note_failure(res, where(inst) + " gamma0=" + format_element(spec, gamma0) + ": " +
                            e.what());
    }
  }
  const std::size_t required = opts.quick ? 40 : 200;
  res.passed = res.failures == 0 && res.instances >= required;
  res.summary = {{"instances", res.instances},
                 {"required_instances", required},
                 {"transported_points", moved_total},
                 {"failures", res.failures},
                 {"digest", digest.hex()}};
  return res;
}

CriterionResult run_exhaustive_theorem() {
  CriterionResult res{4, "Isoperimetric bound on every D with Card(D) <= 5 in cyclic:12, dihedral:6"};
  Json per_group = Json::object();
  bool counts_ok = true;
  for (const char* name : {"cyclic:12", "dihedral:6"}) {
    const GroupSpec spec = GroupSpec::parse(name);
    Digest digest;
    std::size_t checked = 0;
    Rational min_factor;
    CheckOptions check;
    check.set_descriptor = "exhaustive:1..5";
    for_each_subset(spec, SetDescriptor::exhaustive(1, 5), [&](const FiniteSubset& set) {
      ++checked;
      ++res.instances;
      try {
        VerificationReport r = verify_theorem(spec, set, check);
        digest.add(to_jsonl(r));
        Rational factor = *r.sharpness();
        if (checked == 1 || factor < min_factor) min_factor = factor;
        if (!r.holds()) note_failure(res, format_subset(spec, set) + ": " + to_human(r));
      } catch (const Error& e) {
        note_failure(res, spec.name() + " {" + format_subset(spec, set) + "}: " + e.what());
      }
    });
    // the incremental profile must agree and stay strictly above the bound
    Json rows = Json::array();
    for (const auto& row : exhaustive_profile(spec, 1, 5)) {
      if (!row.strict()) note_failure(res, spec.name() + " profile row n=" + std::to_string(row.n));
      rows.push_back({{"n", row.n},
                      {"min_boundary", row.min_boundary},
                      {"bound", row.bound.to_string()}});
    }
    counts_ok = counts_ok && checked == 1585;
    per_group[spec.name()] = {{"sets", checked},
                              {"min_sharpness", min_factor.to_string()},
                              {"profile", rows},
                              {"digest", digest.hex()}};
  }
  res.passed = res.failures == 0 && counts_ok;
  res.summary = {{"instances", res.instances}, {"failures", res.failures}, {"groups", per_group}};
  return res;
}

CriterionResult run_factor_four() {
  CriterionResult res{5, "Factor-4 sharpness on Z intervals, n = 1..50"};
  const GroupSpec z = GroupSpec::parse("z");
  std::vector<SetDescriptor> sets;
  for (std::size_t n = 1; n <= 50; ++n) sets.push_back(SetDescriptor::interval(n));
  Digest digest;
  try {
    SharpnessSummary summary = sharpness_scan(z, sets);
    for (const auto& t : summary.trials) {
      ++res.instances;
      const auto n = static_cast<std::int64_t>(t.index + 1);
      FiniteSubset set = generate_set(z, sets[t.index]);
      VerificationReport r = verify_theorem(z, set);
      digest.add(to_jsonl(r));
      const bool exact = t.factor == Rational(4) && r.lhs() == Rational(2, n) &&
                         r.rhs() == Rational(1, 2 * n) && r.holds();
      if (!exact) note_failure(res, "n=" + std::to_string(n) + ": " + to_human(r));
    }
    res.summary = {{"instances", res.instances},
                   {"min_factor", summary.min.to_string()},
                   {"median_factor", summary.median.to_string()},
                   {"failures", res.failures},
                   {"digest", digest.hex()}};
  } catch (const Error& e) {
    note_failure(res, e.what());
  }
  res.passed = res.failures == 0 && res.instances == 50;
  return res;
}

CriterionResult run_oracles(const AcceptanceOptions& opts) {
  CriterionResult res{7, "Oracle equivalences (boundary, layers, growth)"};
  const std::size_t boundary_count = opts.quick ? 30 : 100;
  const std::size_t layer_count = opts.quick ? 200 : 1000;
  std::size_t boundary_fail = 0, layer_fail = 0, growth_fail = 0;

  for (std::size_t i = 0; i < boundary_count; ++i) {
    SplitMix64 rng(trial_seed(opts.seed ^ kSaltBoundary, i));
    const GroupSpec spec = GroupSpec::parse(kFamilies[i % kFamilies.size()]);
    std::size_t limit = 30;
    if (auto order = group_order(spec)) limit = std::min<std::size_t>(limit, *order);
    const std::size_t size = static_cast<std::size_t>(rng.between(1, limit));
    SetDescriptor desc =
        SetDescriptor::uniform_in_ball(size, radius_for(spec, 2 * size), rng.next());
    FiniteSubset set = generate_set(spec, desc);
    ++res.instances;
    if (outer_boundary(spec, set) != oracle::outer_boundary_by_distance(spec, set)) {
      ++boundary_fail;
      note_failure(res, "outer boundary mismatch on " + spec.name() + " " + desc.provenance());
    }
  }

  constexpr std::size_t kWordLength = 6;
  std::vector<BallTable> tables;
  for (const char* name : kFamilies) tables.emplace_back(GroupSpec::parse(name), kWordLength);
  for (std::size_t i = 0; i < layer_count; ++i) {
    SplitMix64 rng(trial_seed(opts.seed ^ kSaltLayers, i));
    const BallTable& table = tables[i % tables.size()];
    const GroupSpec& spec = table.spec();
    std::vector<std::size_t> word(static_cast<std::size_t>(rng.below(kWordLength + 1)));
    for (auto& s : word) s = static_cast<std::size_t>(rng.below(spec.generators().size()));
    const Element g = evaluate_word(spec, word);
    ++res.instances;
    auto expected = oracle::bfs_word_length(spec, g, kWordLength);
    auto actual = table.length_of(g);
    bool in_layer = actual && std::binary_search(table.layers()[*actual].begin(),
                                                 table.layers()[*actual].end(), g);
    if (expected != actual || !in_layer) {
      ++layer_fail;
      note_failure(res, "layer mismatch for " + format_element(spec, g) + " in " + spec.name());
    }
  }

  const auto z = growth(GroupSpec::parse("z"), 8).values;
  const auto z2 = growth(GroupSpec::parse("zd:2"), 8).values;
  const auto f2 = growth(GroupSpec::parse("free:2"), 8).values;
  for (std::size_t r = 0; r <= 8; ++r) {
    ++res.instances;
    if (z[r] != oracle::growth_z(r) || z2[r] != oracle::growth_z2(r) ||
        f2[r] != oracle::growth_free(2, r)) {
      ++growth_fail;
      note_failure(res, "growth mismatch at r=" + std::to_string(r));
    }
  }

  res.passed = res.failures == 0;
  res.summary = {{"boundary_instances", boundary_count}, {"boundary_failures", boundary_fail},
                 {"layer_elements", layer_count},        {"layer_failures", layer_fail},
                 {"growth_radii", 9},                    {"growth_failures", growth_fail},
                 {"growth_free2_r8", f2[8]}};
  return res;
}

}  // namespace

Json CriterionResult::to_json() const {
  return Json{{"criterion", id},       {"title", title},       {"passed", passed},
              {"instances", instances}, {"failures", failures}, {"findings", findings},
              {"summary", summary}};
}

std::string CriterionResult::scorecard_line() const {
  std::ostringstream os;
  os << (passed ? "[PASS] " : "[FAIL] ") << id << ". " << title << " (" << instances
     << " instances, " << failures << " failures";
  if (findings) os << ", " << findings << " findings";
  os << ")";
  return os.str();
}

std::vector<CriterionResult> run_criteria(const AcceptanceOptions& opts) {
  LemmaFamilyRuns lemma = run_lemma_family(opts);
  std::vector<CriterionResult> out;
  out.push_back(std::move(lemma.lemma));
  out.push_back(std::move(lemma.half_mass));
  out.push_back(run_transport(opts));
  out.push_back(run_exhaustive_theorem());
  out.push_back(run_factor_four());
  out.push_back(std::move(lemma.csc));
  out.push_back(run_oracles(opts));
  std::sort(out.begin(), out.end(),
            [](const CriterionResult& a, const CriterionResult& b) { return a.id < b.id; });
  return out;
}

std::string machine_report(const std::vector<CriterionResult>& results) {
  std::string out;
  for (const auto& r : results) out += r.to_json().dump() + "\n";
  return out;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  std::vector<CriterionResult> first = run_criteria(opts);
  const std::string a = machine_report(first);
  const std::string b = machine_report(run_criteria(opts));

  CriterionResult det{8, "Determinism: identical seed gives byte-identical reports"};
  det.instances = 2;
  det.passed = a == b;
  if (!det.passed) note_failure(det, "machine reports differ between two runs");
  det.summary = {{"bytes", a.size()}, {"identical", a == b}};
  first.push_back(std::move(det));
  return first;
}

}  // namespace isoplab
