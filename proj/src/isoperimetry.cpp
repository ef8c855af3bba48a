#include "isoplab/isoperimetry.hpp"

#include <algorithm>

#include "isoplab/error.hpp"

namespace isoplab {

namespace {

void require_non_empty(const FiniteSubset& set, std::string_view op) {
  if (set.empty()) throw PreconditionViolated(std::string(op) + " needs a non-empty set");
}

void require_below_half(const GroupSpec& spec, const FiniteSubset& set, std::string_view op) {
  if (!below_half_order(spec, set.size()))
    throw PreconditionViolated(std::string(op) + ": Card(D) = " + std::to_string(set.size()) +
                               " is not below half the order of " + spec.name());
}

Rational to_rational(std::size_t v) { return Rational(static_cast<std::int64_t>(v)); }

Rational ratio(std::size_t num, std::size_t den) {
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

VerificationReport make_report(ReportKind kind, const GroupSpec& spec,
                               const CheckOptions& opts) {
  VerificationReport r;
  r.kind = kind;
  r.group = spec.name();
  r.set_descriptor = opts.set_descriptor;
  return r;
}

}  // namespace

FiniteSubset::FiniteSubset(const GroupSpec& spec, std::vector<Element> elements)
    : elements_(std::move(elements)) {
  for (const auto& g : elements_)
    if (!is_valid(spec, g))
      throw PreconditionViolated("set contains a non-canonical element of " + spec.name());
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool FiniteSubset::contains(const Element& g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

std::string format_subset(const GroupSpec& spec, const FiniteSubset& set) {
  std::string out;
  for (const auto& g : set) {
    if (!out.empty()) out += ' ';
    out += format_element(spec, g);
  }
  return out;
}

FiniteSubset outer_boundary(const GroupSpec& spec, const FiniteSubset& set) {
  std::vector<Element> out;
  for (const auto& delta : set)
    for (const auto& s : spec.generators().elements) {
      Element a = multiply(spec, s, delta);
      if (!set.contains(a)) out.push_back(std::move(a));
    }
  return FiniteSubset(spec, std::move(out));
}

FiniteSubset inner_boundary_right(const GroupSpec& spec, const FiniteSubset& set) {
  std::vector<Element> out;
  for (const auto& x : set) {
    const auto& gens = spec.generators().elements;
    if (std::any_of(gens.begin(), gens.end(),
                    [&](const Element& s) { return !set.contains(multiply(spec, x, s)); }))
      out.push_back(x);
  }
  return FiniteSubset(spec, std::move(out));
}

FiniteSubset inner_boundary_left(const GroupSpec& spec, const FiniteSubset& set) {
  std::vector<Element> out;
  for (const auto& x : set) {
    const auto& gens = spec.generators().elements;
    if (std::any_of(gens.begin(), gens.end(),
                    [&](const Element& s) { return !set.contains(multiply(spec, s, x)); }))
      out.push_back(x);
  }
  return FiniteSubset(spec, std::move(out));
}

FiniteSubset translate(const GroupSpec& spec, const Element& x, const FiniteSubset& set) {
  std::vector<Element> out;
  out.reserve(set.size());
  for (const auto& delta : set) out.push_back(multiply(spec, x, delta));
  return FiniteSubset(spec, std::move(out));
}

std::size_t displacement(const GroupSpec& spec, const Element& x, const FiniteSubset& set) {
  std::size_t moved = 0;
  for (const auto& delta : set)
    if (!set.contains(multiply(spec, x, delta))) ++moved;
  return moved;
}

// ---------------------------------------------------------------------------
// Smoothing

SmoothedDensity::SmoothedDensity(const GroupSpec& spec, FiniteSubset set, std::size_t d,
                                 std::size_t cap)
    : set_(std::move(set)), ball_(spec, d, cap) {}

std::size_t SmoothedDensity::hits(const Element& y) const {
  std::size_t count = 0;
  for (const auto& layer : ball_.layers())
    for (const auto& b : layer)
      if (set_.contains(multiply(ball_.spec(), b, y))) ++count;
  return count;
}

Rational SmoothedDensity::operator()(const Element& y) const {
  return ratio(hits(y), ball_.size());
}

Rational smoothed_density(const GroupSpec& spec, const FiniteSubset& set, std::size_t d,
                          const Element& y, std::size_t cap) {
  return SmoothedDensity(spec, set, d, cap)(y);
}

// ---------------------------------------------------------------------------
// Mass transport identities

VerificationReport lemma31_check(const GroupSpec& spec, const FiniteSubset& set, std::size_t d,
                                 const CheckOptions& opts) {
  require_non_empty(set, "lemma31_check");
  SmoothedDensity density(spec, set, d, opts.ball_cap);
  const BallTable& ball = density.ball();

  Rational variation = 0;
  for (const auto& y : set) variation += abs(Rational(1) - density(y));
  const Rational a = variation * to_rational(ball.size());
  if (!a.is_integer())
    throw InternalContradiction("scaled total variation is not an integer");

  std::size_t b = 0;
  for (const auto& y : set)
    for (const auto& layer : ball.layers())
      for (const auto& x : layer)
        if (!set.contains(multiply(spec, x, y))) ++b;

  std::size_t c = 0;
  for (const auto& layer : ball.layers())
    for (const auto& x : layer) c += displacement(spec, x, set);

  VerificationReport r = make_report(ReportKind::Lemma31, spec, opts);
  r.d = d;
  r.conditions = {
      {"A == C", a, Relation::Equal, to_rational(c)},
      {"A == B", a, Relation::Equal, to_rational(b)},
      {"B == C", to_rational(b), Relation::Equal, to_rational(c)},
      {"variation == C / Card(B(e,d))", variation, Relation::Equal,
       ratio(c, ball.size())},
  };
  r.details["set_size"] = set.size();
  r.details["ball_size"] = ball.size();
  r.details["A"] = a.num();
  r.details["B"] = b;
  r.details["C"] = c;
  r.details["variation"] = variation.to_string();
  return r;
}

HalfMassResult half_mass_witness(const GroupSpec& spec, const FiniteSubset& set,
                                 const CheckOptions& opts) {
  require_non_empty(set, "half_mass_witness");
  require_below_half(spec, set, "half_mass_witness");

  const std::size_t n = set.size();
  auto [d, ball] = minimal_d(spec, 2 * static_cast<std::uint64_t>(n), opts.ball_cap);

  // Layers are visited by length and then canonical order, so keeping the
  // first strict maximum realises the documented tie-break.
  std::optional<Element> best;
  std::size_t best_moved = 0;
  std::size_t total_moved = 0;
  for (const auto& layer : ball.layers())
    for (const auto& x : layer) {
      std::size_t moved = displacement(spec, x, set);
      total_moved += moved;
      if (!best || moved > best_moved) {
        best = x;
        best_moved = moved;
      }
    }

  SmoothedDensity density(spec, set, d, opts.ball_cap);
  Rational variation = 0;
  for (const auto& y : set) variation += abs(Rational(1) - density(y));

  const Rational threshold = ratio(n, 2);
  const Rational average = ratio(total_moved, ball.size());

  TransportWitness witness{d, *best, best_moved, threshold};
  VerificationReport r = make_report(ReportKind::HalfMass, spec, opts);
  r.d = d;
  r.conditions = {
      {"Card(xD \\ D) > Card(D)/2", to_rational(best_moved), Relation::Greater, threshold},
      {"sum_y |1 - phi_d(y)| > Card(D)/2", variation, Relation::Greater, threshold},
      {"max displacement >= ball average", to_rational(best_moved), Relation::GreaterEqual,
       average},
  };
  r.details["set_size"] = n;
  r.details["ball_size"] = ball.size();
  r.details["witness"] = format_element(spec, *best);
  r.details["witness_length"] = *ball.length_of(*best);
  r.details["displacement"] = best_moved;
  r.details["average_displacement"] = average.to_string();
  return HalfMassResult{std::move(witness), std::move(r)};
}

// ---------------------------------------------------------------------------
// Transport map

std::size_t TransportMapRecord::max_preimage() const {
  std::size_t m = 0;
  for (const auto& [z, count] : preimages) m = std::max(m, count);
  return m;
}

TransportMapRecord transport_map(const GroupSpec& spec, const Element& gamma0,
                                 const FiniteSubset& set, std::size_t cap) {
  require_non_empty(set, "transport_map");
  TransportMapRecord rec;
  rec.gamma0 = gamma0;
  rec.word = geodesic_word(spec, gamma0, cap);
  const std::size_t k = rec.word.size();
  if (k == 0) throw PreconditionViolated("transport_map needs gamma0 != e");
  rec.boundary = outer_boundary(spec, set);

  const auto& gens = spec.generators().elements;
  const Element gamma0_inv = inverse(spec, gamma0);
  for (const auto& x : translate(spec, gamma0, set)) {
    if (set.contains(x)) continue;
    Element omega = multiply(spec, gamma0_inv, x);
    if (!set.contains(omega))
      throw InternalContradiction("gamma0^-1 x left D for x = " + format_element(spec, x));

    // path[n] = s_n ... s_1 . omega, path[0] = omega, path[k] = x
    std::vector<Element> path{omega};
    path.reserve(k + 1);
    for (std::size_t step : rec.word) path.push_back(multiply(spec, gens[step], path.back()));
    if (path.back() != x)
      throw InternalContradiction("geodesic word does not evaluate to gamma0");

    std::size_t m = 0;
    for (std::size_t i = k; i >= 1; --i)
      if (rec.boundary.contains(path[i])) {
        m = i;
        break;
      }
    if (m == 0)
      throw InternalContradiction("transport path from " + format_element(spec, x) +
                                  " never meets the boundary");

    ++rec.preimages[path[m]];
    rec.entries.push_back(TransportEntry{x, std::move(omega), m, path[m]});
  }
  return rec;
}

VerificationReport preimage_counts(const GroupSpec& spec, const TransportMapRecord& record,
                                   std::size_t d, const CheckOptions& opts) {
  const std::size_t k = record.length();
  if (k > d)
    throw PreconditionViolated("preimage_counts: ||gamma0|| = " + std::to_string(k) +
                               " exceeds d = " + std::to_string(d));
  const std::size_t max_count = record.max_preimage();
  VerificationReport r = make_report(ReportKind::PreimageBound, spec, opts);
  r.d = d;
  r.gamma0 = format_element(spec, record.gamma0);
  r.conditions = {
      {"max Card(f^-1(z)) <= d", to_rational(max_count), Relation::LessEqual, to_rational(d)},
      {"max Card(f^-1(z)) <= ||gamma0||", to_rational(max_count), Relation::LessEqual,
       to_rational(k)},
  };
  r.details["length"] = k;
  r.details["moved_out"] = record.entries.size();
  r.details["boundary_size"] = record.boundary.size();
  r.details["max_preimage"] = max_count;
  return r;
}

VerificationReport displacement_bound_check(const GroupSpec& spec, const Element& gamma0,
                                            const FiniteSubset& set, std::size_t d,
                                            const CheckOptions& opts) {
  require_non_empty(set, "displacement_bound_check");
  const std::size_t k = word_length(spec, gamma0, opts.ball_cap);
  if (k > d)
    throw PreconditionViolated("displacement_bound_check: ||gamma0|| = " + std::to_string(k) +
                               " exceeds d = " + std::to_string(d));
  const std::size_t moved = displacement(spec, gamma0, set);
  const std::size_t boundary = outer_boundary(spec, set).size();

  VerificationReport r = make_report(ReportKind::DisplacementBound, spec, opts);
  r.d = d;
  r.gamma0 = format_element(spec, gamma0);
  r.conditions = {
      {"Card(gamma0 D \\ D) <= d Card(dD)", to_rational(moved), Relation::LessEqual,
       to_rational(d * boundary)},
      {"Card(gamma0 D \\ D) <= ||gamma0|| Card(dD)", to_rational(moved), Relation::LessEqual,
       to_rational(k * boundary)},
  };
  r.details["length"] = k;
  r.details["moved_out"] = moved;
  r.details["boundary_size"] = boundary;
  return r;
}

// ---------------------------------------------------------------------------
// Isoperimetric inequalities

VerificationReport verify_theorem(const GroupSpec& spec, const FiniteSubset& set,
                                  const CheckOptions& opts) {
  require_non_empty(set, "verify_theorem");
  require_below_half(spec, set, "verify_theorem");
  const std::size_t n = set.size();
  const std::size_t boundary = outer_boundary(spec, set).size();
  const std::size_t radius = phi(spec, 2 * static_cast<std::uint64_t>(n), opts.ball_cap);

  VerificationReport r = make_report(ReportKind::Theorem, spec, opts);
  r.conditions = {{"Card(dD)/Card(D) > 1/(2 phi(2 Card(D)))", ratio(boundary, n),
                   Relation::Greater, ratio(1, 2 * radius)}};
  r.details["set_size"] = n;
  r.details["boundary_size"] = boundary;
  r.details["phi"] = radius;
  return r;
}

VerificationReport verify_csc(const GroupSpec& spec, const FiniteSubset& set,
                              const CheckOptions& opts) {
  require_non_empty(set, "verify_csc");
  require_below_half(spec, set, "verify_csc");
  const std::size_t n = set.size();
  const std::size_t inner = inner_boundary_right(spec, set).size();
  const std::size_t gens = spec.generators().size();
  const std::size_t radius = phi(spec, 2 * static_cast<std::uint64_t>(n), opts.ball_cap);

  VerificationReport r = make_report(ReportKind::Csc, spec, opts);
  r.conditions = {{"Card(d_C D)/Card(D) >= 1/(4 Card(S) phi(2 Card(D)))", ratio(inner, n),
                   Relation::GreaterEqual, ratio(1, 4 * gens * radius)}};
  r.details["set_size"] = n;
  r.details["inner_boundary_size"] = inner;
  r.details["generators"] = gens;
  r.details["phi"] = radius;
  return r;
}

VerificationReport boundary_comparison(const GroupSpec& spec, const FiniteSubset& set,
                                       const CheckOptions& opts) {
  require_non_empty(set, "boundary_comparison");
  const std::size_t outer = outer_boundary(spec, set).size();
  const std::size_t left = inner_boundary_left(spec, set).size();
  const std::size_t right = inner_boundary_right(spec, set).size();
  const std::size_t gens = spec.generators().size();

  VerificationReport r = make_report(ReportKind::BoundaryCmp, spec, opts);
  r.conditions = {
      {"Card(dD) <= Card(S) Card(d_left D)", to_rational(outer), Relation::LessEqual,
       to_rational(gens * left)},
      {"Card(dD) <= Card(S) Card(d_C D)", to_rational(outer), Relation::LessEqual,
       to_rational(gens * right), /*required=*/false},
  };
  r.details["outer_boundary_size"] = outer;
  r.details["inner_left_size"] = left;
  r.details["inner_right_size"] = right;
  r.details["generators"] = gens;
  return r;
}

}  // namespace isoplab
