#include "isoplab/search.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <ostream>
#include <set>

#include "isoplab/error.hpp"
#include "isoplab/metric.hpp"
#include "isoplab/random.hpp"

namespace isoplab {

namespace {

std::size_t parse_count(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParseError("expected a non-negative integer for " + std::string(what) + ", got '" +
                     std::string(text) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

/// Splits on commas that are not nested inside (...) or [...].
std::vector<std::string> split_elements(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  if (depth != 0) throw ParseError("unbalanced brackets in explicit set");
  out.push_back(current);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Descriptors

SetDescriptor SetDescriptor::ball(std::size_t r) {
  SetDescriptor d;
  d.kind = Kind::Ball;
  d.radius = r;
  return d;
}

SetDescriptor SetDescriptor::uniform_in_ball(std::size_t size, std::size_t radius,
                                             std::uint64_t seed) {
  SetDescriptor d;
  d.kind = Kind::Random;
  d.size = size;
  d.radius = radius;
  d.seed = seed;
  return d;
}

SetDescriptor SetDescriptor::connected(std::size_t size, std::uint64_t seed) {
  SetDescriptor d;
  d.kind = Kind::Connected;
  d.size = size;
  d.seed = seed;
  return d;
}

SetDescriptor SetDescriptor::interval(std::size_t n) {
  SetDescriptor d;
  d.kind = Kind::Interval;
  d.size = n;
  return d;
}

SetDescriptor SetDescriptor::exhaustive(std::size_t lo, std::size_t hi) {
  SetDescriptor d;
  d.kind = Kind::Exhaustive;
  d.lo = lo;
  d.hi = hi;
  return d;
}

SetDescriptor SetDescriptor::parse(std::string_view text, std::uint64_t seed) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("set descriptor '" + std::string(text) + "' has no ':'");
  std::string_view head = text.substr(0, colon);
  std::string_view rest = text.substr(colon + 1);

  if (head == "ball") return ball(parse_count(rest, "ball radius"));
  if (head == "interval") return interval(parse_count(rest, "interval length"));
  if (head == "connected") return connected(parse_count(rest, "set size"), seed);
  if (head == "random") {
    auto parts = split(rest, ':');
    if (parts.size() != 2) throw ParseError("expected random:<size>:<radius>");
    return uniform_in_ball(parse_count(parts[0], "set size"),
                           parse_count(parts[1], "sampling radius"), seed);
  }
  if (head == "exhaustive") {
    auto dots = rest.find("..");
    if (dots == std::string_view::npos) {
      std::size_t n = parse_count(rest, "subset size");
      return exhaustive(n, n);
    }
    std::size_t lo = parse_count(rest.substr(0, dots), "lower size");
    std::size_t hi = parse_count(rest.substr(dots + 2), "upper size");
    if (lo > hi) throw ParseError("empty size range '" + std::string(rest) + "'");
    return exhaustive(lo, hi);
  }
  if (head == "explicit") {
    SetDescriptor d;
    d.kind = Kind::Explicit;
    d.elements = split_elements(rest);
    return d;
  }
  throw ParseError("unknown set descriptor kind '" + std::string(head) + "'");
}

SetDescriptor SetDescriptor::for_trial(std::uint64_t trial) const {
  SetDescriptor d = *this;
  if (randomized()) d.seed = trial_seed(seed, trial);
  return d;
}

std::string SetDescriptor::provenance() const {
  switch (kind) {
    case Kind::Ball:
      return "ball:" + std::to_string(radius);
    case Kind::Random:
      return "random:" + std::to_string(size) + ":" + std::to_string(radius) +
             "#seed=" + std::to_string(seed);
    case Kind::Connected:
      return "connected:" + std::to_string(size) + "#seed=" + std::to_string(seed);
    case Kind::Explicit: {
      std::string out = "explicit:";
      for (std::size_t i = 0; i < elements.size(); ++i) {
        if (i) out += ',';
        out += elements[i];
      }
      return out;
    }
    case Kind::Interval:
      return "interval:" + std::to_string(size);
    case Kind::Exhaustive:
      return "exhaustive:" + std::to_string(lo) + ".." + std::to_string(hi);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Generation

namespace {

FiniteSubset sample_uniform(const GroupSpec& spec, const SetDescriptor& desc, std::size_t cap) {
  std::vector<Element> pool = BallTable(spec, desc.radius, cap).elements();
  if (desc.size > pool.size())
    throw PreconditionViolated("random size " + std::to_string(desc.size) +
                               " exceeds the ball size " + std::to_string(pool.size()));
  SplitMix64 rng(desc.seed);
  // partial Fisher-Yates over the canonical ball listing
  for (std::size_t i = 0; i < desc.size; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(desc.size);
  return FiniteSubset(spec, std::move(pool));
}

FiniteSubset grow_connected(const GroupSpec& spec, const SetDescriptor& desc) {
  if (auto order = group_order(spec); order && desc.size > *order)
    throw PreconditionViolated("connected size exceeds the group order");
  if (desc.size == 0) return FiniteSubset();
  SplitMix64 rng(desc.seed);
  std::set<Element> members{identity(spec)};
  std::set<Element> frontier;
  auto add_neighbours = [&](const Element& g) {
    for (const auto& s : spec.generators().elements) {
      Element h = multiply(spec, s, g);
      if (!members.contains(h)) frontier.insert(std::move(h));
    }
  };
  add_neighbours(identity(spec));
  while (members.size() < desc.size) {
    auto it = frontier.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(rng.below(frontier.size())));
    Element picked = *it;
    frontier.erase(it);
    members.insert(picked);
    add_neighbours(picked);
  }
  return FiniteSubset(spec, std::vector<Element>(members.begin(), members.end()));
}

}  // namespace

FiniteSubset generate_set(const GroupSpec& spec, const SetDescriptor& desc,
                          std::size_t ball_cap) {
  switch (desc.kind) {
    case SetDescriptor::Kind::Ball:
      return FiniteSubset(spec, BallTable(spec, desc.radius, ball_cap).elements());
    case SetDescriptor::Kind::Random:
      return sample_uniform(spec, desc, ball_cap);
    case SetDescriptor::Kind::Connected:
      return grow_connected(spec, desc);
    case SetDescriptor::Kind::Explicit: {
      std::vector<Element> elems;
      for (const auto& text : desc.elements) elems.push_back(parse_element(spec, text));
      const std::size_t listed = elems.size();
      FiniteSubset set(spec, std::move(elems));
      if (set.size() != listed) throw ParseError("explicit set lists an element twice");
      return set;
    }
    case SetDescriptor::Kind::Interval: {
      std::vector<Element> elems;
      Element g = identity(spec);
      const Element& step = spec.generators().elements.front();
      for (std::size_t i = 0; i < desc.size; ++i) {
        elems.push_back(g);
        g = multiply(spec, step, g);
      }
      FiniteSubset set(spec, std::move(elems));
      if (set.size() != desc.size)
        throw PreconditionViolated("interval:" + std::to_string(desc.size) +
                                   " wraps around in " + spec.name());
      return set;
    }
    case SetDescriptor::Kind::Exhaustive:
      throw PreconditionViolated("exhaustive descriptors yield a stream; use for_each_subset");
  }
  return FiniteSubset();
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration

FiniteSubset EnumeratedGroup::subset(const GroupSpec& spec, std::uint64_t mask) const {
  std::vector<Element> out;
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (mask >> i & 1u) out.push_back(elements[i]);
  return FiniteSubset(spec, std::move(out));
}

EnumeratedGroup enumerate_group(const GroupSpec& spec, std::size_t cap) {
  auto order = group_order(spec);
  if (!order) throw PreconditionViolated(spec.name() + " is infinite; cannot enumerate");
  if (*order > cap || cap > 63)
    throw BudgetExceeded(spec.name() + " has " + std::to_string(*order) +
                         " elements, above the exhaustive cap of " + std::to_string(cap));

  BallTable table(spec, 0);
  while (!table.saturated()) table.extend(table.radius() + 1);
  EnumeratedGroup g;
  g.elements = table.elements();
  std::sort(g.elements.begin(), g.elements.end());
  if (g.elements.size() != *order)
    throw InternalContradiction("enumeration of " + spec.name() + " disagrees with its order");

  auto index_of = [&](const Element& x) {
    auto it = std::lower_bound(g.elements.begin(), g.elements.end(), x);
    return static_cast<std::uint32_t>(it - g.elements.begin());
  };
  for (const auto& s : spec.generators().elements) {
    std::vector<std::uint32_t> row;
    row.reserve(g.size());
    for (const auto& x : g.elements) row.push_back(index_of(multiply(spec, s, x)));
    g.left.push_back(std::move(row));
  }
  return g;
}

std::uint64_t for_each_subset_mask(
    const EnumeratedGroup& group, std::size_t lo, std::size_t hi,
    const std::function<void(std::uint64_t mask, std::size_t boundary)>& fn) {
  const std::size_t n = group.size();
  if (lo == 0) throw PreconditionViolated("exhaustive enumeration needs non-empty sets");
  if (n >= 64) throw BudgetExceeded("exhaustive enumeration limited to 63 elements");

  // cover[a] = number of pairs (s, x in D) with s.x = a
  std::vector<std::uint32_t> cover(n, 0);
  std::vector<bool> in(n, false);
  std::size_t boundary = 0;
  std::size_t members = 0;
  std::uint64_t mask = 0;
  std::uint64_t visited = 0;

  const std::uint64_t steps = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < steps; ++i) {
    const auto x = static_cast<std::size_t>(std::countr_zero(i));
    if (!in[x]) {
      if (cover[x] > 0) --boundary;
      in[x] = true;
      ++members;
      for (const auto& row : group.left) {
        const auto a = row[x];
        if (++cover[a] == 1 && !in[a]) ++boundary;
      }
    } else {
      in[x] = false;
      --members;
      for (const auto& row : group.left) {
        const auto a = row[x];
        if (--cover[a] == 0 && !in[a]) --boundary;
      }
      if (cover[x] > 0) ++boundary;
    }
    mask ^= std::uint64_t{1} << x;
    if (members >= lo && members <= hi) {
      ++visited;
      fn(mask, boundary);
    }
  }
  return visited;
}

std::uint64_t for_each_subset(const GroupSpec& spec, const SetDescriptor& desc,
                              const std::function<void(const FiniteSubset&)>& fn,
                              std::size_t cap) {
  if (desc.kind != SetDescriptor::Kind::Exhaustive)
    throw PreconditionViolated("for_each_subset needs an exhaustive descriptor");
  EnumeratedGroup group = enumerate_group(spec, cap);
  return for_each_subset_mask(group, desc.lo, desc.hi, [&](std::uint64_t mask, std::size_t) {
    fn(group.subset(spec, mask));
  });
}

std::vector<ProfileRow> exhaustive_profile(const GroupSpec& spec, std::size_t lo, std::size_t hi,
                                           std::size_t cap) {
  EnumeratedGroup group = enumerate_group(spec, cap);
  if (hi < lo) return {};
  if (!below_half_order(spec, hi))
    throw PreconditionViolated("profile size " + std::to_string(hi) +
                               " is not below half the order of " + spec.name());

  struct Best {
    std::size_t boundary = SIZE_MAX;
    std::uint64_t mask = 0;
  };
  std::vector<Best> best(hi + 1);
  for_each_subset_mask(group, lo, hi, [&](std::uint64_t mask, std::size_t boundary) {
    Best& b = best[static_cast<std::size_t>(std::popcount(mask))];
    if (boundary < b.boundary) {
      b = {boundary, mask};
    } else if (boundary == b.boundary) {
      // The lowest differing index is present in exactly one of the two
      // equal-size sets; that set is lexicographically smaller.
      const std::uint64_t diff = mask ^ b.mask;
      if (diff != 0 && (mask & (diff & (0 - diff)))) b.mask = mask;
    }
  });

  std::vector<ProfileRow> rows;
  for (std::size_t n = lo; n <= hi; ++n) {
    const std::size_t radius = phi(spec, 2 * static_cast<std::uint64_t>(n));
    Rational bound(static_cast<std::int64_t>(n), static_cast<std::int64_t>(2 * radius));
    Rational min_boundary(static_cast<std::int64_t>(best[n].boundary));
    rows.push_back(ProfileRow{n, best[n].boundary, group.subset(spec, best[n].mask), bound,
                              min_boundary - bound});
  }
  return rows;
}

void write_profile_csv(std::ostream& os, const GroupSpec& spec,
                       const std::vector<ProfileRow>& rows) {
  os << "n,min_boundary,bound_num,bound_den,witness\n";
  for (const auto& row : rows)
    os << row.n << ',' << row.min_boundary << ',' << row.bound.num() << ',' << row.bound.den()
       << ",\"" << format_subset(spec, row.witness) << "\"\n";
}

// ---------------------------------------------------------------------------
// Sharpness

Json SharpnessSummary::to_json() const {
  Json j;
  j["group"] = group;
  Json rows = Json::array();
  for (const auto& t : trials)
    rows.push_back({{"index", t.index},
                    {"descriptor", t.descriptor},
                    {"set_size", t.set_size},
                    {"factor_num", t.factor.num()},
                    {"factor_den", t.factor.den()},
                    {"running_min_num", t.running_min.num()},
                    {"running_min_den", t.running_min.den()}});
  j["trials"] = std::move(rows);
  j["min_num"] = min.num();
  j["min_den"] = min.den();
  j["median_num"] = median.num();
  j["median_den"] = median.den();
  return j;
}

SharpnessSummary sharpness_scan(const GroupSpec& spec, const std::vector<SetDescriptor>& sets,
                                std::size_t ball_cap) {
  if (sets.empty()) throw PreconditionViolated("sharpness_scan needs at least one set");
  SharpnessSummary summary;
  summary.group = spec.name();
  std::vector<Rational> factors;
  CheckOptions opts;
  opts.ball_cap = ball_cap;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    FiniteSubset set = generate_set(spec, sets[i], ball_cap);
    opts.set_descriptor = sets[i].provenance();
    VerificationReport report = verify_theorem(spec, set, opts);
    Rational factor = *report.sharpness();
    factors.push_back(factor);
    Rational running = i == 0 ? factor : std::min(summary.trials.back().running_min, factor);
    summary.trials.push_back(
        SharpnessTrial{i, opts.set_descriptor, set.size(), factor, running});
  }
  std::sort(factors.begin(), factors.end());
  summary.min = factors.front();
  const std::size_t mid = factors.size() / 2;
  summary.median = factors.size() % 2 ? factors[mid] : (factors[mid - 1] + factors[mid]) / 2;
  return summary;
}

}  // namespace isoplab
