#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "isoplab/group.hpp"
#include "isoplab/isoperimetry.hpp"
#include "isoplab/rational.hpp"
#include "isoplab/report.hpp"

namespace isoplab {

/// Default cap on Card(group) for exhaustive subset enumeration.
inline constexpr std::size_t kDefaultExhaustiveCap = 24;

/// How a set D is produced. Text grammar:
///   ball:<r>                  B(e, r)
///   random:<size>:<R>         uniform sample of distinct elements of B(e, R)
///   connected:<size>          connected set grown from e by random frontier picks
///   explicit:<g1>,<g2>,...    listed elements (family element grammar)
///   interval:<n>              e, s, s^2, ..., s^(n-1) for the first generator s
///   exhaustive:<lo>..<hi>     every subset with lo <= size <= hi (finite groups)
/// Random kinds take their seed separately; it is part of the provenance.
struct SetDescriptor {
  enum class Kind { Ball, Random, Connected, Explicit, Interval, Exhaustive };

  Kind kind = Kind::Ball;
  std::size_t radius = 0;  // Ball, Random
  std::size_t size = 0;    // Random, Connected, Interval
  std::uint64_t seed = 0;  // Random, Connected
  std::vector<std::string> elements;
  std::size_t lo = 0, hi = 0;  // Exhaustive

  static SetDescriptor parse(std::string_view text, std::uint64_t seed = 0);

  static SetDescriptor ball(std::size_t r);
  static SetDescriptor uniform_in_ball(std::size_t size, std::size_t radius, std::uint64_t seed);
  static SetDescriptor connected(std::size_t size, std::uint64_t seed);
  static SetDescriptor interval(std::size_t n);
  static SetDescriptor exhaustive(std::size_t lo, std::size_t hi);

  bool randomized() const { return kind == Kind::Random || kind == Kind::Connected; }

  /// Copy whose seed is trial_seed(seed, trial); deterministic kinds are
  /// returned unchanged.
  SetDescriptor for_trial(std::uint64_t trial) const;

  /// Canonical text, with "#seed=<s>" appended for random kinds.
  std::string provenance() const;
};

/// Materializes a non-exhaustive descriptor.
FiniteSubset generate_set(const GroupSpec& spec, const SetDescriptor& desc,
                          std::size_t ball_cap = kDefaultBallCap);

/// A finite group listed in canonical order with left-multiplication tables.
struct EnumeratedGroup {
  std::vector<Element> elements;
  /// left[s][i] = index of generators[s] . elements[i].
  std::vector<std::vector<std::uint32_t>> left;

  std::size_t size() const { return elements.size(); }
  FiniteSubset subset(const GroupSpec& spec, std::uint64_t mask) const;
};

/// Throws PreconditionViolated for infinite groups, BudgetExceeded when
/// Card(group) > cap.
EnumeratedGroup enumerate_group(const GroupSpec& spec, std::size_t cap = kDefaultExhaustiveCap);

/// Visits every subset with lo <= size <= hi in Gray-code order. The callback
/// receives the bitmask (bit i = elements[i]) and Card(dD), maintained
/// incrementally. Returns the number of subsets visited.
std::uint64_t for_each_subset_mask(
    const EnumeratedGroup& group, std::size_t lo, std::size_t hi,
    const std::function<void(std::uint64_t mask, std::size_t boundary)>& fn);

/// Same stream as sets, for an `exhaustive:` descriptor.
std::uint64_t for_each_subset(const GroupSpec& spec, const SetDescriptor& desc,
                              const std::function<void(const FiniteSubset&)>& fn,
                              std::size_t cap = kDefaultExhaustiveCap);

struct ProfileRow {
  std::size_t n;
  std::size_t min_boundary;
  FiniteSubset witness;
  Rational bound;  // n / (2 phi(2n))
  Rational gap;    // min_boundary - bound

  bool strict() const { return Rational(static_cast<std::int64_t>(min_boundary)) > bound; }
};

/// Minimum of Card(dD) over all D with Card(D) = n, for lo <= n <= hi. The
/// witness is the minimizer whose sorted element list is lexicographically
/// least.
std::vector<ProfileRow> exhaustive_profile(const GroupSpec& spec, std::size_t lo, std::size_t hi,
                                           std::size_t cap = kDefaultExhaustiveCap);

/// CSV with header `n,min_boundary,bound_num,bound_den,witness`.
void write_profile_csv(std::ostream& os, const GroupSpec& spec,
                       const std::vector<ProfileRow>& rows);

struct SharpnessTrial {
  std::size_t index;
  std::string descriptor;
  std::size_t set_size;
  Rational factor;      // lhs / rhs of the theorem
  Rational running_min;
};

struct SharpnessSummary {
  std::string group;
  std::vector<SharpnessTrial> trials;
  Rational min;
  Rational median;  // mean of the two middle values for even counts

  Json to_json() const;
};

/// Isoperimetric sharpness factor for each descriptor, in order.
SharpnessSummary sharpness_scan(const GroupSpec& spec, const std::vector<SetDescriptor>& sets,
                                std::size_t ball_cap = kDefaultBallCap);

}  // namespace isoplab
