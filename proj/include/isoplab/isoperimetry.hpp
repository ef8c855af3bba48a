#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "isoplab/group.hpp"
#include "isoplab/metric.hpp"
#include "isoplab/rational.hpp"
#include "isoplab/report.hpp"

namespace isoplab {

/// A finite set of canonical elements, kept sorted and duplicate-free.
class FiniteSubset {
 public:
  FiniteSubset() = default;
  /// Sorts and de-duplicates; throws PreconditionViolated on an element that
  /// is not canonical for `spec`.
  FiniteSubset(const GroupSpec& spec, std::vector<Element> elements);

  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  bool contains(const Element& g) const;

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  friend bool operator==(const FiniteSubset&, const FiniteSubset&) = default;

 private:
  std::vector<Element> elements_;
};

/// Space-separated formatted elements, e.g. "0 1 2" or "(0,0) (1,0)".
std::string format_subset(const GroupSpec& spec, const FiniteSubset& set);

/// Shared knobs for the verifiers.
struct CheckOptions {
  std::string set_descriptor = "explicit";
  std::size_t ball_cap = kDefaultBallCap;
};

/// dD = { a : dist(a, D) = 1 } = (S.D) \ D.
FiniteSubset outer_boundary(const GroupSpec& spec, const FiniteSubset& set);

/// { x in D : x.s not in D for some s } (right multiplication).
FiniteSubset inner_boundary_right(const GroupSpec& spec, const FiniteSubset& set);

/// { x in D : s.x not in D for some s } (left multiplication, i.e. unit
/// steps of the right-invariant metric).
FiniteSubset inner_boundary_left(const GroupSpec& spec, const FiniteSubset& set);

/// xD = { x.delta : delta in D }.
FiniteSubset translate(const GroupSpec& spec, const Element& x, const FiniteSubset& set);

/// Card(xD \ D).
std::size_t displacement(const GroupSpec& spec, const Element& x, const FiniteSubset& set);

/// Indicator of D averaged over balls of radius d:
///   phi_d(y) = sum_x K(x, y) 1_D(x),  K(x, y) = 1/Card(B(e,d)) if dist(x,y) <= d.
/// The kernel vanishes off B(y, d) = { b.y : b in B(e,d) }, so the sum runs
/// over that ball only and equals Card(D n B(y,d)) / Card(B(e,d)) exactly.
class SmoothedDensity {
 public:
  SmoothedDensity(const GroupSpec& spec, FiniteSubset set, std::size_t d,
                  std::size_t cap = kDefaultBallCap);

  std::size_t d() const { return ball_.radius(); }
  std::size_t ball_size() const { return ball_.size(); }
  const BallTable& ball() const { return ball_; }

  /// Card(D n B(y, d)).
  std::size_t hits(const Element& y) const;
  Rational operator()(const Element& y) const;

 private:
  FiniteSubset set_;
  BallTable ball_;
};

Rational smoothed_density(const GroupSpec& spec, const FiniteSubset& set, std::size_t d,
                          const Element& y, std::size_t cap = kDefaultBallCap);

/// Checks A = B = C exactly where
///   A = Card(B(e,d)) * sum_{y in D} |1 - phi_d(y)|
///   B = sum_{y in D} Card(B(y,d) \ D)
///   C = sum_{x in B(e,d)} Card(xD \ D).
VerificationReport lemma31_check(const GroupSpec& spec, const FiniteSubset& set, std::size_t d,
                                 const CheckOptions& opts = {});

struct TransportWitness {
  std::size_t d;
  Element x;
  std::size_t displacement;
  Rational threshold;  // Card(D) / 2
};

struct HalfMassResult {
  TransportWitness witness;
  VerificationReport report;
};

/// With d minimal such that Card(B(e,d)) > 2 Card(D), finds x in B(e,d)
/// with Card(xD \ D) > Card(D)/2. Scans the whole ball and keeps the
/// maximal displacement; ties go to the shorter, then canonically smaller x.
/// Requires D non-empty and 2 Card(D) < Card(group).
HalfMassResult half_mass_witness(const GroupSpec& spec, const FiniteSubset& set,
                                 const CheckOptions& opts = {});

struct TransportEntry {
  Element x;
  Element omega;      // gamma0^-1 . x, an element of D
  std::size_t index;  // M_x, in 1..k
  Element image;      // f(x) = s_M ... s_1 . omega
};

struct TransportMapRecord {
  Element gamma0;
  std::vector<std::size_t> word;  // (s_1, ..., s_k), gamma0 = s_k ... s_1
  FiniteSubset boundary;          // dD
  std::vector<TransportEntry> entries;
  std::map<Element, std::size_t> preimages;  // z -> Card(f^-1(z))

  std::size_t length() const { return word.size(); }
  std::size_t max_preimage() const;
};

/// Builds f : gamma0 D \ D -> dD along the geodesic word of gamma0. For each
/// x, M_x is found by scanning n = k, k-1, ..., 1 and stopping at the first
/// path point s_n ... s_1 . omega_x lying in dD. Throws InternalContradiction
/// if a path never meets dD.
TransportMapRecord transport_map(const GroupSpec& spec, const Element& gamma0,
                                 const FiniteSubset& set, std::size_t cap = kDefaultBallCap);

/// max_z Card(f^-1(z)) <= d, with the sharper bound <= ||gamma0|| recorded.
VerificationReport preimage_counts(const GroupSpec& spec, const TransportMapRecord& record,
                                   std::size_t d, const CheckOptions& opts = {});

/// Card(gamma0 D \ D) <= d Card(dD), plus the sharper ||gamma0|| Card(dD).
VerificationReport displacement_bound_check(const GroupSpec& spec, const Element& gamma0,
                                            const FiniteSubset& set, std::size_t d,
                                            const CheckOptions& opts = {});

/// Card(dD)/Card(D) > 1 / (2 phi(2 Card(D))), strict.
VerificationReport verify_theorem(const GroupSpec& spec, const FiniteSubset& set,
                                  const CheckOptions& opts = {});

/// Card(d_C D)/Card(D) >= 1 / (4 Card(S) phi(2 Card(D))).
VerificationReport verify_csc(const GroupSpec& spec, const FiniteSubset& set,
                              const CheckOptions& opts = {});

/// Card(dD) <= Card(S) Card(inner_left(D)) decides the verdict; the same
/// comparison with inner_right(D) is recorded without affecting it.
VerificationReport boundary_comparison(const GroupSpec& spec, const FiniteSubset& set,
                                       const CheckOptions& opts = {});

}  // namespace isoplab
