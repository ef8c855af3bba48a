#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include "isoplab/group.hpp"

namespace isoplab {

/// Default cap on the number of elements a ball may hold.
inline constexpr std::size_t kDefaultBallCap = 5'000'000;

/// Layered ball B(e, r) in the Cayley graph, built by breadth-first search.
///
/// Neighbours of g are the left multiples s.g, which are exactly the points
/// at distance 1 under the right-invariant metric dist(x, y) = ||x y^-1||.
/// Within a layer, elements are stored in ascending canonical order, and the
/// parent of each element is the first (predecessor, generator) pair that
/// reaches it when predecessors are scanned in that order and generators in
/// generating-set order.
class BallTable {
 public:
  BallTable(GroupSpec spec, std::size_t radius, std::size_t cap = kDefaultBallCap);

  const GroupSpec& spec() const { return spec_; }
  std::size_t radius() const { return layers_.size() - 1; }
  std::size_t cap() const { return cap_; }

  /// layers()[k] holds the elements of word length exactly k.
  const std::vector<std::vector<Element>>& layers() const { return layers_; }
  std::size_t size() const { return nodes_.size(); }

  /// All elements, by layer and then canonical order.
  std::vector<Element> elements() const;

  /// True once a layer came out empty: the ball is the whole (finite) group.
  bool saturated() const { return saturated_; }

  bool contains(const Element& g) const { return nodes_.contains(g); }
  std::optional<std::size_t> length_of(const Element& g) const;

  /// Index of the generator s with g = s . parent(g); nullopt for e or g
  /// outside the ball.
  std::optional<std::size_t> parent_generator(const Element& g) const;

  /// Geodesic (s_1, ..., s_k) with g = s_k ... s_1, k = ||g||. Throws
  /// PreconditionViolated when g is outside the ball.
  std::vector<std::size_t> geodesic(const Element& g) const;

  /// Grows the ball layer by layer up to `new_radius`.
  void extend(std::size_t new_radius);

  /// Grows until `g` is found or the cap is hit (BudgetExceeded). Returns ||g||.
  std::size_t extend_until_contains(const Element& g);

  /// Cumulative sizes gamma(0..radius).
  std::vector<std::uint64_t> cumulative_sizes() const;

 private:
  struct Node {
    std::uint32_t depth;
    std::uint32_t parent;  // generator index; kNoParent for the identity
  };
  static constexpr std::uint32_t kNoParent = 0xffffffffu;

  void grow_one_layer();

  GroupSpec spec_;
  std::size_t cap_;
  std::vector<std::vector<Element>> layers_;
  std::unordered_map<Element, Node, ElementHash> nodes_;
  bool saturated_ = false;
};

BallTable ball(const GroupSpec& spec, std::size_t r, std::size_t cap = kDefaultBallCap);

/// gamma(0), ..., gamma(r_max).
struct GrowthTable {
  GroupSpec spec;
  std::vector<std::uint64_t> values;

  /// CSV with header `r,gamma`.
  void write_csv(std::ostream& os) const;
};

GrowthTable growth(const GroupSpec& spec, std::size_t r_max,
                   std::size_t cap = kDefaultBallCap);

/// min{ r : gamma(r) > v }. Throws Unattainable when v >= Card(group).
std::size_t phi(const GroupSpec& spec, std::uint64_t v, std::size_t cap = kDefaultBallCap);

struct MinimalRadius {
  std::size_t d;
  BallTable ball;  // B(e, d)
};

/// Smallest d with Card(B(e,d)) > target, with the ball itself.
MinimalRadius minimal_d(const GroupSpec& spec, std::uint64_t target,
                        std::size_t cap = kDefaultBallCap);

std::size_t word_length(const GroupSpec& spec, const Element& g,
                        std::size_t cap = kDefaultBallCap);

/// Generator indices (s_1, ..., s_k) with g = s_k ... s_1 and k = ||g||.
std::vector<std::size_t> geodesic_word(const GroupSpec& spec, const Element& g,
                                       std::size_t cap = kDefaultBallCap);

/// dist(x, y) = ||x . y^-1||.
std::size_t distance(const GroupSpec& spec, const Element& x, const Element& y,
                     std::size_t cap = kDefaultBallCap);

}  // namespace isoplab
