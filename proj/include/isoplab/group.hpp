#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace isoplab {

/// The catalog of concrete groups. Every family has an exact normal form.
enum class Family {
  Integer,     // Z^k
  Cyclic,      // Z/nZ
  Dihedral,    // order 2n, <r, s | r^n, s^2, srs = r^-1>
  Free,        // free group on k letters
  Heisenberg,  // integer unitriangular 3x3 matrices, optionally mod m
  Symmetric,   // permutations of {1..n}
};

/// Canonical encoding of a group element.
///
/// The code is a flat integer tuple whose meaning depends on the family:
///   Z^k         (x_1, ..., x_k)
///   Cyclic(n)   (residue) with 0 <= residue < n
///   Dihedral(n) (i, j) for r^i s^j, 0 <= i < n, j in {0, 1}
///   Free(k)     reduced word; letter i is +(i+1), its inverse -(i+1)
///   Heisenberg  (a, b, c), i.e. the matrix [[1,a,c],[0,1,b],[0,0,1]]
///   Symmetric   one-line images (p(1), ..., p(n))
///
/// Two elements of the same group are equal iff their codes are identical.
/// Elements order by code length first, then lexicographically.
class Element {
 public:
  Element() = default;
  explicit Element(std::vector<std::int64_t> code) : code_(std::move(code)) {}

  std::span<const std::int64_t> code() const { return code_; }
  std::size_t size() const { return code_.size(); }
  std::int64_t operator[](std::size_t i) const { return code_[i]; }

  friend bool operator==(const Element&, const Element&) = default;
  friend std::strong_ordering operator<=>(const Element& a, const Element& b);

 private:
  std::vector<std::int64_t> code_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

/// Symmetric generating set S. Involutions appear once; the identity never
/// appears. `inverse_index[i]` is the position of elements[i]^-1.
struct GeneratingSet {
  std::vector<Element> elements;
  std::vector<std::size_t> inverse_index;
  /// Token used to spell each generator in words (e.g. "a", "A", "+1", "t2").
  std::vector<std::string> tokens;

  std::size_t size() const { return elements.size(); }
};

/// A group from the catalog together with its default generating set.
class GroupSpec {
 public:
  /// Accepts `z`, `zd:<k>`, `cyclic:<n>`, `dihedral:<n>`, `free:<k>`,
  /// `heisenberg`, `heisenberg:<m>`, `symmetric:<n>`.
  static GroupSpec parse(std::string_view text);

  static GroupSpec integer_lattice(int rank);
  static GroupSpec cyclic(int n);
  static GroupSpec dihedral(int n);
  static GroupSpec free_group(int rank);
  static GroupSpec heisenberg(std::optional<std::int64_t> modulus = std::nullopt);
  static GroupSpec symmetric(int n);

  Family family() const { return family_; }
  /// k for Z^k and Free(k), n for Cyclic/Dihedral/Symmetric, 3 for Heisenberg.
  int parameter() const { return parameter_; }
  const std::optional<std::int64_t>& modulus() const { return modulus_; }
  const GeneratingSet& generators() const { return generators_; }

  /// Canonical spelling in the group grammar.
  std::string name() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.family_ == b.family_ && a.parameter_ == b.parameter_ &&
           a.modulus_ == b.modulus_;
  }

 private:
  GroupSpec(Family family, int parameter, std::optional<std::int64_t> modulus);

  Family family_;
  int parameter_;
  std::optional<std::int64_t> modulus_;
  GeneratingSet generators_;
};

Element identity(const GroupSpec& spec);
Element multiply(const GroupSpec& spec, const Element& a, const Element& b);
Element inverse(const GroupSpec& spec, const Element& a);

/// Exact order; std::nullopt stands for an infinite group.
std::optional<std::uint64_t> group_order(const GroupSpec& spec);

/// True iff 2 * set_size < Card(group), which always holds for infinite groups.
bool below_half_order(const GroupSpec& spec, std::size_t set_size);

/// Throws ParseError for malformed text or a non-canonical encoding.
Element parse_element(const GroupSpec& spec, std::string_view text);
std::string format_element(const GroupSpec& spec, const Element& e);

/// Checks that `e` is a canonical encoding for `spec`.
bool is_valid(const GroupSpec& spec, const Element& e);

/// Parses a word written in generator tokens ("abA", "+1+1-1", "rRs", "t1t2")
/// and returns the indices into the generating set, left to right.
std::vector<std::size_t> parse_word(const GroupSpec& spec, std::string_view text);

/// Product of the generators named by `word`, taken left to right.
Element evaluate_word(const GroupSpec& spec, std::span<const std::size_t> word);

}  // namespace isoplab
