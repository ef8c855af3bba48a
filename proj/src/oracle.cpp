#include "isoplab/oracle.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "isoplab/error.hpp"

namespace isoplab::oracle {

namespace {

/// Word lengths of every element within `radius`, by plain BFS.
std::unordered_map<Element, std::size_t, ElementHash> lengths_within(const GroupSpec& spec,
                                                                     std::size_t radius) {
  std::unordered_map<Element, std::size_t, ElementHash> seen{{identity(spec), 0}};
  std::vector<Element> frontier{identity(spec)};
  for (std::size_t depth = 1; depth <= radius && !frontier.empty(); ++depth) {
    std::vector<Element> next;
    for (const auto& g : frontier)
      for (const auto& s : spec.generators().elements) {
        Element h = multiply(spec, s, g);
        if (seen.emplace(h, depth).second) next.push_back(std::move(h));
      }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

std::optional<std::size_t> bfs_word_length(const GroupSpec& spec, const Element& g,
                                           std::size_t max_radius) {
  if (g == identity(spec)) return 0;
  std::unordered_set<Element, ElementHash> seen{identity(spec)};
  std::vector<Element> frontier{identity(spec)};
  for (std::size_t depth = 1; depth <= max_radius && !frontier.empty(); ++depth) {
    std::vector<Element> next;
    for (const auto& x : frontier)
      for (const auto& s : spec.generators().elements) {
        Element h = multiply(spec, s, x);
        if (h == g) return depth;
        if (seen.insert(h).second) next.push_back(std::move(h));
      }
    frontier = std::move(next);
  }
  return std::nullopt;
}

FiniteSubset outer_boundary_by_distance(const GroupSpec& spec, const FiniteSubset& set) {
  if (set.empty()) return FiniteSubset();
  std::size_t reach = 0;
  for (const auto& g : set) {
    auto len = bfs_word_length(spec, g, SIZE_MAX);
    if (!len) throw InternalContradiction("element of D not reached by BFS");
    reach = std::max(reach, *len);
  }

  // Candidates lie within reach + 1 of e. A product a delta^-1 missing from
  // the table has length > reach + 1 >= 1, which is all the test needs.
  const auto lengths = lengths_within(spec, reach + 1);
  std::vector<Element> out;
  for (const auto& [a, len] : lengths) {
    std::size_t best = SIZE_MAX;
    for (const auto& delta : set) {
      auto it = lengths.find(multiply(spec, a, inverse(spec, delta)));
      if (it != lengths.end()) best = std::min(best, it->second);
    }
    if (best == 1) out.push_back(a);
  }
  return FiniteSubset(spec, std::move(out));
}

bool at_distance_one(const GroupSpec& spec, const Element& a, const FiniteSubset& set) {
  bool adjacent = false;
  for (const auto& delta : set) {
    auto len = bfs_word_length(spec, multiply(spec, a, inverse(spec, delta)), 1);
    if (len == std::size_t{0}) return false;
    if (len == std::size_t{1}) adjacent = true;
  }
  return adjacent;
}

Rational smoothed_density_by_distance(const GroupSpec& spec, const FiniteSubset& set,
                                      std::size_t d, const Element& y) {
  const auto lengths = lengths_within(spec, d);
  std::size_t hits = 0;
  for (const auto& delta : set)
    if (lengths.contains(multiply(spec, delta, inverse(spec, y)))) ++hits;
  return Rational(static_cast<std::int64_t>(hits), static_cast<std::int64_t>(lengths.size()));
}

std::uint64_t growth_z(std::size_t r) { return 2 * r + 1; }

std::uint64_t growth_z2(std::size_t r) { return 2 * r * r + 2 * r + 1; }

std::uint64_t growth_free(std::size_t k, std::size_t r) {
  if (k < 2) return growth_z(r);
  std::uint64_t power = 1;
  for (std::size_t i = 0; i < r; ++i) power *= 2 * k - 1;
  return 1 + 2 * k * (power - 1) / (2 * k - 2);
}

}  // namespace isoplab::oracle
