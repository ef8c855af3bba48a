#pragma once

// Reference computations that deliberately avoid BallTable and the
// isoperimetry module, so they can cross-check them.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "isoplab/group.hpp"
#include "isoplab/isoperimetry.hpp"
#include "isoplab/rational.hpp"

namespace isoplab::oracle {

/// Word length by a fresh breadth-first search from e; nullopt if g is not
/// reached within `max_radius` steps.
std::optional<std::size_t> bfs_word_length(const GroupSpec& spec, const Element& g,
                                           std::size_t max_radius);

/// { a : min_{delta in D} dist(a, delta) = 1 }, evaluated with per-element
/// distance queries over every a within ||D||_max + 1 of e.
FiniteSubset outer_boundary_by_distance(const GroupSpec& spec, const FiniteSubset& set);

/// True iff min_{delta in D} dist(a, delta) = 1, by per-pair BFS queries.
bool at_distance_one(const GroupSpec& spec, const Element& a, const FiniteSubset& set);

/// Card({ delta in D : dist(delta, y) <= d }) / gamma(d).
Rational smoothed_density_by_distance(const GroupSpec& spec, const FiniteSubset& set,
                                      std::size_t d, const Element& y);

/// Closed-form growth: 2r+1 on Z, 2r^2+2r+1 on Z^2,
/// 1 + 2k((2k-1)^r - 1)/(2k-2) on Free(k), k >= 2.
std::uint64_t growth_z(std::size_t r);
std::uint64_t growth_z2(std::size_t r);
std::uint64_t growth_free(std::size_t k, std::size_t r);

}  // namespace isoplab::oracle
