#include "isoplab/metric.hpp"

#include <algorithm>
#include <ostream>

#include "isoplab/error.hpp"

namespace isoplab {

BallTable::BallTable(GroupSpec spec, std::size_t radius, std::size_t cap)
    : spec_(std::move(spec)), cap_(cap) {
  Element e = identity(spec_);
  nodes_.emplace(e, Node{0, kNoParent});
  layers_.push_back({std::move(e)});
  extend(radius);
}

void BallTable::grow_one_layer() {
  const auto& gens = spec_.generators().elements;
  const auto depth = static_cast<std::uint32_t>(layers_.size());
  std::vector<Element> next;
  if (!saturated_) {
    for (const Element& g : layers_.back()) {
      for (std::size_t s = 0; s < gens.size(); ++s) {
        Element h = multiply(spec_, gens[s], g);
        auto [it, inserted] =
            nodes_.try_emplace(std::move(h), Node{depth, static_cast<std::uint32_t>(s)});
        if (!inserted) continue;
        if (nodes_.size() > cap_)
          throw BudgetExceeded("ball in " + spec_.name() + " exceeds the cap of " +
                               std::to_string(cap_) + " elements at radius " +
                               std::to_string(depth));
        next.push_back(it->first);
      }
    }
    std::sort(next.begin(), next.end());
    saturated_ = next.empty();
  }
  layers_.push_back(std::move(next));
}

void BallTable::extend(std::size_t new_radius) {
  while (radius() < new_radius) grow_one_layer();
}

std::size_t BallTable::extend_until_contains(const Element& g) {
  if (!is_valid(spec_, g))
    throw PreconditionViolated("element is not a canonical element of " + spec_.name());
  while (!contains(g)) {
    if (saturated_)
      throw InternalContradiction("saturated ball misses an element of " + spec_.name());
    grow_one_layer();
  }
  return *length_of(g);
}

std::vector<Element> BallTable::elements() const {
  std::vector<Element> out;
  out.reserve(size());
  for (const auto& layer : layers_) out.insert(out.end(), layer.begin(), layer.end());
  return out;
}

std::optional<std::size_t> BallTable::length_of(const Element& g) const {
  auto it = nodes_.find(g);
  if (it == nodes_.end()) return std::nullopt;
  return it->second.depth;
}

std::optional<std::size_t> BallTable::parent_generator(const Element& g) const {
  auto it = nodes_.find(g);
  if (it == nodes_.end() || it->second.parent == kNoParent) return std::nullopt;
  return it->second.parent;
}

std::vector<std::size_t> BallTable::geodesic(const Element& g) const {
  if (!contains(g))
    throw PreconditionViolated("element " + format_element(spec_, g) +
                               " lies outside the ball of radius " + std::to_string(radius()));
  const auto& gens = spec_.generators();
  std::vector<std::size_t> word;
  Element cur = g;
  while (auto s = parent_generator(cur)) {
    word.push_back(*s);
    cur = multiply(spec_, gens.elements[gens.inverse_index[*s]], cur);
  }
  // collected s_k first
  std::reverse(word.begin(), word.end());
  return word;
}

std::vector<std::uint64_t> BallTable::cumulative_sizes() const {
  std::vector<std::uint64_t> out;
  std::uint64_t total = 0;
  for (const auto& layer : layers_) {
    total += layer.size();
    out.push_back(total);
  }
  return out;
}

BallTable ball(const GroupSpec& spec, std::size_t r, std::size_t cap) {
  return BallTable(spec, r, cap);
}

void GrowthTable::write_csv(std::ostream& os) const {
  os << "r,gamma\n";
  for (std::size_t r = 0; r < values.size(); ++r) os << r << ',' << values[r] << '\n';
}

GrowthTable growth(const GroupSpec& spec, std::size_t r_max, std::size_t cap) {
  return GrowthTable{spec, BallTable(spec, r_max, cap).cumulative_sizes()};
}

MinimalRadius minimal_d(const GroupSpec& spec, std::uint64_t target, std::size_t cap) {
  if (auto order = group_order(spec); order && target >= *order)
    throw Unattainable("no ball of " + spec.name() + " has more than " +
                       std::to_string(target) + " elements (group order " +
                       std::to_string(*order) + ")");
  BallTable table(spec, 0, cap);
  while (table.size() <= target) {
    if (table.saturated())
      throw Unattainable("ball saturated before exceeding " + std::to_string(target));
    table.extend(table.radius() + 1);
  }
  std::size_t d = table.radius();
  return MinimalRadius{d, std::move(table)};
}

std::size_t phi(const GroupSpec& spec, std::uint64_t v, std::size_t cap) {
  return minimal_d(spec, v, cap).d;
}

std::size_t word_length(const GroupSpec& spec, const Element& g, std::size_t cap) {
  BallTable table(spec, 0, cap);
  return table.extend_until_contains(g);
}

std::vector<std::size_t> geodesic_word(const GroupSpec& spec, const Element& g,
                                       std::size_t cap) {
  BallTable table(spec, 0, cap);
  table.extend_until_contains(g);
  return table.geodesic(g);
}

std::size_t distance(const GroupSpec& spec, const Element& x, const Element& y,
                     std::size_t cap) {
  return word_length(spec, multiply(spec, x, inverse(spec, y)), cap);
}

}  // namespace isoplab
