#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <set>
#include <sstream>

#include "isoplab/error.hpp"
#include "isoplab/random.hpp"
#include "isoplab/search.hpp"

using namespace isoplab;

namespace {

std::vector<Element> all_elements(const GroupSpec& spec) {
  std::set<Element> seen{identity(spec)};
  std::vector<Element> todo{identity(spec)};
  while (!todo.empty()) {
    Element g = todo.back();
    todo.pop_back();
    for (const auto& s : spec.generators().elements) {
      Element h = multiply(spec, s, g);
      if (seen.insert(h).second) todo.push_back(h);
    }
  }
  return {seen.begin(), seen.end()};
}

std::size_t naive_boundary(const GroupSpec& spec, const std::vector<Element>& d) {
  std::set<Element> in(d.begin(), d.end()), out;
  for (const auto& x : d)
    for (const auto& s : spec.generators().elements) {
      Element y = multiply(spec, s, x);
      if (!in.contains(y)) out.insert(y);
    }
  return out.size();
}

/// Minimum boundary over all n-subsets, by recursive combinations.
std::size_t brute_min_boundary(const GroupSpec& spec, std::size_t n) {
  auto all = all_elements(spec);
  std::size_t best = SIZE_MAX;
  std::vector<Element> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (pick.size() == n) {
      best = std::min(best, naive_boundary(spec, pick));
      return;
    }
    for (std::size_t i = start; i < all.size(); ++i) {
      pick.push_back(all[i]);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return best;
}

}  // namespace

TEST_CASE("SplitMix64 reference outputs") {
  SplitMix64 rng(1234567);
  CHECK(rng.next() == 6457827717110365317ULL);
  CHECK(rng.next() == 3203168211198807973ULL);
  CHECK(rng.next() == 9817491932198370423ULL);
  CHECK(trial_seed(7, 2) == 15923061589221109599ULL);

  SplitMix64 b(9);
  for (int i = 0; i < 1000; ++i) {
    auto v = b.between(3, 7);
    CHECK(v >= 3);
    CHECK(v <= 7);
  }
}

TEST_CASE("descriptor grammar") {
  auto b = SetDescriptor::parse("ball:2");
  CHECK(b.kind == SetDescriptor::Kind::Ball);
  CHECK(b.radius == 2);
  auto r = SetDescriptor::parse("random:6:3", 42);
  CHECK(r.kind == SetDescriptor::Kind::Random);
  CHECK(r.size == 6);
  CHECK(r.radius == 3);
  CHECK(r.provenance() == "random:6:3#seed=42");
  auto e = SetDescriptor::parse("explicit:(0,0),(1,0)");
  CHECK(e.elements == std::vector<std::string>{"(0,0)", "(1,0)"});
  auto x = SetDescriptor::parse("exhaustive:1..3");
  CHECK(x.lo == 1);
  CHECK(x.hi == 3);
  CHECK(SetDescriptor::parse("exhaustive:4").lo == 4);
  CHECK(SetDescriptor::parse("interval:7").size == 7);
  CHECK(SetDescriptor::parse("connected:5", 1).randomized());

  CHECK_THROWS_AS(SetDescriptor::parse("ball"), ParseError);
  CHECK_THROWS_AS(SetDescriptor::parse("ball:x"), ParseError);
  CHECK_THROWS_AS(SetDescriptor::parse("random:6"), ParseError);
  CHECK_THROWS_AS(SetDescriptor::parse("exhaustive:3..1"), ParseError);
  CHECK_THROWS_AS(SetDescriptor::parse("disc:3"), ParseError);
}

TEST_CASE("generate_set") {
  const auto z = GroupSpec::parse("z");
  auto b = generate_set(z, SetDescriptor::ball(2));
  CHECK(b.size() == 5);
  CHECK(b.elements().front() == Element({-2}));
  CHECK(b.elements().back() == Element({2}));

  auto iv = generate_set(z, SetDescriptor::interval(4));
  CHECK(iv == FiniteSubset(z, {Element({0}), Element({1}), Element({2}), Element({3})}));

  const auto f2 = GroupSpec::parse("free:2");
  auto ex = generate_set(f2, SetDescriptor::parse("explicit:e,a,aB"));
  CHECK(ex.size() == 3);
  CHECK_THROWS_AS(generate_set(f2, SetDescriptor::parse("explicit:a,a")), ParseError);

  CHECK_THROWS_AS(generate_set(GroupSpec::parse("cyclic:5"), SetDescriptor::interval(6)),
                  PreconditionViolated);
}

TEST_CASE("random sets are reproducible") {
  const auto f2 = GroupSpec::parse("free:2");
  auto desc = SetDescriptor::uniform_in_ball(6, 3, 42);
  auto a = generate_set(f2, desc);
  auto b = generate_set(f2, desc);
  CHECK(a == b);
  CHECK(a.size() == 6);
  BallTable b3 = ball(f2, 3);
  for (const auto& g : a) CHECK(b3.contains(g));
  CHECK_FALSE(generate_set(f2, SetDescriptor::uniform_in_ball(6, 3, 43)) == a);

  CHECK_THROWS(generate_set(f2, SetDescriptor::uniform_in_ball(6, 0, 1)));

  // connected sets: every element but e has a neighbour inside the set
  const auto h = GroupSpec::parse("heisenberg");
  for (std::uint64_t t = 0; t < 10; ++t) {
    auto c = generate_set(h, SetDescriptor::connected(12, 5).for_trial(t));
    CHECK(c.size() == 12);
    CHECK(c.contains(identity(h)));
    for (const auto& g : c) {
      if (g == identity(h)) continue;
      bool linked = false;
      for (const auto& s : h.generators().elements) linked |= c.contains(multiply(h, s, g));
      CHECK(linked);
    }
  }
}

TEST_CASE("exhaustive enumeration") {
  const auto c8 = GroupSpec::parse("cyclic:8");
  std::set<FiniteSubset, bool (*)(const FiniteSubset&, const FiniteSubset&)> seen(
      [](const FiniteSubset& a, const FiniteSubset& b) { return a.elements() < b.elements(); });
  std::uint64_t count = for_each_subset(c8, SetDescriptor::exhaustive(1, 3),
                                        [&](const FiniteSubset& s) {
                                          CHECK(s.size() >= 1);
                                          CHECK(s.size() <= 3);
                                          seen.insert(s);
                                        });
  CHECK(count == 92);
  CHECK(seen.size() == 92);

  auto g = enumerate_group(c8);
  for_each_subset_mask(g, 1, 4, [&](std::uint64_t mask, std::size_t boundary) {
    auto s = g.subset(c8, mask);
    CHECK(boundary == naive_boundary(c8, s.elements()));
  });

  CHECK_THROWS_AS(enumerate_group(GroupSpec::parse("z")), PreconditionViolated);
  CHECK_THROWS_AS(enumerate_group(GroupSpec::parse("symmetric:5")), BudgetExceeded);
}

TEST_CASE("incremental boundary on a non-abelian group") {
  const auto d4 = GroupSpec::parse("dihedral:4");
  auto g = enumerate_group(d4);
  std::uint64_t n = for_each_subset_mask(g, 1, 8, [&](std::uint64_t mask, std::size_t boundary) {
    CHECK(boundary == naive_boundary(d4, g.subset(d4, mask).elements()));
  });
  CHECK(n == 255);
}

TEST_CASE("exhaustive profile") {
  const auto c8 = GroupSpec::parse("cyclic:8");
  auto rows = exhaustive_profile(c8, 1, 3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].min_boundary == 2);
  CHECK(rows[2].min_boundary == 2);
  CHECK(rows[2].min_boundary == brute_min_boundary(c8, 3));
  CHECK(rows[2].witness == FiniteSubset(c8, {Element({0}), Element({1}), Element({2})}));
  CHECK(rows[2].bound == Rational(3, 6));
  for (const auto& r : rows) CHECK(r.strict());

  const auto d4 = GroupSpec::parse("dihedral:4");
  auto drows = exhaustive_profile(d4, 1, 3);
  for (const auto& r : drows) {
    CAPTURE(r.n);
    CHECK(r.min_boundary == brute_min_boundary(d4, r.n));
    CHECK(naive_boundary(d4, r.witness.elements()) == r.min_boundary);
    CHECK(r.strict());
  }
  CHECK(drows[2].min_boundary == 4);

  CHECK_THROWS_AS(exhaustive_profile(c8, 4, 4), PreconditionViolated);
}

TEST_CASE("singleton profile equals the generating set size") {
  for (std::string name : {"cyclic:3", "cyclic:12", "dihedral:6", "symmetric:4", "heisenberg:2"}) {
    CAPTURE(name);
    const auto spec = GroupSpec::parse(name);
    auto rows = exhaustive_profile(spec, 1, 1);
    CHECK(rows[0].min_boundary == spec.generators().size());
  }
}

TEST_CASE("profile CSV") {
  const auto c8 = GroupSpec::parse("cyclic:8");
  std::ostringstream os;
  write_profile_csv(os, c8, exhaustive_profile(c8, 1, 2));
  CHECK(os.str() == "n,min_boundary,bound_num,bound_den,witness\n"
                    "1,2,1,2,\"0\"\n"
                    "2,2,1,2,\"0 1\"\n");
}

TEST_CASE("sharpness on intervals and balls") {
  const auto z = GroupSpec::parse("z");
  std::vector<SetDescriptor> sets;
  for (std::size_t n = 1; n <= 50; ++n) sets.push_back(SetDescriptor::interval(n));
  auto s = sharpness_scan(z, sets);
  REQUIRE(s.trials.size() == 50);
  for (const auto& t : s.trials) CHECK(t.factor == Rational(4));
  CHECK(s.min == Rational(4));
  CHECK(s.median == Rational(4));

  const auto z2 = GroupSpec::parse("zd:2");
  std::vector<SetDescriptor> balls;
  for (std::size_t r = 1; r <= 10; ++r) balls.push_back(SetDescriptor::ball(r));
  auto sb = sharpness_scan(z2, balls);
  for (const auto& t : sb.trials) CHECK(t.factor > Rational(1));
  auto j = sb.to_json();
  CHECK(Rational(j["min_num"].get<std::int64_t>(), j["min_den"].get<std::int64_t>()) == sb.min);
  CHECK(j["trials"].size() == 10);
}
