#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "isoplab/error.hpp"
#include "isoplab/isoperimetry.hpp"
#include "isoplab/oracle.hpp"
#include "isoplab/random.hpp"

using namespace isoplab;

namespace {

FiniteSubset ints(const GroupSpec& spec, std::int64_t lo, std::int64_t hi) {
  std::vector<Element> v;
  for (std::int64_t i = lo; i <= hi; ++i) v.push_back(Element({i}));
  return FiniteSubset(spec, v);
}

FiniteSubset parse_set(const GroupSpec& spec, std::initializer_list<const char*> items) {
  std::vector<Element> v;
  for (const char* s : items) v.push_back(parse_element(spec, s));
  return FiniteSubset(spec, v);
}

/// Random D of the given size drawn from B(e, radius).
FiniteSubset random_set(const GroupSpec& spec, SplitMix64& rng, std::size_t size,
                        std::size_t radius) {
  auto pool = ball(spec, radius).elements();
  std::vector<Element> pick;
  for (std::size_t i = 0; i < size && i < pool.size(); ++i) {
    std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
    pick.push_back(pool[i]);
  }
  return FiniteSubset(spec, pick);
}

std::int64_t detail(const VerificationReport& r, const char* key) {
  return r.details.at(key).get<std::int64_t>();
}

}  // namespace

TEST_CASE("finite subsets") {
  const auto z = GroupSpec::parse("z");
  FiniteSubset s(z, {Element({2}), Element({0}), Element({2})});
  CHECK(s.size() == 2);
  CHECK(s.contains(Element({2})));
  CHECK_FALSE(s.contains(Element({1})));
  CHECK(format_subset(z, s) == "0 2");
  CHECK_THROWS_AS(FiniteSubset(GroupSpec::parse("cyclic:4"), {Element({4})}),
                  PreconditionViolated);
}

TEST_CASE("outer boundary") {
  const auto z = GroupSpec::parse("z");
  CHECK(outer_boundary(z, ints(z, 0, 2)) == FiniteSubset(z, {Element({-1}), Element({3})}));
  CHECK(outer_boundary(z, ints(z, 0, 0)) == FiniteSubset(z, {Element({-1}), Element({1})}));

  const auto f2 = GroupSpec::parse("free:2");
  auto b = outer_boundary(f2, parse_set(f2, {"e", "a"}));
  CHECK(b == parse_set(f2, {"A", "b", "B", "aa", "ba", "Ba"}));
  CHECK(b == oracle::outer_boundary_by_distance(f2, parse_set(f2, {"e", "a"})));
}

TEST_CASE("outer boundary matches the distance oracle") {
  SplitMix64 rng(31);
  for (const char* name : {"zd:2", "free:2", "cyclic:12", "dihedral:6", "heisenberg",
                           "symmetric:4"}) {
    CAPTURE(name);
    const auto spec = GroupSpec::parse(name);
    for (int i = 0; i < 8; ++i) {
      auto set = random_set(spec, rng, 1 + rng.below(8), 2);
      CHECK(outer_boundary(spec, set) == oracle::outer_boundary_by_distance(spec, set));
    }
  }
}

TEST_CASE("inner boundaries") {
  const auto z = GroupSpec::parse("z");
  auto d = ints(z, 0, 9);
  CHECK(inner_boundary_right(z, d) == FiniteSubset(z, {Element({0}), Element({9})}));
  CHECK(inner_boundary_left(z, d) == FiniteSubset(z, {Element({0}), Element({9})}));

  const auto c12 = GroupSpec::parse("cyclic:12");
  CHECK_FALSE(inner_boundary_right(c12, ints(c12, 0, 10)).empty());

  const auto f2 = GroupSpec::parse("free:2");
  auto ea = parse_set(f2, {"e", "a"});
  CHECK(inner_boundary_right(f2, ea) == ea);
  CHECK(inner_boundary_left(f2, ea) == ea);

  const auto s3 = GroupSpec::parse("symmetric:3");
  auto id = FiniteSubset(s3, {identity(s3)});
  CHECK(inner_boundary_left(s3, id) == id);

  // Non-abelian sets where both conventions still see every point.
  auto eab = parse_set(f2, {"e", "a", "b"});
  CHECK(inner_boundary_left(f2, eab).size() == 3);
  CHECK(inner_boundary_right(f2, eab).size() == 3);
  const auto d3 = GroupSpec::parse("dihedral:3");
  FiniteSubset rs(d3, {identity(d3), Element({1, 1})});
  // s.(r s) = r^-1, r.(r s) = r^2 s; (r s).s = r, (r s).r = s
  CHECK(inner_boundary_left(d3, rs) == rs);
  CHECK(inner_boundary_right(d3, rs) == rs);
}

TEST_CASE("translation displacement") {
  const auto z = GroupSpec::parse("z");
  auto d = ints(z, 0, 4);
  CHECK(displacement(z, Element({1}), d) == 1);
  CHECK(displacement(z, Element({0}), d) == 0);
  CHECK(displacement(z, Element({5}), d) == 5);
  CHECK(translate(z, Element({2}), d) == ints(z, 2, 6));
}

TEST_CASE("smoothed density") {
  const auto z = GroupSpec::parse("z");
  auto d = ints(z, 0, 1);
  CHECK(smoothed_density(z, d, 1, Element({0})) == Rational(2, 3));
  CHECK(smoothed_density(z, d, 1, Element({5})) == Rational(0));
  CHECK(smoothed_density(z, d, 0, Element({0})) == Rational(1));
}

TEST_CASE("smoothed density agrees with the kernel sum and stays in [0,1]") {
  SplitMix64 rng(8);
  for (const char* name : {"zd:2", "free:2", "dihedral:6", "heisenberg", "symmetric:4"}) {
    CAPTURE(name);
    const auto spec = GroupSpec::parse(name);
    for (int i = 0; i < 6; ++i) {
      auto set = random_set(spec, rng, 1 + rng.below(10), 3);
      std::size_t d = rng.below(3);
      SmoothedDensity density(spec, set, d);
      bool small_set = density.ball_size() > 2 * set.size();
      for (const auto& y : ball(spec, 3).elements()) {
        Rational v = density(y);
        CHECK(v == oracle::smoothed_density_by_distance(spec, set, d, y));
        CHECK(v >= Rational(0));
        CHECK(v <= Rational(1));
        if (small_set && set.contains(y)) CHECK(v < Rational(1, 2));
      }
    }
  }
}

TEST_CASE("translation-ball duality") {
  SplitMix64 rng(12);
  for (const char* name : {"free:2", "dihedral:6", "heisenberg"}) {
    const auto spec = GroupSpec::parse(name);
    auto set = random_set(spec, rng, 7, 2);
    for (std::size_t d = 0; d <= 2; ++d) {
      BallTable b = ball(spec, d);
      for (const auto& y : set) {
        // Card(B(y,d) \ D) by distance against the sum over x in B(e,d)
        std::size_t direct = 0;
        for (const auto& z : ball(spec, d + 4).elements())
          if (!set.contains(z) &&
              oracle::bfs_word_length(spec, multiply(spec, z, inverse(spec, y)), d))
            ++direct;
        std::size_t summed = 0;
        for (const auto& x : b.elements())
          if (!set.contains(multiply(spec, x, y))) ++summed;
        CHECK(direct == summed);
      }
    }
  }
}

TEST_CASE("ball-average identity examples") {
  const auto z = GroupSpec::parse("z");
  auto r = lemma31_check(z, ints(z, 0, 1), 1);
  CHECK(r.holds());
  CHECK(detail(r, "A") == 2);
  CHECK(detail(r, "B") == 2);
  CHECK(detail(r, "C") == 2);

  auto r0 = lemma31_check(GroupSpec::parse("heisenberg"),
                          FiniteSubset(GroupSpec::parse("heisenberg"),
                                       {Element({0, 0, 0}), Element({1, 0, 0})}),
                          0);
  CHECK(detail(r0, "A") == 0);
  CHECK(detail(r0, "C") == 0);

  // cyclic:8, D = {0,1,2}, d = 2 against brute force over all 8 elements
  const auto c8 = GroupSpec::parse("cyclic:8");
  auto d = ints(c8, 0, 2);
  std::size_t c = 0, b = 0;
  for (std::int64_t x = 0; x < 8; ++x) {
    std::size_t dx = std::min<std::int64_t>(x, 8 - x);
    if (dx > 2) continue;
    for (std::int64_t y = 0; y <= 2; ++y)
      if ((x + y) % 8 > 2) ++c;
  }
  for (std::int64_t y = 0; y <= 2; ++y)
    for (std::int64_t z8 = 0; z8 < 8; ++z8) {
      std::int64_t diff = ((z8 - y) % 8 + 8) % 8;
      if (std::min<std::int64_t>(diff, 8 - diff) <= 2 && z8 > 2) ++b;
    }
  CHECK(b == c);
  auto rc = lemma31_check(c8, d, 2);
  CHECK(rc.holds());
  CHECK(detail(rc, "C") == static_cast<std::int64_t>(c));
  CHECK(detail(rc, "B") == static_cast<std::int64_t>(b));
  CHECK(c == 6);  // x = 6, 7, 1, 2 move out 2, 1, 1, 2
}

TEST_CASE("ball-average identity on random instances") {
  SplitMix64 rng(41);
  for (const char* name : {"z", "zd:2", "free:2", "cyclic:12", "dihedral:6", "heisenberg",
                           "symmetric:4"}) {
    CAPTURE(name);
    const auto spec = GroupSpec::parse(name);
    for (int i = 0; i < 10; ++i) {
      auto set = random_set(spec, rng, 1 + rng.below(15), 3);
      std::size_t d = rng.below(4);
      auto r = lemma31_check(spec, set, d);
      CHECK(r.holds());
      CHECK(detail(r, "A") == detail(r, "C"));
    }
  }
}

TEST_CASE("half-mass witness") {
  const auto z = GroupSpec::parse("z");
  auto h = half_mass_witness(z, ints(z, 0, 4));
  CHECK(h.witness.d == 5);
  CHECK(h.witness.x == Element({-5}));
  CHECK(h.witness.displacement == 5);
  CHECK(h.witness.threshold == Rational(5, 2));
  CHECK(h.report.holds());

  auto s = half_mass_witness(z, ints(z, 0, 0));
  CHECK(s.witness.d == 1);
  CHECK(s.witness.x == Element({-1}));
  CHECK(s.witness.displacement == 1);

  const auto c12 = GroupSpec::parse("cyclic:12");
  auto c = half_mass_witness(c12, ints(c12, 0, 4));
  CHECK(c.witness.d == 5);
  CHECK(c.witness.displacement >= 3);
  std::size_t best = 0;
  for (std::int64_t x = 0; x < 12; ++x)
    best = std::max(best, displacement(c12, Element({x}), ints(c12, 0, 4)));
  CHECK(c.witness.displacement == best);

  CHECK_THROWS_AS(half_mass_witness(c12, ints(c12, 0, 5)), PreconditionViolated);
  CHECK_THROWS_AS(half_mass_witness(z, FiniteSubset()), PreconditionViolated);
}

TEST_CASE("half-mass witness exists on random instances") {
  SplitMix64 rng(3);
  for (const char* name : {"zd:2", "free:2", "cyclic:12", "dihedral:6", "heisenberg"}) {
    CAPTURE(name);
    const auto spec = GroupSpec::parse(name);
    for (int i = 0; i < 10; ++i) {
      std::size_t size = 1 + rng.below(5);
      auto set = random_set(spec, rng, size, 2);
      auto h = half_mass_witness(spec, set);
      CHECK(h.report.holds());
      CHECK(Rational(static_cast<std::int64_t>(h.witness.displacement)) > h.witness.threshold);
      CHECK(word_length(spec, h.witness.x) <= h.witness.d);
    }
  }
}

TEST_CASE("transport map") {
  const auto z = GroupSpec::parse("z");
  auto rec = transport_map(z, Element({3}), ints(z, 0, 4));
  REQUIRE(rec.entries.size() == 3);
  CHECK(rec.entries[0].x == Element({5}));
  CHECK(rec.entries[0].index == 3);
  CHECK(rec.entries[1].x == Element({6}));
  CHECK(rec.entries[1].index == 2);
  CHECK(rec.entries[2].x == Element({7}));
  CHECK(rec.entries[2].index == 1);
  for (const auto& e : rec.entries) CHECK(e.image == Element({5}));
  CHECK(rec.preimages == std::map<Element, std::size_t>{{Element({5}), 3}});

  auto one = transport_map(z, Element({1}), ints(z, 0, 4));
  REQUIRE(one.entries.size() == 1);
  CHECK(one.entries[0].omega == Element({4}));
  CHECK(one.entries[0].index == 1);
  CHECK(one.entries[0].image == Element({5}));

  const auto f2 = GroupSpec::parse("free:2");
  auto ea = parse_set(f2, {"e", "a"});
  auto fr = transport_map(f2, parse_element(f2, "aa"), ea);
  REQUIRE(fr.entries.size() == 2);
  CHECK(fr.entries[0].x == parse_element(f2, "aa"));
  CHECK(fr.entries[1].x == parse_element(f2, "aaa"));
  for (const auto& e : fr.entries) CHECK(outer_boundary(f2, ea).contains(e.image));
  CHECK(fr.max_preimage() <= 2);

  CHECK_THROWS_AS(transport_map(z, Element({0}), ints(z, 0, 4)), PreconditionViolated);
}

TEST_CASE("transport map invariants on random instances") {
  SplitMix64 rng(77);
  for (const char* name : {"zd:2", "free:2", "cyclic:12", "dihedral:6", "heisenberg",
                           "symmetric:4"}) {
    CAPTURE(name);
    const auto spec = GroupSpec::parse(name);
    BallTable b = ball(spec, 4);
    for (int i = 0; i < 10; ++i) {
      auto set = random_set(spec, rng, 1 + rng.below(12), 2);
      auto all = b.elements();
      Element g0 = all[1 + rng.below(all.size() - 1)];
      auto rec = transport_map(spec, g0, set);
      const std::size_t k = rec.length();
      CHECK(k == word_length(spec, g0));
      CHECK(rec.entries.size() == displacement(spec, g0, set));
      for (const auto& e : rec.entries) {
        CHECK(set.contains(e.omega));
        CHECK(multiply(spec, g0, e.omega) == e.x);
        CHECK(e.index >= 1);
        CHECK(e.index <= k);
        CHECK(oracle::at_distance_one(spec, e.image, set));
        // no later path point lies in dD
        Element p = e.image;
        for (std::size_t n = e.index + 1; n <= k; ++n) {
          p = multiply(spec, spec.generators().elements[rec.word[n - 1]], p);
          CHECK_FALSE(rec.boundary.contains(p));
        }
      }
      CHECK(rec.max_preimage() <= k);
    }
  }
}

TEST_CASE("preimage bound") {
  const auto z = GroupSpec::parse("z");
  auto rec = transport_map(z, Element({3}), ints(z, 0, 4));
  auto r = preimage_counts(z, rec, 3);
  CHECK(r.holds());
  CHECK(detail(r, "max_preimage") == 3);
  CHECK_THROWS_AS(preimage_counts(z, rec, 2), PreconditionViolated);

  auto r1 = preimage_counts(z, transport_map(z, Element({1}), ints(z, 0, 4)), 5);
  CHECK(detail(r1, "max_preimage") == 1);

  const auto c12 = GroupSpec::parse("cyclic:12");
  auto rc = preimage_counts(c12, transport_map(c12, Element({4}), ints(c12, 0, 4)), 5);
  CHECK(rc.holds());
  CHECK(detail(rc, "max_preimage") <= 4);
}

TEST_CASE("displacement bound") {
  const auto z = GroupSpec::parse("z");
  auto r = displacement_bound_check(z, Element({3}), ints(z, 0, 4), 3);
  CHECK(r.holds());
  CHECK(r.lhs() == Rational(3));
  CHECK(r.rhs() == Rational(6));

  auto r1 = displacement_bound_check(z, Element({1}), ints(z, 0, 9), 1);
  CHECK(r1.lhs() == Rational(1));
  CHECK(r1.rhs() == Rational(2));

  const auto f2 = GroupSpec::parse("free:2");
  auto rf = displacement_bound_check(f2, parse_element(f2, "aa"), parse_set(f2, {"e", "a"}), 2);
  CHECK(rf.lhs() == Rational(2));
  CHECK(rf.rhs() == Rational(12));

  CHECK_THROWS_AS(displacement_bound_check(z, Element({3}), ints(z, 0, 4), 2),
                  PreconditionViolated);
}

TEST_CASE("isoperimetric bound") {
  const auto z = GroupSpec::parse("z");
  auto r = verify_theorem(z, ints(z, 0, 9));
  CHECK(r.holds());
  CHECK(r.lhs() == Rational(2, 10));
  CHECK(r.rhs() == Rational(1, 20));
  CHECK(r.sharpness() == Rational(4));
  CHECK(r.headline().relation == Relation::Greater);

  auto r0 = verify_theorem(z, ints(z, 0, 0));
  CHECK(r0.lhs() == Rational(2));
  CHECK(r0.rhs() == Rational(1, 2));

  const auto c12 = GroupSpec::parse("cyclic:12");
  auto rc = verify_theorem(c12, ints(c12, 0, 2));
  CHECK(rc.lhs() == Rational(2, 3));
  CHECK(rc.rhs() == Rational(1, 6));
  CHECK(detail(rc, "phi") == 3);

  CHECK_THROWS_AS(verify_theorem(c12, ints(c12, 0, 5)), PreconditionViolated);
}

TEST_CASE("CSC inequality") {
  const auto z = GroupSpec::parse("z");
  auto r = verify_csc(z, ints(z, 0, 9));
  CHECK(r.holds());
  CHECK(r.lhs() == Rational(2, 10));
  CHECK(r.rhs() == Rational(1, 80));

  auto r0 = verify_csc(z, ints(z, 0, 0));
  CHECK(r0.lhs() == Rational(1));
  CHECK(r0.rhs() == Rational(1, 8));

  const auto d6 = GroupSpec::parse("dihedral:6");
  FiniteSubset b1(d6, ball(d6, 1).elements());
  REQUIRE(b1.size() == 4);
  auto rd = verify_csc(d6, b1);
  CHECK(rd.holds());
  // phi(8) = 3 on D6 (gamma = 1, 4, 8, 11, 12)
  CHECK(rd.rhs() == Rational(1, 36));
  CHECK(rd.lhs() == Rational(static_cast<std::int64_t>(inner_boundary_right(d6, b1).size()), 4));
}

TEST_CASE("boundary comparison") {
  const auto z = GroupSpec::parse("z");
  auto r = boundary_comparison(z, ints(z, 0, 9));
  CHECK(r.lhs() == Rational(2));
  CHECK(r.rhs() == Rational(4));
  CHECK(r.findings().empty());

  const auto f2 = GroupSpec::parse("free:2");
  auto rf = boundary_comparison(f2, parse_set(f2, {"e", "a"}));
  CHECK(rf.lhs() == Rational(6));
  CHECK(rf.rhs() == Rational(8));
  CHECK(rf.conditions[1].rhs == Rational(8));

  const auto s3 = GroupSpec::parse("symmetric:3");
  auto rs = boundary_comparison(s3, FiniteSubset(s3, {identity(s3)}));
  CHECK(rs.lhs() == Rational(2));
  CHECK(rs.rhs() == Rational(2));

  // In S4 the right-multiplication inner boundary can be too small.
  const auto s4 = GroupSpec::parse("symmetric:4");
  auto d = parse_set(s4, {"[1,3,2,4]", "[1,3,4,2]", "[3,1,2,4]", "[3,1,4,2]", "[3,2,1,4]",
                          "[3,4,1,2]"});
  auto r4 = boundary_comparison(s4, d);
  CHECK(r4.holds());
  CHECK(r4.lhs() == Rational(15));
  CHECK(r4.rhs() == Rational(18));
  CHECK_FALSE(r4.conditions[1].holds());
  CHECK(r4.conditions[1].rhs == Rational(12));
  CHECK(r4.findings().size() == 1);
  CHECK(verify_csc(s4, d).holds());
}
