#include <gtest/gtest.h>

#include <random>
#include <set>

#include "trimod/trigeo.hpp"

using namespace trimod;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

// Lattice triples i/d with i + j + k = 2d, all inside M (each i < d).
std::vector<TriangleLengths> perimeter_two_grid(int max_den) {
  std::set<TriangleLengths> seen;
  for (int d = 1; d <= max_den; ++d)
    for (int i = 1; i < d; ++i)
      for (int j = 1; j < d; ++j) {
        const int k = 2 * d - i - j;
        if (k <= 0 || k >= d) continue;
        seen.insert({q(i, d), q(j, d), q(k, d)});
      }
  return {seen.begin(), seen.end()};
}

}  // namespace

TEST(Cone, Membership) {
  EXPECT_TRUE(in_M(triangle(3, 4, 5)));
  EXPECT_FALSE(in_M(triangle(1, 1, 2)));
  EXPECT_FALSE(in_M(triangle(1, 2, 5)));
  EXPECT_FALSE(in_M(triangle(0, 1, 1)));
  EXPECT_THROW(to_N(triangle(1, 1, 2)), GeometryError);
}

TEST(Action, Table) {
  const TriangleLengths t = triangle(3, 4, 5);
  EXPECT_EQ(act(*Perm::parse("(AB)"), t), triangle(3, 5, 4));
  EXPECT_EQ(act(*Perm::parse("(AC)"), t), triangle(5, 4, 3));
  EXPECT_EQ(act(*Perm::parse("(BC)"), t), triangle(4, 3, 5));
  EXPECT_EQ(act(*Perm::parse("(ABC)"), t), triangle(4, 5, 3));
  const TriangleLengths f{q(1), q(4, 5), q(6, 5)};
  EXPECT_EQ(act(*Perm::parse("(AB)"), f), (TriangleLengths{q(1), q(6, 5), q(4, 5)}));
  EXPECT_EQ(act(Perm::identity(), t), t);
  const Perm r = *Perm::parse("(ABC)");
  EXPECT_EQ(act(r, act(r, act(r, t))), t);
}

TEST(Action, RelabellingOracle) {
  // Relabel the planar realization: vertex P of the new triangle sits where
  // vertex g^-1(P) of the old one was; measure the new distances directly.
  const TriangleLengths t = triangle(4, 5, 6);
  const Realization r = realize_vertices(t);
  const QuadraticPoint pts[3] = {r.a, r.b, r.c};
  for (const Perm& g : all_perms()) {
    const Perm inv = g.inverse();
    const TriangleLengths u = act(g, t);
    EXPECT_EQ(u.x * u.x, squared_distance(pts[inv(0)], pts[inv(1)])) << g.label();
    EXPECT_EQ(u.y * u.y, squared_distance(pts[inv(0)], pts[inv(2)])) << g.label();
    EXPECT_EQ(u.z * u.z, squared_distance(pts[inv(1)], pts[inv(2)])) << g.label();
  }
}

TEST(Action, GroupLaws) {
  const TriangleLengths t = triangle(3, 4, 5);
  for (const Perm& g : all_perms()) {
    EXPECT_EQ(g * g.inverse(), Perm::identity());
    EXPECT_EQ(Perm::from_index(g.index()), g);
    EXPECT_EQ(*Perm::parse(g.label()), g);
    for (const Perm& h : all_perms()) EXPECT_EQ(act(g, act(h, t)), act(g * h, t));
  }
}

TEST(Quotient, ToN) {
  EXPECT_EQ(to_N(triangle(5, 3, 4)), triangle(3, 4, 5));
  EXPECT_EQ(to_N(triangle(2, 2, 3)), triangle(2, 2, 3));
  EXPECT_EQ(to_N(act(*Perm::parse("(AC)"), triangle(3, 4, 5))), triangle(3, 4, 5));
}

TEST(Stabilizer, Examples) {
  EXPECT_EQ(stabilizer(triangle(2, 3, 4)), std::vector<Perm>{Perm::identity()});
  EXPECT_EQ(stabilizer(triangle(2, 2, 3)), (std::vector<Perm>{Perm::identity(), *Perm::parse("(BC)")}));
  EXPECT_EQ(stabilizer(triangle(2, 2, 2)).size(), 6u);
  EXPECT_EQ(triangle_type(triangle(2, 2, 2)), TriangleType::Equilateral);
  EXPECT_EQ(triangle_type(triangle(2, 2, 3)), TriangleType::Isosceles);
  EXPECT_EQ(triangle_type(triangle(3, 4, 5)), TriangleType::Scalene);
  EXPECT_TRUE(in_N_prime(triangle(3, 4, 5)));
  EXPECT_FALSE(in_N_prime(triangle(2, 2, 3)));
  EXPECT_FALSE(in_N_prime(triangle(1, 1, 2)));
}

TEST(Normalize, Examples) {
  EXPECT_EQ(normalize_perimeter(triangle(3, 4, 5)), (TriangleLengths{q(1, 2), q(2, 3), q(5, 6)}));
  EXPECT_EQ(normalize_perimeter(triangle(2, 2, 2)), (TriangleLengths{q(2, 3), q(2, 3), q(2, 3)}));
  const auto once = normalize_perimeter(triangle(7, 8, 9));
  EXPECT_EQ(normalize_perimeter(once), once);
}

TEST(Realize, Examples) {
  const Realization r = realize_vertices(triangle(3, 4, 5));
  EXPECT_EQ(r.b.x, q(3));
  EXPECT_EQ(r.c.x, q(0));
  EXPECT_EQ(r.c.y_squared, q(16));
  const Realization e = realize_vertices(triangle(2, 2, 2));
  EXPECT_EQ(e.c.x, q(1));
  EXPECT_EQ(e.c.y_squared, q(3));
  EXPECT_THROW(realize_vertices(triangle(1, 1, 2)), GeometryError);
}

TEST(Isosceles, Coordinate) {
  // Law of cosines against the realized apex: legs from the apex C to A, B.
  EXPECT_EQ(isosceles_coordinate(triangle(1, 1, 1)), q(1, 2));
  EXPECT_EQ(isosceles_coordinate({q(1), q(1), q(7, 5)}), q(1, 50));
  EXPECT_EQ(isosceles_coordinate({q(1, 10), q(1), q(1)}), q(199, 200));
  EXPECT_THROW(isosceles_coordinate(triangle(3, 4, 5)), GeometryError);
  for (int b = 1; b < 20; ++b) {
    const TriangleLengths t{q(1), q(b, 10), q(1)};  // legs A-B and B-C
    const Realization r = realize_vertices(t);
    // cos at B = (|BA|^2 + |BC|^2 - |AC|^2) / (2 |BA| |BC|)
    const Rational ba = squared_distance(r.b, r.a);
    const Rational bc = squared_distance(r.b, r.c);
    const Rational ac = squared_distance(r.a, r.c);
    EXPECT_EQ(isosceles_coordinate(t), (ba + bc - ac) / 2) << b;
  }
}

TEST(Grid, InvariantsOnPerimeterTwoSlice) {
  const auto grid = perimeter_two_grid(12);
  ASSERT_GT(grid.size(), 100u);
  for (const auto& t : grid) {
    ASSERT_TRUE(in_M(t));
    const auto stab = stabilizer(t);
    const auto orb = orbit(t);
    EXPECT_EQ(stab.size() * orb.size(), 6u);
    // Oracle: count distinct lengths.
    std::set<Rational> distinct{t.x, t.y, t.z};
    const std::size_t expected = distinct.size() == 1 ? 6 : distinct.size() == 2 ? 2 : 1;
    EXPECT_EQ(stab.size(), expected) << to_string(t);
    const TriangleLengths n = to_N(t);
    EXPECT_TRUE(in_N(n));
    EXPECT_EQ(to_N(n), n);
    for (const Perm& g : all_perms()) {
      EXPECT_TRUE(in_M(act(g, t)));
      EXPECT_EQ(to_N(act(g, t)), n);
      EXPECT_EQ(normalize_perimeter(act(g, t)), act(g, normalize_perimeter(t)));
    }
    EXPECT_EQ(normalize_perimeter(t), t);
  }
}

TEST(Realize, RandomTriplesExact) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<long> num(1, 200), den(1, 30);
  int checked = 0;
  while (checked < 1000) {
    const TriangleLengths t{q(num(rng), den(rng)), q(num(rng), den(rng)), q(num(rng), den(rng))};
    if (!in_M(t)) continue;
    const Realization r = realize_vertices(t);
    ASSERT_GT(r.c.y_squared, 0);
    EXPECT_EQ(squared_distance(r.a, r.b), t.x * t.x);
    EXPECT_EQ(squared_distance(r.a, r.c), t.y * t.y);
    EXPECT_EQ(squared_distance(r.b, r.c), t.z * t.z);
    ++checked;
  }
}
