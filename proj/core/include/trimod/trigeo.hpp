#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "trimod/rational.hpp"

namespace trimod {

// x = d(A,B), y = d(A,C), z = d(B,C).
struct TriangleLengths {
  Rational x;
  Rational y;
  Rational z;

  friend bool operator==(const TriangleLengths&, const TriangleLengths&) = default;
};

TriangleLengths triangle(long x, long y, long z);
bool operator<(const TriangleLengths& a, const TriangleLengths& b);
std::string to_string(const TriangleLengths& t);

class GeometryError : public std::runtime_error {
 public:
  enum class Kind { NotInM, NotIsosceles };
  GeometryError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

bool in_M(const TriangleLengths& t);
// Throws GeometryError(NotInM).
void require_M(const TriangleLengths& t);

// A permutation of the vertex labels A=0, B=1, C=2, stored as its images.
// The six elements are indexed e, (AB), (AC), (BC), (ABC), (ACB).
class Perm {
 public:
  constexpr Perm() : image_{0, 1, 2} {}
  constexpr explicit Perm(std::array<int, 3> image) : image_(image) {}

  static Perm from_index(int index);
  static Perm identity() { return Perm(); }
  // Accepts "e" and the cycle labels above; empty when unknown.
  static std::optional<Perm> parse(std::string_view label);

  int index() const;
  std::string label() const;
  int operator()(int vertex) const { return image_[vertex]; }
  Perm inverse() const;
  bool is_identity() const { return image_ == std::array<int, 3>{0, 1, 2}; }

  // (g * h)(v) = g(h(v))
  friend Perm operator*(const Perm& g, const Perm& h);
  friend bool operator==(const Perm&, const Perm&) = default;
  friend bool operator<(const Perm& a, const Perm& b) { return a.index() < b.index(); }

 private:
  std::array<int, 3> image_;
};

const std::array<Perm, 6>& all_perms();

inline std::ostream& operator<<(std::ostream& os, const Perm& p) { return os << p.label(); }
inline std::ostream& operator<<(std::ostream& os, const TriangleLengths& t) { return os << to_string(t); }

// Relabelling by g: the new distance between g(P) and g(Q) is the old
// distance between P and Q. This is a left action: act(g, act(h, t)) =
// act(g * h, t). No membership check; any triple may be permuted.
TriangleLengths permute(const Perm& g, const TriangleLengths& t);
// As permute, but requires t in M.
TriangleLengths act(const Perm& g, const TriangleLengths& t);

TriangleLengths to_N(const TriangleLengths& t);
bool in_N(const TriangleLengths& t);
bool in_N_prime(const TriangleLengths& t);

std::vector<Perm> stabilizer(const TriangleLengths& t);
std::vector<TriangleLengths> orbit(const TriangleLengths& t);

enum class TriangleType { Equilateral, Isosceles, Scalene };
std::string_view to_string(TriangleType type);
TriangleType triangle_type(const TriangleLengths& t);

TriangleLengths normalize_perimeter(const TriangleLengths& t);

// A point (x, sqrt(y_squared)) with y_squared >= 0.
struct QuadraticPoint {
  Rational x;
  Rational y_squared;
};

struct Realization {
  QuadraticPoint a;
  QuadraticPoint b;
  QuadraticPoint c;
};

// A = (0,0), B = (x,0), C above the axis.
Realization realize_vertices(const TriangleLengths& t);

// Exact squared distance; throws std::domain_error when the result is not
// rational (both ordinates irrational and incommensurable).
Rational squared_distance(const QuadraticPoint& p, const QuadraticPoint& q);

// cos of the apex angle, (2a^2 - b^2) / (2a^2) for legs a and base b.
// Throws GeometryError(NotIsosceles) for scalene input.
Rational isosceles_coordinate(const TriangleLengths& t);

// 16 * area^2 by Heron's formula, a symmetric polynomial in the lengths.
Rational heron_sixteen_area_squared(const TriangleLengths& t);

}  // namespace trimod
