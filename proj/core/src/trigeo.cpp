#include "trimod/trigeo.hpp"

#include <algorithm>

namespace trimod {

TriangleLengths triangle(long x, long y, long z) {
  return {make_rational(x), make_rational(y), make_rational(z)};
}

bool operator<(const TriangleLengths& a, const TriangleLengths& b) {
  if (a.x != b.x) return a.x < b.x;
  if (a.y != b.y) return a.y < b.y;
  return a.z < b.z;
}

std::string to_string(const TriangleLengths& t) {
  return "(" + to_string(t.x) + "," + to_string(t.y) + "," + to_string(t.z) + ")";
}

bool in_M(const TriangleLengths& t) {
  return t.x > 0 && t.y > 0 && t.z > 0 && t.x + t.y > t.z && t.x + t.z > t.y && t.y + t.z > t.x;
}

void require_M(const TriangleLengths& t) {
  if (!in_M(t)) {
    throw GeometryError(GeometryError::Kind::NotInM, "NotInM: " + to_string(t) + " is degenerate");
  }
}

namespace {

constexpr std::array<Perm, 6> kPerms{
    Perm({0, 1, 2}), Perm({1, 0, 2}), Perm({2, 1, 0}),
    Perm({0, 2, 1}), Perm({1, 2, 0}), Perm({2, 0, 1}),
};
constexpr std::array<std::string_view, 6> kLabels{"e", "(AB)", "(AC)", "(BC)", "(ABC)", "(ACB)"};

}  // namespace

const std::array<Perm, 6>& all_perms() { return kPerms; }

Perm Perm::from_index(int index) { return kPerms.at(index); }

std::optional<Perm> Perm::parse(std::string_view label) {
  for (std::size_t i = 0; i < kLabels.size(); ++i)
    if (kLabels[i] == label) return kPerms[i];
  return std::nullopt;
}

int Perm::index() const {
  for (int i = 0; i < 6; ++i)
    if (kPerms[i].image_ == image_) return i;
  return -1;
}

std::string Perm::label() const { return std::string(kLabels[index()]); }

Perm Perm::inverse() const {
  std::array<int, 3> inv{};
  for (int v = 0; v < 3; ++v) inv[image_[v]] = v;
  return Perm(inv);
}

Perm operator*(const Perm& g, const Perm& h) {
  return Perm({g.image_[h.image_[0]], g.image_[h.image_[1]], g.image_[h.image_[2]]});
}

TriangleLengths permute(const Perm& g, const TriangleLengths& t) {
  // d[P][Q] for P != Q; the new d'(P, Q) = d(g^-1 P, g^-1 Q).
  auto d = [&](int p, int q) -> const Rational& {
    if (p > q) std::swap(p, q);
    if (p == 0) return q == 1 ? t.x : t.y;
    return t.z;
  };
  const Perm inv = g.inverse();
  return {d(inv(0), inv(1)), d(inv(0), inv(2)), d(inv(1), inv(2))};
}

TriangleLengths act(const Perm& g, const TriangleLengths& t) {
  require_M(t);
  return permute(g, t);
}

TriangleLengths to_N(const TriangleLengths& t) {
  require_M(t);
  std::array<Rational, 3> v{t.x, t.y, t.z};
  std::sort(v.begin(), v.end());
  return {v[0], v[1], v[2]};
}

bool in_N(const TriangleLengths& t) { return in_M(t) && t.x <= t.y && t.y <= t.z; }

bool in_N_prime(const TriangleLengths& t) {
  if (!in_M(t)) return false;
  const TriangleLengths n = to_N(t);
  return n.x < n.y && n.y < n.z;
}

std::vector<Perm> stabilizer(const TriangleLengths& t) {
  require_M(t);
  std::vector<Perm> out;
  for (const Perm& g : kPerms)
    if (permute(g, t) == t) out.push_back(g);
  return out;
}

std::vector<TriangleLengths> orbit(const TriangleLengths& t) {
  require_M(t);
  std::vector<TriangleLengths> out;
  for (const Perm& g : kPerms) out.push_back(permute(g, t));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string_view to_string(TriangleType type) {
  switch (type) {
    case TriangleType::Equilateral: return "equilateral";
    case TriangleType::Isosceles: return "isosceles";
    case TriangleType::Scalene: return "scalene";
  }
  return "?";
}

TriangleType triangle_type(const TriangleLengths& t) {
  switch (stabilizer(t).size()) {
    case 6: return TriangleType::Equilateral;
    case 2: return TriangleType::Isosceles;
    default: return TriangleType::Scalene;
  }
}

TriangleLengths normalize_perimeter(const TriangleLengths& t) {
  require_M(t);
  const Rational scale = Rational(2) / (t.x + t.y + t.z);
  return {t.x * scale, t.y * scale, t.z * scale};
}

Realization realize_vertices(const TriangleLengths& t) {
  require_M(t);
  const Rational cx = (t.x * t.x + t.y * t.y - t.z * t.z) / (2 * t.x);
  return {{0, 0}, {t.x, 0}, {cx, t.y * t.y - cx * cx}};
}

Rational squared_distance(const QuadraticPoint& p, const QuadraticPoint& q) {
  const Rational dx = p.x - q.x;
  // (sqrt r1 - sqrt r2)^2 = r1 + r2 - 2 sqrt(r1 r2)
  const auto cross = exact_sqrt(p.y_squared * q.y_squared);
  if (!cross) throw std::domain_error("squared distance is irrational");
  return dx * dx + p.y_squared + q.y_squared - 2 * *cross;
}

Rational isosceles_coordinate(const TriangleLengths& t) {
  const TriangleLengths n = to_N(t);
  Rational leg;
  Rational base;
  if (n.y == n.z) {
    leg = n.z;
    base = n.x;
  } else if (n.x == n.y) {
    leg = n.x;
    base = n.z;
  } else {
    throw GeometryError(GeometryError::Kind::NotIsosceles, "NotIsosceles: " + to_string(t));
  }
  return (2 * leg * leg - base * base) / (2 * leg * leg);
}

Rational heron_sixteen_area_squared(const TriangleLengths& t) {
  const Rational& a = t.x;
  const Rational& b = t.y;
  const Rational& c = t.z;
  return (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c);
}

}  // namespace trimod
