#pragma once

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "trimod/families.hpp"

namespace trimod {

class DeformError : public std::runtime_error {
 public:
  enum class Kind { MarkingNotIsometry, FamilyInvalid, IllTypedMap, DifferentBase };
  DeformError(Kind kind, const std::string& message, std::vector<std::string> witnesses = {})
      : std::runtime_error(message), kind_(kind), witnesses_(std::move(witnesses)) {}
  Kind kind() const noexcept { return kind_; }
  const std::vector<std::string>& witnesses() const noexcept { return witnesses_; }

 private:
  Kind kind_;
  std::vector<std::string> witnesses_;
};

// A triangle T, a family over the closed star of `basepoint`, and the
// marking: act(marking, T) is the fiber at the basepoint.
struct Deformation {
  TriangleLengths triangle;
  PLFamily family;
  int basepoint = 0;
  Perm marking;
};

// Throws DeformError(MarkingNotIsometry | FamilyInvalid). Every edge must
// touch the basepoint.
void validate_deformation(const Deformation& d);

struct PointedMap {
  GraphMap map;
  int basepoint = 0;  // in the source
};

// The part of a family over the closed star of v; v becomes vertex 0.
PLFamily restrict_to_star(const PLFamily& family, int v);

// Throws DeformError(IllTypedMap) when the map is not pointed.
Deformation pullback_deformation(const PointedMap& g, const Deformation& d);

// Edge-ends at the basepoint in the order used by germs: by edge, the start
// of a loop before its end.
struct EdgeEnd {
  int edge;
  bool at_end;
};
std::vector<EdgeEnd> edge_ends(const Deformation& d);

// The inclusion of a smaller star: each edge-end at the basepoint, cut to
// the given radius, becomes its own edge from the basepoint.
PointedMap shrink_map(const Deformation& d, const std::vector<Rational>& radii);
Deformation germ(const Deformation& d, const std::vector<Rational>& radii);
Deformation germ(const Deformation& d, const Rational& radius);

struct Equivalence {
  int depth;  // radius 2^-depth
  IsoWitness witness;
};

inline constexpr int kGermDepth = 2;

// Families compared near the basepoint at radii 1, 1/2, 1/4, with the vertex
// permutation at the basepoint forced to marking2 * marking1^-1.
// Throws DeformError(DifferentBase).
std::optional<Equivalence> are_equivalent(const Deformation& d1, const Deformation& d2);

namespace deformation_corpus {
// Random deformation over a star with `leaves` edges and `loops` loops at the
// hub; `isosceles` forces an isosceles basepoint fiber.
Deformation random_deformation(int leaves, int loops, bool isosceles, std::mt19937_64& rng);
std::vector<Deformation> generate(std::uint64_t seed, int count);
}  // namespace deformation_corpus

}  // namespace trimod
