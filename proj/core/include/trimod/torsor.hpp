#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trimod/families.hpp"
#include "trimod/verdict.hpp"

namespace trimod {

class TorsorError : public std::runtime_error {
 public:
  enum class Kind { Malformed, FaceCocycleFails, CocycleFails, NotEquivariant, NotTransitionCompatible, InvalidPair };
  TorsorError(Kind kind, const std::string& message, std::vector<std::string> witnesses = {})
      : std::runtime_error(message), kind_(kind), witnesses_(std::move(witnesses)) {}
  Kind kind() const noexcept { return kind_; }
  const std::vector<std::string>& witnesses() const noexcept { return witnesses_; }

 private:
  Kind kind_;
  std::vector<std::string> witnesses_;
};

// Finite group by multiplication table; element 0 is the identity.
class FiniteGroup {
 public:
  // Throws TorsorError(Malformed) unless the table is a group with identity 0.
  FiniteGroup(std::string name, std::vector<std::string> labels, std::vector<std::vector<int>> table);

  static FiniteGroup s3();  // elements indexed as Perm::index()
  static FiniteGroup cyclic(int n);
  // "S3", "Z2", "Z3", ... ; throws TorsorError(Malformed).
  static FiniteGroup named(const std::string& name);

  int order() const { return static_cast<int>(labels_.size()); }
  int mul(int a, int b) const { return table_[a][b]; }
  int inverse(int a) const { return inverses_[a]; }
  const std::string& label(int a) const { return labels_[a]; }
  std::optional<int> find(const std::string& label) const;
  const std::string& name() const { return name_; }
  const std::vector<std::vector<int>>& table() const { return table_; }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverses_;
};

// Vertices, oriented edges (parallel edges allowed) and triangular faces.
// A face's three sides must each be a unique edge.
struct SimplicialBase {
  struct Edge {
    std::string id;
    int from;
    int to;
  };
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  std::vector<std::array<int, 3>> faces;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
};

// Throws TorsorError(Malformed).
void validate_base(const SimplicialBase& base);
SimplicialBase simplicial_base(const BaseGraph& graph);

// One step of a path: edge index and whether it is walked from -> to.
using Step = std::pair<int, bool>;

// transitions[e] is the element for walking edge e forward; walking it
// backwards uses the inverse. Sheets over a vertex are group elements with G
// acting by left multiplication, and walking v -> w sends sheet x to x * t.
// Along a path the elements multiply left to right; every face (u, v, w)
// must satisfy t(u,v) * t(v,w) * t(w,u) = e.
struct TorsorCocycle {
  SimplicialBase base;
  FiniteGroup group = FiniteGroup::cyclic(1);
  std::vector<int> transitions;

  int along(const Step& step) const;
  int path_product(const std::vector<Step>& path) const;
};

// Fails with reason "FaceCocycleFails" and the face's vertex ids, or
// "Malformed".
Verdict validate_torsor(const TorsorCocycle& torsor);

// Edge from a to b, oriented as walked, when there is exactly one.
std::optional<Step> step_between(const SimplicialBase& base, int a, int b);

// Gauge change by per-vertex elements: t'(v,w) = c_v^-1 * t(v,w) * c_w.
TorsorCocycle gauge(const TorsorCocycle& torsor, const std::vector<int>& c);

struct TrivialityResult {
  bool trivial = true;
  std::vector<int> section;  // per vertex: t(v,w) = s_v * s_w^-1
  std::vector<Step> cycle;
  int monodromy = 0;
};

TrivialityResult is_trivial(const TorsorCocycle& torsor);

// Descent data over the cover of the base by open vertex stars: each star
// carries the trivial torsor and overlaps[e] identifies the pieces of the
// two ends of edge e.
struct DescentPieces {
  SimplicialBase base;
  FiniteGroup group = FiniteGroup::cyclic(1);
  std::vector<int> overlaps;
};

// A simplex of the open star cover: a vertex, an edge or a face, with its
// vertices. to_piece[i] maps the glued sheets over the simplex (named by the
// sheets of the least vertex's piece) to the sheets of piece i.
struct GluedSimplex {
  int vertex = -1;
  int edge = -1;
  int face = -1;
  std::vector<int> vertices;
  std::map<int, std::vector<int>> to_piece;
};

struct GlueResult {
  TorsorCocycle torsor;
  std::vector<GluedSimplex> simplices;
};

// Quotient of the disjoint union of the pieces by the overlap
// identifications. Throws TorsorError(CocycleFails) with the face.
GlueResult glue_descent(const DescentPieces& pieces);

// Sheet map per vertex between torsors over the same base and group.
struct TorsorMorphism {
  std::vector<std::vector<int>> sheets;  // sheets[v][x]
};

// Throws TorsorError(NotEquivariant | NotTransitionCompatible); otherwise
// returns the inverse morphism (every morphism is invertible).
TorsorMorphism torsor_morphism_check(const TorsorCocycle& from, const TorsorCocycle& to, const TorsorMorphism& m);
// The morphism x -> x * c_v from a torsor to its gauge change by c.
TorsorMorphism gauge_morphism(const TorsorCocycle& torsor, const std::vector<int>& c);

// Orientation torsor of a family with its equivariant map to M.
struct TorsorPair {
  TorsorCocycle torsor;                               // group S3
  std::vector<std::array<TriangleLengths, 6>> at;     // per vertex, per sheet
  std::vector<std::array<Chart, 6>> along;            // per edge, per sheet at its start
};

TorsorPair family_to_torsor_pair(const PLFamily& family);
// Throws TorsorError(InvalidPair).
void validate_pair(const TorsorPair& pair);
PLFamily torsor_pair_to_family(const TorsorPair& pair);

// Gauge c is an isomorphism of pairs when the torsors are related by c and
// the maps satisfy f2(x * c_v) = f1(x) on vertices and edges.
Verdict check_pair_isomorphism(const TorsorPair& first, const TorsorPair& second, const std::vector<int>& c);
std::optional<std::vector<int>> find_pair_isomorphism(const TorsorPair& first, const TorsorPair& second);
// Gauge induced by a family isomorphism: c_v = h_v^-1.
std::vector<int> gauge_from_isomorphism(const IsoWitness& witness);

namespace torsor_corpus {
// Named bases: cycles, paths, fans, tetrahedron and octahedron surfaces,
// the 6-vertex projective plane, the 7-vertex torus, a Moebius strip.
std::vector<std::pair<std::string, SimplicialBase>> bases();
SimplicialBase two_edge_circle();
}  // namespace torsor_corpus

}  // namespace trimod
