#pragma once

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "trimod/trigeo.hpp"
#include "trimod/verdict.hpp"

namespace trimod {

// A finite graph; every edge carries [0,1] running from `from` to `to`.
// Loops (from == to) are allowed.
struct BaseGraph {
  struct Edge {
    std::string id;
    int from;
    int to;
  };
  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  std::optional<int> find_vertex(std::string_view id) const;
  std::optional<int> find_edge(std::string_view id) const;

  friend bool operator==(const BaseGraph& a, const BaseGraph& b);
};

class FamilyError : public std::runtime_error {
 public:
  enum class Kind { Malformed, FiberNotInM, GlueInconsistent, IllTypedMap, NotOriented, DifferentBase };
  FamilyError(Kind kind, const std::string& message, std::vector<std::string> witnesses = {})
      : std::runtime_error(message), kind_(kind), witnesses_(std::move(witnesses)) {}
  Kind kind() const noexcept { return kind_; }
  const std::vector<std::string>& witnesses() const noexcept { return witnesses_; }

 private:
  Kind kind_;
  std::vector<std::string> witnesses_;
};

struct ChartPoint {
  Rational t;
  TriangleLengths lengths;

  friend bool operator==(const ChartPoint&, const ChartPoint&) = default;
};

// Piecewise-linear path 0 = t_0 < ... < t_k = 1 (k >= 1).
using Chart = std::vector<ChartPoint>;

TriangleLengths evaluate(const Chart& chart, const Rational& t);
Chart constant_chart(const TriangleLengths& value);
// The part of `chart` over [a, b] reparametrized to [0, 1]; b < a reverses.
Chart subchart(const Chart& chart, const Rational& a, const Rational& b);

// Family of triangles over a graph. charts[e] gives the fiber along edge e in
// the edge's own labelling; vertex_lengths[v] the fiber at v in the vertex's
// labelling; glue_from[e] = g with act(g, chart(0)) = vertex_lengths[from],
// and glue_to[e] likewise at t = 1.
struct PLFamily {
  BaseGraph base;
  std::vector<TriangleLengths> vertex_lengths;
  std::vector<Chart> charts;
  std::vector<Perm> glue_from;
  std::vector<Perm> glue_to;

  bool oriented() const;
  Perm glue(int edge, bool at_end) const { return at_end ? glue_to[edge] : glue_from[edge]; }
};

// Throws FamilyError(FiberNotInM | GlueInconsistent | Malformed).
void validate_family(const PLFamily& family);

// Family with the given vertex fibers and charts; glue is filled in with the
// least permutation matching each end and validation runs. Intended for
// building fixtures and generated families.
PLFamily family_with_least_glue(BaseGraph base, std::vector<TriangleLengths> vertex_lengths,
                                std::vector<Chart> charts);

PLFamily constant_family(const BaseGraph& base, const TriangleLengths& value);
PLFamily point_family(const TriangleLengths& value);

// A point of a graph: a vertex, or the interior point t of an edge.
struct GraphPoint {
  int vertex = -1;
  int edge = -1;
  Rational t;

  static GraphPoint at_vertex(int v) { return {v, -1, 0}; }
  static GraphPoint on_edge(int e, Rational t) { return {-1, e, std::move(t)}; }
  friend bool operator==(const GraphPoint&, const GraphPoint&) = default;
};

// Replaces edge endpoints by the corresponding vertex.
GraphPoint canonical(const BaseGraph& g, GraphPoint p);

// Fiber at a point, in the labelling of the vertex or edge it lies on.
TriangleLengths fiber_at(const PLFamily& family, const GraphPoint& p);

// Affine on every edge: an edge goes to a point or linearly onto [a, b]
// inside a single target edge.
struct EdgeImage {
  bool constant = false;
  GraphPoint point;  // when constant
  int edge = -1;     // otherwise
  Rational a;
  Rational b;
};

struct GraphMap {
  BaseGraph source;
  BaseGraph target;
  std::vector<GraphPoint> on_vertices;
  std::vector<EdgeImage> on_edges;
};

// Throws FamilyError(IllTypedMap).
void validate_map(const GraphMap& map);
GraphMap identity_map(const BaseGraph& g);
// outer o inner
GraphMap compose_maps(const GraphMap& outer, const GraphMap& inner);
GraphPoint apply(const GraphMap& map, const GraphPoint& p);
// Every edge maps onto [0, 1] of the same edge of `target` (a cyclic or
// other covering); edges and vertices are given by target index.
GraphMap simplicial_map(const BaseGraph& source, const BaseGraph& target,
                        const std::vector<int>& vertices, const std::vector<int>& edges);

PLFamily pullback_family(const GraphMap& map, const PLFamily& family);

// Piecewise-linear map from a graph into M or N: a value per vertex and a
// chart per edge.
struct PLMap {
  std::vector<TriangleLengths> vertices;
  std::vector<Chart> edges;
};

TriangleLengths evaluate(const PLMap& map, const BaseGraph& g, const GraphPoint& p);

// Equal as functions, decided on the union of breakpoints.
bool pl_equal(const PLMap& a, const PLMap& b);

// Throws FamilyError(NotOriented) unless all glue is trivial.
PLMap classify_to_M(const PLFamily& family);
// Sorted charts, with breakpoints added where two coordinates cross.
PLMap classify_to_N(const PLFamily& family);

// Re-charting: vertex labellings changed by sigma, edge labellings by tau.
PLFamily recharted(const PLFamily& family, const std::vector<Perm>& sigma,
                   const std::vector<Perm>& tau);
// Every chart and vertex hit by one permutation, glue conjugated.
PLFamily twisted(const PLFamily& family, const Perm& sigma);

struct OrientationResult {
  bool orientable = true;
  std::vector<Perm> sigma;  // per vertex
  std::vector<Perm> tau;    // per edge
  // Obstruction: a closed walk as (edge, traversed forward) pairs, and the
  // permutation picked up around it.
  std::vector<std::pair<int, bool>> cycle;
  Perm monodromy;
};

OrientationResult is_orientable(const PLFamily& family);

// Label transport along a walk: each step carries the labelling at its start
// vertex to the labelling at its end vertex.
Perm walk_transport(const PLFamily& family, const std::vector<std::pair<int, bool>>& walk);

// For a family scalene everywhere: the re-charting that orders every fiber as
// x < y < z. Throws FamilyError(Malformed) when some fiber is isosceles.
PLFamily natural_ordering(const PLFamily& family);

struct IsoWitness {
  std::vector<Perm> tau;       // per edge, F labelling -> G labelling
  std::vector<Perm> vertex_h;  // per vertex
};

struct IsoInfeasibility {
  std::vector<std::vector<Perm>> domains;  // per edge
  int clash_vertex = -1;                   // -1 when some domain is empty
  int empty_edge = -1;
  std::string message;
};

struct IsoResult {
  std::optional<IsoWitness> witness;
  IsoInfeasibility infeasibility;
  explicit operator bool() const { return witness.has_value(); }
};

// Extra constraints: the vertex permutation h_v is forced at listed vertices.
IsoResult are_isomorphic(const PLFamily& f, const PLFamily& g,
                         const std::map<int, Perm>& required = {});

// All solutions, in lexicographic order.
std::vector<IsoWitness> all_isomorphisms(const PLFamily& f, const PLFamily& g);

struct Remark25Pair {
  PLFamily f;
  PLFamily g;
};
Remark25Pair fixture_remark25();
PLFamily fixture_mobius();
// Connected double cover of the circle underlying fixture_mobius.
GraphMap fixture_double_cover();

// Pointwise invariant of a family at a point; a coarse moduli candidate.
using FamilyInvariant = std::function<std::vector<Rational>(const PLFamily&, const GraphPoint&)>;

namespace invariants {
FamilyInvariant perimeter();
FamilyInvariant longest_minus_shortest();
FamilyInvariant heron();  // 16 * area^2
FamilyInvariant chart_y();
}  // namespace invariants

struct NamedFamily {
  std::string name;
  PLFamily family;
};

// Verdict reason starts with "NotNatural" when the invariant separates
// isometric point families, and with "mismatch" when it fails to factor
// through N on some family.
Verdict check_coarse_factorization(const FamilyInvariant& beta,
                                   const std::vector<NamedFamily>& families);

// Sample points of a family: vertices, breakpoints and segment midpoints.
std::vector<GraphPoint> sample_points(const PLFamily& family);

namespace family_corpus {
BaseGraph path(int edges);
BaseGraph circle(int vertices);
BaseGraph theta();
BaseGraph loop();
BaseGraph star(int leaves);
BaseGraph two_components();
PLFamily random_family(const BaseGraph& base, std::mt19937_64& rng);
std::vector<NamedFamily> generate(std::uint64_t seed, int count);
}  // namespace family_corpus

}  // namespace trimod
