#include "trimod/deform.hpp"

#include <algorithm>

namespace trimod {

namespace {

[[noreturn]] void fail(DeformError::Kind kind, const std::string& message, std::vector<std::string> witnesses = {}) {
  throw DeformError(kind, message, std::move(witnesses));
}

}  // namespace

void validate_deformation(const Deformation& d) {
  const auto& base = d.family.base;
  try {
    validate_family(d.family);
  } catch (const FamilyError& e) {
    fail(DeformError::Kind::FamilyInvalid, e.what(), e.witnesses());
  }
  if (d.basepoint < 0 || d.basepoint >= base.vertex_count())
    fail(DeformError::Kind::FamilyInvalid, "basepoint is not a vertex");
  for (const auto& e : base.edges)
    if (e.from != d.basepoint && e.to != d.basepoint)
      fail(DeformError::Kind::FamilyInvalid, "edge " + e.id + " lies outside the star of the basepoint", {e.id});
  if (!in_M(d.triangle)) fail(DeformError::Kind::MarkingNotIsometry, "triangle is not in M");
  if (permute(d.marking, d.triangle) != d.family.vertex_lengths[d.basepoint])
    fail(DeformError::Kind::MarkingNotIsometry,
         "marking " + d.marking.label() + " sends " + to_string(d.triangle) + " to " +
             to_string(permute(d.marking, d.triangle)) + ", not the basepoint fiber " +
             to_string(d.family.vertex_lengths[d.basepoint]),
         {d.marking.label(), base.vertices[d.basepoint]});
}

PLFamily restrict_to_star(const PLFamily& f, int v) {
  std::vector<int> keep{v};
  std::vector<int> edges;
  for (int e = 0; e < f.base.edge_count(); ++e) {
    const auto& edge = f.base.edges[e];
    if (edge.from != v && edge.to != v) continue;
    edges.push_back(e);
    for (int w : {edge.from, edge.to})
      if (std::find(keep.begin(), keep.end(), w) == keep.end()) keep.push_back(w);
  }
  auto local = [&](int w) { return static_cast<int>(std::find(keep.begin(), keep.end(), w) - keep.begin()); };
  PLFamily out;
  for (int w : keep) {
    out.base.vertices.push_back(f.base.vertices[w]);
    out.vertex_lengths.push_back(f.vertex_lengths[w]);
  }
  for (int e : edges) {
    const auto& edge = f.base.edges[e];
    out.base.edges.push_back({edge.id, local(edge.from), local(edge.to)});
    out.charts.push_back(f.charts[e]);
    out.glue_from.push_back(f.glue_from[e]);
    out.glue_to.push_back(f.glue_to[e]);
  }
  return out;
}

Deformation pullback_deformation(const PointedMap& g, const Deformation& d) {
  validate_deformation(d);
  PLFamily pulled;
  try {
    validate_map(g.map);
    if (g.basepoint < 0 || g.basepoint >= g.map.source.vertex_count())
      fail(DeformError::Kind::IllTypedMap, "basepoint is not a vertex of the source");
    if (apply(g.map, GraphPoint::at_vertex(g.basepoint)) != GraphPoint::at_vertex(d.basepoint))
      fail(DeformError::Kind::IllTypedMap, "map does not send basepoint to basepoint",
           {g.map.source.vertices[g.basepoint]});
    pulled = pullback_family(g.map, d.family);
  } catch (const FamilyError& e) {
    fail(DeformError::Kind::IllTypedMap, e.what(), e.witnesses());
  }
  Deformation out{d.triangle, restrict_to_star(pulled, g.basepoint), 0, d.marking};
  validate_deformation(out);
  return out;
}

std::vector<EdgeEnd> edge_ends(const Deformation& d) {
  std::vector<EdgeEnd> out;
  const auto& base = d.family.base;
  for (int e = 0; e < base.edge_count(); ++e) {
    if (base.edges[e].from == d.basepoint) out.push_back({e, false});
    if (base.edges[e].to == d.basepoint) out.push_back({e, true});
  }
  return out;
}

PointedMap shrink_map(const Deformation& d, const std::vector<Rational>& radii) {
  const auto ends = edge_ends(d);
  if (radii.size() != ends.size()) fail(DeformError::Kind::IllTypedMap, "one radius per edge-end is required");
  BaseGraph g;
  g.vertices = {d.family.base.vertices[d.basepoint]};
  GraphMap m{g, d.family.base, {GraphPoint::at_vertex(d.basepoint)}, {}};
  for (std::size_t i = 0; i < ends.size(); ++i) {
    const auto& r = radii[i];
    if (r <= 0 || r > 1) fail(DeformError::Kind::IllTypedMap, "radius outside (0, 1]");
    const auto& end = ends[i];
    const Rational a = end.at_end ? Rational(1) : Rational(0);
    const Rational b = end.at_end ? Rational(1 - r) : r;
    m.source.vertices.push_back("near-" + std::to_string(i));
    m.source.edges.push_back({"germ-" + std::to_string(i), 0, static_cast<int>(i) + 1});
    m.on_vertices.push_back(canonical(d.family.base, GraphPoint::on_edge(end.edge, b)));
    m.on_edges.push_back({false, {}, end.edge, a, b});
  }
  return {m, 0};
}

Deformation germ(const Deformation& d, const std::vector<Rational>& radii) {
  return pullback_deformation(shrink_map(d, radii), d);
}

Deformation germ(const Deformation& d, const Rational& radius) {
  return germ(d, std::vector<Rational>(edge_ends(d).size(), radius));
}

std::optional<Equivalence> are_equivalent(const Deformation& d1, const Deformation& d2) {
  validate_deformation(d1);
  validate_deformation(d2);
  if (!(d1.family.base == d2.family.base) || d1.basepoint != d2.basepoint)
    fail(DeformError::Kind::DifferentBase, "deformations live over different pointed bases");
  if (d1.triangle != d2.triangle)
    fail(DeformError::Kind::DifferentBase, "deformations of different triangles",
         {to_string(d1.triangle), to_string(d2.triangle)});
  const std::map<int, Perm> required{{0, d2.marking * d1.marking.inverse()}};
  Rational radius = 1;
  for (int depth = 0; depth <= kGermDepth; ++depth, radius /= 2) {
    const auto g1 = germ(d1, radius);
    const auto g2 = germ(d2, radius);
    auto r = are_isomorphic(g1.family, g2.family, required);
    if (r) return Equivalence{depth, *r.witness};
  }
  return std::nullopt;
}

namespace deformation_corpus {

Deformation random_deformation(int leaves, int loops, bool isosceles, std::mt19937_64& rng) {
  auto base = family_corpus::star(leaves);
  for (int i = 0; i < loops; ++i) base.edges.push_back({"loop" + std::to_string(i), 0, 0});
  auto f = family_corpus::random_family(base, rng);
  if (isosceles) {
    const TriangleLengths t{make_rational(5), make_rational(5), make_rational(std::uniform_int_distribution<long>(1, 9)(rng))};
    const Perm p = all_perms()[rng() % 6];
    const auto fiber = permute(p, t);
    for (int e = 0; e < base.edge_count(); ++e) {
      const auto& edge = base.edges[e];
      if (edge.from == 0) f.charts[e].front().lengths = permute(f.glue_from[e].inverse(), fiber);
      if (edge.to == 0) f.charts[e].back().lengths = permute(f.glue_to[e].inverse(), fiber);
    }
    f.vertex_lengths[0] = fiber;
    validate_family(f);
  }
  const Perm marking = all_perms()[rng() % 6];
  Deformation d{permute(marking.inverse(), f.vertex_lengths[0]), f, 0, marking};
  validate_deformation(d);
  return d;
}

std::vector<Deformation> generate(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<Deformation> out;
  for (int i = 0; i < count; ++i) out.push_back(random_deformation(1 + i % 3, i % 4 == 3 ? 1 : 0, i % 3 == 0, rng));
  return out;
}

}  // namespace deformation_corpus

}  // namespace trimod
