#include "trimod/families.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace trimod {

namespace {

[[noreturn]] void fail(FamilyError::Kind kind, const std::string& message,
                       std::vector<std::string> witnesses = {}) {
  throw FamilyError(kind, message, std::move(witnesses));
}

std::string point_label(const BaseGraph& g, const GraphPoint& p) {
  if (p.vertex >= 0) return g.vertices[p.vertex];
  return g.edges[p.edge].id + "@" + to_string(p.t);
}

std::vector<Rational> breakpoints(const Chart& chart) {
  std::vector<Rational> out;
  for (const auto& cp : chart) out.push_back(cp.t);
  return out;
}

std::vector<Rational> merged(std::vector<Rational> a, const std::vector<Rational>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

Rational coordinate(const TriangleLengths& t, int i) { return i == 0 ? t.x : i == 1 ? t.y : t.z; }

}  // namespace

std::optional<int> BaseGraph::find_vertex(std::string_view id) const {
  for (int v = 0; v < vertex_count(); ++v)
    if (vertices[v] == id) return v;
  return std::nullopt;
}

std::optional<int> BaseGraph::find_edge(std::string_view id) const {
  for (int e = 0; e < edge_count(); ++e)
    if (edges[e].id == id) return e;
  return std::nullopt;
}

bool operator==(const BaseGraph& a, const BaseGraph& b) {
  if (a.vertices != b.vertices || a.edges.size() != b.edges.size()) return false;
  for (std::size_t e = 0; e < a.edges.size(); ++e) {
    const auto& x = a.edges[e];
    const auto& y = b.edges[e];
    if (x.id != y.id || x.from != y.from || x.to != y.to) return false;
  }
  return true;
}

TriangleLengths evaluate(const Chart& chart, const Rational& t) {
  if (chart.empty()) throw std::invalid_argument("empty chart");
  if (t <= chart.front().t) return chart.front().lengths;
  for (std::size_t i = 1; i < chart.size(); ++i) {
    if (t <= chart[i].t) {
      const auto& p = chart[i - 1];
      const auto& q = chart[i];
      Rational s = (t - p.t) / (q.t - p.t);
      Rational r = 1 - s;
      return {r * p.lengths.x + s * q.lengths.x, r * p.lengths.y + s * q.lengths.y,
              r * p.lengths.z + s * q.lengths.z};
    }
  }
  return chart.back().lengths;
}

Chart constant_chart(const TriangleLengths& value) { return {{0, value}, {1, value}}; }

Chart subchart(const Chart& chart, const Rational& a, const Rational& b) {
  std::vector<Rational> ts{a};
  const Rational lo = a < b ? a : b;
  const Rational hi = a < b ? b : a;
  std::vector<Rational> inner;
  for (const auto& cp : chart)
    if (cp.t > lo && cp.t < hi) inner.push_back(cp.t);
  if (b < a) std::reverse(inner.begin(), inner.end());
  ts.insert(ts.end(), inner.begin(), inner.end());
  ts.push_back(b);
  Chart out;
  const Rational span = b - a;
  for (const auto& t : ts) out.push_back({Rational((t - a) / span), evaluate(chart, t)});
  return out;
}

bool PLFamily::oriented() const {
  for (std::size_t e = 0; e < glue_from.size(); ++e)
    if (!glue_from[e].is_identity() || !glue_to[e].is_identity()) return false;
  return true;
}

void validate_family(const PLFamily& f) {
  const auto& g = f.base;
  const int nv = g.vertex_count();
  const int ne = g.edge_count();
  if (static_cast<int>(f.vertex_lengths.size()) != nv || static_cast<int>(f.charts.size()) != ne ||
      static_cast<int>(f.glue_from.size()) != ne || static_cast<int>(f.glue_to.size()) != ne)
    fail(FamilyError::Kind::Malformed, "family tables do not match the base graph");
  std::set<std::string> seen;
  for (const auto& v : g.vertices)
    if (!seen.insert(v).second) fail(FamilyError::Kind::Malformed, "duplicate vertex " + v, {v});
  seen.clear();
  for (const auto& e : g.edges) {
    if (!seen.insert(e.id).second) fail(FamilyError::Kind::Malformed, "duplicate edge " + e.id, {e.id});
    if (e.from < 0 || e.from >= nv || e.to < 0 || e.to >= nv)
      fail(FamilyError::Kind::Malformed, "edge " + e.id + " has an unknown endpoint", {e.id});
  }
  for (int v = 0; v < nv; ++v)
    if (!in_M(f.vertex_lengths[v]))
      fail(FamilyError::Kind::FiberNotInM, "fiber at vertex " + g.vertices[v] + " is not in M",
           {g.vertices[v]});
  for (int e = 0; e < ne; ++e) {
    const auto& chart = f.charts[e];
    const auto& id = g.edges[e].id;
    if (chart.size() < 2 || chart.front().t != 0 || chart.back().t != 1)
      fail(FamilyError::Kind::Malformed, "chart of " + id + " must run from t=0 to t=1", {id});
    for (std::size_t i = 1; i < chart.size(); ++i)
      if (!(chart[i - 1].t < chart[i].t))
        fail(FamilyError::Kind::Malformed, "breakpoints of " + id + " are not increasing", {id});
    for (const auto& cp : chart)
      if (!in_M(cp.lengths))
        fail(FamilyError::Kind::FiberNotInM,
             "chart of " + id + " leaves M at t=" + to_string(cp.t) + ": " + to_string(cp.lengths),
             {id, to_string(cp.t)});
  }
  for (int e = 0; e < ne; ++e) {
    const auto& edge = g.edges[e];
    if (permute(f.glue_from[e], f.charts[e].front().lengths) != f.vertex_lengths[edge.from])
      fail(FamilyError::Kind::GlueInconsistent,
           "start of " + edge.id + " does not glue to vertex " + g.vertices[edge.from],
           {g.vertices[edge.from], edge.id});
    if (permute(f.glue_to[e], f.charts[e].back().lengths) != f.vertex_lengths[edge.to])
      fail(FamilyError::Kind::GlueInconsistent,
           "end of " + edge.id + " does not glue to vertex " + g.vertices[edge.to],
           {g.vertices[edge.to], edge.id});
  }
}

PLFamily family_with_least_glue(BaseGraph base, std::vector<TriangleLengths> vertex_lengths,
                                std::vector<Chart> charts) {
  PLFamily f{std::move(base), std::move(vertex_lengths), std::move(charts), {}, {}};
  const int ne = f.base.edge_count();
  if (static_cast<int>(f.charts.size()) != ne ||
      static_cast<int>(f.vertex_lengths.size()) != f.base.vertex_count())
    fail(FamilyError::Kind::Malformed, "family tables do not match the base graph");
  auto least = [&](const TriangleLengths& end, int v, int e) {
    for (const auto& g : all_perms())
      if (permute(g, end) == f.vertex_lengths[v]) return g;
    fail(FamilyError::Kind::GlueInconsistent,
         "edge " + f.base.edges[e].id + " cannot be glued to vertex " + f.base.vertices[v],
         {f.base.vertices[v], f.base.edges[e].id});
  };
  for (int e = 0; e < ne; ++e) {
    if (f.charts[e].empty()) fail(FamilyError::Kind::Malformed, "empty chart", {f.base.edges[e].id});
    f.glue_from.push_back(least(f.charts[e].front().lengths, f.base.edges[e].from, e));
    f.glue_to.push_back(least(f.charts[e].back().lengths, f.base.edges[e].to, e));
  }
  validate_family(f);
  return f;
}

PLFamily constant_family(const BaseGraph& base, const TriangleLengths& value) {
  std::vector<TriangleLengths> vs(base.vertices.size(), value);
  std::vector<Chart> cs(base.edges.size(), constant_chart(value));
  return family_with_least_glue(base, std::move(vs), std::move(cs));
}

PLFamily point_family(const TriangleLengths& value) {
  BaseGraph g;
  g.vertices = {"*"};
  return constant_family(g, value);
}

GraphPoint canonical(const BaseGraph& g, GraphPoint p) {
  if (p.vertex >= 0) return GraphPoint::at_vertex(p.vertex);
  if (p.t == 0) return GraphPoint::at_vertex(g.edges[p.edge].from);
  if (p.t == 1) return GraphPoint::at_vertex(g.edges[p.edge].to);
  return p;
}

TriangleLengths fiber_at(const PLFamily& family, const GraphPoint& p) {
  const auto q = canonical(family.base, p);
  if (q.vertex >= 0) return family.vertex_lengths[q.vertex];
  return evaluate(family.charts[q.edge], q.t);
}

namespace {

bool point_valid(const BaseGraph& g, const GraphPoint& p) {
  if (p.vertex >= 0) return p.vertex < g.vertex_count() && p.edge < 0;
  return p.edge >= 0 && p.edge < g.edge_count() && p.t >= 0 && p.t <= 1;
}

}  // namespace

void validate_map(const GraphMap& m) {
  const auto& src = m.source;
  const auto& tgt = m.target;
  if (static_cast<int>(m.on_vertices.size()) != src.vertex_count() ||
      static_cast<int>(m.on_edges.size()) != src.edge_count())
    fail(FamilyError::Kind::IllTypedMap, "map tables do not match the source graph");
  for (int v = 0; v < src.vertex_count(); ++v)
    if (!point_valid(tgt, m.on_vertices[v]))
      fail(FamilyError::Kind::IllTypedMap, "vertex " + src.vertices[v] + " has no valid image",
           {src.vertices[v]});
  for (int e = 0; e < src.edge_count(); ++e) {
    const auto& img = m.on_edges[e];
    const auto& edge = src.edges[e];
    GraphPoint start;
    GraphPoint end;
    if (img.constant) {
      if (!point_valid(tgt, img.point))
        fail(FamilyError::Kind::IllTypedMap, "edge " + edge.id + " has no valid image", {edge.id});
      start = end = canonical(tgt, img.point);
    } else {
      if (img.edge < 0 || img.edge >= tgt.edge_count() || img.a < 0 || img.a > 1 || img.b < 0 ||
          img.b > 1 || img.a == img.b)
        fail(FamilyError::Kind::IllTypedMap, "edge " + edge.id + " has no valid image", {edge.id});
      start = canonical(tgt, GraphPoint::on_edge(img.edge, img.a));
      end = canonical(tgt, GraphPoint::on_edge(img.edge, img.b));
    }
    if (start != canonical(tgt, m.on_vertices[edge.from]) ||
        end != canonical(tgt, m.on_vertices[edge.to]))
      fail(FamilyError::Kind::IllTypedMap,
           "image of edge " + edge.id + " does not meet the images of its endpoints", {edge.id});
  }
}

GraphMap identity_map(const BaseGraph& g) {
  GraphMap m{g, g, {}, {}};
  for (int v = 0; v < g.vertex_count(); ++v) m.on_vertices.push_back(GraphPoint::at_vertex(v));
  for (int e = 0; e < g.edge_count(); ++e) m.on_edges.push_back({false, {}, e, 0, 1});
  return m;
}

GraphPoint apply(const GraphMap& m, const GraphPoint& p) {
  const auto q = canonical(m.source, p);
  if (q.vertex >= 0) return canonical(m.target, m.on_vertices[q.vertex]);
  const auto& img = m.on_edges[q.edge];
  if (img.constant) return canonical(m.target, img.point);
  return canonical(m.target, GraphPoint::on_edge(img.edge, img.a + (img.b - img.a) * q.t));
}

GraphMap compose_maps(const GraphMap& outer, const GraphMap& inner) {
  if (!(inner.target == outer.source))
    fail(FamilyError::Kind::IllTypedMap, "maps are not composable");
  GraphMap m{inner.source, outer.target, {}, {}};
  for (const auto& p : inner.on_vertices) m.on_vertices.push_back(apply(outer, p));
  for (const auto& img : inner.on_edges) {
    if (img.constant) {
      m.on_edges.push_back({true, apply(outer, img.point), -1, 0, 0});
      continue;
    }
    const auto& o = outer.on_edges[img.edge];
    if (o.constant) {
      m.on_edges.push_back({true, canonical(outer.target, o.point), -1, 0, 0});
      continue;
    }
    const Rational d = o.b - o.a;
    m.on_edges.push_back({false, {}, o.edge, o.a + d * img.a, o.a + d * img.b});
  }
  validate_map(m);
  return m;
}

GraphMap simplicial_map(const BaseGraph& source, const BaseGraph& target, const std::vector<int>& vertices,
                        const std::vector<int>& edges) {
  GraphMap m{source, target, {}, {}};
  for (int v : vertices) m.on_vertices.push_back(GraphPoint::at_vertex(v));
  for (int e : edges) m.on_edges.push_back({false, {}, e, 0, 1});
  validate_map(m);
  return m;
}

PLFamily pullback_family(const GraphMap& m, const PLFamily& f) {
  if (!(m.target == f.base))
    fail(FamilyError::Kind::IllTypedMap, "map target is not the base of the family");
  validate_map(m);
  PLFamily out;
  out.base = m.source;
  for (const auto& p : m.on_vertices) out.vertex_lengths.push_back(fiber_at(f, p));
  auto end_glue = [&](int edge, const Rational& t) {
    if (t == 0) return f.glue_from[edge];
    if (t == 1) return f.glue_to[edge];
    return Perm::identity();
  };
  for (const auto& img : m.on_edges) {
    if (img.constant) {
      out.charts.push_back(constant_chart(fiber_at(f, img.point)));
      out.glue_from.push_back(Perm::identity());
      out.glue_to.push_back(Perm::identity());
    } else {
      out.charts.push_back(subchart(f.charts[img.edge], img.a, img.b));
      out.glue_from.push_back(end_glue(img.edge, img.a));
      out.glue_to.push_back(end_glue(img.edge, img.b));
    }
  }
  validate_family(out);
  return out;
}

TriangleLengths evaluate(const PLMap& map, const BaseGraph& g, const GraphPoint& p) {
  const auto q = canonical(g, p);
  if (q.vertex >= 0) return map.vertices[q.vertex];
  return evaluate(map.edges[q.edge], q.t);
}

bool pl_equal(const PLMap& a, const PLMap& b) {
  if (a.vertices != b.vertices || a.edges.size() != b.edges.size()) return false;
  for (std::size_t e = 0; e < a.edges.size(); ++e) {
    for (const auto& t : merged(breakpoints(a.edges[e]), breakpoints(b.edges[e])))
      if (evaluate(a.edges[e], t) != evaluate(b.edges[e], t)) return false;
  }
  return true;
}

PLMap classify_to_M(const PLFamily& f) {
  for (int e = 0; e < f.base.edge_count(); ++e)
    if (!f.glue_from[e].is_identity() || !f.glue_to[e].is_identity())
      fail(FamilyError::Kind::NotOriented, "edge " + f.base.edges[e].id + " is glued non-trivially",
           {f.base.edges[e].id});
  return {f.vertex_lengths, f.charts};
}

PLMap classify_to_N(const PLFamily& f) {
  PLMap out;
  for (const auto& v : f.vertex_lengths) out.vertices.push_back(to_N(v));
  for (const auto& chart : f.charts) {
    std::vector<Rational> ts = breakpoints(chart);
    for (std::size_t i = 1; i < chart.size(); ++i) {
      const auto& p = chart[i - 1];
      const auto& q = chart[i];
      for (auto [u, w] : {std::pair{0, 1}, {1, 2}, {0, 2}}) {
        Rational d0 = coordinate(p.lengths, u) - coordinate(p.lengths, w);
        Rational d1 = coordinate(q.lengths, u) - coordinate(q.lengths, w);
        if ((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0))
          ts.push_back(p.t + (q.t - p.t) * d0 / (d0 - d1));
      }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    Chart sorted;
    for (const auto& t : ts) sorted.push_back({t, to_N(evaluate(chart, t))});
    out.edges.push_back(std::move(sorted));
  }
  return out;
}

PLFamily recharted(const PLFamily& f, const std::vector<Perm>& sigma, const std::vector<Perm>& tau) {
  PLFamily out = f;
  for (int v = 0; v < f.base.vertex_count(); ++v)
    out.vertex_lengths[v] = permute(sigma[v], f.vertex_lengths[v]);
  for (int e = 0; e < f.base.edge_count(); ++e) {
    for (auto& cp : out.charts[e]) cp.lengths = permute(tau[e], cp.lengths);
    const auto& edge = f.base.edges[e];
    const Perm inv = tau[e].inverse();
    out.glue_from[e] = sigma[edge.from] * f.glue_from[e] * inv;
    out.glue_to[e] = sigma[edge.to] * f.glue_to[e] * inv;
  }
  return out;
}

PLFamily twisted(const PLFamily& f, const Perm& sigma) {
  return recharted(f, std::vector<Perm>(f.base.vertices.size(), sigma),
                   std::vector<Perm>(f.base.edges.size(), sigma));
}

Perm walk_transport(const PLFamily& f, const std::vector<std::pair<int, bool>>& walk) {
  Perm total;
  for (const auto& [e, forward] : walk) {
    const Perm step = forward ? f.glue_to[e] * f.glue_from[e].inverse()
                              : f.glue_from[e] * f.glue_to[e].inverse();
    total = step * total;
  }
  return total;
}

OrientationResult is_orientable(const PLFamily& f) {
  const auto& g = f.base;
  const int nv = g.vertex_count();
  const int ne = g.edge_count();
  OrientationResult r;
  r.sigma.assign(nv, Perm::identity());
  r.tau.assign(ne, Perm::identity());
  std::vector<bool> seen(nv, false);
  std::vector<bool> assigned(ne, false);
  // Tree edge into each vertex, as (edge, traversed forward); -1 at roots.
  std::vector<std::pair<int, bool>> parent(nv, {-1, true});
  std::vector<std::vector<int>> incident(nv);
  for (int e = 0; e < ne; ++e) {
    incident[g.edges[e].from].push_back(e);
    if (g.edges[e].to != g.edges[e].from) incident[g.edges[e].to].push_back(e);
  }
  auto root_path = [&](int v) {
    std::vector<std::pair<int, bool>> path;
    while (parent[v].first >= 0) {
      path.push_back(parent[v]);
      const auto& edge = g.edges[parent[v].first];
      v = parent[v].second ? edge.from : edge.to;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };
  for (int root = 0; root < nv; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int e : incident[v]) {
        if (assigned[e]) continue;
        assigned[e] = true;
        const auto& edge = g.edges[e];
        const bool forward = edge.from == v;
        const int w = forward ? edge.to : edge.from;
        r.tau[e] = r.sigma[v] * f.glue(e, !forward);
        const Perm gw = f.glue(e, forward);
        if (!seen[w]) {
          seen[w] = true;
          r.sigma[w] = r.tau[e] * gw.inverse();
          parent[w] = {e, forward};
          queue.push_back(w);
        } else if (r.orientable && r.sigma[w] * gw != r.tau[e]) {
          r.orientable = false;
          auto pv = root_path(v);
          auto pw = root_path(w);
          std::size_t common = 0;
          while (common < pv.size() && common < pw.size() && pv[common] == pw[common]) ++common;
          for (std::size_t i = common; i < pv.size(); ++i) r.cycle.push_back(pv[i]);
          r.cycle.push_back({e, forward});
          for (std::size_t i = pw.size(); i > common; --i)
            r.cycle.push_back({pw[i - 1].first, !pw[i - 1].second});
          r.monodromy = walk_transport(f, r.cycle);
        }
      }
    }
  }
  if (!r.orientable) {
    r.sigma.clear();
    r.tau.clear();
  }
  return r;
}

PLFamily natural_ordering(const PLFamily& f) {
  auto sorter = [&](const TriangleLengths& t, const std::string& where) {
    for (const auto& g : all_perms()) {
      const auto s = permute(g, t);
      if (s.x < s.y && s.y < s.z) return g;
    }
    fail(FamilyError::Kind::Malformed, "fiber at " + where + " is not scalene", {where});
  };
  std::vector<Perm> sigma;
  std::vector<Perm> tau;
  for (int v = 0; v < f.base.vertex_count(); ++v)
    sigma.push_back(sorter(f.vertex_lengths[v], f.base.vertices[v]));
  for (int e = 0; e < f.base.edge_count(); ++e) {
    const auto& id = f.base.edges[e].id;
    const Perm g = sorter(f.charts[e].front().lengths, id);
    for (const auto& cp : f.charts[e])
      if (sorter(cp.lengths, id + "@" + to_string(cp.t)) != g)
        fail(FamilyError::Kind::Malformed, "edge " + id + " crosses the isosceles locus", {id});
    tau.push_back(g);
  }
  auto out = recharted(f, sigma, tau);
  validate_family(out);
  return out;
}

namespace {

struct IsoSearch {
  const PLFamily& f;
  const PLFamily& g;
  const std::map<int, Perm>& required;
  std::vector<std::vector<Perm>> domains;
  std::vector<std::vector<Perm>> isolated;  // per vertex without edges
  std::vector<std::optional<Perm>> h;
  std::vector<Perm> tau;
  int first_clash = -1;

  IsoSearch(const PLFamily& f_, const PLFamily& g_, const std::map<int, Perm>& req)
      : f(f_), g(g_), required(req) {
    const auto& base = f.base;
    for (int e = 0; e < base.edge_count(); ++e) {
      const auto ts = merged(breakpoints(f.charts[e]), breakpoints(g.charts[e]));
      std::vector<Perm> d;
      for (const auto& p : all_perms()) {
        bool ok = true;
        for (const auto& t : ts)
          if (permute(p, evaluate(f.charts[e], t)) != evaluate(g.charts[e], t)) {
            ok = false;
            break;
          }
        if (ok) d.push_back(p);
      }
      domains.push_back(std::move(d));
    }
    std::vector<bool> touched(base.vertex_count(), false);
    for (const auto& edge : base.edges) touched[edge.from] = touched[edge.to] = true;
    isolated.resize(base.vertex_count());
    for (int v = 0; v < base.vertex_count(); ++v) {
      if (touched[v]) continue;
      for (const auto& p : all_perms()) {
        if (permute(p, f.vertex_lengths[v]) != g.vertex_lengths[v]) continue;
        auto it = required.find(v);
        if (it != required.end() && it->second != p) continue;
        isolated[v].push_back(p);
      }
    }
    h.assign(base.vertex_count(), std::nullopt);
    tau.assign(base.edge_count(), Perm::identity());
  }

  bool fits(int v, const Perm& p) const {
    if (h[v] && *h[v] != p) return false;
    auto it = required.find(v);
    return it == required.end() || it->second == p;
  }

  // visit returns false to stop.
  bool run(int e, const std::function<bool(const IsoWitness&)>& visit) {
    const auto& base = f.base;
    if (e == base.edge_count()) return finish(0, visit);
    const auto& edge = base.edges[e];
    for (const auto& p : domains[e]) {
      const Perm hf = g.glue_from[e] * p * f.glue_from[e].inverse();
      const Perm ht = g.glue_to[e] * p * f.glue_to[e].inverse();
      int clash = -1;
      if (!fits(edge.from, hf)) clash = edge.from;
      else if (!fits(edge.to, ht) || (edge.from == edge.to && hf != ht)) clash = edge.to;
      if (clash >= 0) {
        if (first_clash < 0) first_clash = clash;
        continue;
      }
      const auto saved_from = h[edge.from];
      const auto saved_to = h[edge.to];
      h[edge.from] = hf;
      h[edge.to] = ht;
      tau[e] = p;
      if (!run(e + 1, visit)) return false;
      h[edge.from] = saved_from;
      h[edge.to] = saved_to;
    }
    return true;
  }

  bool finish(int v, const std::function<bool(const IsoWitness&)>& visit) {
    const int nv = f.base.vertex_count();
    while (v < nv && h[v]) ++v;
    if (v == nv) {
      IsoWitness w{tau, {}};
      for (const auto& x : h) w.vertex_h.push_back(*x);
      return visit(w);
    }
    if (isolated[v].empty() && first_clash < 0) first_clash = v;
    for (const auto& p : isolated[v]) {
      h[v] = p;
      if (!finish(v + 1, visit)) {
        h[v] = std::nullopt;
        return false;
      }
      h[v] = std::nullopt;
    }
    return true;
  }
};

void require_same_base(const PLFamily& f, const PLFamily& g) {
  if (!(f.base == g.base)) fail(FamilyError::Kind::DifferentBase, "families live over different bases");
}

}  // namespace

IsoResult are_isomorphic(const PLFamily& f, const PLFamily& g, const std::map<int, Perm>& required) {
  require_same_base(f, g);
  IsoSearch search(f, g, required);
  IsoResult result;
  search.run(0, [&](const IsoWitness& w) {
    result.witness = w;
    return false;
  });
  if (result.witness) return result;
  auto& inf = result.infeasibility;
  inf.domains = search.domains;
  std::vector<std::string> parts;
  for (int e = 0; e < f.base.edge_count(); ++e) {
    if (search.domains[e].empty() && inf.empty_edge < 0) inf.empty_edge = e;
  }
  if (inf.empty_edge >= 0) {
    inf.message = f.base.edges[inf.empty_edge].id + " admits no matching permutation";
    return result;
  }
  for (int e = 0; e < f.base.edge_count(); ++e)
    if (search.domains[e].size() == 1)
      parts.push_back(f.base.edges[e].id + " forces " + search.domains[e].front().label());
  inf.clash_vertex = search.first_clash;
  if (inf.clash_vertex >= 0) parts.push_back("vertex " + f.base.vertices[inf.clash_vertex] + " clash");
  std::ostringstream os;
  for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? ", " : "") << parts[i];
  inf.message = parts.empty() ? "no consistent assignment" : os.str();
  return result;
}

std::vector<IsoWitness> all_isomorphisms(const PLFamily& f, const PLFamily& g) {
  require_same_base(f, g);
  const std::map<int, Perm> none;
  IsoSearch search(f, g, none);
  std::vector<IsoWitness> out;
  search.run(0, [&](const IsoWitness& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

namespace {

TriangleLengths lengths(long x, long y, long z, long den) {
  return {make_rational(x, den), make_rational(y, den), make_rational(z, den)};
}

}  // namespace

Remark25Pair fixture_remark25() {
  BaseGraph base;
  base.vertices = {"0", "1/2", "1"};
  base.edges = {{"edge-1", 0, 1}, {"edge-2", 1, 2}};
  const auto d = lengths(5, 4, 6, 5);
  const auto mid = lengths(1, 1, 1, 1);
  const auto e = lengths(5, 6, 4, 5);
  Chart rise{{0, d}, {1, mid}};
  PLFamily f = family_with_least_glue(base, {d, mid, e}, {rise, Chart{{0, mid}, {1, e}}});
  PLFamily g = family_with_least_glue(base, {d, mid, d}, {rise, Chart{{0, mid}, {1, d}}});
  return {std::move(f), std::move(g)};
}

PLFamily fixture_mobius() {
  BaseGraph base;
  base.vertices = {"v0", "v1"};
  base.edges = {{"e0", 0, 1}, {"e1", 1, 0}};
  const auto d = lengths(5, 4, 6, 5);
  const auto mid = lengths(1, 1, 1, 1);
  const auto e = lengths(5, 6, 4, 5);
  const Rational half = make_rational(1, 2);
  Chart c0{{0, d}, {half, mid}, {1, e}};
  Chart c1{{0, e}, {half, mid}, {1, e}};
  return family_with_least_glue(base, {d, e}, {c0, c1});
}

GraphMap fixture_double_cover() {
  const auto circle = fixture_mobius().base;
  BaseGraph cover;
  cover.vertices = {"u0", "u1", "u2", "u3"};
  cover.edges = {{"f0", 0, 1}, {"f1", 1, 2}, {"f2", 2, 3}, {"f3", 3, 0}};
  return simplicial_map(cover, circle, {0, 1, 0, 1}, {0, 1, 0, 1});
}

namespace invariants {

FamilyInvariant perimeter() {
  return [](const PLFamily& f, const GraphPoint& p) {
    const auto t = fiber_at(f, p);
    return std::vector<Rational>{t.x + t.y + t.z};
  };
}

FamilyInvariant longest_minus_shortest() {
  return [](const PLFamily& f, const GraphPoint& p) {
    const auto t = to_N(fiber_at(f, p));
    return std::vector<Rational>{t.z - t.x};
  };
}

FamilyInvariant heron() {
  return [](const PLFamily& f, const GraphPoint& p) {
    return std::vector<Rational>{heron_sixteen_area_squared(fiber_at(f, p))};
  };
}

FamilyInvariant chart_y() {
  return [](const PLFamily& f, const GraphPoint& p) { return std::vector<Rational>{fiber_at(f, p).y}; };
}

}  // namespace invariants

std::vector<GraphPoint> sample_points(const PLFamily& f) {
  std::vector<GraphPoint> out;
  for (int v = 0; v < f.base.vertex_count(); ++v) out.push_back(GraphPoint::at_vertex(v));
  const auto nmap = classify_to_N(f);
  for (int e = 0; e < f.base.edge_count(); ++e) {
    const auto ts = merged(breakpoints(f.charts[e]), breakpoints(nmap.edges[e]));
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (ts[i] > 0 && ts[i] < 1) out.push_back(GraphPoint::on_edge(e, ts[i]));
      if (i + 1 < ts.size()) out.push_back(GraphPoint::on_edge(e, (ts[i] + ts[i + 1]) / 2));
    }
  }
  return out;
}

namespace {

std::string values_label(const std::vector<Rational>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + "]";
}

}  // namespace

Verdict check_coarse_factorization(const FamilyInvariant& beta, const std::vector<NamedFamily>& families) {
  std::map<std::string, std::vector<Rational>> mu;
  auto mu_at = [&](const TriangleLengths& n) -> std::optional<Verdict> {
    const auto key = to_string(n);
    if (mu.count(key)) return std::nullopt;
    const auto value = beta(point_family(n), GraphPoint::at_vertex(0));
    for (const auto& o : orbit(n)) {
      const auto other = beta(point_family(o), GraphPoint::at_vertex(0));
      if (other != value)
        return Verdict::fail("NotNatural: isometric point families " + to_string(n) + " and " + to_string(o) +
                                 " receive " + values_label(value) + " and " + values_label(other),
                             {to_string(n), to_string(o)});
    }
    mu[key] = value;
    return std::nullopt;
  };
  for (const auto& [name, f] : families) {
    for (const auto& p : sample_points(f)) {
      const auto n = to_N(fiber_at(f, p));
      if (auto bad = mu_at(n)) return *bad;
      const auto value = beta(f, p);
      if (p.vertex >= 0) {
        BaseGraph pt;
        pt.vertices = {"*"};
        GraphMap incl{pt, f.base, {p}, {}};
        const auto pulled = beta(pullback_family(incl, f), GraphPoint::at_vertex(0));
        if (pulled != value)
          return Verdict::fail("NotNatural: pullback to " + f.base.vertices[p.vertex] + " in " + name +
                                   " changes the value",
                               {name, f.base.vertices[p.vertex]});
      }
      if (value != mu[to_string(n)])
        return Verdict::fail("mismatch in " + name + " at " + point_label(f.base, p) + ": " +
                                 values_label(value) + " vs " + values_label(mu[to_string(n)]),
                             {name, point_label(f.base, p)});
    }
  }
  return Verdict::pass();
}

namespace family_corpus {

BaseGraph path(int edges) {
  BaseGraph g;
  for (int i = 0; i <= edges; ++i) g.vertices.push_back("p" + std::to_string(i));
  for (int i = 0; i < edges; ++i) g.edges.push_back({"a" + std::to_string(i), i, i + 1});
  return g;
}

BaseGraph circle(int vertices) {
  BaseGraph g;
  for (int i = 0; i < vertices; ++i) g.vertices.push_back("c" + std::to_string(i));
  for (int i = 0; i < vertices; ++i) g.edges.push_back({"r" + std::to_string(i), i, (i + 1) % vertices});
  return g;
}

BaseGraph theta() {
  BaseGraph g;
  g.vertices = {"n", "s"};
  g.edges = {{"t0", 0, 1}, {"t1", 0, 1}, {"t2", 1, 0}};
  return g;
}

BaseGraph loop() {
  BaseGraph g;
  g.vertices = {"o"};
  g.edges = {{"l", 0, 0}};
  return g;
}

BaseGraph star(int leaves) {
  BaseGraph g;
  g.vertices = {"hub"};
  for (int i = 0; i < leaves; ++i) {
    g.vertices.push_back("leaf" + std::to_string(i));
    g.edges.push_back({"s" + std::to_string(i), 0, i + 1});
  }
  return g;
}

BaseGraph two_components() {
  BaseGraph g;
  g.vertices = {"a", "b", "lone"};
  g.edges = {{"ab", 0, 1}};
  return g;
}

namespace {

TriangleLengths random_triangle(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 5);
  std::uniform_int_distribution<long> small(2, 9);
  const long den = std::uniform_int_distribution<long>(1, 4)(rng);
  const int k = kind(rng);
  long x = small(rng);
  long y = k == 0 ? x : small(rng);
  long z;
  if (k == 0) {
    z = x;
  } else if (k == 1) {
    z = y;
    x = std::uniform_int_distribution<long>(1, 2 * y - 1)(rng);
  } else {
    const long lo = std::abs(x - y) + 1;
    const long hi = x + y - 1;
    z = std::uniform_int_distribution<long>(lo, hi)(rng);
  }
  TriangleLengths t{make_rational(x, den), make_rational(y, den), make_rational(z, den)};
  return permute(all_perms()[std::uniform_int_distribution<int>(0, 5)(rng)], t);
}

}  // namespace

PLFamily random_family(const BaseGraph& base, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> perm(0, 5);
  std::uniform_int_distribution<int> inner(0, 2);
  const bool oriented = std::uniform_int_distribution<int>(0, 2)(rng) == 0;
  std::vector<TriangleLengths> vs;
  for (int v = 0; v < base.vertex_count(); ++v) vs.push_back(random_triangle(rng));
  PLFamily f{base, vs, {}, {}, {}};
  for (const auto& edge : base.edges) {
    const Perm g0 = oriented || coin(rng) ? Perm::identity() : all_perms()[perm(rng)];
    const Perm g1 = oriented || coin(rng) ? Perm::identity() : all_perms()[perm(rng)];
    Chart c{{0, permute(g0.inverse(), vs[edge.from])}};
    const int k = inner(rng);
    std::set<Rational> ts;
    while (static_cast<int>(ts.size()) < k)
      ts.insert(make_rational(std::uniform_int_distribution<long>(1, 7)(rng), 8));
    for (const auto& t : ts) c.push_back({t, random_triangle(rng)});
    c.push_back({1, permute(g1.inverse(), vs[edge.to])});
    f.charts.push_back(std::move(c));
    f.glue_from.push_back(g0);
    f.glue_to.push_back(g1);
  }
  validate_family(f);
  return f;
}

std::vector<NamedFamily> generate(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  const std::vector<std::pair<std::string, BaseGraph>> bases = {
      {"path1", path(1)},   {"path3", path(3)}, {"circle2", circle(2)},      {"circle3", circle(3)},
      {"theta", theta()},   {"loop", loop()},   {"star3", star(3)},          {"split", two_components()},
  };
  std::vector<NamedFamily> out;
  for (int i = 0; i < count; ++i) {
    const auto& [name, base] = bases[i % bases.size()];
    out.push_back({name + "-" + std::to_string(i), random_family(base, rng)});
  }
  return out;
}

}  // namespace family_corpus

}  // namespace trimod
