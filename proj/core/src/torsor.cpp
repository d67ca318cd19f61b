#include "trimod/torsor.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace trimod {

namespace {

[[noreturn]] void fail(TorsorError::Kind kind, const std::string& message, std::vector<std::string> witnesses = {}) {
  throw TorsorError(kind, message, std::move(witnesses));
}

}  // namespace

FiniteGroup::FiniteGroup(std::string name, std::vector<std::string> labels, std::vector<std::vector<int>> table)
    : name_(std::move(name)), labels_(std::move(labels)), table_(std::move(table)) {
  const int n = order();
  if (n == 0 || static_cast<int>(table_.size()) != n) fail(TorsorError::Kind::Malformed, "group table has the wrong size");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) fail(TorsorError::Kind::Malformed, "group table has the wrong size");
    for (int x : row)
      if (x < 0 || x >= n) fail(TorsorError::Kind::Malformed, "group table entry out of range");
  }
  for (int a = 0; a < n; ++a)
    if (table_[0][a] != a || table_[a][0] != a) fail(TorsorError::Kind::Malformed, "element 0 is not the identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          fail(TorsorError::Kind::Malformed, "group table is not associative", {labels_[a], labels_[b], labels_[c]});
  inverses_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == 0 && table_[b][a] == 0) inverses_[a] = b;
  for (int a = 0; a < n; ++a)
    if (inverses_[a] < 0) fail(TorsorError::Kind::Malformed, "element without inverse", {labels_[a]});
}

FiniteGroup FiniteGroup::s3() {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a) {
    labels.push_back(Perm::from_index(a).label());
    for (int b = 0; b < 6; ++b) table[a][b] = (Perm::from_index(a) * Perm::from_index(b)).index();
  }
  return FiniteGroup("S3", std::move(labels), std::move(table));
}

FiniteGroup FiniteGroup::cyclic(int n) {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    labels.push_back(a == 0 ? "e" : a == 1 ? "r" : "r^" + std::to_string(a));
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  }
  return FiniteGroup("Z" + std::to_string(n), std::move(labels), std::move(table));
}

FiniteGroup FiniteGroup::named(const std::string& name) {
  if (name == "S3") return s3();
  if (name.size() >= 2 && name[0] == 'Z') {
    const auto digits = name.substr(1);
    if (std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) && digits.size() < 4) {
      const int n = std::stoi(digits);
      if (n >= 1) return cyclic(n);
    }
  }
  fail(TorsorError::Kind::Malformed, "unknown group " + name, {name});
}

std::optional<int> FiniteGroup::find(const std::string& label) const {
  for (int a = 0; a < order(); ++a)
    if (labels_[a] == label) return a;
  return std::nullopt;
}

void validate_base(const SimplicialBase& base) {
  const int nv = base.vertex_count();
  std::set<std::string> names(base.vertices.begin(), base.vertices.end());
  if (static_cast<int>(names.size()) != nv) fail(TorsorError::Kind::Malformed, "duplicate vertex id");
  std::set<std::string> edge_ids;
  for (const auto& e : base.edges) {
    if (!edge_ids.insert(e.id).second) fail(TorsorError::Kind::Malformed, "duplicate edge id " + e.id, {e.id});
    if (e.from < 0 || e.from >= nv || e.to < 0 || e.to >= nv)
      fail(TorsorError::Kind::Malformed, "edge " + e.id + " has an unknown endpoint", {e.id});
  }
  for (const auto& f : base.faces) {
    for (int v : f)
      if (v < 0 || v >= nv) fail(TorsorError::Kind::Malformed, "face with an unknown vertex");
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) fail(TorsorError::Kind::Malformed, "degenerate face");
    for (int i = 0; i < 3; ++i)
      if (!step_between(base, f[i], f[(i + 1) % 3]))
        fail(TorsorError::Kind::Malformed,
             "face side " + base.vertices[f[i]] + "-" + base.vertices[f[(i + 1) % 3]] + " is not a unique edge",
             {base.vertices[f[i]], base.vertices[f[(i + 1) % 3]]});
  }
}

SimplicialBase simplicial_base(const BaseGraph& graph) {
  SimplicialBase base;
  base.vertices = graph.vertices;
  for (const auto& e : graph.edges) base.edges.push_back({e.id, e.from, e.to});
  return base;
}

std::optional<Step> step_between(const SimplicialBase& base, int a, int b) {
  std::optional<Step> found;
  int count = 0;
  for (int e = 0; e < base.edge_count(); ++e) {
    const auto& edge = base.edges[e];
    if (edge.from == a && edge.to == b) {
      found = Step{e, true};
      ++count;
    } else if (edge.from == b && edge.to == a) {
      found = Step{e, false};
      ++count;
    }
  }
  if (count != 1) return std::nullopt;
  return found;
}

int TorsorCocycle::along(const Step& step) const {
  const int t = transitions[step.first];
  return step.second ? t : group.inverse(t);
}

int TorsorCocycle::path_product(const std::vector<Step>& path) const {
  int acc = 0;
  for (const auto& s : path) acc = group.mul(acc, along(s));
  return acc;
}

namespace {

std::vector<std::string> face_ids(const SimplicialBase& base, const std::array<int, 3>& f) {
  return {base.vertices[f[0]], base.vertices[f[1]], base.vertices[f[2]]};
}

// Face product t(u,v) * t(v,w) * t(w,u) for transitions on the base's edges.
int face_product(const SimplicialBase& base, const FiniteGroup& group, const std::vector<int>& transitions,
                 const std::array<int, 3>& f) {
  TorsorCocycle t{base, group, transitions};
  std::vector<Step> path;
  for (int i = 0; i < 3; ++i) path.push_back(*step_between(base, f[i], f[(i + 1) % 3]));
  return t.path_product(path);
}

}  // namespace

Verdict validate_torsor(const TorsorCocycle& t) {
  try {
    validate_base(t.base);
  } catch (const TorsorError& e) {
    return Verdict::fail("Malformed: " + std::string(e.what()), e.witnesses());
  }
  if (static_cast<int>(t.transitions.size()) != t.base.edge_count())
    return Verdict::fail("Malformed: one transition per edge is required");
  for (int x : t.transitions)
    if (x < 0 || x >= t.group.order()) return Verdict::fail("Malformed: transition outside the group");
  for (const auto& f : t.base.faces)
    if (face_product(t.base, t.group, t.transitions, f) != 0)
      return Verdict::fail("FaceCocycleFails", face_ids(t.base, f));
  return Verdict::pass();
}

TorsorCocycle gauge(const TorsorCocycle& t, const std::vector<int>& c) {
  TorsorCocycle out = t;
  for (int e = 0; e < t.base.edge_count(); ++e) {
    const auto& edge = t.base.edges[e];
    out.transitions[e] = t.group.mul(t.group.mul(t.group.inverse(c[edge.from]), t.transitions[e]), c[edge.to]);
  }
  return out;
}

TrivialityResult is_trivial(const TorsorCocycle& t) {
  const auto& base = t.base;
  const auto& g = t.group;
  const int nv = base.vertex_count();
  TrivialityResult r;
  r.section.assign(nv, 0);
  std::vector<bool> seen(nv, false);
  std::vector<bool> used(base.edge_count(), false);
  std::vector<Step> parent(nv, {-1, true});
  std::vector<std::vector<int>> incident(nv);
  for (int e = 0; e < base.edge_count(); ++e) {
    incident[base.edges[e].from].push_back(e);
    if (base.edges[e].to != base.edges[e].from) incident[base.edges[e].to].push_back(e);
  }
  auto root_path = [&](int v) {
    std::vector<Step> path;
    while (parent[v].first >= 0) {
      path.push_back(parent[v]);
      const auto& edge = base.edges[parent[v].first];
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
        if (used[e]) continue;
        used[e] = true;
        const auto& edge = base.edges[e];
        const Step step{e, edge.from == v};
        const int w = step.second ? edge.to : edge.from;
        const int tv = t.along(step);
        if (!seen[w]) {
          seen[w] = true;
          r.section[w] = g.mul(g.inverse(tv), r.section[v]);
          parent[w] = step;
          queue.push_back(w);
        } else if (r.trivial && tv != g.mul(r.section[v], g.inverse(r.section[w]))) {
          r.trivial = false;
          auto pv = root_path(v);
          auto pw = root_path(w);
          std::size_t common = 0;
          while (common < pv.size() && common < pw.size() && pv[common] == pw[common]) ++common;
          for (std::size_t i = common; i < pv.size(); ++i) r.cycle.push_back(pv[i]);
          r.cycle.push_back(step);
          for (std::size_t i = pw.size(); i > common; --i) r.cycle.push_back({pw[i - 1].first, !pw[i - 1].second});
          r.monodromy = t.path_product(r.cycle);
        }
      }
    }
  }
  if (!r.trivial) r.section.clear();
  return r;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

GlueResult glue_descent(const DescentPieces& pieces) {
  const auto& base = pieces.base;
  const auto& g = pieces.group;
  validate_base(base);
  if (static_cast<int>(pieces.overlaps.size()) != base.edge_count())
    fail(TorsorError::Kind::Malformed, "one overlap transition per edge is required");
  for (const auto& f : base.faces)
    if (face_product(base, g, pieces.overlaps, f) != 0)
      fail(TorsorError::Kind::CocycleFails, "overlap data fail the cocycle condition on a triple overlap",
           face_ids(base, f));

  const TorsorCocycle over{base, g, pieces.overlaps};
  GlueResult result;
  for (int v = 0; v < base.vertex_count(); ++v) result.simplices.push_back({v, -1, -1, {v}, {}});
  for (int e = 0; e < base.edge_count(); ++e) {
    std::vector<int> vs{base.edges[e].from, base.edges[e].to};
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    result.simplices.push_back({-1, e, -1, vs, {}});
  }
  for (int f = 0; f < static_cast<int>(base.faces.size()); ++f) {
    std::vector<int> vs(base.faces[f].begin(), base.faces[f].end());
    std::sort(vs.begin(), vs.end());
    result.simplices.push_back({-1, -1, f, vs, {}});
  }

  // Sheet x of piece i over simplex s is element (slot of (s, i)) * |G| + x.
  const int n = g.order();
  std::vector<std::vector<int>> slot(result.simplices.size());
  int slots = 0;
  for (std::size_t s = 0; s < result.simplices.size(); ++s)
    for (std::size_t k = 0; k < result.simplices[s].vertices.size(); ++k) slot[s].push_back(slots++);
  UnionFind uf(slots * n);
  auto element = [&](std::size_t s, std::size_t k, int x) { return slot[s][k] * n + x; };
  for (std::size_t s = 0; s < result.simplices.size(); ++s) {
    const auto& simplex = result.simplices[s];
    for (std::size_t a = 0; a < simplex.vertices.size(); ++a)
      for (std::size_t b = 0; b < simplex.vertices.size(); ++b) {
        if (a == b) continue;
        std::optional<Step> step;
        if (simplex.edge >= 0) {
          step = Step{simplex.edge, base.edges[simplex.edge].from == simplex.vertices[a]};
        } else {
          step = step_between(base, simplex.vertices[a], simplex.vertices[b]);
        }
        const int t = over.along(*step);
        for (int x = 0; x < n; ++x) uf.unite(element(s, a, x), element(s, b, g.mul(x, t)));
      }
  }
  for (std::size_t s = 0; s < result.simplices.size(); ++s) {
    auto& simplex = result.simplices[s];
    for (std::size_t k = 0; k < simplex.vertices.size(); ++k) {
      std::vector<int> map(n, -1);
      for (int x = 0; x < n; ++x) {
        const int cls = uf.find(element(s, 0, x));
        for (int y = 0; y < n; ++y) {
          if (uf.find(element(s, k, y)) != cls) continue;
          if (map[x] >= 0) {
            std::vector<std::string> ids;
            for (int v : simplex.vertices) ids.push_back(base.vertices[v]);
            fail(TorsorError::Kind::CocycleFails, "glued fiber is not a torsor", ids);
          }
          map[x] = y;
        }
      }
      simplex.to_piece[simplex.vertices[k]] = std::move(map);
    }
  }
  // Walking edge v -> w carries sheet x of piece v over v, through the edge,
  // to sheet x * t of piece w.
  result.torsor = TorsorCocycle{base, g, std::vector<int>(base.edge_count(), 0)};
  for (int e = 0; e < base.edge_count(); ++e) {
    const auto& simplex = result.simplices[base.vertex_count() + e];
    const auto& edge = base.edges[e];
    const auto& from = simplex.to_piece.at(edge.from);
    const auto& to = simplex.to_piece.at(edge.to);
    std::vector<int> inv(n);
    for (int x = 0; x < n; ++x) inv[from[x]] = x;
    result.torsor.transitions[e] = to[inv[0]];
  }
  return result;
}

TorsorMorphism torsor_morphism_check(const TorsorCocycle& from, const TorsorCocycle& to, const TorsorMorphism& m) {
  const auto& g = from.group;
  const int n = g.order();
  const auto& base = from.base;
  if (static_cast<int>(m.sheets.size()) != base.vertex_count())
    fail(TorsorError::Kind::NotEquivariant, "one sheet map per vertex is required");
  for (int v = 0; v < base.vertex_count(); ++v) {
    if (static_cast<int>(m.sheets[v].size()) != n)
      fail(TorsorError::Kind::NotEquivariant, "sheet map at " + base.vertices[v] + " has the wrong size",
           {base.vertices[v]});
    for (int a = 0; a < n; ++a)
      for (int x = 0; x < n; ++x)
        if (m.sheets[v][x] < 0 || m.sheets[v][x] >= n || m.sheets[v][g.mul(a, x)] != g.mul(a, m.sheets[v][x]))
          fail(TorsorError::Kind::NotEquivariant, "sheet map at " + base.vertices[v] + " is not equivariant",
               {base.vertices[v], g.label(a), g.label(x)});
  }
  for (int e = 0; e < base.edge_count(); ++e) {
    const auto& edge = base.edges[e];
    for (int x = 0; x < n; ++x)
      if (m.sheets[edge.to][g.mul(x, from.transitions[e])] != g.mul(m.sheets[edge.from][x], to.transitions[e]))
        fail(TorsorError::Kind::NotTransitionCompatible, "sheet maps disagree along " + edge.id, {edge.id});
  }
  TorsorMorphism inverse{std::vector<std::vector<int>>(base.vertex_count(), std::vector<int>(n, -1))};
  for (int v = 0; v < base.vertex_count(); ++v)
    for (int x = 0; x < n; ++x) inverse.sheets[v][m.sheets[v][x]] = x;
  return inverse;
}

TorsorMorphism gauge_morphism(const TorsorCocycle& t, const std::vector<int>& c) {
  TorsorMorphism m;
  for (int v = 0; v < t.base.vertex_count(); ++v) {
    std::vector<int> row;
    for (int x = 0; x < t.group.order(); ++x) row.push_back(t.group.mul(x, c[v]));
    m.sheets.push_back(std::move(row));
  }
  return m;
}

namespace {

Chart permuted(const Chart& chart, const Perm& g) {
  Chart out = chart;
  for (auto& cp : out) cp.lengths = permute(g, cp.lengths);
  return out;
}

bool charts_agree(const Chart& a, const Chart& b) {
  std::vector<Rational> ts;
  for (const auto& cp : a) ts.push_back(cp.t);
  for (const auto& cp : b) ts.push_back(cp.t);
  for (const auto& t : ts)
    if (evaluate(a, t) != evaluate(b, t)) return false;
  return true;
}

}  // namespace

TorsorPair family_to_torsor_pair(const PLFamily& f) {
  validate_family(f);
  TorsorPair p;
  p.torsor.base = simplicial_base(f.base);
  p.torsor.group = FiniteGroup::s3();
  for (int e = 0; e < f.base.edge_count(); ++e)
    p.torsor.transitions.push_back((f.glue_from[e] * f.glue_to[e].inverse()).index());
  for (const auto& l : f.vertex_lengths) {
    std::array<TriangleLengths, 6> row;
    for (int x = 0; x < 6; ++x) row[x] = permute(Perm::from_index(x), l);
    p.at.push_back(row);
  }
  for (int e = 0; e < f.base.edge_count(); ++e) {
    std::array<Chart, 6> row;
    for (int x = 0; x < 6; ++x) row[x] = permuted(f.charts[e], Perm::from_index(x) * f.glue_from[e]);
    p.along.push_back(row);
  }
  return p;
}

void validate_pair(const TorsorPair& p) {
  const auto& base = p.torsor.base;
  auto bad = [](const std::string& msg, std::vector<std::string> w = {}) {
    fail(TorsorError::Kind::InvalidPair, msg, std::move(w));
  };
  if (p.torsor.group.name() != "S3" || p.torsor.group.order() != 6) bad("orientation torsors use the group S3");
  if (!validate_torsor(p.torsor)) bad("torsor is invalid");
  if (static_cast<int>(p.at.size()) != base.vertex_count() || static_cast<int>(p.along.size()) != base.edge_count())
    bad("equivariant map does not match the base");
  const auto& g = p.torsor.group;
  for (int v = 0; v < base.vertex_count(); ++v)
    for (int a = 0; a < 6; ++a)
      for (int x = 0; x < 6; ++x) {
        if (!in_M(p.at[v][x])) bad("value at " + base.vertices[v] + " is not in M", {base.vertices[v]});
        if (p.at[v][g.mul(a, x)] != permute(Perm::from_index(a), p.at[v][x]))
          bad("map at " + base.vertices[v] + " is not equivariant", {base.vertices[v]});
      }
  for (int e = 0; e < base.edge_count(); ++e) {
    const auto& edge = base.edges[e];
    for (int x = 0; x < 6; ++x) {
      const auto& chart = p.along[e][x];
      if (chart.size() < 2 || chart.front().t != 0 || chart.back().t != 1) bad("chart of " + edge.id + " is malformed", {edge.id});
      for (std::size_t i = 1; i < chart.size(); ++i)
        if (!(chart[i - 1].t < chart[i].t)) bad("chart of " + edge.id + " is malformed", {edge.id});
      for (const auto& cp : chart)
        if (!in_M(cp.lengths)) bad("chart of " + edge.id + " leaves M", {edge.id});
      for (int a = 0; a < 6; ++a)
        if (!charts_agree(p.along[e][g.mul(a, x)], permuted(chart, Perm::from_index(a))))
          bad("homotopy along " + edge.id + " is not equivariant", {edge.id});
      if (chart.front().lengths != p.at[edge.from][x] ||
          chart.back().lengths != p.at[edge.to][g.mul(x, p.torsor.transitions[e])])
        bad("homotopy along " + edge.id + " does not match the transition", {edge.id});
    }
  }
}

PLFamily torsor_pair_to_family(const TorsorPair& p) {
  validate_pair(p);
  const auto& base = p.torsor.base;
  BaseGraph graph;
  graph.vertices = base.vertices;
  for (const auto& e : base.edges) graph.edges.push_back({e.id, e.from, e.to});
  PLFamily f;
  f.base = graph;
  for (int v = 0; v < base.vertex_count(); ++v) f.vertex_lengths.push_back(p.at[v][0]);
  for (int e = 0; e < base.edge_count(); ++e) {
    f.charts.push_back(p.along[e][0]);
    f.glue_from.push_back(Perm::identity());
    f.glue_to.push_back(Perm::from_index(p.torsor.transitions[e]).inverse());
  }
  validate_family(f);
  return f;
}

namespace {

std::vector<std::string> pair_gauge_failure(const TorsorPair& a, const TorsorPair& b, const std::vector<int>& c,
                                            const std::vector<int>& vertices, const std::vector<int>& edges) {
  const auto& g = a.torsor.group;
  const auto& base = a.torsor.base;
  for (int v : vertices)
    for (int x = 0; x < 6; ++x)
      if (b.at[v][g.mul(x, c[v])] != a.at[v][x]) return {base.vertices[v]};
  for (int e : edges) {
    const auto& edge = base.edges[e];
    if (b.torsor.transitions[e] != g.mul(g.mul(g.inverse(c[edge.from]), a.torsor.transitions[e]), c[edge.to]))
      return {edge.id};
    for (int x = 0; x < 6; ++x)
      if (!charts_agree(b.along[e][g.mul(x, c[edge.from])], a.along[e][x])) return {edge.id};
  }
  return {};
}

bool same_shape(const TorsorPair& a, const TorsorPair& b) {
  const auto& x = a.torsor.base;
  const auto& y = b.torsor.base;
  if (x.vertices != y.vertices || x.edges.size() != y.edges.size() || x.faces != y.faces) return false;
  for (std::size_t e = 0; e < x.edges.size(); ++e)
    if (x.edges[e].id != y.edges[e].id || x.edges[e].from != y.edges[e].from || x.edges[e].to != y.edges[e].to)
      return false;
  return true;
}

}  // namespace

Verdict check_pair_isomorphism(const TorsorPair& a, const TorsorPair& b, const std::vector<int>& c) {
  if (!same_shape(a, b)) return Verdict::fail("pairs live over different bases");
  const auto& base = a.torsor.base;
  if (static_cast<int>(c.size()) != base.vertex_count()) return Verdict::fail("one gauge element per vertex is required");
  std::vector<int> vs(base.vertex_count());
  std::iota(vs.begin(), vs.end(), 0);
  std::vector<int> es(base.edge_count());
  std::iota(es.begin(), es.end(), 0);
  auto w = pair_gauge_failure(a, b, c, vs, es);
  if (!w.empty()) return Verdict::fail("gauge does not intertwine the pairs", w);
  return Verdict::pass();
}

std::optional<std::vector<int>> find_pair_isomorphism(const TorsorPair& a, const TorsorPair& b) {
  if (!same_shape(a, b)) return std::nullopt;
  const auto& base = a.torsor.base;
  const auto& g = a.torsor.group;
  const int nv = base.vertex_count();
  std::vector<int> comp(nv, -1);
  std::vector<int> c(nv, 0);
  std::vector<std::vector<int>> incident(nv);
  for (int e = 0; e < base.edge_count(); ++e) {
    incident[base.edges[e].from].push_back(e);
    incident[base.edges[e].to].push_back(e);
  }
  for (int root = 0; root < nv; ++root) {
    if (comp[root] >= 0) continue;
    std::vector<int> vertices{root};
    comp[root] = root;
    std::vector<int> edges;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (int e : incident[vertices[i]]) {
        if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
        for (int w : {base.edges[e].from, base.edges[e].to})
          if (comp[w] < 0) {
            comp[w] = root;
            vertices.push_back(w);
          }
      }
    bool found = false;
    for (int start = 0; start < 6 && !found; ++start) {
      std::vector<bool> set(nv, false);
      c[root] = start;
      set[root] = true;
      std::deque<int> queue{root};
      while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int e : incident[v]) {
          const auto& edge = base.edges[e];
          const bool forward = edge.from == v;
          const int w = forward ? edge.to : edge.from;
          if (set[w]) continue;
          const Step s{e, forward};
          // c_w = t1(v,w)^-1 * c_v * t2(v,w)
          c[w] = g.mul(g.mul(g.inverse(a.torsor.along(s)), c[v]), b.torsor.along(s));
          set[w] = true;
          queue.push_back(w);
        }
      }
      found = pair_gauge_failure(a, b, c, vertices, edges).empty();
    }
    if (!found) return std::nullopt;
  }
  return c;
}

std::vector<int> gauge_from_isomorphism(const IsoWitness& w) {
  std::vector<int> c;
  for (const auto& h : w.vertex_h) c.push_back(h.inverse().index());
  return c;
}

namespace torsor_corpus {

namespace {

SimplicialBase from_faces(int n, const std::vector<std::array<int, 3>>& faces,
                          const std::vector<std::pair<int, int>>& extra = {}) {
  SimplicialBase b;
  for (int v = 0; v < n; ++v) b.vertices.push_back(std::to_string(v));
  std::set<std::pair<int, int>> pairs(extra.begin(), extra.end());
  for (const auto& f : faces)
    for (int i = 0; i < 3; ++i) {
      int u = f[i];
      int w = f[(i + 1) % 3];
      pairs.insert({std::min(u, w), std::max(u, w)});
    }
  for (const auto& [u, w] : pairs) b.edges.push_back({std::to_string(u) + "-" + std::to_string(w), u, w});
  b.faces = faces;
  validate_base(b);
  return b;
}

SimplicialBase cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
  return from_faces(n, {}, e);
}

SimplicialBase path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return from_faces(n, {}, e);
}

// Disk: centre 0 and a fan of k triangles; closed into a wheel when `wheel`.
SimplicialBase fan(int k, bool wheel) {
  std::vector<std::array<int, 3>> faces;
  const int rim = wheel ? k : k + 1;
  for (int i = 0; i < k; ++i) faces.push_back({0, 1 + i, 1 + (i + 1) % rim});
  return from_faces(rim + 1, faces);
}

}  // namespace

SimplicialBase two_edge_circle() {
  SimplicialBase b;
  b.vertices = {"0", "1"};
  b.edges = {{"upper", 0, 1}, {"lower", 0, 1}};
  return b;
}

std::vector<std::pair<std::string, SimplicialBase>> bases() {
  std::vector<std::pair<std::string, SimplicialBase>> out;
  for (int n = 3; n <= 7; ++n) out.push_back({"cycle" + std::to_string(n), cycle(n)});
  for (int n = 2; n <= 4; ++n) out.push_back({"path" + std::to_string(n), path(n)});
  for (int k = 1; k <= 3; ++k) out.push_back({"fan" + std::to_string(k), fan(k, false)});
  for (int k = 3; k <= 5; ++k) out.push_back({"wheel" + std::to_string(k), fan(k, true)});
  out.push_back({"two-edge-circle", two_edge_circle()});
  out.push_back({"tetrahedron", from_faces(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}})});
  out.push_back({"octahedron", from_faces(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
                                              {5, 1, 2}, {5, 2, 3}, {5, 3, 4}, {5, 4, 1}})});
  out.push_back({"projective-plane", from_faces(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
                                                    {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}})});
  std::vector<std::array<int, 3>> torus;
  for (int i = 0; i < 7; ++i) {
    torus.push_back({i, (i + 1) % 7, (i + 3) % 7});
    torus.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  out.push_back({"torus", from_faces(7, torus)});
  out.push_back({"moebius-strip", from_faces(5, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {3, 4, 0}, {4, 0, 1}})});
  out.push_back({"hollow-and-filled", from_faces(5, {{0, 1, 2}}, {{2, 3}, {3, 4}, {2, 4}})});
  return out;
}

}  // namespace torsor_corpus

}  // namespace trimod
