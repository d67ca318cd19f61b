#include <gtest/gtest.h>

#include <random>

#include "trimod/torsor.hpp"

namespace trimod {
namespace {

int perm(const char* label) { return Perm::parse(label)->index(); }

TorsorError::Kind kind_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const TorsorError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no TorsorError thrown";
  return TorsorError::Kind::Malformed;
}

SimplicialBase triangle_face() {
  SimplicialBase b;
  b.vertices = {"u", "v", "w"};
  b.edges = {{"uv", 0, 1}, {"vw", 1, 2}, {"wu", 2, 0}};
  b.faces = {{0, 1, 2}};
  return b;
}

const SimplicialBase& base_named(const std::string& name) {
  static const auto all = torsor_corpus::bases();
  for (const auto& [n, b] : all)
    if (n == name) return b;
  throw std::out_of_range(name);
}

// Face check written against the edge list directly.
bool cocycle_oracle(const SimplicialBase& b, const FiniteGroup& g, const std::vector<int>& t) {
  for (const auto& f : b.faces) {
    int acc = 0;
    for (int i = 0; i < 3; ++i) {
      const int u = f[i];
      const int w = f[(i + 1) % 3];
      for (int e = 0; e < b.edge_count(); ++e) {
        if (b.edges[e].from == u && b.edges[e].to == w) acc = g.mul(acc, t[e]);
        if (b.edges[e].from == w && b.edges[e].to == u) acc = g.mul(acc, g.inverse(t[e]));
      }
    }
    if (acc != 0) return false;
  }
  return true;
}

// Brute force over all sections.
bool trivial_oracle(const TorsorCocycle& t) {
  const int nv = t.base.vertex_count();
  const int n = t.group.order();
  std::vector<int> s(nv, 0);
  while (true) {
    bool ok = true;
    for (int e = 0; e < t.base.edge_count() && ok; ++e) {
      const auto& edge = t.base.edges[e];
      ok = t.transitions[e] == t.group.mul(s[edge.from], t.group.inverse(s[edge.to]));
    }
    if (ok) return true;
    int i = 0;
    while (i < nv && ++s[i] == n) s[i++] = 0;
    if (i == nv) return false;
  }
}

// Glued pieces agree with the overlap identifications on every simplex.
void expect_effective(const DescentPieces& pieces, const GlueResult& r) {
  const auto& g = pieces.group;
  const TorsorCocycle over{pieces.base, g, pieces.overlaps};
  EXPECT_EQ(r.torsor.transitions, pieces.overlaps);
  for (const auto& s : r.simplices) {
    for (const auto& [piece, map] : s.to_piece) {
      std::vector<bool> hit(g.order(), false);
      for (int x = 0; x < g.order(); ++x) {
        hit[map[x]] = true;
        for (int a = 0; a < g.order(); ++a) EXPECT_EQ(map[g.mul(a, x)], g.mul(a, map[x]));
      }
      EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
    }
    for (const auto& [i, mi] : s.to_piece)
      for (const auto& [j, mj] : s.to_piece) {
        if (i == j) continue;
        Step step;
        if (s.edge >= 0) {
          step = {s.edge, pieces.base.edges[s.edge].from == i};
        } else {
          step = *step_between(pieces.base, i, j);
        }
        for (int x = 0; x < g.order(); ++x) EXPECT_EQ(mj[x], g.mul(mi[x], over.along(step)));
      }
  }
}

TEST(Torsor, GroupTables) {
  const auto s3 = FiniteGroup::s3();
  EXPECT_EQ(s3.order(), 6);
  EXPECT_EQ(s3.label(perm("(AB)")), "(AB)");
  EXPECT_EQ(s3.mul(perm("(ABC)"), perm("(ABC)")), perm("(ACB)"));
  EXPECT_EQ(FiniteGroup::named("Z3").mul(2, 2), 1);
  EXPECT_EQ(kind_of([] { FiniteGroup::named("Q8"); }), TorsorError::Kind::Malformed);
  EXPECT_EQ(kind_of([] { FiniteGroup("bad", {"e", "a"}, {{0, 1}, {1, 1}}); }), TorsorError::Kind::Malformed);
}

TEST(Torsor, FaceCocycle) {
  const auto s3 = FiniteGroup::s3();
  TorsorCocycle t{triangle_face(), s3, {0, 0, 0}};
  EXPECT_TRUE(validate_torsor(t));
  t.transitions = {perm("(AB)"), perm("(AB)"), perm("(AB)")};
  const auto v = validate_torsor(t);
  EXPECT_FALSE(v);
  EXPECT_EQ(v.reason, "FaceCocycleFails");
  EXPECT_EQ(v.witness, (std::vector<std::string>{"u", "v", "w"}));
  t.transitions = {perm("(ABC)"), perm("(ABC)"), perm("(ABC)")};
  EXPECT_TRUE(validate_torsor(t));
  // Orientation of the face matters only through inverses.
  t.base.edges[2] = {"uw", 0, 2};
  t.transitions[2] = perm("(ACB)");
  EXPECT_TRUE(validate_torsor(t));
}

TEST(Torsor, Triviality) {
  const auto s3 = FiniteGroup::s3();
  std::mt19937_64 rng(3);
  for (const char* tree : {"path2", "path3", "path4"}) {
    TorsorCocycle t{base_named(tree), s3, {}};
    for (int e = 0; e < t.base.edge_count(); ++e) t.transitions.push_back(static_cast<int>(rng() % 6));
    const auto r = is_trivial(t);
    EXPECT_TRUE(r.trivial);
    for (int e = 0; e < t.base.edge_count(); ++e) {
      const auto& edge = t.base.edges[e];
      EXPECT_EQ(t.transitions[e], s3.mul(r.section[edge.from], s3.inverse(r.section[edge.to])));
    }
  }
  TorsorCocycle circle{base_named("cycle4"), s3, {perm("(AB)"), 0, 0, 0}};
  const auto r = is_trivial(circle);
  EXPECT_FALSE(r.trivial);
  EXPECT_EQ(r.monodromy, perm("(AB)"));
  EXPECT_EQ(r.cycle.size(), 4u);
  EXPECT_EQ(circle.path_product(r.cycle), r.monodromy);

  // Monodromy e arranged through a gauge at one vertex.
  TorsorCocycle flat{base_named("cycle3"), s3, {perm("(AB)"), perm("(AB)"), 0}};
  EXPECT_TRUE(is_trivial(flat).trivial);
  std::vector<int> c{0, perm("(ABC)"), 0};
  EXPECT_TRUE(is_trivial(gauge(flat, c)).trivial);

  for (const auto& [name, base] : torsor_corpus::bases()) {
    if (base.vertex_count() > 6) continue;
    for (int k = 0; k < 10; ++k) {
      TorsorCocycle t{base, s3, {}};
      for (int e = 0; e < base.edge_count(); ++e) t.transitions.push_back(static_cast<int>(rng() % 6));
      if (!validate_torsor(t)) continue;
      EXPECT_EQ(is_trivial(t).trivial, trivial_oracle(t)) << name;
    }
  }
}

TEST(Torsor, CocycleCountsMatchCohomology) {
  // Z/2 over the projective plane: 2^5 coboundaries times |H^1| = 2.
  const auto z2 = FiniteGroup::cyclic(2);
  const auto& rp2 = base_named("projective-plane");
  int valid = 0;
  int trivial = 0;
  std::vector<int> t(rp2.edge_count());
  for (int mask = 0; mask < (1 << rp2.edge_count()); ++mask) {
    for (int e = 0; e < rp2.edge_count(); ++e) t[e] = (mask >> e) & 1;
    if (!cocycle_oracle(rp2, z2, t)) continue;
    TorsorCocycle tc{rp2, z2, t};
    EXPECT_TRUE(validate_torsor(tc));
    ++valid;
    trivial += is_trivial(tc).trivial;
  }
  EXPECT_EQ(valid, 64);
  EXPECT_EQ(trivial, 32);

  // S3 over the tetrahedron surface: simply connected, so every cocycle is a
  // coboundary; there are 6^4 / 6 of them.
  const auto s3 = FiniteGroup::s3();
  const auto& tet = base_named("tetrahedron");
  valid = 0;
  std::vector<int> idx(tet.edge_count(), 0);
  while (true) {
    TorsorCocycle tc{tet, s3, idx};
    const bool ok = cocycle_oracle(tet, s3, idx);
    EXPECT_EQ(static_cast<bool>(validate_torsor(tc)), ok);
    if (ok) {
      ++valid;
      EXPECT_TRUE(is_trivial(tc).trivial);
    }
    int i = 0;
    while (i < tet.edge_count() && ++idx[i] == 6) idx[i++] = 0;
    if (i == tet.edge_count()) break;
  }
  EXPECT_EQ(valid, 216);
}

TEST(Torsor, GlueDescentExamples) {
  const auto s3 = FiniteGroup::s3();
  DescentPieces interval{base_named("path2"), s3, {perm("(AC)")}};
  auto r = glue_descent(interval);
  EXPECT_EQ(r.torsor.transitions, std::vector<int>{perm("(AC)")});
  expect_effective(interval, r);

  const int g = perm("(AB)");
  const int h = perm("(ABC)");
  DescentPieces arcs{torsor_corpus::two_edge_circle(), s3, {g, h}};
  r = glue_descent(arcs);
  expect_effective(arcs, r);
  // Out along the upper arc, back along the lower one.
  EXPECT_EQ(r.torsor.path_product({{0, true}, {1, false}}), s3.mul(g, s3.inverse(h)));
  EXPECT_FALSE(is_trivial(r.torsor).trivial);

  DescentPieces broken{triangle_face(), s3, {g, g, g}};
  EXPECT_EQ(kind_of([&] { glue_descent(broken); }), TorsorError::Kind::CocycleFails);
}

TEST(Torsor, GlueDescentExhaustiveOnTwoEdgeCircle) {
  const auto s3 = FiniteGroup::s3();
  int cases = 0;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      DescentPieces p{torsor_corpus::two_edge_circle(), s3, {a, b}};
      const auto r = glue_descent(p);
      expect_effective(p, r);
      EXPECT_EQ(is_trivial(r.torsor).trivial, a == b);
      ++cases;
    }
  EXPECT_EQ(cases, 36);
}

TEST(Torsor, GlueDescentRandomized) {
  std::mt19937_64 rng(21);
  int glued = 0;
  int rejected = 0;
  for (const auto& group : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::s3()}) {
    for (const auto& [name, base] : torsor_corpus::bases()) {
      for (int k = 0; k < 12; ++k) {
        std::vector<int> t;
        for (int e = 0; e < base.edge_count(); ++e) t.push_back(static_cast<int>(rng() % group.order()));
        if (k % 2 == 0) {
          // A coboundary is always a cocycle.
          std::vector<int> s;
          for (int v = 0; v < base.vertex_count(); ++v) s.push_back(static_cast<int>(rng() % group.order()));
          for (int e = 0; e < base.edge_count(); ++e)
            t[e] = group.mul(s[base.edges[e].from], group.inverse(s[base.edges[e].to]));
        }
        DescentPieces p{base, group, t};
        if (cocycle_oracle(base, group, t)) {
          expect_effective(p, glue_descent(p));
          ++glued;
        } else {
          EXPECT_EQ(kind_of([&] { glue_descent(p); }), TorsorError::Kind::CocycleFails) << name;
          ++rejected;
        }
      }
    }
  }
  EXPECT_GT(glued, 0);
  EXPECT_GT(rejected, 0);
  EXPECT_GE(torsor_corpus::bases().size(), 20u);
}

TEST(Torsor, MorphismsAreIsomorphisms) {
  const auto s3 = FiniteGroup::s3();
  std::mt19937_64 rng(8);
  TorsorCocycle t{base_named("wheel4"), s3, {}};
  std::vector<int> s;
  for (int v = 0; v < t.base.vertex_count(); ++v) s.push_back(static_cast<int>(rng() % 6));
  for (const auto& e : t.base.edges) t.transitions.push_back(s3.mul(s[e.from], s3.inverse(s[e.to])));
  ASSERT_TRUE(validate_torsor(t));

  const auto id = gauge_morphism(t, std::vector<int>(t.base.vertex_count(), 0));
  const auto inv_id = torsor_morphism_check(t, t, id);
  EXPECT_EQ(inv_id.sheets, id.sheets);

  std::vector<int> c;
  for (int v = 0; v < t.base.vertex_count(); ++v) c.push_back(static_cast<int>(rng() % 6));
  const auto other = gauge(t, c);
  const auto m = gauge_morphism(t, c);
  const auto inv = torsor_morphism_check(t, other, m);
  for (int v = 0; v < t.base.vertex_count(); ++v)
    for (int x = 0; x < 6; ++x) EXPECT_EQ(inv.sheets[v][m.sheets[v][x]], x);
  EXPECT_NO_THROW(torsor_morphism_check(other, t, inv));

  auto bent = m;
  std::swap(bent.sheets[0][0], bent.sheets[0][1]);
  EXPECT_EQ(kind_of([&] { torsor_morphism_check(t, other, bent); }), TorsorError::Kind::NotEquivariant);
  auto shifted = m;
  for (int x = 0; x < 6; ++x) shifted.sheets[1][x] = s3.mul(m.sheets[1][x], perm("(AB)"));
  EXPECT_EQ(kind_of([&] { torsor_morphism_check(t, other, shifted); }), TorsorError::Kind::NotTransitionCompatible);
}

TEST(Torsor, OrientationTorsors) {
  const auto oriented = constant_family(family_corpus::circle(3), {3, 4, 5});
  const auto p = family_to_torsor_pair(oriented);
  EXPECT_NO_THROW(validate_pair(p));
  EXPECT_TRUE(is_trivial(p.torsor).trivial);
  const auto m = classify_to_M(oriented);
  for (int v = 0; v < 3; ++v)
    for (int x = 0; x < 6; ++x) EXPECT_EQ(p.at[v][x], permute(Perm::from_index(x), m.vertices[v]));
  const auto back = torsor_pair_to_family(p);
  EXPECT_EQ(back.charts, oriented.charts);
  EXPECT_TRUE(back.oriented());

  const auto mobius = fixture_mobius();
  const auto pm = family_to_torsor_pair(mobius);
  const auto r = is_trivial(pm.torsor);
  EXPECT_FALSE(r.trivial);
  EXPECT_EQ(r.monodromy, perm("(AB)"));
  const auto mb = torsor_pair_to_family(pm);
  EXPECT_FALSE(is_orientable(mb).orientable);
  EXPECT_TRUE(are_isomorphic(mb, mobius));

  const auto [f, g] = fixture_remark25();
  const auto pf = family_to_torsor_pair(f);
  const auto pg = family_to_torsor_pair(g);
  EXPECT_TRUE(is_trivial(pf.torsor).trivial);
  EXPECT_TRUE(is_trivial(pg.torsor).trivial);
  EXPECT_FALSE(find_pair_isomorphism(pf, pg));
  EXPECT_TRUE(find_pair_isomorphism(pf, pf));

  auto corrupt = pm;
  corrupt.at[1][3] = corrupt.at[1][2];
  EXPECT_EQ(kind_of([&] { torsor_pair_to_family(corrupt); }), TorsorError::Kind::InvalidPair);
  corrupt = pm;
  corrupt.along[0][0].back().lengths = corrupt.along[0][1].back().lengths;
  EXPECT_EQ(kind_of([&] { validate_pair(corrupt); }), TorsorError::Kind::InvalidPair);
}

TEST(Torsor, QuotientStackRoundTrip) {
  auto fams = family_corpus::generate(404, 40);
  const auto [f, g] = fixture_remark25();
  fams.push_back({"remark25-F", f});
  fams.push_back({"remark25-G", g});
  fams.push_back({"mobius", fixture_mobius()});
  std::mt19937_64 rng(17);
  for (const auto& [name, fam] : fams) {
    const auto pair = family_to_torsor_pair(fam);
    EXPECT_NO_THROW(validate_pair(pair)) << name;
    EXPECT_EQ(is_trivial(pair.torsor).trivial, is_orientable(fam).orientable) << name;
    EXPECT_TRUE(are_isomorphic(torsor_pair_to_family(pair), fam)) << name;

    std::vector<Perm> sigma;
    std::vector<Perm> tau;
    for (int v = 0; v < fam.base.vertex_count(); ++v) sigma.push_back(all_perms()[rng() % 6]);
    for (int e = 0; e < fam.base.edge_count(); ++e) tau.push_back(all_perms()[rng() % 6]);
    const auto other = recharted(fam, sigma, tau);
    const auto iso = are_isomorphic(fam, other);
    ASSERT_TRUE(iso) << name;
    const auto other_pair = family_to_torsor_pair(other);
    EXPECT_TRUE(check_pair_isomorphism(pair, other_pair, gauge_from_isomorphism(*iso.witness))) << name;
    EXPECT_TRUE(find_pair_isomorphism(pair, other_pair)) << name;
  }
}

}  // namespace
}  // namespace trimod
