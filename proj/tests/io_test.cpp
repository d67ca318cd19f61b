#include <gtest/gtest.h>

#include <random>

#include "trimod/corpus.hpp"
#include "trimod/io.hpp"

using namespace trimod;
using io::json;

namespace {

// Location of the InputError thrown by `f`, or "" when nothing is thrown.
template <class F>
std::string error_at(F f) {
  try {
    f();
  } catch (const io::InputError& e) {
    return e.location();
  }
  return "";
}

json remark_f() { return io::write_family(fixture_remark25().f); }

}  // namespace

TEST(IoRoundTrip, Categories) {
  for (const auto& [name, c] : corpus::base_categories()) {
    const json j = io::write_category(c);
    const FinCat back = io::read_category(j);
    EXPECT_TRUE(back == c) << name;
    EXPECT_EQ(io::write_category(back), j) << name;
  }
  const FinCat s3 = corpus::symmetric_group3();
  EXPECT_TRUE(io::read_category(io::write_category(s3)) == s3);
}

TEST(IoRoundTrip, Fibrations) {
  for (const auto& fib : corpus::fibered_corpus(11, 30)) {
    const json j = io::write_fibration(fib.over);
    const CategoryOver back = io::read_fibration(j);
    EXPECT_TRUE(back.total == fib.over.total) << fib.name;
    EXPECT_TRUE(back.base == fib.over.base) << fib.name;
    EXPECT_EQ(back.projection, fib.over.projection) << fib.name;
  }
}

TEST(IoRoundTrip, PseudoFunctorsKeepStructureMaps) {
  const FinCat base = corpus::square_poset();
  std::vector<int> cochain(base.morphism_count());
  for (Mor m = 0; m < base.morphism_count(); ++m) cochain[m] = (m * 7 + 3) % 4;
  for (const auto& p : {corpus::automorphism_chain(3, 5, {2, 3}), corpus::coboundary_twist(base, 4, cochain)}) {
    const json j = io::write_pseudofunctor(p);
    const PseudoFunctor back = io::read_pseudofunctor(j);
    EXPECT_EQ(back.epsilon, p.epsilon);
    EXPECT_EQ(back.alpha, p.alpha);
    EXPECT_EQ(back.pullbacks, p.pullbacks);
    EXPECT_TRUE(validate_pseudofunctor(back).ok);
    EXPECT_EQ(io::write_pseudofunctor(back), j);
  }
}

TEST(IoRoundTrip, SitesAndData) {
  const FiniteSite s = open_site(3, {{"0", {}}, {"a", {0}}, {"c", {2}}, {"b", {1, 2}}, {"ac", {0, 2}}, {"ab", {0, 1, 2}}});
  const json j = io::write_site(s);
  const FiniteSite back = io::read_site(j);
  EXPECT_TRUE(back.base == s.base);
  EXPECT_EQ(back.coverings, s.coverings);
  EXPECT_EQ(back.pullbacks, s.pullbacks);

  const Obj top = *s.base.find_object("ab");
  const CategoryOver slice = slice_category(s.base, top);
  const DescentContext ctx{slice, default_cleavage(slice), s};
  for (std::size_t c = 0; c < s.coverings[top].size(); ++c) {
    const DescentDatum d = comparison_datum(ctx, slice.total.object_count() - 1, s.covering(top, c));
    const DescentDatum e = io::read_datum(io::write_datum(d, ctx), ctx);
    EXPECT_EQ(e.covering.legs, d.covering.legs);
    EXPECT_EQ(e.objects, d.objects);
    EXPECT_EQ(e.transitions, d.transitions);
  }
}

TEST(IoRoundTrip, FamiliesPairsAndDeformations) {
  auto families = family_corpus::generate(4, 30);
  families.push_back({"mobius", fixture_mobius()});
  for (const auto& nf : families) {
    const json j = io::write_family(nf.family);
    EXPECT_EQ(io::write_family(io::read_family(j)), j) << nf.name;
    const TorsorPair pair = family_to_torsor_pair(nf.family);
    const json pj = io::write_pair(pair);
    EXPECT_EQ(io::write_pair(io::read_pair(pj)), pj) << nf.name;
  }
  for (const auto& d : deformation_corpus::generate(8, 12)) {
    const json j = io::write_deformation(d);
    const Deformation back = io::read_deformation(j);
    EXPECT_EQ(back.basepoint, d.basepoint);
    EXPECT_EQ(back.marking, d.marking);
    EXPECT_EQ(io::write_deformation(back), j);
  }
}

TEST(IoRoundTrip, Torsors) {
  std::mt19937_64 rng(9);
  for (const auto& [name, base] : torsor_corpus::bases()) {
    for (const auto& group : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::s3()}) {
      TorsorCocycle t{base, group, {}};
      for (int e = 0; e < base.edge_count(); ++e)
        t.transitions.push_back(static_cast<int>(rng() % static_cast<unsigned>(group.order())));
      const json j = io::write_torsor(t);
      const TorsorCocycle back = io::read_torsor(j);
      EXPECT_EQ(back.transitions, t.transitions) << name;
      EXPECT_EQ(io::write_torsor(back), j) << name;
    }
  }
}

TEST(IoTorsor, ArrowKeysAndBackwardSteps) {
  const json j = json::parse(R"j({"vertices": ["a", "b", "c"], "faces": [["a", "b", "c"]], "group": "S3",
    "transitions": {"a->b": "(ABC)", "b->c": "(ABC)", "c->a": "(ABC)"}})j");
  const TorsorCocycle t = io::read_torsor(j);
  EXPECT_TRUE(validate_torsor(t).ok);
  EXPECT_EQ(t.base.edge_count(), 3);

  // With explicit edges a backward key stores the inverse.
  const json k = json::parse(R"j({"vertices": ["a", "b"], "edges": [{"id": "e", "from": "a", "to": "b"}],
    "group": "S3", "transitions": {"b->a": "(ABC)"}})j");
  const TorsorCocycle u = io::read_torsor(k);
  EXPECT_EQ(u.group.label(u.transitions[0]), "(ACB)");
}

TEST(IoErrors, PointAtTheOffendingValue) {
  json f = remark_f();
  f["edges"][1]["chart"][0]["lengths"][2] = "6/0";
  EXPECT_EQ(error_at([&] { io::read_family(f); }), "/edges/1/chart/0/lengths/2");

  f = remark_f();
  f["edges"][0]["glueTo"] = "(AD)";
  EXPECT_EQ(error_at([&] { io::read_family(f); }), "/edges/0/glueTo");

  f = remark_f();
  f["edges"][0]["to"] = "nowhere";
  EXPECT_EQ(error_at([&] { io::read_family(f); }), "/edges/0/to");

  f = remark_f();
  f["vertices"][0].erase("lengths");
  EXPECT_EQ(error_at([&] { io::read_family(f); }), "/vertices/0");

  f = remark_f();
  f["vertices"][2]["lengths"] = json::array({"1", "1", "5"});
  EXPECT_EQ(error_at([&] { io::read_family(f); }), "/vertices/2");

  json c = io::write_category(corpus::square_poset());
  c["morphisms"][0]["src"] = "zz";
  EXPECT_EQ(error_at([&] { io::read_category(c); }), "/");
  c = io::write_category(corpus::square_poset());
  c["compose"].push_back({"nope", "id_0", "id_0"});
  EXPECT_NE(error_at([&] { io::read_category(c); }), "");

  const json t = json::parse(R"j({"vertices": ["a", "b"], "group": "Z2", "transitions": {"a->b": "s"}})j");
  EXPECT_EQ(error_at([&] { io::read_torsor(t); }), "/transitions/a->b");

  EXPECT_EQ(error_at([] { io::read_rational(json(0.5), "/x"); }), "/x");
  EXPECT_EQ(error_at([] { io::read_rational(json("1/2/3"), "/x"); }), "/x");
  EXPECT_EQ(io::read_rational(json("-6/4"), ""), Rational(-3, 2));
  EXPECT_EQ(io::read_rational(json(7), ""), Rational(7));
}

TEST(IoErrors, UnreadableFiles) {
  EXPECT_EQ(error_at([] { io::load_json("/nonexistent/file.json"); }), "/nonexistent/file.json");
}
