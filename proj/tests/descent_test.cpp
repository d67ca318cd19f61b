#include <gtest/gtest.h>

#include "trimod/corpus.hpp"
#include "trimod/descent.hpp"

using namespace trimod;

namespace {

// {0, {1}, {2}, X} on two points.
FiniteSite two_point_site() {
  return open_site(2, {{"0", {}}, {"U", {0}}, {"V", {1}}, {"X", {0, 1}}});
}

DescentContext context(CategoryOver f, FiniteSite site) {
  Cleavage k = default_cleavage(f);
  return {std::move(f), std::move(k), std::move(site)};
}

Covering cover_uv(const FiniteSite& s) {
  const Obj x = *s.base.find_object("X");
  return {x, {*s.base.find_morphism("U<X"), *s.base.find_morphism("V<X")}};
}

// Presheaf with two global sections p, q that agree on U and V.
CategoryOver two_sections(const FiniteSite& s) {
  const Obj x = *s.base.find_object("X");
  std::vector<int> sizes(s.base.object_count(), 1);
  sizes[x] = 2;
  return total_category(corpus::presheaf(s.base, sizes, [&](Mor m, int x) {
           return s.base.is_identity(m) ? x : 0;
         }))
      .over;
}

}  // namespace

TEST(Site, TwoPointSpaceIsValid) {
  const FiniteSite s = two_point_site();
  const SiteVerdict v = validate_site(s);
  EXPECT_TRUE(v.t1.ok) << v.t1.reason;
  EXPECT_TRUE(v.t2.ok) << v.t2.reason;
  EXPECT_TRUE(v.t3.ok) << v.t3.reason;
  const auto& sq = s.pullback_of(*s.base.find_morphism("U<X"), *s.base.find_morphism("V<X"));
  EXPECT_EQ(s.base.object_name(sq.apex), "0");
}

TEST(Site, MissingIsomorphismSingleton) {
  FiniteSite s = two_point_site();
  const Obj u = *s.base.find_object("U");
  auto& fams = s.coverings[u];
  fams.erase(std::remove(fams.begin(), fams.end(), std::vector<Mor>{s.base.identity(u)}), fams.end());
  const SiteVerdict v = validate_site(s);
  EXPECT_FALSE(v.t1.ok);
  EXPECT_EQ(v.t1.witness, std::vector<std::string>{"id_U"});
}

TEST(Site, NotClosedUnderPullback) {
  // Pulling {U<X, V<X} back along U<X gives {id_U, 0<U}.
  FiniteSite s = two_point_site();
  const Obj u = *s.base.find_object("U");
  const std::vector<Mor> pulled{s.base.identity(u), *s.base.find_morphism("0<U")};
  auto& fams = s.coverings[u];
  const auto before = fams.size();
  fams.erase(std::remove_if(fams.begin(), fams.end(),
                            [&](std::vector<Mor> f) {
                              std::sort(f.begin(), f.end());
                              auto p = pulled;
                              std::sort(p.begin(), p.end());
                              return f == p;
                            }),
             fams.end());
  ASSERT_EQ(fams.size() + 1, before);
  const SiteVerdict v = validate_site(s);
  EXPECT_FALSE(v.t2.ok);
  EXPECT_FALSE(v.t2.witness.empty());
}

TEST(Site, MissingPullbackIsAnError) {
  FiniteSite s = two_point_site();
  s.pullbacks.clear();
  EXPECT_THROW(validate_site(s), DescentError);
}

TEST(Comparison, SliceDataAreIdentities) {
  const FiniteSite s = two_point_site();
  const Obj x = *s.base.find_object("X");
  const DescentContext ctx = context(slice_category(s.base, x), s);
  const Obj e = *ctx.fibration.total.find_object("id_X");
  const DescentDatum d = comparison_datum(ctx, e, cover_uv(s));
  for (const auto& [key, m] : d.transitions) EXPECT_TRUE(ctx.fibration.total.is_identity(m));
  EXPECT_TRUE(check_cocycle(ctx, d).ok);
  const auto w = is_effective(ctx, d);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->object, e);
  EXPECT_TRUE(check_witness(ctx, d, *w));
}

TEST(Comparison, IdentityCovering) {
  const FiniteSite s = two_point_site();
  const Obj x = *s.base.find_object("X");
  const DescentContext ctx = context(slice_category(s.base, x), s);
  const Obj e = *ctx.fibration.total.find_object("id_X");
  const DescentDatum d = comparison_datum(ctx, e, {x, {s.base.identity(x)}});
  ASSERT_EQ(d.objects.size(), 1u);
  EXPECT_EQ(d.objects[0], e);
  EXPECT_TRUE(ctx.fibration.total.is_identity(d.transitions.at({0, 0})));
  EXPECT_TRUE(check_cocycle(ctx, d).ok);
}

TEST(Comparison, TwistedTotalCategoriesSatisfyCocycle) {
  const FiniteSite s = two_point_site();
  std::vector<int> cochain;
  for (Mor m = 0; m < s.base.morphism_count(); ++m) cochain.push_back(m % 3);
  const CategoryOver f = total_category(corpus::coboundary_twist(s.base, 3, cochain)).over;
  std::mt19937_64 rng(3);
  const DescentContext ctx{f, corpus::random_cleavage(f, rng), s};
  for (Obj x = 0; x < s.base.object_count(); ++x)
    for (std::size_t c = 0; c < s.coverings[x].size(); ++c)
      for (Obj e = 0; e < f.total.object_count(); ++e) {
        if (f.over(e) != x) continue;
        const DescentDatum d = comparison_datum(ctx, e, s.covering(x, c));
        EXPECT_TRUE(check_cocycle(ctx, d).ok);
        EXPECT_TRUE(is_effective(ctx, d));
      }
}

TEST(Cocycle, NonClosingTripleInZ2) {
  const FiniteSite s = open_site(
      3, {{"0", {}}, {"a", {0}}, {"b", {1}}, {"c", {2}}, {"ab", {0, 1}}, {"ac", {0, 2}},
          {"bc", {1, 2}}, {"X", {0, 1, 2}}});
  const PseudoFunctor p = corpus::constant_pseudofunctor(s.base, corpus::cyclic_group(2));
  const TotalCategory t = total_category(p);
  const DescentContext ctx{t.over, canonical_cleavage(p, t), s};
  const Obj x = *s.base.find_object("X");
  const Covering cov{x, {*s.base.find_morphism("a<X"), *s.base.find_morphism("b<X"),
                         *s.base.find_morphism("c<X")}};
  DescentDatum d;
  d.covering = cov;
  for (Mor leg : cov.legs) d.objects.push_back(t.object_of[s.base.source(leg)][0]);
  auto element = [&](int i, int j, int z) {
    const Obj apex = s.pullback_of(cov.legs[i], cov.legs[j]).apex;
    return t.morphism_of.at({s.base.identity(apex), t.object_of[apex][0], z});
  };
  // alpha_21 = e, alpha_32 = e, alpha_31 = s and inverses; identities on the diagonal.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const bool twisted = (i == 0 && j == 2) || (i == 2 && j == 0);
      d.transitions[{j, i}] = element(i, j, twisted ? 1 : 0);
    }
  const CocycleVerdict v = check_cocycle(ctx, d);
  EXPECT_FALSE(v.ok);
  ASSERT_TRUE(v.witness);
  EXPECT_THROW(is_effective(ctx, d), DescentError);

  const Covering single{x, {s.base.identity(x)}};
  DescentDatum one;
  one.covering = single;
  one.objects = {t.object_of[x][0]};
  one.transitions[{0, 0}] = t.morphism_of.at({s.base.identity(x), t.object_of[x][0], 0});
  EXPECT_TRUE(check_cocycle(ctx, one).ok);
}

TEST(Stack, SliceOverOpensIsStack) {
  const FiniteSite s = two_point_site();
  const DescentContext ctx = context(slice_category(s.base, *s.base.find_object("X")), s);
  const StackVerdict v = stack_verdict(ctx);
  EXPECT_EQ(v.status, StackStatus::Stack) << v.reason;
}

TEST(Stack, IndistinguishableSectionsAreNotPrestack) {
  const FiniteSite s = two_point_site();
  const DescentContext ctx = context(two_sections(s), s);
  const StackVerdict v = stack_verdict(ctx);
  EXPECT_EQ(v.status, StackStatus::Neither);
  EXPECT_EQ(v.reason, "comparison functor is not full");
}

TEST(Stack, TruncatedFiberIsPrestackOnly) {
  const FiniteSite s = two_point_site();
  const Obj x = *s.base.find_object("X");
  const CategoryOver truncated = corpus::remove_fiber(slice_category(s.base, x), x);
  ASSERT_NE(is_fibered(truncated).status, FibrationStatus::Neither);
  const DescentContext ctx = context(truncated, s);
  EXPECT_EQ(stack_verdict(ctx).status, StackStatus::PrestackOnly);

  // The glued datum of U and V exists but has nothing over X to glue to.
  int data = 0;
  enumerate_descent_data(ctx, cover_uv(s), [&](const DescentDatum& d) {
    ++data;
    EXPECT_TRUE(check_cocycle(ctx, d).ok);
    EXPECT_FALSE(is_effective(ctx, d));
    return true;
  });
  EXPECT_EQ(data, 1);
}

TEST(Stack, ConstantGroupoidIsNotAStackOnOpens) {
  // Over the empty open the fiber is Z/2 but the empty covering sees nothing.
  const FiniteSite s = two_point_site();
  const PseudoFunctor p = corpus::constant_pseudofunctor(s.base, corpus::cyclic_group(2));
  const StackVerdict v = stack_verdict(context(total_category(p).over, s));
  EXPECT_EQ(v.status, StackStatus::Neither);
  EXPECT_EQ(v.witness.front(), "0");
}

TEST(Stack, EffectiveWitnessesAreUniqueUpToIsomorphism) {
  // Only isomorphism singletons cover: every fibered category is a stack, and
  // the twisted Z/2 fibers give several witnesses per datum.
  const FiniteSite opens = two_point_site();
  std::vector<std::vector<std::vector<Mor>>> trivial(opens.base.object_count());
  for (Obj x = 0; x < opens.base.object_count(); ++x) trivial[x] = {{opens.base.identity(x)}};
  const FiniteSite s = make_site(opens.base, trivial);
  ASSERT_TRUE(validate_site(s).ok());
  std::vector<int> cochain(s.base.morphism_count(), 1);
  const PseudoFunctor p = corpus::coboundary_twist(s.base, 2, cochain);
  const CategoryOver f = total_category(p).over;
  const DescentContext ctx = context(f, s);
  ASSERT_EQ(stack_verdict(ctx).status, StackStatus::Stack);
  for (Obj x = 0; x < s.base.object_count(); ++x)
    for (std::size_t c = 0; c < s.coverings[x].size(); ++c)
      enumerate_descent_data(ctx, s.covering(x, c), [&](const DescentDatum& d) {
        const auto all = effective_witnesses(ctx, d);
        EXPECT_EQ(all.size(), 2u);
        for (const auto& w : all) {
          EXPECT_TRUE(check_witness(ctx, d, w));
          bool isomorphic = false;
          for (Mor m : f.total.hom(all.front().object, w.object))
            isomorphic = isomorphic || (f.over_mor(m) == s.base.identity(x) && f.total.is_iso(m));
          EXPECT_TRUE(isomorphic);
        }
        return true;
      });
}
