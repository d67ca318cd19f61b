#include <gtest/gtest.h>

#include "trimod/corpus.hpp"
#include "trimod/grothendieck.hpp"

using namespace trimod;

namespace {

PseudoFunctor z2_over_interval() {
  return corpus::constant_pseudofunctor(corpus::interval(), corpus::cyclic_group(2));
}

const std::vector<corpus::Fibration>& shared_corpus() {
  static const auto c = corpus::fibered_corpus(20261015, 105);
  return c;
}

}  // namespace

TEST(PseudoFunctor, StrictIsValid) {
  EXPECT_TRUE(validate_pseudofunctor(z2_over_interval()).ok);
  EXPECT_TRUE(validate_pseudofunctor(
                  corpus::constant_pseudofunctor(corpus::discrete(1), corpus::chain(3)))
                  .ok);
}

TEST(PseudoFunctor, CorruptedAlphaFailsCoherence) {
  // Only the triple (0<1, 1<2, 2<3) sees alpha_{0<1,1<2} on one side of the
  // square without it cancelling.
  PseudoFunctor p = corpus::constant_pseudofunctor(corpus::chain(4), corpus::cyclic_group(2));
  const FinCat& c = p.base;
  const Mor f = *c.find_morphism("0<1");
  const Mor g = *c.find_morphism("1<2");
  p.alpha[{f, g}][0] = 1;
  const Verdict v = validate_pseudofunctor(p);
  ASSERT_FALSE(v.ok);
  EXPECT_EQ(v.reason, "coherence square fails");
  EXPECT_EQ(v.witness, (std::vector<std::string>{"0<1", "1<2", "2<3", "*"}));
  EXPECT_THROW(
      {
        try {
          total_category(p);
        } catch (const GrothendieckError& e) {
          EXPECT_EQ(e.kind(), GrothendieckError::Kind::InvalidPseudoFunctor);
          throw;
        }
      },
      GrothendieckError);
}

TEST(PseudoFunctor, CorruptedUnitFails) {
  PseudoFunctor p = z2_over_interval();
  p.epsilon[0][0] = 1;
  EXPECT_FALSE(validate_pseudofunctor(p).ok);
}

TEST(TotalCategory, Z2OverInterval) {
  const TotalCategory t = total_category(z2_over_interval());
  EXPECT_EQ(t.over.total.object_count(), 2);
  int non_identity = 0;
  for (Mor m = 0; m < t.over.total.morphism_count(); ++m) non_identity += !t.over.total.is_identity(m);
  EXPECT_EQ(non_identity, 4);
  EXPECT_EQ(is_fibered(t.over).status, FibrationStatus::Fibered);
  EXPECT_TRUE(validate_cleavage(t.over, canonical_cleavage(z2_over_interval(), t)).ok);
}

TEST(TotalCategory, SingleObjectBaseIsTheFiber) {
  const FinCat s3 = corpus::symmetric_group3();
  const TotalCategory t =
      total_category(corpus::constant_pseudofunctor(corpus::discrete(1), s3));
  EXPECT_TRUE(find_isomorphism(t.over.total, s3));
}

TEST(Extract, SliceGivesStrictPseudoFunctor) {
  const FinCat c = corpus::square_poset();
  const CategoryOver s = slice_category(c, 3);
  const PseudoFunctor p = extract_pseudofunctor(s, default_cleavage(s));
  EXPECT_TRUE(validate_pseudofunctor(p).ok);
  for (const auto& [pair, comps] : p.alpha) {
    for (std::size_t x = 0; x < comps.size(); ++x) {
      EXPECT_TRUE(p.fibers[p.base.source(pair.first)].is_identity(comps[x]));
    }
  }
  EXPECT_TRUE(roundtrip_check(s));
}

TEST(Extract, InvalidCleavage) {
  const TotalCategory t = total_category(z2_over_interval());
  Cleavage k = canonical_cleavage(z2_over_interval(), t);
  k.erase(k.begin());
  EXPECT_THROW(extract_pseudofunctor(t.over, k), GrothendieckError);
}

TEST(Extract, RoundTripRecoversFibersUpToIsomorphism) {
  const PseudoFunctor p = z2_over_interval();
  const TotalCategory t = total_category(p);
  const PseudoFunctor q = extract_pseudofunctor(t.over, canonical_cleavage(p, t));
  EXPECT_TRUE(validate_pseudofunctor(q).ok);
  EXPECT_TRUE(fiberwise_isomorphic(p, q));
  EXPECT_TRUE(roundtrip_check(t.over));
  EXPECT_TRUE(roundtrip_check(identity_over(corpus::interval())));
}

TEST(Corpus, SizeAndShape) {
  const auto& c = shared_corpus();
  ASSERT_GE(c.size(), 100u);
  for (const auto& f : c) {
    EXPECT_LE(f.over.base.object_count(), 5) << f.name;
    EXPECT_LE(f.over.base.morphism_count(), 25) << f.name;
    EXPECT_TRUE(validate_functor(f.over.projection, f.over.total, f.over.base).ok) << f.name;
  }
}

TEST(Corpus, EveryEntryIsFiberedAndRoundTrips) {
  for (const auto& f : shared_corpus()) {
    ASSERT_NE(is_fibered(f.over).status, FibrationStatus::Neither) << f.name;
    EXPECT_TRUE(roundtrip_check(f.over)) << f.name;
  }
}

TEST(Corpus, ExtractedPseudoFunctorsValidate) {
  std::mt19937_64 rng(7);
  for (const auto& f : shared_corpus()) {
    const Cleavage k1 = default_cleavage(f.over);
    const Cleavage k2 = corpus::random_cleavage(f.over, rng);
    ASSERT_TRUE(validate_cleavage(f.over, k2).ok) << f.name;
    const PseudoFunctor p1 = extract_pseudofunctor(f.over, k1);
    const PseudoFunctor p2 = extract_pseudofunctor(f.over, k2);
    EXPECT_TRUE(validate_pseudofunctor(p1).ok) << f.name;
    EXPECT_TRUE(validate_pseudofunctor(p2).ok) << f.name;
    EXPECT_TRUE(fiberwise_isomorphic(p1, p2)) << f.name;
  }
}

TEST(Corpus, CanonicalLiftsAreCartesian) {
  for (const auto& f : shared_corpus()) {
    const PseudoFunctor p = extract_pseudofunctor(f.over, default_cleavage(f.over));
    const TotalCategory t = total_category(p);
    for (const auto& [key, lift] : canonical_cleavage(p, t)) {
      EXPECT_TRUE(is_cartesian(t.over, lift)) << f.name;
    }
  }
}

TEST(Corpus, GroupoidFibrationIffFibersAreGroupoids) {
  int positives = 0;
  int negatives = 0;
  for (const auto& f : shared_corpus()) {
    bool fibers_groupoids = true;
    for (Obj s = 0; s < f.over.base.object_count(); ++s)
      fibers_groupoids = fibers_groupoids && is_groupoid(fiber(f.over, s).category);
    const bool groupoid = is_groupoid_fibration(f.over).status == FibrationStatus::GroupoidFibration;
    EXPECT_EQ(groupoid, fibers_groupoids) << f.name;
    (groupoid ? positives : negatives)++;
  }
  EXPECT_GT(positives, 0);
  EXPECT_GT(negatives, 0);
}

TEST(Corpus, CartesianSubcategoryIsGroupoidFibration) {
  for (const auto& f : shared_corpus()) {
    const auto car = cartesian_subcategory(f.over);
    EXPECT_EQ(car.over.total.object_count(), f.over.total.object_count());
    EXPECT_EQ(is_groupoid_fibration(car.over).status, FibrationStatus::GroupoidFibration) << f.name;
  }
}

TEST(Corpus, LiftsOfIsomorphismsAreIsomorphisms) {
  for (const auto& f : shared_corpus()) {
    const auto v = is_groupoid_fibration(f.over);
    if (v.status != FibrationStatus::GroupoidFibration) continue;
    for (const auto& [key, lift] : v.lifts) {
      if (f.over.base.is_iso(key.first)) {
        EXPECT_TRUE(f.over.total.is_iso(lift)) << f.name;
      }
    }
  }
}

TEST(Corpus, SliceFunctorsMatchHomSets) {
  for (const auto& [name, c] : corpus::base_categories()) {
    if (c.morphism_count() > 10) continue;
    for (Obj x = 0; x < c.object_count(); ++x) {
      const CategoryOver sx = slice_category(c, x);
      for (Obj y = 0; y < c.object_count(); ++y) {
        EXPECT_EQ(functor_hom_over(sx, slice_category(c, y)).size(), c.hom(x, y).size())
            << name << " " << x << " " << y;
      }
    }
  }
}
