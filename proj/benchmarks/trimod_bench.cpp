#include <benchmark/benchmark.h>

#include "trimod/corpus.hpp"
#include "trimod/deform.hpp"
#include "trimod/descent.hpp"
#include "trimod/families.hpp"
#include "trimod/torsor.hpp"

using namespace trimod;

static void BM_FindIsomorphism(benchmark::State& state) {
  const FinCat a = corpus::product(corpus::chain(static_cast<int>(state.range(0))), corpus::cyclic_group(2));
  const FinCat b = corpus::product(corpus::cyclic_group(2), corpus::chain(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(find_isomorphism(a, b));
}
BENCHMARK(BM_FindIsomorphism)->Arg(2)->Arg(3)->Arg(4);

static void BM_IsFiberedCorpus(benchmark::State& state) {
  const auto corpus = corpus::fibered_corpus(1, 100);
  for (auto _ : state)
    for (const auto& f : corpus) benchmark::DoNotOptimize(is_fibered(f.over).status);
}
BENCHMARK(BM_IsFiberedCorpus)->Unit(benchmark::kMillisecond);

static void BM_TotalCategory(benchmark::State& state) {
  const auto p = corpus::automorphism_chain(static_cast<int>(state.range(0)), 5, std::vector<int>(state.range(0), 2));
  for (auto _ : state) benchmark::DoNotOptimize(total_category(p).over.total.morphism_count());
}
BENCHMARK(BM_TotalCategory)->Arg(2)->Arg(3)->Arg(4);

static void BM_RoundTrip(benchmark::State& state) {
  const auto over = total_category(corpus::automorphism_chain(3, 5, {2, 3})).over;
  for (auto _ : state) benchmark::DoNotOptimize(roundtrip_check(over));
}
BENCHMARK(BM_RoundTrip);

static void BM_StackVerdict(benchmark::State& state) {
  const FiniteSite s = open_site(3, {{"0", {}}, {"a", {0}}, {"c", {2}}, {"b", {1, 2}}, {"ac", {0, 2}}, {"ab", {0, 1, 2}}});
  const CategoryOver slice = slice_category(s.base, *s.base.find_object("ab"));
  const DescentContext ctx{slice, default_cleavage(slice), s};
  for (auto _ : state) benchmark::DoNotOptimize(stack_verdict(ctx).status);
}
BENCHMARK(BM_StackVerdict)->Unit(benchmark::kMillisecond);

static void BM_AreIsomorphic(benchmark::State& state) {
  const auto families = family_corpus::generate(3, 40);
  for (auto _ : state)
    for (const auto& f : families) benchmark::DoNotOptimize(are_isomorphic(f.family, twisted(f.family, Perm::from_index(4))));
}
BENCHMARK(BM_AreIsomorphic)->Unit(benchmark::kMillisecond);

static void BM_Remark25(benchmark::State& state) {
  const auto pair = fixture_remark25();
  for (auto _ : state) {
    benchmark::DoNotOptimize(pl_equal(classify_to_N(pair.f), classify_to_N(pair.g)));
    benchmark::DoNotOptimize(are_isomorphic(pair.f, pair.g));
  }
}
BENCHMARK(BM_Remark25);

static void BM_GlueDescent(benchmark::State& state) {
  const auto bases = torsor_corpus::bases();
  const auto& base = bases[static_cast<std::size_t>(state.range(0))].second;
  const TorsorCocycle trivial{base, FiniteGroup::s3(), std::vector<int>(base.edge_count(), 0)};
  const DescentPieces pieces{base, trivial.group, trivial.transitions};
  for (auto _ : state) benchmark::DoNotOptimize(glue_descent(pieces).simplices.size());
}
BENCHMARK(BM_GlueDescent)->DenseRange(0, 20, 5);

static void BM_OrientationTorsorRoundTrip(benchmark::State& state) {
  const auto families = family_corpus::generate(8, 20);
  for (auto _ : state)
    for (const auto& f : families) benchmark::DoNotOptimize(torsor_pair_to_family(family_to_torsor_pair(f.family)));
}
BENCHMARK(BM_OrientationTorsorRoundTrip)->Unit(benchmark::kMillisecond);

static void BM_GermEquivalence(benchmark::State& state) {
  const auto deformations = deformation_corpus::generate(2, 20);
  for (auto _ : state)
    for (const auto& d : deformations) benchmark::DoNotOptimize(are_equivalent(germ(d, Rational(1, 2)), germ(d, Rational(1, 4))));
}
BENCHMARK(BM_GermEquivalence)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
