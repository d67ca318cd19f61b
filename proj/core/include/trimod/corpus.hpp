#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "trimod/fincat.hpp"
#include "trimod/grothendieck.hpp"

// Small named categories and generated fibrations used by tests, benchmarks
// and the command line tool.
namespace trimod::corpus {

FinCat interval();  // a --u--> b
// Thin category on `names` with an arrow i -> j iff leq(i, j). `leq` must be
// a preorder. Arrows are named "X<Y", identities "id_X".
FinCat thin_category(const std::vector<std::string>& names,
                     const std::function<bool(int, int)>& leq);
FinCat chain(int n);
FinCat discrete(int n);
FinCat square_poset();  // 0 -> l, 0 -> r, l -> 1, r -> 1
FinCat span();          // l <- 0 -> r
FinCat cospan();        // l -> 1 <- r
FinCat parallel_arrows();
FinCat idempotent();    // one object, e o e = e
// One-object category of a group given by its multiplication table,
// element 0 the identity.
FinCat group_category(const std::vector<std::vector<int>>& table, const std::string& prefix = "g");
FinCat cyclic_group(int n);
FinCat symmetric_group3();
FinCat product(const FinCat& a, const FinCat& b);

// Projection A x B -> A.
CategoryOver product_projection(const FinCat& base, const FinCat& fiber);

// Constant pseudo-functor with fiber `fiber` over every object.
PseudoFunctor constant_pseudofunctor(const FinCat& base, const FinCat& fiber);

// Pseudo-functor over chain(n) whose fibers are all the cyclic group Z/k
// and whose step pullbacks (m -> m+1)^* multiply by `units[m]`.
PseudoFunctor automorphism_chain(int n, int k, const std::vector<int>& units);

// Discrete fibration over chain(n) from sets of sizes `sizes` and step maps
// step[m]: sizes[m+1] -> sizes[m].
PseudoFunctor presheaf_chain(const std::vector<int>& sizes,
                             const std::vector<std::vector<int>>& step);

// Discrete fibration of a presheaf on `base`: sizes[X] elements over X and
// restriction(f, x) the image of x in Phi(target f) under f^*.
PseudoFunctor presheaf(const FinCat& base, const std::vector<int>& sizes,
                       const std::function<int(Mor, int)>& restriction);

// Full subcategory on the objects not lying over `x`.
CategoryOver remove_fiber(const CategoryOver& f, Obj x);

// Fibers Z/k over every object, identity pullbacks, and structure maps
// twisted by a 1-cochain: alpha_{f,g} = c(f) + c(g) - c(gf), eps_S = c(id_S).
PseudoFunctor coboundary_twist(const FinCat& base, int k, const std::vector<int>& cochain);

Cleavage random_cleavage(const CategoryOver& f, std::mt19937_64& rng);

struct Fibration {
  std::string name;
  CategoryOver over;
};

// Deterministic corpus of fibered categories over bases with at most five
// objects.
std::vector<Fibration> fibered_corpus(std::uint64_t seed, int count);

std::vector<std::pair<std::string, FinCat>> base_categories();

}  // namespace trimod::corpus
