#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "trimod/fincat.hpp"
#include "trimod/verdict.hpp"

namespace trimod {

// Phi: C^op -> Cat on a finite base. For f: T -> S the pullback functor
// f^*: Phi(S) -> Phi(T) is stored at pullbacks[f].
//   epsilon[S][s]       : id_S^*(s) -> s            in Phi(S)
//   alpha[{f, g}][s]    : f^* g^* s -> (g o f)^* s  in Phi(Q), f: Q -> T, g: T -> S
struct PseudoFunctor {
  FinCat base;
  std::vector<FinCat> fibers;
  std::vector<Functor> pullbacks;
  std::vector<std::vector<Mor>> epsilon;
  std::map<std::pair<Mor, Mor>, std::vector<Mor>> alpha;

  const FinCat& fiber_of(Obj s) const { return fibers[s]; }
  Obj pull_object(Mor f, Obj s) const { return pullbacks[f].on_objects[s]; }
  Mor pull_morphism(Mor f, Mor u) const { return pullbacks[f].on_morphisms[u]; }
  Mor alpha_at(Mor f, Mor g, Obj s) const { return alpha.at({f, g})[s]; }
};

// Identity epsilon and alpha. Only valid when the pullbacks compose strictly.
PseudoFunctor strict_pseudofunctor(FinCat base, std::vector<FinCat> fibers,
                                   std::vector<Functor> pullbacks);

Verdict validate_pseudofunctor(const PseudoFunctor& p);

class GrothendieckError : public std::runtime_error {
 public:
  enum class Kind { InvalidPseudoFunctor, InvalidCleavage };
  GrothendieckError(Kind kind, const std::string& message, std::vector<std::string> witnesses = {})
      : std::runtime_error(message), kind_(kind), witnesses_(std::move(witnesses)) {}
  Kind kind() const noexcept { return kind_; }
  const std::vector<std::string>& witnesses() const noexcept { return witnesses_; }

 private:
  Kind kind_;
  std::vector<std::string> witnesses_;
};

// (base morphism f, total object over target(f)) -> chosen cartesian lift.
using Cleavage = std::map<std::pair<Mor, Obj>, Mor>;

Verdict validate_cleavage(const CategoryOver& f, const Cleavage& k);

// Least cartesian lift by id for every pair. Throws FibrationError when F is
// not fibered.
Cleavage default_cleavage(const CategoryOver& f);

struct TotalCategory {
  CategoryOver over;
  std::vector<std::vector<Obj>> object_of;  // [S][s] -> (s, S)
  // (f, target object (s, S), u) -> (u, f)
  std::map<std::tuple<Mor, Obj, Mor>, Mor> morphism_of;
};

TotalCategory total_category(const PseudoFunctor& p);

// The lifts (id, f): (f^* s, T) -> (s, S).
Cleavage canonical_cleavage(const PseudoFunctor& p, const TotalCategory& total);

PseudoFunctor extract_pseudofunctor(const CategoryOver& f, const Cleavage& k);

// Fibers of F and of the total category of its extracted pseudo-functor are
// isomorphic over every base object.
bool roundtrip_check(const CategoryOver& f);
bool roundtrip_check(const CategoryOver& f, const Cleavage& k);

bool fiberwise_isomorphic(const PseudoFunctor& a, const PseudoFunctor& b);

}  // namespace trimod
