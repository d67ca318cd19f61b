#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "trimod/fincat.hpp"
#include "trimod/grothendieck.hpp"
#include "trimod/verdict.hpp"

namespace trimod {

class DescentError : public std::runtime_error {
 public:
  enum class Kind { MissingPullback, CocycleFails, Malformed };
  DescentError(Kind kind, const std::string& message, std::vector<std::string> witnesses = {})
      : std::runtime_error(message), kind_(kind), witnesses_(std::move(witnesses)) {}
  Kind kind() const noexcept { return kind_; }
  const std::vector<std::string>& witnesses() const noexcept { return witnesses_; }

 private:
  Kind kind_;
  std::vector<std::string> witnesses_;
};

// A covering family {iota_i: U_i -> X}.
struct Covering {
  Obj target = kNone;
  std::vector<Mor> legs;
};

struct FiniteSite {
  FinCat base;
  // Chosen pullback of every cospan (f, g) that has one.
  std::map<std::pair<Mor, Mor>, PullbackSquare> pullbacks;
  // coverings[X] lists the covering families of X.
  std::vector<std::vector<std::vector<Mor>>> coverings;

  // Throws DescentError(MissingPullback).
  const PullbackSquare& pullback_of(Mor f, Mor g) const;
  Covering covering(Obj x, std::size_t index) const { return {x, coverings[x][index]}; }
};

// Computes the chosen pullbacks with the least-name rule; `overrides`
// replaces individual squares and each override is checked to be a pullback.
FiniteSite make_site(FinCat base, std::vector<std::vector<std::vector<Mor>>> coverings,
                     const std::map<std::pair<Mor, Mor>, PullbackSquare>& overrides = {});

// Site of a finite topological space: objects are the opens (inclusions as
// arrows, named "U<V") and the coverings of U are all families of opens
// inside U whose union is U.
FiniteSite open_site(int points, const std::vector<std::pair<std::string, std::vector<int>>>& opens);

struct SiteVerdict {
  Verdict t1;
  Verdict t2;
  Verdict t3;
  bool ok() const { return t1.ok && t2.ok && t3.ok; }
};

SiteVerdict validate_site(const FiniteSite& site);

struct DescentContext {
  CategoryOver fibration;
  Cleavage cleavage;
  FiniteSite site;

  Mor lift(Mor f, Obj y) const { return cleavage.at({f, y}); }
  // Source of the chosen lift: the restriction f^* y.
  Obj restrict(Mor f, Obj y) const { return fibration.total.source(lift(f, y)); }
};

// Objects E_i over U_i and transitions keyed (j, i): alpha_ji is a morphism
// E_i|X_ij -> E_j|X_ij over id of X_ij, where X_ij is the chosen pullback of
// (iota_i, iota_j) and restrictions go along its two projections.
struct DescentDatum {
  Covering covering;
  std::vector<Obj> objects;
  std::map<std::pair<int, int>, Mor> transitions;
};

// The datum (E|U_i, beta_ji) induced by an object E over X.
DescentDatum comparison_datum(const DescentContext& ctx, Obj e, const Covering& covering);

struct CocycleVerdict {
  bool ok = true;
  std::optional<std::tuple<int, int, int>> witness;  // (i, j, k)
  std::string reason;
};

CocycleVerdict check_cocycle(const DescentContext& ctx, const DescentDatum& d);

// Morphisms of descent data: families f_i: E_i -> E'_i over id of U_i
// compatible with the transitions.
std::vector<std::vector<Mor>> descent_morphisms(const DescentContext& ctx, const DescentDatum& from,
                                                const DescentDatum& to, bool isomorphisms_only);

struct EffectiveWitness {
  Obj object = kNone;
  std::vector<Mor> isos;  // alpha_i: E|U_i -> E_i
};

// First witness in lexicographic order (object name, then iso names), or
// nothing. Throws DescentError(CocycleFails) for a datum failing the cocycle.
std::optional<EffectiveWitness> is_effective(const DescentContext& ctx, const DescentDatum& d);
std::vector<EffectiveWitness> effective_witnesses(const DescentContext& ctx, const DescentDatum& d);

// Re-checks alpha_ji = (alpha_j|X_ij) o beta_ji o (alpha_i|X_ij)^-1.
bool check_witness(const DescentContext& ctx, const DescentDatum& d, const EffectiveWitness& w);

// All descent data over a covering satisfying the cocycle condition.
void enumerate_descent_data(const DescentContext& ctx, const Covering& covering,
                            const std::function<bool(const DescentDatum&)>& visit);

enum class StackStatus { Stack, PrestackOnly, Neither };
std::string_view to_string(StackStatus status);

struct StackVerdict {
  StackStatus status = StackStatus::Stack;
  std::string reason;
  std::vector<std::string> witness;
};

// Fully faithful comparison functor on every covering (prestack), and every
// descent datum effective (stack).
StackVerdict stack_verdict(const DescentContext& ctx);

}  // namespace trimod
