#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trimod/verdict.hpp"

namespace trimod {

// Objects and morphisms of a finite category are dense indices into the
// category's tables. Equality of morphisms is equality of indices.
using Obj = int;
using Mor = int;
inline constexpr int kNone = -1;

// Category description as it appears in files: string ids everywhere.
// Composites involving an identity may be omitted from `compose`.
struct RawCategory {
  struct Arrow {
    std::string id;
    std::string source;
    std::string target;
  };
  struct Composite {
    std::string outer;  // g
    std::string inner;  // f
    std::string result; // g o f
  };
  std::vector<std::string> objects;
  std::vector<Arrow> morphisms;
  std::map<std::string, std::string> identities;
  std::vector<Composite> compose;
};

class CategoryError : public std::runtime_error {
 public:
  enum class Kind {
    Malformed,
    UnknownObject,
    MissingIdentity,
    IdentityLaw,
    IllTypedComposite,
    MissingComposite,
    NonAssociative,
  };

  CategoryError(Kind kind, const std::string& message, std::vector<std::string> witnesses = {});

  Kind kind() const noexcept { return kind_; }
  const std::vector<std::string>& witnesses() const noexcept { return witnesses_; }

 private:
  Kind kind_;
  std::vector<std::string> witnesses_;
};

std::string_view to_string(CategoryError::Kind kind);

struct ArrowSpec {
  std::string id;
  Obj source;
  Obj target;
};

class FinCat;

// Index-level construction. `compose(g, f)` is called for every composable
// pair whose composite is not forced by an identity law.
FinCat build_category(std::vector<std::string> objects, std::vector<ArrowSpec> morphisms,
                      std::vector<Mor> identities, const std::function<Mor(Mor, Mor)>& compose);

FinCat validate_category(const RawCategory& raw);

class FinCat {
 public:
  FinCat() = default;

  int object_count() const { return static_cast<int>(objects_.size()); }
  int morphism_count() const { return static_cast<int>(arrows_.size()); }

  const std::string& object_name(Obj x) const { return objects_.at(x); }
  const std::string& morphism_name(Mor m) const { return arrows_.at(m).id; }
  Obj source(Mor m) const { return arrows_[m].source; }
  Obj target(Mor m) const { return arrows_[m].target; }
  Mor identity(Obj x) const { return identities_[x]; }
  bool is_identity(Mor m) const { return identities_[arrows_[m].source] == m; }

  // g o f, or kNone when target(f) != source(g).
  Mor compose(Mor g, Mor f) const {
    return table_[static_cast<std::size_t>(g) * arrows_.size() + f];
  }
  bool composable(Mor g, Mor f) const { return arrows_[f].target == arrows_[g].source; }

  std::span<const Mor> hom(Obj a, Obj b) const {
    return homs_[static_cast<std::size_t>(a) * objects_.size() + b];
  }

  std::optional<Mor> inverse(Mor m) const {
    return inverses_[m] == kNone ? std::nullopt : std::optional<Mor>(inverses_[m]);
  }
  bool is_iso(Mor m) const { return inverses_[m] != kNone; }

  std::optional<Obj> find_object(std::string_view name) const;
  std::optional<Mor> find_morphism(std::string_view name) const;

  RawCategory to_raw() const;

  friend bool operator==(const FinCat& a, const FinCat& b);

 private:
  friend FinCat build_category(std::vector<std::string>, std::vector<ArrowSpec>, std::vector<Mor>,
                               const std::function<Mor(Mor, Mor)>&);
  friend FinCat validate_category(const RawCategory&);
  friend struct Subcategory restrict_category(const FinCat&, const std::vector<bool>&,
                                              const std::vector<bool>&);

  static FinCat from_table(std::vector<std::string> objects, std::vector<ArrowSpec> arrows,
                           std::vector<Mor> identities, std::vector<Mor> table);

  std::vector<std::string> objects_;
  std::vector<ArrowSpec> arrows_;
  std::vector<Mor> identities_;
  std::vector<Mor> table_;
  std::vector<std::vector<Mor>> homs_;
  std::vector<Mor> inverses_;
  std::unordered_map<std::string, Obj> object_index_;
  std::unordered_map<std::string, Mor> morphism_index_;
};

struct Functor {
  std::vector<Obj> on_objects;
  std::vector<Mor> on_morphisms;

  friend bool operator==(const Functor&, const Functor&) = default;
  friend auto operator<=>(const Functor&, const Functor&) = default;
};

Verdict validate_functor(const Functor& functor, const FinCat& source, const FinCat& target);
Functor identity_functor(const FinCat& category);
// outer o inner
Functor compose_functors(const Functor& outer, const Functor& inner);

// A functor F: total -> base, i.e. a category over `base`.
struct CategoryOver {
  FinCat total;
  FinCat base;
  Functor projection;

  Obj over(Obj x) const { return projection.on_objects[x]; }
  Mor over_mor(Mor m) const { return projection.on_morphisms[m]; }
};

CategoryOver identity_over(const FinCat& category);

// A subcategory together with index maps back into its parent.
struct Subcategory {
  FinCat category;
  std::vector<Obj> objects;    // local -> parent
  std::vector<Mor> morphisms;  // local -> parent

  std::optional<Obj> local_object(Obj parent) const;
  std::optional<Mor> local_morphism(Mor parent) const;
};

// Objects and morphisms selected by the masks; the selection must be closed
// under identities and composition (validated).
Subcategory restrict_category(const FinCat& parent, const std::vector<bool>& object_mask,
                              const std::vector<bool>& morphism_mask);

// Throws CategoryError(UnknownObject) for an out-of-range base object.
Subcategory fiber(const CategoryOver& over, Obj base_object);

bool is_groupoid(const FinCat& category);

// Morphisms of the total category lying over `f` with the given target.
std::vector<Mor> lifts_with_target(const CategoryOver& over, Mor f, Obj target);

bool is_cartesian(const CategoryOver& over, Mor lift);

enum class FibrationStatus { GroupoidFibration, Fibered, Neither };
std::string_view to_string(FibrationStatus status);

struct FibrationVerdict {
  FibrationStatus status = FibrationStatus::Neither;
  // Failing (base morphism, total object) pair for a negative verdict.
  std::optional<std::pair<Mor, Obj>> failure;
  std::string reason;
  // Chosen lift per (base morphism, total object over its target).
  std::map<std::pair<Mor, Obj>, Mor> lifts;
};

FibrationVerdict is_fibered(const CategoryOver& over);
FibrationVerdict is_groupoid_fibration(const CategoryOver& over);

class FibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CartesianSubcategory {
  CategoryOver over;  // D_Car -> C
  Functor inclusion;  // D_Car -> D
};

CartesianSubcategory cartesian_subcategory(const CategoryOver& over);

// C/X with its forgetful projection. Objects are named after the structure
// morphism into X.
CategoryOver slice_category(const FinCat& category, Obj x);

// All functors H with P2 o H = P1. Both categories must share the same base.
std::vector<Functor> functor_hom_over(const CategoryOver& first, const CategoryOver& second);

struct PullbackSquare {
  Obj apex = kNone;
  Mor to_left = kNone;   // apex -> source(f)
  Mor to_right = kNone;  // apex -> source(g)

  friend bool operator==(const PullbackSquare&, const PullbackSquare&) = default;
};

bool is_pullback(const FinCat& category, Mor f, Mor g, const PullbackSquare& square);

// Pullback of f and g (same target), least apex name first, then least
// projection names. Empty when no cone is universal.
std::optional<PullbackSquare> pullback(const FinCat& category, Mor f, Mor g);

// Unique h lying over `over` with cartesian o h == g, or kNone.
Mor factor_through(const CategoryOver& category, Mor cartesian, Mor g, Mor over);

// Exhaustive search for functors between two finite categories. `bijective`
// restricts to isomorphisms. The callback returns false to stop.
struct FunctorSearch {
  std::function<bool(Obj, Obj)> object_allowed;
  std::function<bool(Mor, Mor)> morphism_allowed;
  bool bijective = false;
};
void search_functors(const FinCat& source, const FinCat& target, const FunctorSearch& constraints,
                     const std::function<bool(const Functor&)>& visit);

std::optional<Functor> find_isomorphism(const FinCat& a, const FinCat& b);

}  // namespace trimod
