#include "trimod/fincat.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace trimod {

CategoryError::CategoryError(Kind kind, const std::string& message,
                             std::vector<std::string> witnesses)
    : std::runtime_error(message), kind_(kind), witnesses_(std::move(witnesses)) {}

std::string_view to_string(CategoryError::Kind kind) {
  switch (kind) {
    case CategoryError::Kind::Malformed: return "Malformed";
    case CategoryError::Kind::UnknownObject: return "UnknownObject";
    case CategoryError::Kind::MissingIdentity: return "MissingIdentity";
    case CategoryError::Kind::IdentityLaw: return "IdentityLaw";
    case CategoryError::Kind::IllTypedComposite: return "IllTypedComposite";
    case CategoryError::Kind::MissingComposite: return "MissingComposite";
    case CategoryError::Kind::NonAssociative: return "NonAssociative";
  }
  return "?";
}

std::string_view to_string(FibrationStatus status) {
  switch (status) {
    case FibrationStatus::GroupoidFibration: return "groupoid-fibration";
    case FibrationStatus::Fibered: return "fibered";
    case FibrationStatus::Neither: return "neither";
  }
  return "?";
}

namespace {

using Kind = CategoryError::Kind;

[[noreturn]] void fail(Kind kind, const std::string& message, std::vector<std::string> witnesses) {
  throw CategoryError(kind, std::string(to_string(kind)) + ": " + message, std::move(witnesses));
}

// Checks identity typing, totality and the unit and associativity laws on a
// fully indexed table. Throws the first violation found.
void check_axioms(const std::vector<std::string>& objects, const std::vector<ArrowSpec>& arrows,
                  const std::vector<Mor>& identities, const std::vector<Mor>& table) {
  const auto n = arrows.size();
  for (std::size_t x = 0; x < objects.size(); ++x) {
    const Mor id = identities[x];
    if (id == kNone || arrows[id].source != static_cast<Obj>(x) ||
        arrows[id].target != static_cast<Obj>(x)) {
      fail(Kind::MissingIdentity, "object '" + objects[x] + "' has no identity", {objects[x]});
    }
  }
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t f = 0; f < n; ++f) {
      const Mor gf = table[g * n + f];
      const bool composable = arrows[f].target == arrows[g].source;
      if (!composable) {
        if (gf != kNone) {
          fail(Kind::IllTypedComposite, "composite given for non-composable pair",
               {arrows[g].id, arrows[f].id});
        }
        continue;
      }
      if (gf == kNone) {
        fail(Kind::MissingComposite, "no composite for composable pair",
             {arrows[g].id, arrows[f].id});
      }
      if (arrows[gf].source != arrows[f].source || arrows[gf].target != arrows[g].target) {
        fail(Kind::IllTypedComposite, "composite has the wrong source or target",
             {arrows[g].id, arrows[f].id});
      }
    }
  }
  for (std::size_t f = 0; f < n; ++f) {
    const Mor left = identities[arrows[f].target];
    const Mor right = identities[arrows[f].source];
    if (table[left * n + f] != static_cast<Mor>(f) || table[f * n + right] != static_cast<Mor>(f)) {
      fail(Kind::IdentityLaw, "identity law fails", {arrows[f].id});
    }
  }
  for (std::size_t f = 0; f < n; ++f) {
    for (std::size_t g = 0; g < n; ++g) {
      const Mor gf = table[g * n + f];
      if (gf == kNone) continue;
      for (std::size_t h = 0; h < n; ++h) {
        const Mor hg = table[h * n + g];
        if (hg == kNone) continue;
        if (table[h * n + gf] != table[hg * n + f]) {
          fail(Kind::NonAssociative, "h o (g o f) != (h o g) o f",
               {arrows[h].id, arrows[g].id, arrows[f].id});
        }
      }
    }
  }
}

}  // namespace

FinCat FinCat::from_table(std::vector<std::string> objects, std::vector<ArrowSpec> arrows,
                          std::vector<Mor> identities, std::vector<Mor> table) {
  check_axioms(objects, arrows, identities, table);
  FinCat c;
  c.objects_ = std::move(objects);
  c.arrows_ = std::move(arrows);
  c.identities_ = std::move(identities);
  c.table_ = std::move(table);
  const auto no = c.objects_.size();
  const auto nm = c.arrows_.size();
  c.homs_.assign(no * no, {});
  for (std::size_t m = 0; m < nm; ++m) {
    c.homs_[static_cast<std::size_t>(c.arrows_[m].source) * no + c.arrows_[m].target].push_back(
        static_cast<Mor>(m));
  }
  c.inverses_.assign(nm, kNone);
  for (std::size_t m = 0; m < nm; ++m) {
    const auto& a = c.arrows_[m];
    for (Mor k : c.hom(a.target, a.source)) {
      if (c.compose(k, static_cast<Mor>(m)) == c.identities_[a.source] &&
          c.compose(static_cast<Mor>(m), k) == c.identities_[a.target]) {
        c.inverses_[m] = k;
        break;
      }
    }
  }
  for (std::size_t x = 0; x < no; ++x) c.object_index_.emplace(c.objects_[x], static_cast<Obj>(x));
  for (std::size_t m = 0; m < nm; ++m) c.morphism_index_.emplace(c.arrows_[m].id, static_cast<Mor>(m));
  return c;
}

FinCat build_category(std::vector<std::string> objects, std::vector<ArrowSpec> morphisms,
                      std::vector<Mor> identities, const std::function<Mor(Mor, Mor)>& compose) {
  const auto n = morphisms.size();
  std::vector<Mor> table(n * n, kNone);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t f = 0; f < n; ++f) {
      if (morphisms[f].target != morphisms[g].source) continue;
      Mor result;
      if (identities[morphisms[g].source] == static_cast<Mor>(g)) {
        result = static_cast<Mor>(f);
      } else if (identities[morphisms[f].source] == static_cast<Mor>(f)) {
        result = static_cast<Mor>(g);
      } else {
        result = compose(static_cast<Mor>(g), static_cast<Mor>(f));
      }
      table[g * n + f] = result;
    }
  }
  return FinCat::from_table(std::move(objects), std::move(morphisms), std::move(identities),
                            std::move(table));
}

FinCat validate_category(const RawCategory& raw) {
  std::unordered_map<std::string, Obj> objects;
  for (const auto& name : raw.objects) {
    if (!objects.emplace(name, static_cast<Obj>(objects.size())).second) {
      fail(Kind::Malformed, "duplicate object id '" + name + "'", {name});
    }
  }
  std::unordered_map<std::string, Mor> morphisms;
  std::vector<ArrowSpec> arrows;
  for (const auto& a : raw.morphisms) {
    auto s = objects.find(a.source);
    auto t = objects.find(a.target);
    if (s == objects.end() || t == objects.end()) {
      fail(Kind::Malformed, "morphism '" + a.id + "' references an unknown object", {a.id});
    }
    if (!morphisms.emplace(a.id, static_cast<Mor>(arrows.size())).second) {
      fail(Kind::Malformed, "duplicate morphism id '" + a.id + "'", {a.id});
    }
    arrows.push_back({a.id, s->second, t->second});
  }
  std::vector<Mor> identities(raw.objects.size(), kNone);
  for (const auto& [object, morphism] : raw.identities) {
    auto o = objects.find(object);
    if (o == objects.end()) {
      fail(Kind::Malformed, "identity given for unknown object '" + object + "'", {object});
    }
    auto m = morphisms.find(morphism);
    if (m != morphisms.end()) identities[o->second] = m->second;
  }
  for (std::size_t x = 0; x < raw.objects.size(); ++x) {
    const Mor id = identities[x];
    if (id == kNone || arrows[id].source != static_cast<Obj>(x) ||
        arrows[id].target != static_cast<Obj>(x)) {
      fail(Kind::MissingIdentity, "object '" + raw.objects[x] + "' has no identity",
           {raw.objects[x]});
    }
  }
  const auto n = arrows.size();
  std::vector<Mor> table(n * n, kNone);
  for (const auto& c : raw.compose) {
    auto g = morphisms.find(c.outer);
    auto f = morphisms.find(c.inner);
    auto gf = morphisms.find(c.result);
    if (g == morphisms.end() || f == morphisms.end() || gf == morphisms.end()) {
      fail(Kind::Malformed, "composite references an unknown morphism",
           {c.outer, c.inner, c.result});
    }
    const auto& ga = arrows[g->second];
    const auto& fa = arrows[f->second];
    const auto& ra = arrows[gf->second];
    if (fa.target != ga.source || ra.source != fa.source || ra.target != ga.target) {
      fail(Kind::IllTypedComposite, "'" + c.outer + " o " + c.inner + "' is ill-typed",
           {c.outer, c.inner});
    }
    Mor& slot = table[static_cast<std::size_t>(g->second) * n + f->second];
    if (slot != kNone && slot != gf->second) {
      fail(Kind::IllTypedComposite, "'" + c.outer + " o " + c.inner + "' given twice",
           {c.outer, c.inner});
    }
    slot = gf->second;
  }
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t f = 0; f < n; ++f) {
      if (arrows[f].target != arrows[g].source || table[g * n + f] != kNone) continue;
      if (identities[arrows[g].source] == static_cast<Mor>(g)) {
        table[g * n + f] = static_cast<Mor>(f);
      } else if (identities[arrows[f].source] == static_cast<Mor>(f)) {
        table[g * n + f] = static_cast<Mor>(g);
      }
    }
  }
  return FinCat::from_table(raw.objects, std::move(arrows), std::move(identities),
                            std::move(table));
}

std::optional<Obj> FinCat::find_object(std::string_view name) const {
  auto it = object_index_.find(std::string(name));
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Mor> FinCat::find_morphism(std::string_view name) const {
  auto it = morphism_index_.find(std::string(name));
  if (it == morphism_index_.end()) return std::nullopt;
  return it->second;
}

RawCategory FinCat::to_raw() const {
  RawCategory raw;
  raw.objects = objects_;
  for (const auto& a : arrows_) {
    raw.morphisms.push_back({a.id, objects_[a.source], objects_[a.target]});
  }
  for (std::size_t x = 0; x < objects_.size(); ++x) {
    raw.identities[objects_[x]] = arrows_[identities_[x]].id;
  }
  const auto n = arrows_.size();
  for (std::size_t g = 0; g < n; ++g) {
    if (is_identity(static_cast<Mor>(g))) continue;
    for (std::size_t f = 0; f < n; ++f) {
      if (is_identity(static_cast<Mor>(f))) continue;
      const Mor gf = table_[g * n + f];
      if (gf != kNone) raw.compose.push_back({arrows_[g].id, arrows_[f].id, arrows_[gf].id});
    }
  }
  return raw;
}

bool operator==(const FinCat& a, const FinCat& b) {
  if (a.objects_ != b.objects_ || a.identities_ != b.identities_ || a.table_ != b.table_) {
    return false;
  }
  if (a.arrows_.size() != b.arrows_.size()) return false;
  for (std::size_t m = 0; m < a.arrows_.size(); ++m) {
    const auto& x = a.arrows_[m];
    const auto& y = b.arrows_[m];
    if (x.id != y.id || x.source != y.source || x.target != y.target) return false;
  }
  return true;
}

Verdict validate_functor(const Functor& functor, const FinCat& source, const FinCat& target) {
  if (functor.on_objects.size() != static_cast<std::size_t>(source.object_count()) ||
      functor.on_morphisms.size() != static_cast<std::size_t>(source.morphism_count())) {
    return Verdict::fail("functor tables do not cover the source category");
  }
  for (Obj x = 0; x < source.object_count(); ++x) {
    const Obj y = functor.on_objects[x];
    if (y < 0 || y >= target.object_count()) {
      return Verdict::fail("object mapped outside the target", {source.object_name(x)});
    }
  }
  for (Mor m = 0; m < source.morphism_count(); ++m) {
    const Mor fm = functor.on_morphisms[m];
    if (fm < 0 || fm >= target.morphism_count()) {
      return Verdict::fail("morphism mapped outside the target", {source.morphism_name(m)});
    }
    if (target.source(fm) != functor.on_objects[source.source(m)] ||
        target.target(fm) != functor.on_objects[source.target(m)]) {
      return Verdict::fail("source or target not preserved", {source.morphism_name(m)});
    }
  }
  for (Obj x = 0; x < source.object_count(); ++x) {
    if (functor.on_morphisms[source.identity(x)] != target.identity(functor.on_objects[x])) {
      return Verdict::fail("identity not preserved", {source.object_name(x)});
    }
  }
  for (Mor g = 0; g < source.morphism_count(); ++g) {
    for (Mor f = 0; f < source.morphism_count(); ++f) {
      const Mor gf = source.compose(g, f);
      if (gf == kNone) continue;
      if (target.compose(functor.on_morphisms[g], functor.on_morphisms[f]) !=
          functor.on_morphisms[gf]) {
        return Verdict::fail("composition not preserved",
                             {source.morphism_name(g), source.morphism_name(f)});
      }
    }
  }
  return Verdict::pass();
}

Functor identity_functor(const FinCat& category) {
  Functor f;
  f.on_objects.resize(category.object_count());
  f.on_morphisms.resize(category.morphism_count());
  std::iota(f.on_objects.begin(), f.on_objects.end(), 0);
  std::iota(f.on_morphisms.begin(), f.on_morphisms.end(), 0);
  return f;
}

Functor compose_functors(const Functor& outer, const Functor& inner) {
  Functor f;
  for (Obj x : inner.on_objects) f.on_objects.push_back(outer.on_objects[x]);
  for (Mor m : inner.on_morphisms) f.on_morphisms.push_back(outer.on_morphisms[m]);
  return f;
}

CategoryOver identity_over(const FinCat& category) {
  return {category, category, identity_functor(category)};
}

std::optional<Obj> Subcategory::local_object(Obj parent) const {
  auto it = std::find(objects.begin(), objects.end(), parent);
  if (it == objects.end()) return std::nullopt;
  return static_cast<Obj>(it - objects.begin());
}

std::optional<Mor> Subcategory::local_morphism(Mor parent) const {
  auto it = std::find(morphisms.begin(), morphisms.end(), parent);
  if (it == morphisms.end()) return std::nullopt;
  return static_cast<Mor>(it - morphisms.begin());
}

Subcategory restrict_category(const FinCat& parent, const std::vector<bool>& object_mask,
                              const std::vector<bool>& morphism_mask) {
  Subcategory sub;
  std::vector<Obj> object_local(parent.object_count(), kNone);
  std::vector<Mor> morphism_local(parent.morphism_count(), kNone);
  std::vector<std::string> names;
  for (Obj x = 0; x < parent.object_count(); ++x) {
    if (!object_mask[x]) continue;
    object_local[x] = static_cast<Obj>(sub.objects.size());
    sub.objects.push_back(x);
    names.push_back(parent.object_name(x));
  }
  std::vector<ArrowSpec> arrows;
  for (Mor m = 0; m < parent.morphism_count(); ++m) {
    if (!morphism_mask[m]) continue;
    const Obj s = object_local[parent.source(m)];
    const Obj t = object_local[parent.target(m)];
    if (s == kNone || t == kNone) {
      fail(Kind::Malformed, "subcategory morphism leaves the object selection",
           {parent.morphism_name(m)});
    }
    morphism_local[m] = static_cast<Mor>(sub.morphisms.size());
    sub.morphisms.push_back(m);
    arrows.push_back({parent.morphism_name(m), s, t});
  }
  std::vector<Mor> identities;
  for (Obj x : sub.objects) identities.push_back(morphism_local[parent.identity(x)]);
  const auto n = sub.morphisms.size();
  std::vector<Mor> table(n * n, kNone);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t f = 0; f < n; ++f) {
      const Mor gf = parent.compose(sub.morphisms[g], sub.morphisms[f]);
      if (gf == kNone) continue;
      if (morphism_local[gf] == kNone) {
        fail(Kind::MissingComposite, "subcategory is not closed under composition",
             {parent.morphism_name(sub.morphisms[g]), parent.morphism_name(sub.morphisms[f])});
      }
      table[g * n + f] = morphism_local[gf];
    }
  }
  sub.category = FinCat::from_table(std::move(names), std::move(arrows), std::move(identities),
                                    std::move(table));
  return sub;
}

Subcategory fiber(const CategoryOver& over, Obj base_object) {
  if (base_object < 0 || base_object >= over.base.object_count()) {
    throw CategoryError(Kind::UnknownObject, "UnknownObject: base object index out of range");
  }
  const Mor id = over.base.identity(base_object);
  std::vector<bool> objects(over.total.object_count(), false);
  std::vector<bool> morphisms(over.total.morphism_count(), false);
  for (Obj x = 0; x < over.total.object_count(); ++x) objects[x] = over.over(x) == base_object;
  for (Mor m = 0; m < over.total.morphism_count(); ++m) morphisms[m] = over.over_mor(m) == id;
  return restrict_category(over.total, objects, morphisms);
}

bool is_groupoid(const FinCat& category) {
  for (Mor m = 0; m < category.morphism_count(); ++m) {
    if (!category.is_iso(m)) return false;
  }
  return true;
}

std::vector<Mor> lifts_with_target(const CategoryOver& over, Mor f, Obj target) {
  std::vector<Mor> out;
  const Obj x = over.base.source(f);
  for (Obj s = 0; s < over.total.object_count(); ++s) {
    if (over.over(s) != x) continue;
    for (Mor m : over.total.hom(s, target)) {
      if (over.over_mor(m) == f) out.push_back(m);
    }
  }
  std::sort(out.begin(), out.end(), [&](Mor a, Mor b) {
    return over.total.morphism_name(a) < over.total.morphism_name(b);
  });
  return out;
}

bool is_cartesian(const CategoryOver& over, Mor lift) {
  const FinCat& d = over.total;
  const FinCat& c = over.base;
  const Mor f = over.over_mor(lift);
  const Obj x_lift = d.source(lift);
  const Obj y_lift = d.target(lift);
  const Obj x = c.source(f);
  for (Obj z_lift = 0; z_lift < d.object_count(); ++z_lift) {
    const Obj z = over.over(z_lift);
    for (Mor g_lift : d.hom(z_lift, y_lift)) {
      const Mor g = over.over_mor(g_lift);
      for (Mor h : c.hom(z, x)) {
        if (c.compose(f, h) != g) continue;
        int count = 0;
        for (Mor h_lift : d.hom(z_lift, x_lift)) {
          if (over.over_mor(h_lift) == h && d.compose(lift, h_lift) == g_lift) ++count;
        }
        if (count != 1) return false;
      }
    }
  }
  return true;
}

FibrationVerdict is_fibered(const CategoryOver& over) {
  FibrationVerdict verdict;
  verdict.status = FibrationStatus::Fibered;
  for (Mor f = 0; f < over.base.morphism_count(); ++f) {
    const Obj y = over.base.target(f);
    for (Obj y_lift = 0; y_lift < over.total.object_count(); ++y_lift) {
      if (over.over(y_lift) != y) continue;
      Mor chosen = kNone;
      for (Mor candidate : lifts_with_target(over, f, y_lift)) {
        if (is_cartesian(over, candidate)) {
          chosen = candidate;
          break;
        }
      }
      if (chosen == kNone) {
        return FibrationVerdict{FibrationStatus::Neither,
                                std::make_pair(f, y_lift),
                                "no cartesian lift of " + over.base.morphism_name(f) + " to " +
                                    over.total.object_name(y_lift),
                                {}};
      }
      verdict.lifts[{f, y_lift}] = chosen;
    }
  }
  return verdict;
}

FibrationVerdict is_groupoid_fibration(const CategoryOver& over) {
  const FinCat& d = over.total;
  FibrationVerdict verdict;
  verdict.status = FibrationStatus::GroupoidFibration;
  auto negative = [&](Mor f, Obj y_lift, std::string reason) {
    FibrationVerdict v;
    v.status = is_fibered(over).status == FibrationStatus::Neither ? FibrationStatus::Neither
                                                                   : FibrationStatus::Fibered;
    v.failure = std::make_pair(f, y_lift);
    v.reason = std::move(reason);
    return v;
  };
  for (Mor f = 0; f < over.base.morphism_count(); ++f) {
    const Obj y = over.base.target(f);
    const Mor id_x = over.base.identity(over.base.source(f));
    for (Obj y_lift = 0; y_lift < d.object_count(); ++y_lift) {
      if (over.over(y_lift) != y) continue;
      const auto candidates = lifts_with_target(over, f, y_lift);
      if (candidates.empty()) {
        return negative(f, y_lift,
                        "no lift of " + over.base.morphism_name(f) + " to " + d.object_name(y_lift));
      }
      // Any lift can serve as the reference once the others factor through it
      // by unique isomorphisms; the least one is recorded.
      const Mor reference = candidates.front();
      for (Mor other : candidates) {
        int isos = 0;
        for (Mor a : d.hom(d.source(other), d.source(reference))) {
          if (over.over_mor(a) == id_x && d.is_iso(a) && d.compose(reference, a) == other) ++isos;
        }
        if (isos != 1) {
          return negative(f, y_lift,
                          "lift " + d.morphism_name(other) + " is not related to " +
                              d.morphism_name(reference) + " by a unique isomorphism");
        }
      }
      verdict.lifts[{f, y_lift}] = reference;
    }
  }
  return verdict;
}

CartesianSubcategory cartesian_subcategory(const CategoryOver& over) {
  const auto fibered = is_fibered(over);
  if (fibered.status == FibrationStatus::Neither) {
    throw FibrationError("NotFibered: " + fibered.reason);
  }
  std::vector<bool> objects(over.total.object_count(), true);
  std::vector<bool> morphisms(over.total.morphism_count(), false);
  for (Mor m = 0; m < over.total.morphism_count(); ++m) morphisms[m] = is_cartesian(over, m);
  Subcategory sub = restrict_category(over.total, objects, morphisms);
  CartesianSubcategory out;
  out.inclusion.on_objects = sub.objects;
  out.inclusion.on_morphisms = sub.morphisms;
  out.over.projection = compose_functors(over.projection, out.inclusion);
  out.over.total = std::move(sub.category);
  out.over.base = over.base;
  return out;
}

CategoryOver slice_category(const FinCat& category, Obj x) {
  if (x < 0 || x >= category.object_count()) {
    throw CategoryError(Kind::UnknownObject, "UnknownObject: slice over unknown object");
  }
  std::vector<Mor> structure;  // slice object -> structure morphism into x
  for (Mor a = 0; a < category.morphism_count(); ++a) {
    if (category.target(a) == x) structure.push_back(a);
  }
  const auto n = structure.size();
  std::vector<std::string> names;
  for (Mor a : structure) names.push_back(category.morphism_name(a));

  struct Triangle {
    Mor h;
    Obj from;
    Obj to;
  };
  std::vector<Triangle> triangles;
  std::map<std::tuple<Mor, Obj, Obj>, Mor> index;
  std::vector<ArrowSpec> arrows;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Mor sa = structure[a];
      const Mor sb = structure[b];
      for (Mor h : category.hom(category.source(sa), category.source(sb))) {
        if (category.compose(sb, h) != sa) continue;
        index[{h, static_cast<Obj>(a), static_cast<Obj>(b)}] = static_cast<Mor>(triangles.size());
        triangles.push_back({h, static_cast<Obj>(a), static_cast<Obj>(b)});
        arrows.push_back({"[" + category.morphism_name(h) + ":" + names[a] + "->" + names[b] + "]",
                          static_cast<Obj>(a), static_cast<Obj>(b)});
      }
    }
  }
  std::vector<Mor> identities;
  for (std::size_t a = 0; a < n; ++a) {
    identities.push_back(
        index.at({category.identity(category.source(structure[a])), static_cast<Obj>(a),
                  static_cast<Obj>(a)}));
  }
  CategoryOver out;
  out.total = build_category(names, arrows, identities, [&](Mor g, Mor f) {
    const auto& tg = triangles[g];
    const auto& tf = triangles[f];
    return index.at({category.compose(tg.h, tf.h), tf.from, tg.to});
  });
  out.base = category;
  for (Mor a : structure) out.projection.on_objects.push_back(category.source(a));
  for (const auto& t : triangles) out.projection.on_morphisms.push_back(t.h);
  return out;
}

namespace {

std::vector<Obj> connectivity_order(const FinCat& c) {
  const int n = c.object_count();
  std::vector<int> degree(n, 0);
  for (Mor m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m)) continue;
    ++degree[c.source(m)];
    ++degree[c.target(m)];
  }
  std::vector<Obj> order;
  std::vector<bool> placed(n, false);
  for (int step = 0; step < n; ++step) {
    Obj best = kNone;
    int best_links = -1;
    for (Obj x = 0; x < n; ++x) {
      if (placed[x]) continue;
      int links = 0;
      for (Obj y : order) {
        links += static_cast<int>(c.hom(x, y).size() + c.hom(y, x).size());
      }
      if (links > best_links || (links == best_links && degree[x] > degree[best])) {
        best = x;
        best_links = links;
      }
    }
    placed[best] = true;
    order.push_back(best);
  }
  return order;
}

class FunctorSearcher {
 public:
  FunctorSearcher(const FinCat& s, const FinCat& t, const FunctorSearch& c,
                  const std::function<bool(const Functor&)>& visit)
      : s_(s), t_(t), c_(c), visit_(visit) {
    current_.on_objects.assign(s.object_count(), kNone);
    current_.on_morphisms.assign(s.morphism_count(), kNone);
    used_objects_.assign(t.object_count(), false);
    used_morphisms_.assign(t.morphism_count(), false);
    order_ = connectivity_order(s);
    out_of_.resize(s.object_count());
    into_.resize(s.object_count());
    factorizations_.resize(s.morphism_count());
    for (Mor m = 0; m < s.morphism_count(); ++m) {
      out_of_[s.source(m)].push_back(m);
      into_[s.target(m)].push_back(m);
      if (!s.is_identity(m)) free_morphisms_.push_back(m);
    }
    for (Mor g = 0; g < s.morphism_count(); ++g) {
      for (Mor f = 0; f < s.morphism_count(); ++f) {
        const Mor gf = s.compose(g, f);
        if (gf != kNone) factorizations_[gf].emplace_back(g, f);
      }
    }
  }

  void run() {
    if (c_.bijective && (s_.object_count() != t_.object_count() ||
                         s_.morphism_count() != t_.morphism_count())) {
      return;
    }
    assign_object(0);
  }

 private:
  bool morphism_ok(Mor m, Mor tm) const {
    if (c_.morphism_allowed && !c_.morphism_allowed(m, tm)) return false;
    if (s_.is_identity(m) != t_.is_identity(tm) && (c_.bijective || s_.is_identity(m))) {
      return false;
    }
    return true;
  }

  bool has_candidate(Mor m) const {
    for (Mor tm : t_.hom(current_.on_objects[s_.source(m)], current_.on_objects[s_.target(m)])) {
      if (morphism_ok(m, tm)) return true;
    }
    return false;
  }

  bool assign_object(std::size_t depth) {
    if (depth == order_.size()) return start_morphisms();
    const Obj x = order_[depth];
    for (Obj y = 0; y < t_.object_count(); ++y) {
      if (c_.bijective && used_objects_[y]) continue;
      if (c_.object_allowed && !c_.object_allowed(x, y)) continue;
      current_.on_objects[x] = y;
      bool viable = true;
      for (Mor m : out_of_[x]) {
        if (current_.on_objects[s_.target(m)] != kNone && !has_candidate(m)) viable = false;
      }
      for (Mor m : into_[x]) {
        if (current_.on_objects[s_.source(m)] != kNone && !has_candidate(m)) viable = false;
      }
      if (viable) {
        used_objects_[y] = true;
        const bool keep_going = assign_object(depth + 1);
        used_objects_[y] = false;
        if (!keep_going) {
          current_.on_objects[x] = kNone;
          return false;
        }
      }
      current_.on_objects[x] = kNone;
    }
    return true;
  }

  bool start_morphisms() {
    for (Obj x = 0; x < s_.object_count(); ++x) {
      const Mor id = s_.identity(x);
      const Mor tid = t_.identity(current_.on_objects[x]);
      if (!morphism_ok(id, tid)) return true;
      current_.on_morphisms[id] = tid;
      if (c_.bijective) used_morphisms_[tid] = true;
    }
    const bool keep_going = assign_morphism(0);
    for (Obj x = 0; x < s_.object_count(); ++x) {
      const Mor id = s_.identity(x);
      if (c_.bijective) used_morphisms_[current_.on_morphisms[id]] = false;
      current_.on_morphisms[id] = kNone;
    }
    return keep_going;
  }

  bool consistent(Mor m) const {
    const auto& map = current_.on_morphisms;
    for (Mor f : into_[s_.source(m)]) {
      const Mor mf = s_.compose(m, f);
      if (map[f] != kNone && map[mf] != kNone && t_.compose(map[m], map[f]) != map[mf]) {
        return false;
      }
    }
    for (Mor g : out_of_[s_.target(m)]) {
      const Mor gm = s_.compose(g, m);
      if (map[g] != kNone && map[gm] != kNone && t_.compose(map[g], map[m]) != map[gm]) {
        return false;
      }
    }
    for (const auto& [g, f] : factorizations_[m]) {
      if (map[g] != kNone && map[f] != kNone && t_.compose(map[g], map[f]) != map[m]) {
        return false;
      }
    }
    return true;
  }

  bool assign_morphism(std::size_t depth) {
    if (depth == free_morphisms_.size()) return visit_(current_);
    const Mor m = free_morphisms_[depth];
    for (Mor tm : t_.hom(current_.on_objects[s_.source(m)], current_.on_objects[s_.target(m)])) {
      if (c_.bijective && used_morphisms_[tm]) continue;
      if (!morphism_ok(m, tm)) continue;
      current_.on_morphisms[m] = tm;
      if (consistent(m)) {
        used_morphisms_[tm] = true;
        const bool keep_going = assign_morphism(depth + 1);
        used_morphisms_[tm] = false;
        if (!keep_going) {
          current_.on_morphisms[m] = kNone;
          return false;
        }
      }
      current_.on_morphisms[m] = kNone;
    }
    return true;
  }

  const FinCat& s_;
  const FinCat& t_;
  const FunctorSearch& c_;
  const std::function<bool(const Functor&)>& visit_;
  Functor current_;
  std::vector<bool> used_objects_;
  std::vector<bool> used_morphisms_;
  std::vector<Obj> order_;
  std::vector<std::vector<Mor>> out_of_;
  std::vector<std::vector<Mor>> into_;
  std::vector<std::vector<std::pair<Mor, Mor>>> factorizations_;
  std::vector<Mor> free_morphisms_;
};

struct ObjectSignature {
  std::size_t endomorphisms;
  std::size_t out_degree;
  std::size_t in_degree;
  friend bool operator==(const ObjectSignature&, const ObjectSignature&) = default;
};

ObjectSignature signature(const FinCat& c, Obj x) {
  ObjectSignature s{c.hom(x, x).size(), 0, 0};
  for (Obj y = 0; y < c.object_count(); ++y) {
    s.out_degree += c.hom(x, y).size();
    s.in_degree += c.hom(y, x).size();
  }
  return s;
}

}  // namespace

void search_functors(const FinCat& source, const FinCat& target, const FunctorSearch& constraints,
                     const std::function<bool(const Functor&)>& visit) {
  FunctorSearcher searcher(source, target, constraints, visit);
  searcher.run();
}

std::vector<Functor> functor_hom_over(const CategoryOver& first, const CategoryOver& second) {
  if (first.base.object_count() != second.base.object_count() ||
      first.base.morphism_count() != second.base.morphism_count()) {
    throw CategoryError(Kind::Malformed, "Malformed: categories are over different bases");
  }
  std::vector<Functor> out;
  FunctorSearch constraints;
  constraints.object_allowed = [&](Obj x, Obj y) { return second.over(y) == first.over(x); };
  constraints.morphism_allowed = [&](Mor m, Mor tm) {
    return second.over_mor(tm) == first.over_mor(m);
  };
  search_functors(first.total, second.total, constraints, [&](const Functor& h) {
    out.push_back(h);
    return true;
  });
  return out;
}

bool is_pullback(const FinCat& c, Mor f, Mor g, const PullbackSquare& sq) {
  if (c.target(f) != c.target(g)) return false;
  if (c.source(sq.to_left) != sq.apex || c.source(sq.to_right) != sq.apex ||
      c.target(sq.to_left) != c.source(f) || c.target(sq.to_right) != c.source(g)) {
    return false;
  }
  if (c.compose(f, sq.to_left) != c.compose(g, sq.to_right)) return false;
  for (Obj q = 0; q < c.object_count(); ++q) {
    for (Mor q1 : c.hom(q, c.source(f))) {
      for (Mor q2 : c.hom(q, c.source(g))) {
        if (c.compose(f, q1) != c.compose(g, q2)) continue;
        int count = 0;
        for (Mor u : c.hom(q, sq.apex)) {
          if (c.compose(sq.to_left, u) == q1 && c.compose(sq.to_right, u) == q2) ++count;
        }
        if (count != 1) return false;
      }
    }
  }
  return true;
}

std::optional<PullbackSquare> pullback(const FinCat& c, Mor f, Mor g) {
  if (c.target(f) != c.target(g)) return std::nullopt;
  std::vector<Obj> objects(c.object_count());
  std::iota(objects.begin(), objects.end(), 0);
  std::sort(objects.begin(), objects.end(),
            [&](Obj a, Obj b) { return c.object_name(a) < c.object_name(b); });
  auto by_name = [&](std::span<const Mor> ms) {
    std::vector<Mor> v(ms.begin(), ms.end());
    std::sort(v.begin(), v.end(),
              [&](Mor a, Mor b) { return c.morphism_name(a) < c.morphism_name(b); });
    return v;
  };
  for (Obj p : objects) {
    for (Mor p1 : by_name(c.hom(p, c.source(f)))) {
      for (Mor p2 : by_name(c.hom(p, c.source(g)))) {
        PullbackSquare sq{p, p1, p2};
        if (is_pullback(c, f, g, sq)) return sq;
      }
    }
  }
  return std::nullopt;
}

Mor factor_through(const CategoryOver& category, Mor cartesian, Mor g, Mor over) {
  const FinCat& d = category.total;
  Mor found = kNone;
  for (Mor h : d.hom(d.source(g), d.source(cartesian))) {
    if (category.over_mor(h) != over || d.compose(cartesian, h) != g) continue;
    if (found != kNone) return kNone;
    found = h;
  }
  return found;
}

std::optional<Functor> find_isomorphism(const FinCat& a, const FinCat& b) {
  if (a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count()) {
    return std::nullopt;
  }
  std::vector<ObjectSignature> sa, sb;
  for (Obj x = 0; x < a.object_count(); ++x) sa.push_back(signature(a, x));
  for (Obj y = 0; y < b.object_count(); ++y) sb.push_back(signature(b, y));
  std::optional<Functor> found;
  FunctorSearch constraints;
  constraints.bijective = true;
  constraints.object_allowed = [&](Obj x, Obj y) { return sa[x] == sb[y]; };
  search_functors(a, b, constraints, [&](const Functor& f) {
    found = f;
    return false;
  });
  return found;
}

}  // namespace trimod
