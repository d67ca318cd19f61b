#include "trimod/descent.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "trimod/corpus.hpp"

namespace trimod {

namespace {

using Kind = DescentError::Kind;

std::vector<Mor> canonical(std::vector<Mor> family) {
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  return family;
}

std::string family_name(const FinCat& c, const std::vector<Mor>& family) {
  std::string out = "{";
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (i) out += ",";
    out += c.morphism_name(family[i]);
  }
  return out + "}";
}

std::vector<Obj> objects_over(const CategoryOver& f, Obj x) {
  std::vector<Obj> out;
  for (Obj y = 0; y < f.total.object_count(); ++y)
    if (f.over(y) == x) out.push_back(y);
  std::sort(out.begin(), out.end(), [&](Obj a, Obj b) {
    return f.total.object_name(a) < f.total.object_name(b);
  });
  return out;
}

// Morphisms a -> b lying over `over`, in name order.
std::vector<Mor> morphisms_over(const CategoryOver& f, Obj a, Obj b, Mor over, bool isos) {
  std::vector<Mor> out;
  for (Mor m : f.total.hom(a, b))
    if (f.over_mor(m) == over && (!isos || f.total.is_iso(m))) out.push_back(m);
  std::sort(out.begin(), out.end(), [&](Mor x, Mor y) {
    return f.total.morphism_name(x) < f.total.morphism_name(y);
  });
  return out;
}

Mor factor_or_throw(const CategoryOver& f, Mor cartesian, Mor g, Mor over) {
  const Mor h = factor_through(f, cartesian, g, over);
  if (h == kNone) {
    throw DescentError(Kind::Malformed, "Malformed: no unique factorization through " +
                                            f.total.morphism_name(cartesian));
  }
  return h;
}

// Pullbacks of the covering legs, pairwise and triple-wise. For a triple
// (i, j, k) the apex W is the chosen pullback of (iota_i o pr1_ij, iota_k);
// leg[a] maps W to U_a and q(a, b) is the induced map W -> X_ab.
class CoverGeometry {
 public:
  CoverGeometry(const FiniteSite& site, const Covering& covering)
      : site_(site), covering_(covering), n_(static_cast<int>(covering.legs.size())) {}

  int size() const { return n_; }
  Mor leg(int i) const { return covering_.legs[i]; }
  const PullbackSquare& pair(int i, int j) const { return site_.pullback_of(leg(i), leg(j)); }

  struct Triple {
    Obj apex;
    Mor legs[3];
    Mor q_ji;  // W -> X_ij
    Mor q_jk;  // W -> X_kj
    Mor q_ki;  // W -> X_ik
  };

  const Triple& triple(int i, int j, int k) const {
    auto key = std::make_tuple(i, j, k);
    auto it = triples_.find(key);
    if (it != triples_.end()) return it->second;
    const FinCat& c = site_.base;
    const PullbackSquare& ij = pair(i, j);
    const PullbackSquare& w = site_.pullback_of(c.compose(leg(i), ij.to_left), leg(k));
    Triple t;
    t.apex = w.apex;
    t.legs[0] = c.compose(ij.to_left, w.to_left);
    t.legs[1] = c.compose(ij.to_right, w.to_left);
    t.legs[2] = w.to_right;
    t.q_ji = induced(t.apex, pair(i, j), t.legs[0], t.legs[1]);
    t.q_jk = induced(t.apex, pair(k, j), t.legs[2], t.legs[1]);
    t.q_ki = induced(t.apex, pair(i, k), t.legs[0], t.legs[2]);
    return triples_.emplace(key, t).first->second;
  }

 private:
  Mor induced(Obj w, const PullbackSquare& sq, Mor to_left, Mor to_right) const {
    const FinCat& c = site_.base;
    for (Mor u : c.hom(w, sq.apex)) {
      if (c.compose(sq.to_left, u) == to_left && c.compose(sq.to_right, u) == to_right) return u;
    }
    throw DescentError(Kind::Malformed, "Malformed: triple overlap does not factor");
  }

  const FiniteSite& site_;
  Covering covering_;
  int n_;
  mutable std::map<std::tuple<int, int, int>, Triple> triples_;
};

// alpha: src(c1) -> src(c2) over id for cartesian c1, c2 over the same p;
// returns the unique rho: src(d1) -> src(d2) over id with
// d2 o rho = c2 o alpha o phi, where phi is the factor of d1 through c1 over q.
Mor restrict_along(const DescentContext& ctx, Mor alpha, Mor c1, Mor c2, Mor d1, Mor d2, Mor q) {
  const CategoryOver& f = ctx.fibration;
  const FinCat& d = f.total;
  const Mor phi = factor_or_throw(f, c1, d1, q);
  const Obj w = ctx.site.base.source(q);
  return factor_or_throw(f, d2, d.compose(c2, d.compose(alpha, phi)), ctx.site.base.identity(w));
}

Verdict check_shape(const DescentContext& ctx, const CoverGeometry& g, const DescentDatum& d) {
  const CategoryOver& f = ctx.fibration;
  const int n = g.size();
  if (static_cast<int>(d.objects.size()) != n) return Verdict::fail("object count differs from covering");
  for (int i = 0; i < n; ++i) {
    if (f.over(d.objects[i]) != ctx.site.base.source(g.leg(i))) {
      return Verdict::fail("object does not lie over its open", {std::to_string(i)});
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto it = d.transitions.find({j, i});
      if (it == d.transitions.end()) {
        return Verdict::fail("missing transition", {std::to_string(j) + "," + std::to_string(i)});
      }
      const PullbackSquare& sq = g.pair(i, j);
      const Mor a = it->second;
      if (a < 0 || a >= f.total.morphism_count() ||
          f.total.source(a) != ctx.restrict(sq.to_left, d.objects[i]) ||
          f.total.target(a) != ctx.restrict(sq.to_right, d.objects[j]) ||
          f.over_mor(a) != ctx.site.base.identity(sq.apex) || !f.total.is_iso(a)) {
        return Verdict::fail("transition is not an isomorphism E_i|X_ij -> E_j|X_ij",
                             {std::to_string(j) + "," + std::to_string(i)});
      }
    }
  }
  return Verdict::pass();
}

bool triple_closes(const DescentContext& ctx, const CoverGeometry& g, const DescentDatum& d, int i,
                   int j, int k) {
  const auto& t = g.triple(i, j, k);
  const auto& e = d.objects;
  auto restricted = [&](int to, int from, Mor q, int lfrom, int lto) {
    const PullbackSquare& sq = g.pair(from, to);
    return restrict_along(ctx, d.transitions.at({to, from}), ctx.lift(sq.to_left, e[from]),
                          ctx.lift(sq.to_right, e[to]), ctx.lift(t.legs[lfrom], e[from]),
                          ctx.lift(t.legs[lto], e[to]), q);
  };
  const Mor ji = restricted(j, i, t.q_ji, 0, 1);
  const Mor jk = restricted(j, k, t.q_jk, 2, 1);
  const Mor ki = restricted(k, i, t.q_ki, 0, 2);
  return ctx.fibration.total.compose(jk, ki) == ji;
}

// f_i: E_i -> E'_i restricted to X_ij along pr1 (first) or pr2.
Mor restrict_family_member(const DescentContext& ctx, const PullbackSquare& sq, Mor fi, Obj from,
                           Obj to, bool first) {
  const Mor p = first ? sq.to_left : sq.to_right;
  return factor_or_throw(ctx.fibration, ctx.lift(p, to),
                         ctx.fibration.total.compose(fi, ctx.lift(p, from)),
                         ctx.site.base.identity(sq.apex));
}

bool compatible_pair(const DescentContext& ctx, const CoverGeometry& g, const DescentDatum& from,
                     const DescentDatum& to, const std::vector<Mor>& family, int i, int j) {
  const PullbackSquare& sq = g.pair(i, j);
  const Mor ri = restrict_family_member(ctx, sq, family[i], from.objects[i], to.objects[i], true);
  const Mor rj = restrict_family_member(ctx, sq, family[j], from.objects[j], to.objects[j], false);
  const FinCat& d = ctx.fibration.total;
  return d.compose(to.transitions.at({j, i}), ri) == d.compose(rj, from.transitions.at({j, i}));
}

void search_morphisms(const DescentContext& ctx, const CoverGeometry& g, const DescentDatum& from,
                      const DescentDatum& to, bool isos,
                      const std::function<bool(const std::vector<Mor>&)>& visit) {
  const int n = g.size();
  std::vector<std::vector<Mor>> candidates;
  for (int i = 0; i < n; ++i) {
    candidates.push_back(morphisms_over(ctx.fibration, from.objects[i], to.objects[i],
                                        ctx.site.base.identity(ctx.site.base.source(g.leg(i))),
                                        isos));
  }
  std::vector<Mor> family(n, kNone);
  std::function<bool(int)> step = [&](int i) {
    if (i == n) return visit(family);
    for (Mor m : candidates[i]) {
      family[i] = m;
      bool ok = true;
      for (int j = 0; j <= i && ok; ++j) {
        ok = compatible_pair(ctx, g, from, to, family, i, j) &&
             compatible_pair(ctx, g, from, to, family, j, i);
      }
      if (ok && !step(i + 1)) return false;
    }
    family[i] = kNone;
    return true;
  };
  step(0);
}

}  // namespace

const PullbackSquare& FiniteSite::pullback_of(Mor f, Mor g) const {
  auto it = pullbacks.find({f, g});
  if (it == pullbacks.end()) {
    throw DescentError(Kind::MissingPullback,
                       "MissingPullback: " + base.morphism_name(f) + ", " + base.morphism_name(g),
                       {base.morphism_name(f), base.morphism_name(g)});
  }
  return it->second;
}

FiniteSite make_site(FinCat base, std::vector<std::vector<std::vector<Mor>>> coverings,
                     const std::map<std::pair<Mor, Mor>, PullbackSquare>& overrides) {
  FiniteSite site;
  site.base = std::move(base);
  site.coverings = std::move(coverings);
  site.coverings.resize(site.base.object_count());
  const FinCat& c = site.base;
  for (Mor f = 0; f < c.morphism_count(); ++f) {
    for (Mor g = 0; g < c.morphism_count(); ++g) {
      if (c.target(f) != c.target(g)) continue;
      if (auto sq = pullback(c, f, g)) site.pullbacks[{f, g}] = *sq;
    }
  }
  for (const auto& [key, sq] : overrides) {
    if (!is_pullback(c, key.first, key.second, sq)) {
      throw DescentError(Kind::Malformed, "Malformed: chosen square is not a pullback",
                         {c.morphism_name(key.first), c.morphism_name(key.second)});
    }
    site.pullbacks[key] = sq;
  }
  return site;
}

FiniteSite open_site(int points, const std::vector<std::pair<std::string, std::vector<int>>>& opens) {
  const int n = static_cast<int>(opens.size());
  std::vector<std::set<int>> sets;
  std::vector<std::string> names;
  for (const auto& [name, members] : opens) {
    for (int p : members) {
      if (p < 0 || p >= points) throw DescentError(Kind::Malformed, "Malformed: point out of range");
    }
    sets.emplace_back(members.begin(), members.end());
    names.push_back(name);
  }
  auto subset = [&](int a, int b) {
    return std::includes(sets[b].begin(), sets[b].end(), sets[a].begin(), sets[a].end());
  };
  FinCat base = corpus::thin_category(names, subset);
  std::vector<std::vector<std::vector<Mor>>> coverings(n);
  for (int v = 0; v < n; ++v) {
    std::vector<int> inside;
    for (int u = 0; u < n; ++u)
      if (subset(u, v)) inside.push_back(u);
    for (unsigned mask = 0; mask < (1u << inside.size()); ++mask) {
      std::set<int> covered;
      std::vector<Mor> legs;
      for (std::size_t b = 0; b < inside.size(); ++b) {
        if (!(mask >> b & 1u)) continue;
        covered.insert(sets[inside[b]].begin(), sets[inside[b]].end());
        legs.push_back(base.hom(inside[b], v).front());
      }
      if (covered == sets[v]) coverings[v].push_back(std::move(legs));
    }
  }
  return make_site(std::move(base), std::move(coverings));
}

SiteVerdict validate_site(const FiniteSite& site) {
  const FinCat& c = site.base;
  std::vector<std::set<std::vector<Mor>>> known(c.object_count());
  for (Obj x = 0; x < c.object_count(); ++x)
    for (const auto& fam : site.coverings[x]) known[x].insert(canonical(fam));

  SiteVerdict v;
  for (Mor f = 0; f < c.morphism_count() && v.t1.ok; ++f) {
    if (c.is_iso(f) && !known[c.target(f)].count({f})) {
      v.t1 = Verdict::fail("isomorphism is not a singleton covering", {c.morphism_name(f)});
    }
  }
  for (Obj x = 0; x < c.object_count() && v.t2.ok; ++x) {
    for (const auto& fam : site.coverings[x]) {
      for (Mor f = 0; f < c.morphism_count() && v.t2.ok; ++f) {
        if (c.target(f) != x) continue;
        std::vector<Mor> pulled;
        for (Mor leg : fam) pulled.push_back(site.pullback_of(f, leg).to_left);
        if (!known[c.source(f)].count(canonical(pulled))) {
          v.t2 = Verdict::fail("pullback of a covering is not a covering",
                               {family_name(c, fam), c.morphism_name(f)});
        }
      }
      if (!v.t2.ok) break;
    }
  }
  for (Obj x = 0; x < c.object_count() && v.t3.ok; ++x) {
    for (const auto& fam : site.coverings[x]) {
      std::vector<std::size_t> choice(fam.size(), 0);
      bool exhausted = false;
      for (const Mor leg : fam) exhausted = exhausted || site.coverings[c.source(leg)].empty();
      while (!exhausted && v.t3.ok) {
        std::vector<Mor> composite;
        for (std::size_t i = 0; i < fam.size(); ++i) {
          for (Mor inner : site.coverings[c.source(fam[i])][choice[i]]) {
            composite.push_back(c.compose(fam[i], inner));
          }
        }
        if (!known[x].count(canonical(composite))) {
          v.t3 = Verdict::fail("composite of coverings is not a covering",
                               {family_name(c, fam), family_name(c, composite)});
        }
        std::size_t i = 0;
        for (; i < fam.size(); ++i) {
          if (++choice[i] < site.coverings[c.source(fam[i])].size()) break;
          choice[i] = 0;
        }
        exhausted = i == fam.size();
      }
      if (!v.t3.ok) break;
    }
  }
  return v;
}

DescentDatum comparison_datum(const DescentContext& ctx, Obj e, const Covering& covering) {
  const FinCat& d = ctx.fibration.total;
  const CoverGeometry g(ctx.site, covering);
  DescentDatum out;
  out.covering = covering;
  for (Mor leg : covering.legs) out.objects.push_back(ctx.restrict(leg, e));
  const int n = g.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const PullbackSquare& sq = g.pair(i, j);
      const Mor via_j = d.compose(ctx.lift(g.leg(j), e), ctx.lift(sq.to_right, out.objects[j]));
      const Mor via_i = d.compose(ctx.lift(g.leg(i), e), ctx.lift(sq.to_left, out.objects[i]));
      out.transitions[{j, i}] =
          factor_or_throw(ctx.fibration, via_j, via_i, ctx.site.base.identity(sq.apex));
    }
  }
  return out;
}

CocycleVerdict check_cocycle(const DescentContext& ctx, const DescentDatum& d) {
  const CoverGeometry g(ctx.site, d.covering);
  if (const Verdict shape = check_shape(ctx, g, d); !shape) return {false, std::nullopt, shape.reason};
  const int n = g.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!triple_closes(ctx, g, d, i, j, k)) {
          return {false, std::make_tuple(i, j, k), "alpha_jk o alpha_ki != alpha_ji"};
        }
  return {};
}

std::vector<std::vector<Mor>> descent_morphisms(const DescentContext& ctx, const DescentDatum& from,
                                                const DescentDatum& to, bool isomorphisms_only) {
  const CoverGeometry g(ctx.site, from.covering);
  std::vector<std::vector<Mor>> out;
  search_morphisms(ctx, g, from, to, isomorphisms_only, [&](const std::vector<Mor>& fam) {
    out.push_back(fam);
    return true;
  });
  return out;
}

namespace {

void search_effective(const DescentContext& ctx, const DescentDatum& d,
                      const std::function<bool(const EffectiveWitness&)>& visit) {
  if (const auto v = check_cocycle(ctx, d); !v.ok) {
    std::vector<std::string> witness;
    if (v.witness) {
      const auto [i, j, k] = *v.witness;
      witness = {std::to_string(i), std::to_string(j), std::to_string(k)};
    }
    throw DescentError(Kind::CocycleFails, "CocycleFails: " + v.reason, witness);
  }
  const CoverGeometry g(ctx.site, d.covering);
  bool keep_going = true;
  for (Obj e : objects_over(ctx.fibration, d.covering.target)) {
    const DescentDatum beta = comparison_datum(ctx, e, d.covering);
    search_morphisms(ctx, g, beta, d, true, [&](const std::vector<Mor>& fam) {
      keep_going = visit(EffectiveWitness{e, fam});
      return keep_going;
    });
    if (!keep_going) return;
  }
}

}  // namespace

std::optional<EffectiveWitness> is_effective(const DescentContext& ctx, const DescentDatum& d) {
  std::optional<EffectiveWitness> found;
  search_effective(ctx, d, [&](const EffectiveWitness& w) {
    found = w;
    return false;
  });
  return found;
}

std::vector<EffectiveWitness> effective_witnesses(const DescentContext& ctx, const DescentDatum& d) {
  std::vector<EffectiveWitness> out;
  search_effective(ctx, d, [&](const EffectiveWitness& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

bool check_witness(const DescentContext& ctx, const DescentDatum& d, const EffectiveWitness& w) {
  const CategoryOver& f = ctx.fibration;
  const CoverGeometry g(ctx.site, d.covering);
  const int n = g.size();
  if (f.over(w.object) != d.covering.target || static_cast<int>(w.isos.size()) != n) return false;
  const DescentDatum beta = comparison_datum(ctx, w.object, d.covering);
  for (int i = 0; i < n; ++i) {
    const Mor a = w.isos[i];
    if (f.total.source(a) != beta.objects[i] || f.total.target(a) != d.objects[i] ||
        f.over_mor(a) != ctx.site.base.identity(ctx.site.base.source(g.leg(i))) ||
        !f.total.is_iso(a)) {
      return false;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!compatible_pair(ctx, g, beta, d, w.isos, i, j)) return false;
  return true;
}

void enumerate_descent_data(const DescentContext& ctx, const Covering& covering,
                            const std::function<bool(const DescentDatum&)>& visit) {
  const CoverGeometry g(ctx.site, covering);
  const int n = g.size();
  std::vector<std::vector<Obj>> object_choices;
  for (int i = 0; i < n; ++i)
    object_choices.push_back(objects_over(ctx.fibration, ctx.site.base.source(g.leg(i))));

  // Transitions are assigned in order of the key (j, i) sorted by (i, j); a
  // triple is checked once the last of its three transitions is placed.
  std::vector<std::pair<int, int>> order;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) order.emplace_back(j, i);
  auto position = [&](int to, int from) { return from * n + to; };
  std::vector<std::vector<std::tuple<int, int, int>>> triples_at(order.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const int last = std::max({position(j, i), position(j, k), position(k, i)});
        triples_at[last].emplace_back(i, j, k);
      }

  DescentDatum d;
  d.covering = covering;
  d.objects.assign(n, kNone);
  bool keep_going = true;

  std::function<void(std::size_t)> assign_transition = [&](std::size_t p) {
    if (!keep_going) return;
    if (p == order.size()) {
      keep_going = visit(d);
      return;
    }
    const auto [j, i] = order[p];
    const PullbackSquare& sq = g.pair(i, j);
    const auto candidates =
        morphisms_over(ctx.fibration, ctx.restrict(sq.to_left, d.objects[i]),
                       ctx.restrict(sq.to_right, d.objects[j]), ctx.site.base.identity(sq.apex),
                       true);
    for (Mor a : candidates) {
      d.transitions[{j, i}] = a;
      bool ok = true;
      for (const auto& [ti, tj, tk] : triples_at[p]) {
        if (!triple_closes(ctx, g, d, ti, tj, tk)) {
          ok = false;
          break;
        }
      }
      if (ok) assign_transition(p + 1);
      if (!keep_going) return;
    }
    d.transitions.erase({j, i});
  };
  std::function<void(int)> assign_object = [&](int i) {
    if (!keep_going) return;
    if (i == n) {
      assign_transition(0);
      return;
    }
    for (Obj e : object_choices[i]) {
      d.objects[i] = e;
      assign_object(i + 1);
    }
  };
  assign_object(0);
}

std::string_view to_string(StackStatus status) {
  switch (status) {
    case StackStatus::Stack: return "stack";
    case StackStatus::PrestackOnly: return "prestack-only";
    case StackStatus::Neither: return "neither";
  }
  return "?";
}

StackVerdict stack_verdict(const DescentContext& ctx) {
  const CategoryOver& f = ctx.fibration;
  const FinCat& c = ctx.site.base;
  for (Obj x = 0; x < c.object_count(); ++x) {
    const auto over_x = objects_over(f, x);
    for (std::size_t ci = 0; ci < ctx.site.coverings[x].size(); ++ci) {
      const Covering cov = ctx.site.covering(x, ci);
      for (Obj e1 : over_x) {
        const DescentDatum b1 = comparison_datum(ctx, e1, cov);
        for (Obj e2 : over_x) {
          const DescentDatum b2 = comparison_datum(ctx, e2, cov);
          const auto des = descent_morphisms(ctx, b1, b2, false);
          std::set<std::vector<Mor>> images;
          for (Mor u : morphisms_over(f, e1, e2, c.identity(x), false)) {
            std::vector<Mor> fam;
            for (Mor leg : cov.legs) {
              fam.push_back(factor_or_throw(f, ctx.lift(leg, e2),
                                            f.total.compose(u, ctx.lift(leg, e1)),
                                            c.identity(c.source(leg))));
            }
            images.insert(std::move(fam));
          }
          const std::size_t homs = morphisms_over(f, e1, e2, c.identity(x), false).size();
          if (images.size() != homs || images.size() != des.size()) {
            return {StackStatus::Neither,
                    images.size() != homs ? "comparison functor is not faithful"
                                          : "comparison functor is not full",
                    {c.object_name(x), family_name(c, cov.legs), f.total.object_name(e1),
                     f.total.object_name(e2)}};
          }
        }
      }
    }
  }
  for (Obj x = 0; x < c.object_count(); ++x) {
    for (std::size_t ci = 0; ci < ctx.site.coverings[x].size(); ++ci) {
      const Covering cov = ctx.site.covering(x, ci);
      std::optional<DescentDatum> stuck;
      enumerate_descent_data(ctx, cov, [&](const DescentDatum& d) {
        if (is_effective(ctx, d)) return true;
        stuck = d;
        return false;
      });
      if (stuck) {
        std::vector<std::string> witness{c.object_name(x), family_name(c, cov.legs)};
        for (Obj e : stuck->objects) witness.push_back(f.total.object_name(e));
        return {StackStatus::PrestackOnly, "descent datum is not effective", witness};
      }
    }
  }
  return {StackStatus::Stack, "", {}};
}

}  // namespace trimod
