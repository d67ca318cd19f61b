#include "trimod/grothendieck.hpp"

namespace trimod {

PseudoFunctor strict_pseudofunctor(FinCat base, std::vector<FinCat> fibers,
                                   std::vector<Functor> pullbacks) {
  PseudoFunctor p;
  p.base = std::move(base);
  p.fibers = std::move(fibers);
  p.pullbacks = std::move(pullbacks);
  for (Obj s = 0; s < p.base.object_count(); ++s) {
    std::vector<Mor> comps;
    for (Obj x = 0; x < p.fibers[s].object_count(); ++x) comps.push_back(p.fibers[s].identity(x));
    p.epsilon.push_back(std::move(comps));
  }
  for (Mor g = 0; g < p.base.morphism_count(); ++g) {
    for (Mor f = 0; f < p.base.morphism_count(); ++f) {
      if (!p.base.composable(g, f)) continue;
      const FinCat& q = p.fibers[p.base.source(f)];
      const FinCat& s = p.fibers[p.base.target(g)];
      std::vector<Mor> comps;
      for (Obj x = 0; x < s.object_count(); ++x) {
        const Obj pulled = p.pull_object(f, p.pull_object(g, x));
        comps.push_back(pulled >= 0 && pulled < q.object_count() ? q.identity(pulled) : kNone);
      }
      p.alpha[{f, g}] = std::move(comps);
    }
  }
  return p;
}

Verdict validate_pseudofunctor(const PseudoFunctor& p) {
  const FinCat& c = p.base;
  if (p.fibers.size() != static_cast<std::size_t>(c.object_count()) ||
      p.pullbacks.size() != static_cast<std::size_t>(c.morphism_count()) ||
      p.epsilon.size() != static_cast<std::size_t>(c.object_count())) {
    return Verdict::fail("tables do not match the base category");
  }
  for (Mor f = 0; f < c.morphism_count(); ++f) {
    const Verdict v =
        validate_functor(p.pullbacks[f], p.fibers[c.target(f)], p.fibers[c.source(f)]);
    if (!v) return Verdict::fail("pullback along " + c.morphism_name(f) + ": " + v.reason,
                                 {c.morphism_name(f)});
  }
  // A component must be an isomorphism from `from` to `to` inside `fib`.
  auto typed_iso = [](const FinCat& fib, Mor m, Obj from, Obj to) {
    return m >= 0 && m < fib.morphism_count() && fib.source(m) == from && fib.target(m) == to &&
           fib.is_iso(m);
  };
  for (Obj s = 0; s < c.object_count(); ++s) {
    const FinCat& fib = p.fibers[s];
    const Mor id = c.identity(s);
    if (p.epsilon[s].size() != static_cast<std::size_t>(fib.object_count())) {
      return Verdict::fail("epsilon does not cover the fiber", {c.object_name(s)});
    }
    for (Obj x = 0; x < fib.object_count(); ++x) {
      if (!typed_iso(fib, p.epsilon[s][x], p.pull_object(id, x), x)) {
        return Verdict::fail("epsilon component is not an isomorphism id^*(s) -> s",
                             {c.object_name(s), fib.object_name(x)});
      }
    }
    for (Mor u = 0; u < fib.morphism_count(); ++u) {
      const Mor lhs = fib.compose(p.epsilon[s][fib.target(u)], p.pull_morphism(id, u));
      const Mor rhs = fib.compose(u, p.epsilon[s][fib.source(u)]);
      if (lhs != rhs) {
        return Verdict::fail("epsilon is not natural", {c.object_name(s), fib.morphism_name(u)});
      }
    }
  }
  for (Mor g = 0; g < c.morphism_count(); ++g) {
    for (Mor f = 0; f < c.morphism_count(); ++f) {
      if (!c.composable(g, f)) continue;
      const Mor gf = c.compose(g, f);
      const FinCat& fq = p.fibers[c.source(f)];
      const FinCat& fs = p.fibers[c.target(g)];
      auto it = p.alpha.find({f, g});
      if (it == p.alpha.end() || it->second.size() != static_cast<std::size_t>(fs.object_count())) {
        return Verdict::fail("alpha missing", {c.morphism_name(f), c.morphism_name(g)});
      }
      const auto& a = it->second;
      for (Obj x = 0; x < fs.object_count(); ++x) {
        if (!typed_iso(fq, a[x], p.pull_object(f, p.pull_object(g, x)), p.pull_object(gf, x))) {
          return Verdict::fail("alpha component is not an isomorphism f^*g^*s -> (gf)^*s",
                               {c.morphism_name(f), c.morphism_name(g), fs.object_name(x)});
        }
      }
      for (Mor u = 0; u < fs.morphism_count(); ++u) {
        const Mor lhs = fq.compose(a[fs.target(u)], p.pull_morphism(f, p.pull_morphism(g, u)));
        const Mor rhs = fq.compose(p.pull_morphism(gf, u), a[fs.source(u)]);
        if (lhs != rhs) {
          return Verdict::fail("alpha is not natural",
                               {c.morphism_name(f), c.morphism_name(g), fs.morphism_name(u)});
        }
      }
    }
  }
  for (Mor g = 0; g < c.morphism_count(); ++g) {
    const Obj t = c.source(g);
    const Obj s = c.target(g);
    const Mor id_t = c.identity(t);
    for (Obj x = 0; x < p.fibers[s].object_count(); ++x) {
      if (p.alpha_at(id_t, g, x) != p.epsilon[t][p.pull_object(g, x)]) {
        return Verdict::fail("unit law alpha_{id,g} = epsilon g^* fails",
                             {c.morphism_name(g), p.fibers[s].object_name(x)});
      }
    }
    // g plays the role of f in alpha_{f, id}.
    for (Obj x = 0; x < p.fibers[s].object_count(); ++x) {
      const Mor id_s = c.identity(s);
      if (p.alpha_at(g, id_s, x) != p.pull_morphism(g, p.epsilon[s][x])) {
        return Verdict::fail("unit law alpha_{f,id} = f^* epsilon fails",
                             {c.morphism_name(g), p.fibers[s].object_name(x)});
      }
    }
  }
  // f: R -> Q, g: Q -> T, h: T -> S
  for (Mor h = 0; h < c.morphism_count(); ++h) {
    for (Mor g = 0; g < c.morphism_count(); ++g) {
      if (!c.composable(h, g)) continue;
      for (Mor f = 0; f < c.morphism_count(); ++f) {
        if (!c.composable(g, f)) continue;
        const FinCat& fr = p.fibers[c.source(f)];
        const Mor gf = c.compose(g, f);
        const Mor hg = c.compose(h, g);
        for (Obj x = 0; x < p.fibers[c.target(h)].object_count(); ++x) {
          const Mor lhs = fr.compose(p.alpha_at(gf, h, x), p.alpha_at(f, g, p.pull_object(h, x)));
          const Mor rhs =
              fr.compose(p.alpha_at(f, hg, x), p.pull_morphism(f, p.alpha_at(g, h, x)));
          if (lhs != rhs) {
            return Verdict::fail("coherence square fails",
                                 {c.morphism_name(f), c.morphism_name(g), c.morphism_name(h),
                                  p.fibers[c.target(h)].object_name(x)});
          }
        }
      }
    }
  }
  return Verdict::pass();
}

Verdict validate_cleavage(const CategoryOver& f, const Cleavage& k) {
  for (Mor m = 0; m < f.base.morphism_count(); ++m) {
    for (Obj y = 0; y < f.total.object_count(); ++y) {
      if (f.over(y) != f.base.target(m)) continue;
      auto it = k.find({m, y});
      if (it == k.end()) {
        return Verdict::fail("no chosen lift", {f.base.morphism_name(m), f.total.object_name(y)});
      }
      const Mor lift = it->second;
      if (lift < 0 || lift >= f.total.morphism_count() || f.over_mor(lift) != m ||
          f.total.target(lift) != y || !is_cartesian(f, lift)) {
        return Verdict::fail("chosen lift is not a cartesian lift",
                             {f.base.morphism_name(m), f.total.object_name(y)});
      }
    }
  }
  return Verdict::pass();
}

Cleavage default_cleavage(const CategoryOver& f) {
  auto v = is_fibered(f);
  if (v.status == FibrationStatus::Neither) throw FibrationError("NotFibered: " + v.reason);
  return v.lifts;
}

TotalCategory total_category(const PseudoFunctor& p) {
  if (const Verdict v = validate_pseudofunctor(p); !v) {
    throw GrothendieckError(GrothendieckError::Kind::InvalidPseudoFunctor,
                            "InvalidPseudoFunctor: " + v.reason, v.witness);
  }
  const FinCat& c = p.base;
  TotalCategory out;
  std::vector<std::string> objects;
  std::vector<std::pair<Obj, Obj>> object_data;  // (s, S)
  out.object_of.resize(c.object_count());
  for (Obj s = 0; s < c.object_count(); ++s) {
    for (Obj x = 0; x < p.fibers[s].object_count(); ++x) {
      out.object_of[s].push_back(static_cast<Obj>(objects.size()));
      objects.push_back(p.fibers[s].object_name(x) + "@" + c.object_name(s));
      object_data.emplace_back(x, s);
    }
  }
  struct Arrow {
    Mor u;
    Mor f;
    Obj target;  // total object
  };
  std::vector<Arrow> data;
  std::vector<ArrowSpec> arrows;
  for (Mor f = 0; f < c.morphism_count(); ++f) {
    const Obj t = c.source(f);
    const Obj s = c.target(f);
    const FinCat& ft = p.fibers[t];
    for (Obj x = 0; x < p.fibers[s].object_count(); ++x) {
      const Obj pulled = p.pull_object(f, x);
      for (Obj y = 0; y < ft.object_count(); ++y) {
        for (Mor u : ft.hom(y, pulled)) {
          const Obj target = out.object_of[s][x];
          out.morphism_of[{f, target, u}] = static_cast<Mor>(arrows.size());
          arrows.push_back({"(" + ft.morphism_name(u) + "," + c.morphism_name(f) + "," +
                                p.fibers[s].object_name(x) + ")",
                            out.object_of[t][y], target});
          data.push_back({u, f, target});
        }
      }
    }
  }
  std::vector<Mor> identities;
  for (std::size_t o = 0; o < objects.size(); ++o) {
    const auto [x, s] = object_data[o];
    const Mor inv = *p.fibers[s].inverse(p.epsilon[s][x]);
    identities.push_back(out.morphism_of.at({c.identity(s), static_cast<Obj>(o), inv}));
  }
  out.over.total = build_category(objects, arrows, identities, [&](Mor second, Mor first) {
    // (v, g) o (u, f) = (alpha_{f,g}(r) o f^*(v) o u, g o f)
    const Arrow& vg = data[second];
    const Arrow& uf = data[first];
    const Obj r = object_data[vg.target].first;
    const FinCat& ft = p.fibers[c.source(uf.f)];
    const Mor w = ft.compose(p.alpha_at(uf.f, vg.f, r),
                             ft.compose(p.pull_morphism(uf.f, vg.u), uf.u));
    auto it = out.morphism_of.find({c.compose(vg.f, uf.f), vg.target, w});
    return it == out.morphism_of.end() ? kNone : it->second;
  });
  out.over.base = c;
  for (const auto& [x, s] : object_data) out.over.projection.on_objects.push_back(s);
  for (const auto& a : data) out.over.projection.on_morphisms.push_back(a.f);
  return out;
}

Cleavage canonical_cleavage(const PseudoFunctor& p, const TotalCategory& total) {
  Cleavage k;
  const FinCat& c = p.base;
  for (Mor f = 0; f < c.morphism_count(); ++f) {
    const Obj t = c.source(f);
    const Obj s = c.target(f);
    for (Obj x = 0; x < p.fibers[s].object_count(); ++x) {
      const Mor id = p.fibers[t].identity(p.pull_object(f, x));
      k[{f, total.object_of[s][x]}] = total.morphism_of.at({f, total.object_of[s][x], id});
    }
  }
  return k;
}

PseudoFunctor extract_pseudofunctor(const CategoryOver& f, const Cleavage& k) {
  const FinCat& c = f.base;
  const FinCat& d = f.total;
  auto invalid = [&](Mor m, Obj y) -> GrothendieckError {
    return GrothendieckError(GrothendieckError::Kind::InvalidCleavage,
                             "InvalidCleavage: " + c.morphism_name(m) + " at " + d.object_name(y),
                             {c.morphism_name(m), d.object_name(y)});
  };
  auto lift = [&](Mor m, Obj y) {
    auto it = k.find({m, y});
    if (it == k.end()) throw invalid(m, y);
    const Mor l = it->second;
    if (l < 0 || l >= d.morphism_count() || f.over_mor(l) != m || d.target(l) != y ||
        !is_cartesian(f, l)) {
      throw invalid(m, y);
    }
    return l;
  };

  PseudoFunctor p;
  p.base = c;
  std::vector<Subcategory> fibers;
  for (Obj s = 0; s < c.object_count(); ++s) {
    fibers.push_back(fiber(f, s));
    p.fibers.push_back(fibers.back().category);
  }
  for (Mor m = 0; m < c.morphism_count(); ++m) {
    const Subcategory& fs = fibers[c.target(m)];
    const Subcategory& ft = fibers[c.source(m)];
    const Mor id_t = c.identity(c.source(m));
    Functor pull;
    for (Obj y : fs.objects) pull.on_objects.push_back(*ft.local_object(d.source(lift(m, y))));
    for (Mor u : fs.morphisms) {
      const Mor k1 = lift(m, d.source(u));
      const Mor k2 = lift(m, d.target(u));
      const Mor w = factor_through(f, k2, d.compose(u, k1), id_t);
      if (w == kNone) throw invalid(m, d.target(u));
      pull.on_morphisms.push_back(*ft.local_morphism(w));
    }
    p.pullbacks.push_back(std::move(pull));
  }
  for (Obj s = 0; s < c.object_count(); ++s) {
    std::vector<Mor> comps;
    for (Obj y : fibers[s].objects) {
      comps.push_back(*fibers[s].local_morphism(lift(c.identity(s), y)));
    }
    p.epsilon.push_back(std::move(comps));
  }
  // alpha_{m,g}(s) is the unique w over id_Q with K(g m, s) o w = K(g, s) o K(m, g^* s).
  for (Mor g = 0; g < c.morphism_count(); ++g) {
    for (Mor m = 0; m < c.morphism_count(); ++m) {
      if (!c.composable(g, m)) continue;
      const Mor gm = c.compose(g, m);
      const Mor id_q = c.identity(c.source(m));
      const Subcategory& fq = fibers[c.source(m)];
      std::vector<Mor> comps;
      for (Obj y : fibers[c.target(g)].objects) {
        const Mor kg = lift(g, y);
        const Mor w = factor_through(f, lift(gm, y), d.compose(kg, lift(m, d.source(kg))), id_q);
        if (w == kNone) throw invalid(gm, y);
        comps.push_back(*fq.local_morphism(w));
      }
      p.alpha[{m, g}] = std::move(comps);
    }
  }
  return p;
}

bool fiberwise_isomorphic(const PseudoFunctor& a, const PseudoFunctor& b) {
  if (!(a.base == b.base) || a.fibers.size() != b.fibers.size()) return false;
  for (std::size_t s = 0; s < a.fibers.size(); ++s) {
    if (!find_isomorphism(a.fibers[s], b.fibers[s])) return false;
  }
  return true;
}

bool roundtrip_check(const CategoryOver& f, const Cleavage& k) {
  const PseudoFunctor p = extract_pseudofunctor(f, k);
  const TotalCategory total = total_category(p);
  for (Obj s = 0; s < f.base.object_count(); ++s) {
    if (!find_isomorphism(fiber(f, s).category, fiber(total.over, s).category)) return false;
  }
  return true;
}

bool roundtrip_check(const CategoryOver& f) { return roundtrip_check(f, default_cleavage(f)); }

}  // namespace trimod
