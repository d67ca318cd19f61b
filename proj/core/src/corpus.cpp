#include "trimod/corpus.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace trimod::corpus {

FinCat interval() {
  return build_category({"a", "b"}, {{"id_a", 0, 0}, {"id_b", 1, 1}, {"u", 0, 1}}, {0, 1},
                        [](Mor, Mor) { return kNone; });
}

FinCat thin_category(const std::vector<std::string>& names,
                     const std::function<bool(int, int)>& leq) {
  const int n = static_cast<int>(names.size());
  std::map<std::pair<int, int>, Mor> index;
  std::vector<ArrowSpec> arrows;
  std::vector<Mor> identities(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!leq(i, j)) continue;
      index[{i, j}] = static_cast<Mor>(arrows.size());
      if (i == j) identities[i] = static_cast<Mor>(arrows.size());
      arrows.push_back({i == j ? "id_" + names[i] : names[i] + "<" + names[j], i, j});
    }
  }
  return build_category(names, arrows, identities, [&](Mor g, Mor f) {
    auto it = index.find({arrows[f].source, arrows[g].target});
    return it == index.end() ? kNone : it->second;
  });
}

namespace {

std::vector<std::string> numbered(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace

FinCat chain(int n) {
  return thin_category(numbered(n), [](int i, int j) { return i <= j; });
}

FinCat discrete(int n) {
  return thin_category(numbered(n), [](int i, int j) { return i == j; });
}

FinCat square_poset() {
  return thin_category({"0", "l", "r", "1"},
                       [](int i, int j) { return i == j || i == 0 || j == 3; });
}

FinCat span() {
  return thin_category({"0", "l", "r"}, [](int i, int j) { return i == j || i == 0; });
}

FinCat cospan() {
  return thin_category({"l", "r", "1"}, [](int i, int j) { return i == j || j == 2; });
}

FinCat parallel_arrows() {
  return build_category({"a", "b"}, {{"id_a", 0, 0}, {"id_b", 1, 1}, {"p", 0, 1}, {"q", 0, 1}},
                        {0, 1}, [](Mor, Mor) { return kNone; });
}

FinCat idempotent() {
  return build_category({"*"}, {{"id", 0, 0}, {"e", 0, 0}}, {0}, [](Mor, Mor) { return 1; });
}

FinCat group_category(const std::vector<std::vector<int>>& table, const std::string& prefix) {
  std::vector<ArrowSpec> arrows;
  for (std::size_t g = 0; g < table.size(); ++g) arrows.push_back({prefix + std::to_string(g), 0, 0});
  return build_category({"*"}, arrows, {0}, [&](Mor g, Mor f) { return table[g][f]; });
}

FinCat cyclic_group(int n) {
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  return group_category(table, "z");
}

FinCat symmetric_group3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<int>> table(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      table[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return group_category(table, "s");
}

FinCat product(const FinCat& a, const FinCat& b) {
  const int na = a.object_count();
  const int nb = b.object_count();
  const int ma = a.morphism_count();
  const int mb = b.morphism_count();
  std::vector<std::string> objects;
  for (Obj x = 0; x < na; ++x)
    for (Obj y = 0; y < nb; ++y) objects.push_back(a.object_name(x) + "," + b.object_name(y));
  std::vector<ArrowSpec> arrows;
  for (Mor m = 0; m < ma; ++m)
    for (Mor n = 0; n < mb; ++n)
      arrows.push_back({"(" + a.morphism_name(m) + "," + b.morphism_name(n) + ")",
                        a.source(m) * nb + b.source(n), a.target(m) * nb + b.target(n)});
  std::vector<Mor> ids;
  for (Obj x = 0; x < na; ++x)
    for (Obj y = 0; y < nb; ++y) ids.push_back(a.identity(x) * mb + b.identity(y));
  return build_category(objects, arrows, ids, [&](Mor g, Mor f) {
    return a.compose(g / mb, f / mb) * mb + b.compose(g % mb, f % mb);
  });
}

CategoryOver product_projection(const FinCat& base, const FinCat& fiber) {
  CategoryOver out;
  out.total = product(base, fiber);
  out.base = base;
  for (Obj x = 0; x < out.total.object_count(); ++x)
    out.projection.on_objects.push_back(x / fiber.object_count());
  for (Mor m = 0; m < out.total.morphism_count(); ++m)
    out.projection.on_morphisms.push_back(m / fiber.morphism_count());
  return out;
}

PseudoFunctor constant_pseudofunctor(const FinCat& base, const FinCat& fiber) {
  return strict_pseudofunctor(base, std::vector<FinCat>(base.object_count(), fiber),
                              std::vector<Functor>(base.morphism_count(), identity_functor(fiber)));
}

PseudoFunctor automorphism_chain(int n, int k, const std::vector<int>& units) {
  const FinCat base = chain(n);
  const FinCat z = cyclic_group(k);
  std::vector<Functor> pullbacks;
  for (Mor m = 0; m < base.morphism_count(); ++m) {
    int factor = 1;
    for (Obj step = base.source(m); step < base.target(m); ++step) factor = factor * units[step] % k;
    Functor f{{0}, {}};
    for (int e = 0; e < k; ++e) f.on_morphisms.push_back(e * factor % k);
    pullbacks.push_back(std::move(f));
  }
  return strict_pseudofunctor(base, std::vector<FinCat>(n, z), std::move(pullbacks));
}

PseudoFunctor presheaf_chain(const std::vector<int>& sizes,
                             const std::vector<std::vector<int>>& step) {
  const int n = static_cast<int>(sizes.size());
  const FinCat base = chain(n);
  std::vector<FinCat> fibers;
  for (int s : sizes) fibers.push_back(discrete(s));
  std::vector<Functor> pullbacks;
  for (Mor m = 0; m < base.morphism_count(); ++m) {
    const Obj i = base.source(m);
    const Obj j = base.target(m);
    Functor f;
    for (int x = 0; x < sizes[j]; ++x) {
      int y = x;
      for (Obj level = j; level > i; --level) y = step[level - 1][y];
      f.on_objects.push_back(y);
    }
    f.on_morphisms = f.on_objects;  // discrete fibers: identity index == object index
    pullbacks.push_back(std::move(f));
  }
  return strict_pseudofunctor(base, std::move(fibers), std::move(pullbacks));
}

PseudoFunctor presheaf(const FinCat& base, const std::vector<int>& sizes,
                       const std::function<int(Mor, int)>& restriction) {
  std::vector<FinCat> fibers;
  for (int s : sizes) fibers.push_back(discrete(s));
  std::vector<Functor> pullbacks;
  for (Mor m = 0; m < base.morphism_count(); ++m) {
    Functor f;
    for (int x = 0; x < sizes[base.target(m)]; ++x) f.on_objects.push_back(restriction(m, x));
    f.on_morphisms = f.on_objects;
    pullbacks.push_back(std::move(f));
  }
  return strict_pseudofunctor(base, std::move(fibers), std::move(pullbacks));
}

CategoryOver remove_fiber(const CategoryOver& f, Obj x) {
  std::vector<bool> objects(f.total.object_count());
  std::vector<bool> morphisms(f.total.morphism_count());
  for (Obj y = 0; y < f.total.object_count(); ++y) objects[y] = f.over(y) != x;
  for (Mor m = 0; m < f.total.morphism_count(); ++m)
    morphisms[m] = objects[f.total.source(m)] && objects[f.total.target(m)];
  Subcategory sub = restrict_category(f.total, objects, morphisms);
  CategoryOver out;
  out.base = f.base;
  for (Obj y : sub.objects) out.projection.on_objects.push_back(f.over(y));
  for (Mor m : sub.morphisms) out.projection.on_morphisms.push_back(f.over_mor(m));
  out.total = std::move(sub.category);
  return out;
}

PseudoFunctor coboundary_twist(const FinCat& base, int k, const std::vector<int>& cochain) {
  PseudoFunctor p = constant_pseudofunctor(base, cyclic_group(k));
  auto mod = [k](int v) { return ((v % k) + k) % k; };
  for (Obj s = 0; s < base.object_count(); ++s) p.epsilon[s][0] = mod(cochain[base.identity(s)]);
  for (auto& [pair, comps] : p.alpha) {
    const auto [f, g] = pair;
    comps[0] = mod(cochain[f] + cochain[g] - cochain[base.compose(g, f)]);
  }
  return p;
}

Cleavage random_cleavage(const CategoryOver& f, std::mt19937_64& rng) {
  Cleavage k;
  for (Mor m = 0; m < f.base.morphism_count(); ++m) {
    for (Obj y = 0; y < f.total.object_count(); ++y) {
      if (f.over(y) != f.base.target(m)) continue;
      std::vector<Mor> cartesian;
      for (Mor l : lifts_with_target(f, m, y))
        if (is_cartesian(f, l)) cartesian.push_back(l);
      if (cartesian.empty()) throw FibrationError("NotFibered: no cartesian lift");
      k[{m, y}] = cartesian[std::uniform_int_distribution<std::size_t>(0, cartesian.size() - 1)(rng)];
    }
  }
  return k;
}

std::vector<std::pair<std::string, FinCat>> base_categories() {
  return {{"I", interval()},          {"chain3", chain(3)},        {"chain4", chain(4)},
          {"chain5", chain(5)},       {"discrete2", discrete(2)},  {"square", square_poset()},
          {"span", span()},           {"cospan", cospan()},        {"Z2", cyclic_group(2)},
          {"Z3", cyclic_group(3)},    {"S3", symmetric_group3()},  {"parallel", parallel_arrows()},
          {"idempotent", idempotent()}};
}

std::vector<Fibration> fibered_corpus(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  const auto bases = base_categories();
  const std::vector<std::pair<std::string, FinCat>> fibers = {
      {"I", interval()}, {"Z2", cyclic_group(2)}, {"Z3", cyclic_group(3)},
      {"discrete2", discrete(2)}, {"idempotent", idempotent()}};
  auto pick = [&](auto& v) -> auto& {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  std::vector<Fibration> out;
  for (int i = 0; static_cast<int>(out.size()) < count; ++i) {
    const int kind = i % 7;
    if (kind == 0) {
      const auto& [name, base] = pick(bases);
      const Obj x = uniform(0, base.object_count() - 1);
      out.push_back({"slice(" + name + "," + base.object_name(x) + ")", slice_category(base, x)});
    } else if (kind == 1) {
      const auto& [bname, base] = pick(bases);
      const auto& [fname, fib] = pick(fibers);
      out.push_back({"constant(" + bname + "," + fname + ")",
                     total_category(constant_pseudofunctor(base, fib)).over});
    } else if (kind == 2) {
      const auto& [bname, base] = pick(bases);
      const auto& [fname, fib] = pick(fibers);
      out.push_back({"product(" + bname + "," + fname + ")", product_projection(base, fib)});
    } else if (kind == 3) {
      const int n = uniform(1, 4);
      const int k = std::vector<int>{2, 3, 5}[uniform(0, 2)];
      std::vector<int> units;
      for (int m = 0; m + 1 < n; ++m) {
        int u;
        do u = uniform(1, k - 1);
        while (std::gcd(u, k) != 1);
        units.push_back(u);
      }
      out.push_back({"automorphism(" + std::to_string(n) + "," + std::to_string(k) + ")",
                     total_category(automorphism_chain(n, k, units)).over});
    } else if (kind == 4) {
      const int n = uniform(1, 4);
      std::vector<int> sizes;
      for (int m = 0; m < n; ++m) sizes.push_back(uniform(1, 3));
      std::vector<std::vector<int>> step;
      for (int m = 0; m + 1 < n; ++m) {
        std::vector<int> map;
        for (int x = 0; x < sizes[m + 1]; ++x) map.push_back(uniform(0, sizes[m] - 1));
        step.push_back(std::move(map));
      }
      out.push_back({"presheaf(" + std::to_string(n) + ")",
                     total_category(presheaf_chain(sizes, step)).over});
    } else {
      const auto& [bname, base] = pick(bases);
      const int k = uniform(2, 3);
      std::vector<int> cochain;
      for (Mor m = 0; m < base.morphism_count(); ++m) cochain.push_back(uniform(0, k - 1));
      CategoryOver f = total_category(coboundary_twist(base, k, cochain)).over;
      std::string name = "twist(" + bname + "," + std::to_string(k) + ")";
      if (kind == 6) {
        // Re-extract along a random cleavage: the structure maps become
        // non-identity isomorphisms determined by the choice.
        f = total_category(extract_pseudofunctor(f, random_cleavage(f, rng))).over;
        name = "recleaved-" + name;
      }
      out.push_back({std::move(name), std::move(f)});
    }
  }
  return out;
}

}  // namespace trimod::corpus
