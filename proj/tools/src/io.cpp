#include "trimod/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace trimod::io {

namespace {

std::string child(const std::string& at, const std::string& key) { return at + "/" + key; }
std::string child(const std::string& at, std::size_t index) { return at + "/" + std::to_string(index); }

[[noreturn]] void bad(const std::string& at, const std::string& message) {
  throw InputError(at.empty() ? "/" : at, message);
}

const json& field(const json& j, const std::string& key, const std::string& at) {
  if (!j.is_object()) bad(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(at, "missing field \"" + key + "\"");
  return *it;
}

const json* optional_field(const json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string text(const json& j, const std::string& at) {
  if (!j.is_string()) bad(at, "expected a string");
  return j.get<std::string>();
}

const json& array(const json& j, const std::string& at) {
  if (!j.is_array()) bad(at, "expected an array");
  return j;
}

const json& object(const json& j, const std::string& at) {
  if (!j.is_object()) bad(at, "expected an object");
  return j;
}

Obj object_named(const FinCat& c, const std::string& name, const std::string& at) {
  auto x = c.find_object(name);
  if (!x) bad(at, "unknown object \"" + name + "\"");
  return *x;
}

Mor morphism_named(const FinCat& c, const std::string& name, const std::string& at) {
  auto m = c.find_morphism(name);
  if (!m) bad(at, "unknown morphism \"" + name + "\"");
  return *m;
}

int vertex_named(const std::vector<std::string>& vertices, const std::string& name, const std::string& at) {
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (vertices[v] == name) return static_cast<int>(v);
  bad(at, "unknown vertex \"" + name + "\"");
}

int index_key(const std::string& key, const std::string& at) {
  if (key.empty() || key.size() > 6 || !std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; }))
    bad(at, "expected an index, got \"" + key + "\"");
  return std::stoi(key);
}

}  // namespace

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": byte " + std::to_string(e.byte), "invalid JSON");
  }
}

Rational read_rational(const json& j, const std::string& at) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) bad(at, "expected a rational \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument&) {
    bad(at, "not an exact rational: \"" + j.get<std::string>() + "\"");
  }
}

TriangleLengths read_lengths(const json& j, const std::string& at) {
  if (!j.is_array() || j.size() != 3) bad(at, "expected three lengths");
  return {read_rational(j[0], child(at, 0)), read_rational(j[1], child(at, 1)), read_rational(j[2], child(at, 2))};
}

Perm read_perm(const json& j, const std::string& at) {
  auto p = Perm::parse(text(j, at));
  if (!p) bad(at, "unknown permutation \"" + j.get<std::string>() + "\"");
  return *p;
}

json write_lengths(const TriangleLengths& t) { return json::array({to_string(t.x), to_string(t.y), to_string(t.z)}); }

FinCat read_category(const json& j, const std::string& at) {
  RawCategory raw;
  const auto& objects = array(field(j, "objects", at), child(at, "objects"));
  for (std::size_t i = 0; i < objects.size(); ++i) raw.objects.push_back(text(objects[i], child(child(at, "objects"), i)));
  const auto& morphisms = array(field(j, "morphisms", at), child(at, "morphisms"));
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    const auto loc = child(child(at, "morphisms"), i);
    const auto& m = morphisms[i];
    const json* src = optional_field(object(m, loc), "src");
    const json* tgt = optional_field(m, "tgt");
    if (!src) src = &field(m, "source", loc);
    if (!tgt) tgt = &field(m, "target", loc);
    raw.morphisms.push_back({text(field(m, "id", loc), child(loc, "id")), text(*src, child(loc, "src")),
                             text(*tgt, child(loc, "tgt"))});
  }
  const auto& ids = object(field(j, "identities", at), child(at, "identities"));
  for (auto it = ids.begin(); it != ids.end(); ++it)
    raw.identities[it.key()] = text(it.value(), child(child(at, "identities"), it.key()));
  if (const json* comp = optional_field(j, "compose")) {
    array(*comp, child(at, "compose"));
    for (std::size_t i = 0; i < comp->size(); ++i) {
      const auto loc = child(child(at, "compose"), i);
      const auto& row = (*comp)[i];
      if (!row.is_array() || row.size() != 3) bad(loc, "expected [g, f, g o f]");
      raw.compose.push_back({text(row[0], loc), text(row[1], loc), text(row[2], loc)});
    }
  }
  try {
    return validate_category(raw);
  } catch (const CategoryError& e) {
    std::string msg = e.what();
    for (const auto& w : e.witnesses()) msg += " [" + w + "]";
    bad(at, msg);
  }
}

json write_category(const FinCat& c) {
  const auto raw = c.to_raw();
  json j;
  j["objects"] = raw.objects;
  j["morphisms"] = json::array();
  for (const auto& m : raw.morphisms) j["morphisms"].push_back({{"id", m.id}, {"src", m.source}, {"tgt", m.target}});
  j["identities"] = raw.identities;
  j["compose"] = json::array();
  for (const auto& c3 : raw.compose) j["compose"].push_back({c3.outer, c3.inner, c3.result});
  return j;
}

Functor read_functor(const json& j, const FinCat& source, const FinCat& target, const std::string& at) {
  Functor f{std::vector<Obj>(source.object_count(), kNone), std::vector<Mor>(source.morphism_count(), kNone)};
  const auto loc_o = child(at, "onObjects");
  const auto& objs = object(field(j, "onObjects", at), loc_o);
  for (auto it = objs.begin(); it != objs.end(); ++it)
    f.on_objects[object_named(source, it.key(), loc_o)] =
        object_named(target, text(it.value(), child(loc_o, it.key())), child(loc_o, it.key()));
  const auto loc_m = child(at, "onMorphisms");
  const auto& mors = object(field(j, "onMorphisms", at), loc_m);
  for (auto it = mors.begin(); it != mors.end(); ++it)
    f.on_morphisms[morphism_named(source, it.key(), loc_m)] =
        morphism_named(target, text(it.value(), child(loc_m, it.key())), child(loc_m, it.key()));
  // Identities may be left implicit.
  for (Obj x = 0; x < source.object_count(); ++x) {
    if (f.on_objects[x] == kNone) bad(loc_o, "object \"" + source.object_name(x) + "\" has no image");
    if (f.on_morphisms[source.identity(x)] == kNone) f.on_morphisms[source.identity(x)] = target.identity(f.on_objects[x]);
  }
  for (Mor m = 0; m < source.morphism_count(); ++m)
    if (f.on_morphisms[m] == kNone) bad(loc_m, "morphism \"" + source.morphism_name(m) + "\" has no image");
  const auto v = validate_functor(f, source, target);
  if (!v) {
    std::string msg = "not a functor: " + v.reason;
    for (const auto& w : v.witness) msg += " [" + w + "]";
    bad(at, msg);
  }
  return f;
}

json write_functor(const Functor& f, const FinCat& source, const FinCat& target) {
  json j{{"onObjects", json::object()}, {"onMorphisms", json::object()}};
  for (Obj x = 0; x < source.object_count(); ++x)
    j["onObjects"][source.object_name(x)] = target.object_name(f.on_objects[x]);
  for (Mor m = 0; m < source.morphism_count(); ++m)
    j["onMorphisms"][source.morphism_name(m)] = target.morphism_name(f.on_morphisms[m]);
  return j;
}

CategoryOver read_fibration(const json& j, const FinCat& base, const std::string& at) {
  CategoryOver over;
  over.base = base;
  over.total = read_category(field(j, "total", at), child(at, "total"));
  over.projection = read_functor(field(j, "projection", at), over.total, base, child(at, "projection"));
  return over;
}

CategoryOver read_fibration(const json& j, const std::string& at) {
  return read_fibration(j, read_category(field(j, "base", at), child(at, "base")), at);
}

json write_fibration(const CategoryOver& f) {
  return {{"base", write_category(f.base)},
          {"total", write_category(f.total)},
          {"projection", write_functor(f.projection, f.total, f.base)}};
}

PseudoFunctor read_pseudofunctor(const json& j, const std::string& at) {
  FinCat base = read_category(field(j, "base", at), child(at, "base"));
  std::vector<FinCat> fibers(base.object_count());
  const auto loc_f = child(at, "fibers");
  const auto& fj = object(field(j, "fibers", at), loc_f);
  std::vector<bool> seen(base.object_count(), false);
  for (auto it = fj.begin(); it != fj.end(); ++it) {
    const Obj s = object_named(base, it.key(), loc_f);
    fibers[s] = read_category(it.value(), child(loc_f, it.key()));
    seen[s] = true;
  }
  for (Obj s = 0; s < base.object_count(); ++s)
    if (!seen[s]) bad(loc_f, "no fiber over \"" + base.object_name(s) + "\"");
  std::vector<Functor> pullbacks(base.morphism_count());
  std::vector<bool> have(base.morphism_count(), false);
  const auto loc_p = child(at, "pullbacks");
  const auto* pj = optional_field(j, "pullbacks");
  if (pj) {
    object(*pj, loc_p);
    for (auto it = pj->begin(); it != pj->end(); ++it) {
      const Mor f = morphism_named(base, it.key(), loc_p);
      pullbacks[f] = read_functor(it.value(), fibers[base.target(f)], fibers[base.source(f)], child(loc_p, it.key()));
      have[f] = true;
    }
  }
  for (Mor f = 0; f < base.morphism_count(); ++f) {
    if (have[f]) continue;
    if (!base.is_identity(f)) bad(loc_p, "no pullback functor for \"" + base.morphism_name(f) + "\"");
    pullbacks[f] = identity_functor(fibers[base.source(f)]);
  }
  PseudoFunctor p = strict_pseudofunctor(base, fibers, pullbacks);
  if (const json* ej = optional_field(j, "epsilon")) {
    const auto loc = child(at, "epsilon");
    object(*ej, loc);
    for (auto it = ej->begin(); it != ej->end(); ++it) {
      const Obj s = object_named(p.base, it.key(), loc);
      const auto& comps = object(it.value(), child(loc, it.key()));
      for (auto c = comps.begin(); c != comps.end(); ++c) {
        const auto l = child(child(loc, it.key()), c.key());
        p.epsilon[s][object_named(p.fibers[s], c.key(), l)] = morphism_named(p.fibers[s], text(c.value(), l), l);
      }
    }
  }
  if (const json* aj = optional_field(j, "alpha")) {
    const auto loc = child(at, "alpha");
    array(*aj, loc);
    for (std::size_t i = 0; i < aj->size(); ++i) {
      const auto l = child(loc, i);
      const auto& entry = (*aj)[i];
      const Mor f = morphism_named(p.base, text(field(entry, "f", l), child(l, "f")), child(l, "f"));
      const Mor g = morphism_named(p.base, text(field(entry, "g", l), child(l, "g")), child(l, "g"));
      if (!p.base.composable(g, f)) bad(l, "f and g are not composable");
      const auto& q = p.fibers[p.base.source(f)];
      const auto& s = p.fibers[p.base.target(g)];
      const auto& comps = object(field(entry, "components", l), child(l, "components"));
      for (auto c = comps.begin(); c != comps.end(); ++c) {
        const auto lc = child(child(l, "components"), c.key());
        p.alpha[{f, g}][object_named(s, c.key(), lc)] = morphism_named(q, text(c.value(), lc), lc);
      }
    }
  }
  return p;
}

json write_pseudofunctor(const PseudoFunctor& p) {
  json j;
  j["base"] = write_category(p.base);
  j["fibers"] = json::object();
  j["pullbacks"] = json::object();
  j["epsilon"] = json::object();
  j["alpha"] = json::array();
  for (Obj s = 0; s < p.base.object_count(); ++s) {
    const auto& fs = p.fibers[s];
    j["fibers"][p.base.object_name(s)] = write_category(fs);
    json eps = json::object();
    for (Obj x = 0; x < fs.object_count(); ++x) eps[fs.object_name(x)] = fs.morphism_name(p.epsilon[s][x]);
    j["epsilon"][p.base.object_name(s)] = eps;
  }
  for (Mor f = 0; f < p.base.morphism_count(); ++f)
    j["pullbacks"][p.base.morphism_name(f)] =
        write_functor(p.pullbacks[f], p.fibers[p.base.target(f)], p.fibers[p.base.source(f)]);
  for (const auto& [key, comps] : p.alpha) {
    const auto [f, g] = key;
    const auto& q = p.fibers[p.base.source(f)];
    const auto& s = p.fibers[p.base.target(g)];
    json c = json::object();
    for (Obj x = 0; x < s.object_count(); ++x)
      c[s.object_name(x)] = comps[x] == kNone ? std::string("?") : q.morphism_name(comps[x]);
    j["alpha"].push_back({{"f", p.base.morphism_name(f)}, {"g", p.base.morphism_name(g)}, {"components", c}});
  }
  return j;
}

FiniteSite read_site(const json& j, const std::string& at) {
  FinCat base = read_category(field(j, "category", at), child(at, "category"));
  std::vector<std::vector<std::vector<Mor>>> coverings(base.object_count());
  const auto loc = child(at, "coverings");
  const auto& cj = object(field(j, "coverings", at), loc);
  for (auto it = cj.begin(); it != cj.end(); ++it) {
    const Obj x = object_named(base, it.key(), loc);
    const auto lx = child(loc, it.key());
    const auto& fams = array(it.value(), lx);
    for (std::size_t i = 0; i < fams.size(); ++i) {
      const auto lf = child(lx, i);
      std::vector<Mor> legs;
      for (std::size_t k = 0; k < array(fams[i], lf).size(); ++k) {
        const Mor m = morphism_named(base, text(fams[i][k], child(lf, k)), child(lf, k));
        if (base.target(m) != x) bad(child(lf, k), "leg does not land in \"" + it.key() + "\"");
        legs.push_back(m);
      }
      coverings[x].push_back(std::move(legs));
    }
  }
  std::map<std::pair<Mor, Mor>, PullbackSquare> overrides;
  if (const json* pj = optional_field(j, "pullbacks")) {
    const auto lp = child(at, "pullbacks");
    array(*pj, lp);
    for (std::size_t i = 0; i < pj->size(); ++i) {
      const auto l = child(lp, i);
      const auto& e = (*pj)[i];
      auto mor = [&](const char* key) { return morphism_named(base, text(field(e, key, l), child(l, key)), child(l, key)); };
      const Mor f = mor("f");
      const Mor g = mor("g");
      PullbackSquare sq{object_named(base, text(field(e, "apex", l), child(l, "apex")), child(l, "apex")), mor("toLeft"),
                        mor("toRight")};
      overrides[{f, g}] = sq;
    }
  }
  try {
    return make_site(std::move(base), std::move(coverings), overrides);
  } catch (const std::exception& e) {
    bad(at, e.what());
  }
}

json write_site(const FiniteSite& s) {
  json j;
  j["category"] = write_category(s.base);
  j["coverings"] = json::object();
  for (Obj x = 0; x < s.base.object_count(); ++x) {
    json fams = json::array();
    for (const auto& fam : s.coverings[x]) {
      json legs = json::array();
      for (Mor m : fam) legs.push_back(s.base.morphism_name(m));
      fams.push_back(legs);
    }
    j["coverings"][s.base.object_name(x)] = fams;
  }
  j["pullbacks"] = json::array();
  for (const auto& [key, sq] : s.pullbacks)
    j["pullbacks"].push_back({{"f", s.base.morphism_name(key.first)},
                              {"g", s.base.morphism_name(key.second)},
                              {"apex", s.base.object_name(sq.apex)},
                              {"toLeft", s.base.morphism_name(sq.to_left)},
                              {"toRight", s.base.morphism_name(sq.to_right)}});
  return j;
}

DescentDatum read_datum(const json& j, const DescentContext& ctx, const std::string& at) {
  const auto& site = ctx.site;
  const auto& total = ctx.fibration.total;
  const Obj x = object_named(site.base, text(field(j, "target", at), child(at, "target")), child(at, "target"));
  const auto& cov = field(j, "covering", at);
  if (!cov.is_number_unsigned() || cov.get<std::size_t>() >= site.coverings[x].size())
    bad(child(at, "covering"), "no such covering family");
  DescentDatum d;
  d.covering = site.covering(x, cov.get<std::size_t>());
  const int n = static_cast<int>(d.covering.legs.size());
  d.objects.assign(n, kNone);
  const auto lo = child(at, "objects");
  const auto& oj = object(field(j, "objects", at), lo);
  for (auto it = oj.begin(); it != oj.end(); ++it) {
    const int i = index_key(it.key(), lo);
    if (i >= n) bad(lo, "index " + it.key() + " outside the covering");
    const Obj e = object_named(total, text(it.value(), child(lo, it.key())), child(lo, it.key()));
    if (ctx.fibration.over(e) != site.base.source(d.covering.legs[i]))
      bad(child(lo, it.key()), "object does not lie over U_" + it.key());
    d.objects[i] = e;
  }
  for (int i = 0; i < n; ++i)
    if (d.objects[i] == kNone) bad(lo, "no object for U_" + std::to_string(i));
  const auto lt = child(at, "transitions");
  const auto& tj = object(field(j, "transitions", at), lt);
  for (auto it = tj.begin(); it != tj.end(); ++it) {
    const auto& key = it.key();
    const auto comma = key.find(',');
    std::string js = comma == std::string::npos ? key.substr(0, 1) : key.substr(0, comma);
    std::string is = comma == std::string::npos ? key.substr(1) : key.substr(comma + 1);
    const int jj = index_key(js, lt);
    const int ii = index_key(is, lt);
    if (ii >= n || jj >= n) bad(lt, "pair " + key + " outside the covering");
    d.transitions[{jj, ii}] = morphism_named(total, text(it.value(), child(lt, key)), child(lt, key));
  }
  return d;
}

json write_datum(const DescentDatum& d, const DescentContext& ctx) {
  const auto& site = ctx.site;
  const auto& total = ctx.fibration.total;
  json j;
  j["target"] = site.base.object_name(d.covering.target);
  const auto& fams = site.coverings[d.covering.target];
  j["covering"] = static_cast<std::size_t>(std::find(fams.begin(), fams.end(), d.covering.legs) - fams.begin());
  j["objects"] = json::object();
  for (std::size_t i = 0; i < d.objects.size(); ++i) j["objects"][std::to_string(i)] = total.object_name(d.objects[i]);
  j["transitions"] = json::object();
  for (const auto& [key, m] : d.transitions)
    j["transitions"][std::to_string(key.first) + "," + std::to_string(key.second)] = total.morphism_name(m);
  return j;
}

PLFamily read_family(const json& j, const std::string& at) {
  PLFamily f;
  const auto lv = child(at, "vertices");
  const auto& vs = array(field(j, "vertices", at), lv);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto l = child(lv, i);
    f.base.vertices.push_back(text(field(vs[i], "id", l), child(l, "id")));
    f.vertex_lengths.push_back(read_lengths(field(vs[i], "lengths", l), child(l, "lengths")));
  }
  const auto le = child(at, "edges");
  const json empty = json::array();
  const json* ej = optional_field(j, "edges");
  const auto& es = array(ej ? *ej : empty, le);
  for (std::size_t i = 0; i < es.size(); ++i) {
    const auto l = child(le, i);
    const auto& e = es[i];
    const auto id = text(field(e, "id", l), child(l, "id"));
    const int from = vertex_named(f.base.vertices, text(field(e, "from", l), child(l, "from")), child(l, "from"));
    const int to = vertex_named(f.base.vertices, text(field(e, "to", l), child(l, "to")), child(l, "to"));
    f.base.edges.push_back({id, from, to});
    Chart chart;
    const auto lc = child(l, "chart");
    const auto& cj = array(field(e, "chart", l), lc);
    for (std::size_t k = 0; k < cj.size(); ++k) {
      const auto lk = child(lc, k);
      chart.push_back({read_rational(field(cj[k], "t", lk), child(lk, "t")),
                       read_lengths(field(cj[k], "lengths", lk), child(lk, "lengths"))});
    }
    f.charts.push_back(std::move(chart));
    const json* gf = optional_field(e, "glueFrom");
    const json* gt = optional_field(e, "glueTo");
    f.glue_from.push_back(gf ? read_perm(*gf, child(l, "glueFrom")) : Perm::identity());
    f.glue_to.push_back(gt ? read_perm(*gt, child(l, "glueTo")) : Perm::identity());
  }
  try {
    validate_family(f);
  } catch (const FamilyError& e) {
    std::string loc = at;
    if (!e.witnesses().empty()) {
      if (auto edge = f.base.find_edge(e.witnesses().back())) loc = child(le, static_cast<std::size_t>(*edge));
      else if (auto v = f.base.find_vertex(e.witnesses().front())) loc = child(lv, static_cast<std::size_t>(*v));
    }
    bad(loc, e.what());
  }
  return f;
}

json write_family(const PLFamily& f) {
  json j;
  j["vertices"] = json::array();
  for (int v = 0; v < f.base.vertex_count(); ++v)
    j["vertices"].push_back({{"id", f.base.vertices[v]}, {"lengths", write_lengths(f.vertex_lengths[v])}});
  j["edges"] = json::array();
  for (int e = 0; e < f.base.edge_count(); ++e) {
    const auto& edge = f.base.edges[e];
    json chart = json::array();
    for (const auto& cp : f.charts[e]) chart.push_back({{"t", to_string(cp.t)}, {"lengths", write_lengths(cp.lengths)}});
    j["edges"].push_back({{"id", edge.id},
                          {"from", f.base.vertices[edge.from]},
                          {"to", f.base.vertices[edge.to]},
                          {"chart", chart},
                          {"glueFrom", f.glue_from[e].label()},
                          {"glueTo", f.glue_to[e].label()}});
  }
  return j;
}

namespace {

FiniteGroup read_group(const json& j, const std::string& at) {
  try {
    if (j.is_string()) return FiniteGroup::named(j.get<std::string>());
    const auto& labels = array(field(j, "labels", at), child(at, "labels"));
    const auto& table = array(field(j, "table", at), child(at, "table"));
    std::vector<std::string> ls;
    for (std::size_t i = 0; i < labels.size(); ++i) ls.push_back(text(labels[i], child(child(at, "labels"), i)));
    std::vector<std::vector<int>> rows;
    for (std::size_t i = 0; i < table.size(); ++i) {
      std::vector<int> row;
      for (const auto& x : array(table[i], child(child(at, "table"), i))) {
        if (!x.is_number_integer()) bad(child(child(at, "table"), i), "expected element indices");
        row.push_back(x.get<int>());
      }
      rows.push_back(std::move(row));
    }
    std::string name = "table";
    if (const json* n = optional_field(j, "name")) name = text(*n, child(at, "name"));
    return FiniteGroup(name, std::move(ls), std::move(rows));
  } catch (const TorsorError& e) {
    bad(at, e.what());
  }
}

json write_group(const FiniteGroup& g) {
  try {
    const auto standard = FiniteGroup::named(g.name());
    bool same = standard.table() == g.table();
    for (int a = 0; same && a < g.order(); ++a) same = standard.label(a) == g.label(a);
    if (same) return g.name();
  } catch (const TorsorError&) {
  }
  json labels = json::array();
  for (int a = 0; a < g.order(); ++a) labels.push_back(g.label(a));
  return {{"name", g.name()}, {"labels", labels}, {"table", g.table()}};
}

}  // namespace

TorsorCocycle read_torsor(const json& j, const std::string& at) {
  TorsorCocycle t;
  const auto lv = child(at, "vertices");
  const auto& vs = array(field(j, "vertices", at), lv);
  for (std::size_t i = 0; i < vs.size(); ++i) t.base.vertices.push_back(text(vs[i], child(lv, i)));
  t.group = read_group(field(j, "group", at), child(at, "group"));
  const auto lt = child(at, "transitions");
  const auto& tj = object(field(j, "transitions", at), lt);
  const bool explicit_edges = optional_field(j, "edges") != nullptr;
  if (explicit_edges) {
    const auto le = child(at, "edges");
    const auto& es = array(field(j, "edges", at), le);
    for (std::size_t i = 0; i < es.size(); ++i) {
      const auto l = child(le, i);
      t.base.edges.push_back({text(field(es[i], "id", l), child(l, "id")),
                              vertex_named(t.base.vertices, text(field(es[i], "from", l), child(l, "from")), child(l, "from")),
                              vertex_named(t.base.vertices, text(field(es[i], "to", l), child(l, "to")), child(l, "to"))});
    }
  } else {
    for (auto it = tj.begin(); it != tj.end(); ++it) {
      const auto arrow = it.key().find("->");
      if (arrow == std::string::npos) bad(lt, "expected a key \"v->w\", got \"" + it.key() + "\"");
      const int from = vertex_named(t.base.vertices, it.key().substr(0, arrow), child(lt, it.key()));
      const int to = vertex_named(t.base.vertices, it.key().substr(arrow + 2), child(lt, it.key()));
      t.base.edges.push_back({it.key(), from, to});
    }
  }
  if (const json* fj = optional_field(j, "faces")) {
    const auto lf = child(at, "faces");
    array(*fj, lf);
    for (std::size_t i = 0; i < fj->size(); ++i) {
      const auto l = child(lf, i);
      const auto& face = (*fj)[i];
      if (!face.is_array() || face.size() != 3) bad(l, "expected three vertices");
      t.base.faces.push_back({vertex_named(t.base.vertices, text(face[0], l), l),
                              vertex_named(t.base.vertices, text(face[1], l), l),
                              vertex_named(t.base.vertices, text(face[2], l), l)});
    }
  }
  try {
    validate_base(t.base);
  } catch (const TorsorError& e) {
    bad(at, e.what());
  }
  t.transitions.assign(t.base.edge_count(), -1);
  for (auto it = tj.begin(); it != tj.end(); ++it) {
    const auto l = child(lt, it.key());
    const auto label = text(it.value(), l);
    auto element = t.group.find(label);
    if (!element) bad(l, "\"" + label + "\" is not an element of " + t.group.name());
    std::optional<Step> step;
    for (int e = 0; e < t.base.edge_count(); ++e)
      if (t.base.edges[e].id == it.key()) step = Step{e, true};
    if (!step) {
      const auto arrow = it.key().find("->");
      if (arrow == std::string::npos) bad(l, "unknown edge \"" + it.key() + "\"");
      step = step_between(t.base, vertex_named(t.base.vertices, it.key().substr(0, arrow), l),
                          vertex_named(t.base.vertices, it.key().substr(arrow + 2), l));
      if (!step) bad(l, "no unique edge \"" + it.key() + "\"");
    }
    t.transitions[step->first] = step->second ? *element : t.group.inverse(*element);
  }
  for (int e = 0; e < t.base.edge_count(); ++e)
    if (t.transitions[e] < 0) bad(lt, "no transition for edge \"" + t.base.edges[e].id + "\"");
  return t;
}

json write_torsor(const TorsorCocycle& t) {
  json j;
  j["vertices"] = t.base.vertices;
  j["edges"] = json::array();
  j["transitions"] = json::object();
  for (int e = 0; e < t.base.edge_count(); ++e) {
    const auto& edge = t.base.edges[e];
    j["edges"].push_back({{"id", edge.id}, {"from", t.base.vertices[edge.from]}, {"to", t.base.vertices[edge.to]}});
    j["transitions"][edge.id] = t.group.label(t.transitions[e]);
  }
  j["faces"] = json::array();
  for (const auto& f : t.base.faces)
    j["faces"].push_back({t.base.vertices[f[0]], t.base.vertices[f[1]], t.base.vertices[f[2]]});
  j["group"] = write_group(t.group);
  return j;
}

DescentPieces read_pieces(const json& j, const std::string& at) {
  auto t = read_torsor(j, at);
  return {t.base, t.group, t.transitions};
}

TorsorPair read_pair(const json& j, const std::string& at) {
  TorsorPair p;
  p.torsor = read_torsor(j, at);
  const auto& base = p.torsor.base;
  p.at.resize(base.vertex_count());
  p.along.resize(base.edge_count());
  std::vector<std::array<bool, 6>> seen_v(base.vertex_count(), std::array<bool, 6>{});
  std::vector<std::array<bool, 6>> seen_e(base.edge_count(), std::array<bool, 6>{});
  const auto lq = child(at, "equivariant");
  const auto& eq = object(field(j, "equivariant", at), lq);
  for (auto it = eq.begin(); it != eq.end(); ++it) {
    const int v = vertex_named(base.vertices, it.key(), lq);
    const auto lv = child(lq, it.key());
    for (auto s = object(it.value(), lv).begin(); s != it.value().end(); ++s) {
      const auto ls = child(lv, s.key());
      const auto x = Perm::parse(s.key());
      if (!x) bad(ls, "unknown sheet \"" + s.key() + "\"");
      p.at[v][x->index()] = read_lengths(s.value(), ls);
      seen_v[v][x->index()] = true;
    }
  }
  const auto lh = child(at, "homotopies");
  const auto& hj = object(field(j, "homotopies", at), lh);
  for (auto it = hj.begin(); it != hj.end(); ++it) {
    int e = -1;
    for (int k = 0; k < base.edge_count(); ++k)
      if (base.edges[k].id == it.key()) e = k;
    if (e < 0) bad(lh, "unknown edge \"" + it.key() + "\"");
    const auto le = child(lh, it.key());
    for (auto s = object(it.value(), le).begin(); s != it.value().end(); ++s) {
      const auto ls = child(le, s.key());
      const auto x = Perm::parse(s.key());
      if (!x) bad(ls, "unknown sheet \"" + s.key() + "\"");
      Chart chart;
      for (std::size_t k = 0; k < array(s.value(), ls).size(); ++k) {
        const auto lk = child(ls, k);
        chart.push_back({read_rational(field(s.value()[k], "t", lk), child(lk, "t")),
                         read_lengths(field(s.value()[k], "lengths", lk), child(lk, "lengths"))});
      }
      p.along[e][x->index()] = std::move(chart);
      seen_e[e][x->index()] = true;
    }
  }
  for (int v = 0; v < base.vertex_count(); ++v)
    for (int x = 0; x < 6; ++x)
      if (!seen_v[v][x]) bad(lq, "missing sheet " + Perm::from_index(x).label() + " at \"" + base.vertices[v] + "\"");
  for (int e = 0; e < base.edge_count(); ++e)
    for (int x = 0; x < 6; ++x)
      if (!seen_e[e][x]) bad(lh, "missing sheet " + Perm::from_index(x).label() + " along \"" + base.edges[e].id + "\"");
  try {
    validate_pair(p);
  } catch (const TorsorError& e) {
    bad(at, e.what());
  }
  return p;
}

json write_pair(const TorsorPair& p) {
  json j = write_torsor(p.torsor);
  const auto& base = p.torsor.base;
  j["equivariant"] = json::object();
  for (int v = 0; v < base.vertex_count(); ++v)
    for (int x = 0; x < 6; ++x) j["equivariant"][base.vertices[v]][Perm::from_index(x).label()] = write_lengths(p.at[v][x]);
  j["homotopies"] = json::object();
  for (int e = 0; e < base.edge_count(); ++e)
    for (int x = 0; x < 6; ++x) {
      json chart = json::array();
      for (const auto& cp : p.along[e][x]) chart.push_back({{"t", to_string(cp.t)}, {"lengths", write_lengths(cp.lengths)}});
      j["homotopies"][base.edges[e].id][Perm::from_index(x).label()] = chart;
    }
  return j;
}

Deformation read_deformation(const json& j, const std::string& at) {
  Deformation d;
  d.family = read_family(j, at);
  d.basepoint = vertex_named(d.family.base.vertices, text(field(j, "basepoint", at), child(at, "basepoint")),
                             child(at, "basepoint"));
  d.triangle = read_lengths(field(j, "triangle", at), child(at, "triangle"));
  d.marking = read_perm(field(j, "marking", at), child(at, "marking"));
  try {
    validate_deformation(d);
  } catch (const DeformError& e) {
    bad(at, e.what());
  }
  return d;
}

json write_deformation(const Deformation& d) {
  json j = write_family(d.family);
  j["basepoint"] = d.family.base.vertices[d.basepoint];
  j["triangle"] = write_lengths(d.triangle);
  j["marking"] = d.marking.label();
  return j;
}

}  // namespace trimod::io
