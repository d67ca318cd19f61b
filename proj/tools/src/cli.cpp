#include "trimod/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace trimod::cli {

namespace {

using io::json;

std::string join(const std::vector<std::string>& parts, const std::string& sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

std::string describe(const std::string& reason, const std::vector<std::string>& witness) {
  return witness.empty() ? reason : reason + " [" + join(witness) + "]";
}

std::string describe(const Verdict& v) { return v.ok ? "ok" : "fails: " + describe(v.reason, v.witness); }

struct Context {
  std::vector<std::string> args;
  json inputs = json::object();
  json result = json::object();
  std::ostringstream out;
  std::string data;
  int exit = kSuccess;

  json load(const std::string& path) {
    json j = io::load_json(path);
    inputs[path] = j;
    return j;
  }

  // Reads a document, prefixing input errors with the file name.
  template <class Read>
  auto read(const std::string& path, Read reader) {
    const json j = load(path);
    try {
      return reader(j);
    } catch (const io::InputError& e) {
      throw io::InputError(path + ":" + e.location(), e.message());
    }
  }

  void verdict(bool ok) {
    if (!ok) exit = kNegative;
    result["verdict"] = ok;
  }
};

json lengths_json(const TriangleLengths& t) { return io::write_lengths(t); }

std::vector<std::string> labels(const std::vector<Perm>& perms) {
  std::vector<std::string> out;
  for (const auto& p : perms) out.push_back(p.label());
  return out;
}

// "name=value" per index.
template <class Name>
std::string assignment(const std::vector<Perm>& values, Name name) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < values.size(); ++i) parts.push_back(name(static_cast<int>(i)) + "=" + values[i].label());
  return join(parts);
}

std::string walk_text(const BaseGraph& base, const std::vector<std::pair<int, bool>>& walk) {
  std::vector<std::string> parts;
  for (const auto& [e, forward] : walk) parts.push_back(base.edges[e].id + (forward ? "+" : "-"));
  return join(parts, " ");
}

// classify ----------------------------------------------------------------

void classify(Context& ctx, const std::vector<std::string>& values) {
  TriangleLengths t;
  Rational* slots[3] = {&t.x, &t.y, &t.z};
  for (int i = 0; i < 3; ++i) *slots[i] = io::read_rational(json(values[i]), "argument " + std::to_string(i + 1));
  ctx.result["lengths"] = lengths_json(t);
  if (!in_M(t)) {
    ctx.out << "not in M: " << t << " violates the strict triangle inequality\n";
    ctx.result["inM"] = false;
    ctx.verdict(false);
    return;
  }
  const auto stab = stabilizer(t);
  const auto n = to_N(t);
  ctx.out << "in M; " << to_string(triangle_type(t)) << "; stabilizer {" << join(labels(stab)) << "}; N-representative "
          << n << "\n";
  ctx.result["inM"] = true;
  ctx.result["type"] = std::string(to_string(triangle_type(t)));
  ctx.result["stabilizer"] = labels(stab);
  ctx.result["nRepresentative"] = lengths_json(n);
  ctx.verdict(true);
}

// site-check / stack-check -------------------------------------------------

FiniteSite load_site(Context& ctx, const std::string& path) {
  return ctx.read(path, [](const json& j) { return io::read_site(j); });
}

bool report_site(Context& ctx, const FiniteSite& site) {
  const auto v = validate_site(site);
  ctx.out << "T1: " << describe(v.t1) << "\nT2: " << describe(v.t2) << "\nT3: " << describe(v.t3) << "\n";
  ctx.result["site"] = {{"T1", v.t1.ok}, {"T2", v.t2.ok}, {"T3", v.t3.ok}};
  return v.ok();
}

void site_check(Context& ctx, const std::string& path) {
  const auto site = load_site(ctx, path);
  const bool ok = report_site(ctx, site);
  ctx.out << (ok ? "site: yes\n" : "site: no\n");
  ctx.verdict(ok);
}

CategoryOver load_fibration_over(Context& ctx, const std::string& path, const FinCat& base) {
  return ctx.read(path, [&](const json& j) {
    if (j.is_object() && j.contains("base")) {
      const auto own = io::read_category(j["base"], "/base");
      if (!(own == base)) throw io::InputError("/base", "base category differs from the site category");
    }
    return io::read_fibration(j, base);
  });
}

void stack_check(Context& ctx, const std::string& site_path, const std::string& fibration_path) {
  const auto site = load_site(ctx, site_path);
  const auto over = load_fibration_over(ctx, fibration_path, site.base);
  if (!report_site(ctx, site)) {
    ctx.out << "not a site\n";
    ctx.verdict(false);
    return;
  }
  const auto fibered = is_fibered(over);
  ctx.result["fibration"] = std::string(to_string(fibered.status));
  if (fibered.status == FibrationStatus::Neither) {
    ctx.out << "not fibered: " << fibered.reason << "\n";
    ctx.verdict(false);
    return;
  }
  const DescentContext dc{over, default_cleavage(over), site};
  const auto v = stack_verdict(dc);
  ctx.result["status"] = std::string(to_string(v.status));
  ctx.result["witness"] = v.witness;
  switch (v.status) {
    case StackStatus::Stack:
      ctx.out << "stack: yes\n";
      break;
    case StackStatus::PrestackOnly:
      ctx.out << "stack: no; prestack only: " << describe(v.reason, v.witness) << "\n";
      break;
    case StackStatus::Neither:
      ctx.out << "stack: no; not a prestack: " << describe(v.reason, v.witness) << "\n";
      break;
  }
  ctx.verdict(v.status == StackStatus::Stack);
}

// groth-roundtrip -----------------------------------------------------------

void groth_roundtrip(Context& ctx, const std::string& path) {
  const json doc = ctx.load(path);
  auto wrap = [&](auto reader) {
    try {
      return reader();
    } catch (const io::InputError& e) {
      throw io::InputError(path + ":" + e.location(), e.message());
    }
  };
  if (doc.is_object() && doc.contains("fibers")) {
    const auto p = wrap([&] { return io::read_pseudofunctor(doc); });
    const auto valid = validate_pseudofunctor(p);
    ctx.out << "pseudo-functor: " << describe(valid) << "\n";
    ctx.result["input"] = "pseudo-functor";
    ctx.result["valid"] = valid.ok;
    if (!valid) return ctx.verdict(false);
    const auto total = total_category(p);
    const auto fibered = is_fibered(total.over);
    const auto cleavage = canonical_cleavage(p, total);
    bool cartesian = true;
    for (const auto& [key, lift] : cleavage) cartesian = cartesian && is_cartesian(total.over, lift);
    const bool back = fiberwise_isomorphic(p, extract_pseudofunctor(total.over, cleavage));
    const bool is_fib = fibered.status != FibrationStatus::Neither;
    ctx.out << "total category: " << total.over.total.object_count() << " objects, "
            << total.over.total.morphism_count() << " morphisms; fibered: " << (is_fib ? "yes" : "no")
            << "\ncanonical lifts cartesian: " << (cartesian ? "yes" : "no")
            << "\nround trip: " << (back ? "yes" : "no") << "\n";
    ctx.result["fibered"] = is_fib;
    ctx.result["cartesian"] = cartesian;
    ctx.result["roundtrip"] = back;
    return ctx.verdict(is_fib && cartesian && back);
  }
  const auto over = wrap([&] { return io::read_fibration(doc); });
  const auto fibered = is_fibered(over);
  ctx.result["input"] = "fibration";
  ctx.result["fibration"] = std::string(to_string(fibered.status));
  if (fibered.status == FibrationStatus::Neither) {
    ctx.out << "fibered: no: " << fibered.reason << "\n";
    return ctx.verdict(false);
  }
  const bool back = roundtrip_check(over);
  ctx.out << "fibered: yes (" << to_string(fibered.status) << ")\nround trip: " << (back ? "yes" : "no") << "\n";
  ctx.result["roundtrip"] = back;
  ctx.verdict(back);
}

// descent-glue ---------------------------------------------------------------

void glue_pieces(Context& ctx, const std::string& path) {
  const auto pieces = ctx.read(path, [](const json& j) { return io::read_pieces(j); });
  try {
    const auto glued = glue_descent(pieces);
    const auto trivial = is_trivial(glued.torsor);
    std::vector<std::string> parts;
    for (int e = 0; e < glued.torsor.base.edge_count(); ++e)
      parts.push_back(glued.torsor.base.edges[e].id + "=" + glued.torsor.group.label(glued.torsor.transitions[e]));
    ctx.out << "glued: yes; " << glued.simplices.size() << " simplices, group " << glued.torsor.group.name()
            << "\ntransitions: " << join(parts) << "\ntrivial: " << (trivial.trivial ? "yes" : "no") << "\n";
    ctx.result["glued"] = io::write_torsor(glued.torsor);
    ctx.result["trivial"] = trivial.trivial;
    ctx.verdict(true);
  } catch (const TorsorError& e) {
    if (e.kind() != TorsorError::Kind::CocycleFails && e.kind() != TorsorError::Kind::FaceCocycleFails) throw;
    ctx.out << "glued: no; " << describe(e.what(), e.witnesses()) << "\n";
    ctx.result["reason"] = e.what();
    ctx.result["witness"] = e.witnesses();
    ctx.verdict(false);
  }
}

void glue_datum(Context& ctx, const std::string& site_path, const std::string& fibration_path,
                const std::string& datum_path) {
  const auto site = load_site(ctx, site_path);
  const auto over = load_fibration_over(ctx, fibration_path, site.base);
  if (is_fibered(over).status == FibrationStatus::Neither)
    throw io::InputError(fibration_path, "not a fibered category");
  const DescentContext dc{over, default_cleavage(over), site};
  const auto d = ctx.read(datum_path, [&](const json& j) { return io::read_datum(j, dc); });
  const auto cocycle = check_cocycle(dc, d);
  if (!cocycle.ok) {
    std::vector<std::string> w;
    if (cocycle.witness) {
      const auto [i, j, k] = *cocycle.witness;
      w = {std::to_string(i), std::to_string(j), std::to_string(k)};
    }
    ctx.out << "cocycle: fails: " << describe(cocycle.reason, w) << "\n";
    ctx.result["cocycle"] = false;
    ctx.result["witness"] = w;
    return ctx.verdict(false);
  }
  ctx.result["cocycle"] = true;
  const auto witness = is_effective(dc, d);
  if (!witness) {
    ctx.out << "cocycle: ok\neffective: no\n";
    ctx.result["effective"] = false;
    return ctx.verdict(false);
  }
  std::vector<std::string> isos;
  for (Mor m : witness->isos) isos.push_back(over.total.morphism_name(m));
  ctx.out << "cocycle: ok\neffective: yes; glued object " << over.total.object_name(witness->object)
          << "; isomorphisms " << join(isos) << "\n";
  ctx.result["effective"] = true;
  ctx.result["object"] = over.total.object_name(witness->object);
  ctx.result["isomorphisms"] = isos;
  ctx.verdict(true);
}

// families ------------------------------------------------------------------

PLFamily load_family(Context& ctx, const std::string& path) {
  return ctx.read(path, [](const json& j) { return io::read_family(j); });
}

void report_iso(Context& ctx, const PLFamily& f, const IsoResult& r) {
  if (r) {
    const auto tau = assignment(r.witness->tau, [&](int e) { return f.base.edges[e].id; });
    const auto h = assignment(r.witness->vertex_h, [&](int v) { return f.base.vertices[v]; });
    ctx.out << "isomorphic: yes\ntau: " << tau << "\nh: " << h << "\n";
    ctx.result["tau"] = labels(r.witness->tau);
    ctx.result["h"] = labels(r.witness->vertex_h);
  } else {
    ctx.out << "isomorphic: no; " << r.infeasibility.message << "\n";
    ctx.result["infeasibility"] = r.infeasibility.message;
  }
  ctx.result["isomorphic"] = static_cast<bool>(r);
}

void family_iso(Context& ctx, const std::string& first, const std::string& second) {
  const auto f = load_family(ctx, first);
  const auto g = load_family(ctx, second);
  if (!(f.base == g.base)) throw io::InputError(second, "families have different base graphs");
  const auto r = are_isomorphic(f, g);
  report_iso(ctx, f, r);
  ctx.verdict(static_cast<bool>(r));
}

void report_orientation(Context& ctx, const PLFamily& f, const OrientationResult& r, json& into) {
  if (r.orientable) {
    ctx.out << "orientable: yes; sigma: " << assignment(r.sigma, [&](int v) { return f.base.vertices[v]; }) << "\n";
    into["sigma"] = labels(r.sigma);
  } else {
    ctx.out << "orientable: no; monodromy " << r.monodromy << " around " << walk_text(f.base, r.cycle) << "\n";
    into["monodromy"] = r.monodromy.label();
    into["cycle"] = walk_text(f.base, r.cycle);
  }
  into["orientable"] = r.orientable;
}

void orientable(Context& ctx, const std::string& path) {
  const auto f = load_family(ctx, path);
  const auto r = is_orientable(f);
  report_orientation(ctx, f, r, ctx.result);
  ctx.verdict(r.orientable);
}

FamilyInvariant invariant_named(const std::string& name) {
  if (name == "perimeter") return invariants::perimeter();
  if (name == "longest-minus-shortest") return invariants::longest_minus_shortest();
  if (name == "heron") return invariants::heron();
  if (name == "chart-y") return invariants::chart_y();
  throw io::InputError("--beta", "unknown invariant \"" + name + "\"");
}

void coarse_check(Context& ctx, const std::string& beta, std::uint64_t seed, int count,
                  const std::vector<std::string>& files) {
  const auto invariant = invariant_named(beta);
  auto families = family_corpus::generate(seed, count);
  for (const auto& path : files) families.push_back({path, load_family(ctx, path)});
  const auto v = check_coarse_factorization(invariant, families);
  ctx.out << "beta " << beta << " over " << families.size() << " families: "
          << (v.ok ? "factors through N" : describe(v.reason, v.witness)) << "\n";
  ctx.result["families"] = families.size();
  ctx.result["reason"] = v.reason;
  ctx.result["witness"] = v.witness;
  ctx.verdict(v.ok);
}

// demos ---------------------------------------------------------------------

void demo_remark25(Context& ctx) {
  const auto pair = fixture_remark25();
  const auto nf = classify_to_N(pair.f);
  const auto ng = classify_to_N(pair.g);
  const bool same = pl_equal(nf, ng);
  const auto r = are_isomorphic(pair.f, pair.g);
  for (int v = 0; v < pair.f.base.vertex_count(); ++v)
    ctx.out << "vertex " << pair.f.base.vertices[v] << ": F " << pair.f.vertex_lengths[v] << ", G "
            << pair.g.vertex_lengths[v] << ", N " << nf.vertices[v] << "\n";
  ctx.out << "same N-map: " << (same ? "yes" : "no") << "; isomorphic: " << (r ? "yes" : "no") << "\n";
  if (!r) ctx.out << "witness: " << r.infeasibility.message << "\n";
  ctx.result["sameNMap"] = same;
  ctx.result["isomorphic"] = static_cast<bool>(r);
  ctx.result["witness"] = r ? "" : r.infeasibility.message;
  ctx.verdict(same && !r);
}

void demo_mobius(Context& ctx) {
  const auto f = fixture_mobius();
  ctx.out << "Mobius family: ";
  json mobius;
  const auto r = is_orientable(f);
  report_orientation(ctx, f, r, mobius);
  bool refused = false;
  try {
    classify_to_M(f);
  } catch (const FamilyError& e) {
    refused = e.kind() == FamilyError::Kind::NotOriented;
  }
  ctx.out << "classify_to_M: " << (refused ? "refused (not oriented)" : "defined") << "\n";
  const auto cover = fixture_double_cover();
  const auto lifted = pullback_family(cover, f);
  json pulled;
  ctx.out << "pullback to the connected double cover: ";
  const auto lr = is_orientable(lifted);
  report_orientation(ctx, lifted, lr, pulled);
  ctx.result["mobius"] = mobius;
  ctx.result["mobiusClassifyToM"] = refused ? "refused" : "defined";
  ctx.result["doubleCover"] = pulled;
  ctx.verdict(!r.orientable && r.monodromy == *Perm::parse("(AB)") && refused && lr.orientable);
}

// plot-data -----------------------------------------------------------------

std::string decimal(const Rational& q) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << q.get_d();
  return s.str();
}

void plot_data(Context& ctx, int denominator) {
  if (denominator < 1 || denominator > 200) throw io::InputError("--denominator", "expected 1..200");
  std::ostringstream csv;
  csv << "x,y,z,region\n";
  int rows = 0;
  const int total = 2 * denominator;
  auto emit = [&](const TriangleLengths& t, const std::string& region) {
    csv << decimal(t.x) << "," << decimal(t.y) << "," << decimal(t.z) << "," << region << "\n";
    ++rows;
  };
  // Perimeter-2 slice of the cone, then its sorted chamber N.
  for (int a = 0; a <= total; ++a)
    for (int b = 0; a + b <= total; ++b) {
      const int c = total - a - b;
      const TriangleLengths t{Rational(a, denominator), Rational(b, denominator), Rational(c, denominator)};
      const int longest = std::max({a, b, c});
      if (longest > denominator) continue;
      const bool boundary = longest == denominator;
      emit(t, boundary ? "M-boundary" : "M");
      if (a <= b && b <= c) {
        if (boundary) emit(t, "N-boundary");
        else if (a == c) emit(t, "N-equilateral");
        else if (a == b || b == c) emit(t, "N-isosceles");
        else emit(t, "N-scalene");
      }
    }
  ctx.data = csv.str();
  ctx.out << "plot-data: " << rows << " points at denominator " << denominator << "\n";
  ctx.result["rows"] = rows;
  ctx.result["denominator"] = denominator;
  ctx.verdict(true);
}

std::vector<std::string> echoed(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--json") {
      ++i;
      continue;
    }
    if (args[i].rfind("--json=", 0) == 0) continue;
    out.push_back(args[i]);
  }
  return out;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"Finite fibered categories, descent and moduli of triangles", "trimod"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string json_path;
  std::uint64_t seed = 1;
  app.add_option("--json", json_path, "write a machine-readable report");
  app.add_option("--seed", seed, "seed for corpus generators");

  std::vector<std::string> lengths;
  auto* c_classify = app.add_subcommand("classify", "classify an edge-length triple");
  c_classify->add_option("lengths", lengths, "three exact rationals p/q")->expected(3)->required();

  std::string file1, file2, file3;
  auto* c_site = app.add_subcommand("site-check", "check the covering axioms of a finite site");
  c_site->add_option("site", file1)->required();
  auto* c_stack = app.add_subcommand("stack-check", "decide whether a fibration over a site is a stack");
  c_stack->add_option("site", file1)->required();
  c_stack->add_option("fibration", file2)->required();
  auto* c_groth = app.add_subcommand("groth-roundtrip", "Grothendieck construction round trip");
  c_groth->add_option("file", file1, "pseudo-functor or fibration")->required();
  std::vector<std::string> glue_files;
  auto* c_glue = app.add_subcommand("descent-glue", "glue torsor pieces, or test a descent datum for effectiveness");
  c_glue->add_option("files", glue_files, "pieces.json | site.json fibration.json datum.json")->required();
  auto* c_iso = app.add_subcommand("family-iso", "decide isomorphism of two families");
  c_iso->add_option("first", file1)->required();
  c_iso->add_option("second", file2)->required();
  auto* c_orient = app.add_subcommand("orientable", "decide orientability of a family");
  c_orient->add_option("family", file1)->required();
  std::string beta;
  int count = 40;
  std::vector<std::string> coarse_files;
  auto* c_coarse = app.add_subcommand("coarse-check", "test an invariant for factorization through N");
  c_coarse->add_option("--beta", beta, "perimeter | longest-minus-shortest | heron | chart-y")->required();
  c_coarse->add_option("--count", count, "generated corpus size")->check(CLI::Range(0, 100000));
  c_coarse->add_option("families", coarse_files, "extra family files");
  app.add_subcommand("demo-remark25", "two non-isomorphic families with the same N-map");
  app.add_subcommand("demo-mobius", "the non-orientable Mobius family");
  int denominator = 12;
  auto* c_plot = app.add_subcommand("plot-data", "CSV sample of the M slice and N chamber");
  c_plot->add_option("--denominator", denominator, "grid denominator");

  Context ctx;
  ctx.args = echoed(args);
  CommandResult result;
  std::string command;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (!json_path.empty()) result.json_path = json_path;
    command = app.get_subcommands().front()->get_name();
    if (command == "classify") classify(ctx, lengths);
    else if (command == "site-check") site_check(ctx, file1);
    else if (command == "stack-check") stack_check(ctx, file1, file2);
    else if (command == "groth-roundtrip") groth_roundtrip(ctx, file1);
    else if (command == "descent-glue") {
      if (glue_files.size() == 1) glue_pieces(ctx, glue_files[0]);
      else if (glue_files.size() == 3) glue_datum(ctx, glue_files[0], glue_files[1], glue_files[2]);
      else throw io::InputError("descent-glue", "expected one pieces file or site, fibration and datum files");
    } else if (command == "family-iso") family_iso(ctx, file1, file2);
    else if (command == "orientable") orientable(ctx, file1);
    else if (command == "coarse-check") coarse_check(ctx, beta, seed, count, coarse_files);
    else if (command == "demo-remark25") demo_remark25(ctx);
    else if (command == "demo-mobius") demo_mobius(ctx);
    else if (command == "plot-data") plot_data(ctx, denominator);
  } catch (const CLI::CallForHelp&) {
    result.report = app.help();
    return result;
  } catch (const CLI::CallForAllHelp&) {
    result.report = app.help("", CLI::AppFormatMode::All);
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = kInputError;
    result.report = "error: " + std::string(e.what()) + "\n";
    return result;
  } catch (const io::InputError& e) {
    ctx.exit = kInputError;
    ctx.out.str("");
    ctx.out << "error: " << e.what() << "\n";
    ctx.result = {{"error", e.what()}};
  } catch (const std::exception& e) {
    ctx.exit = kInputError;
    ctx.out.str("");
    ctx.out << "error: " << e.what() << "\n";
    ctx.result = {{"error", e.what()}};
  }
  result.exit_code = ctx.exit;
  result.report = ctx.out.str();
  result.data = ctx.data;
  result.machine = json{{"command", command},  {"args", ctx.args},        {"inputs", ctx.inputs},
                        {"result", ctx.result}, {"exit", result.exit_code}, {"report", result.report}};
  return result;
}

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto r = run(args);
  (r.exit_code == kInputError ? err : out) << r.report;
  out << r.data;
  if (r.json_path && r.machine) {
    std::ofstream file(*r.json_path, std::ios::binary);
    file << r.machine->dump(2) << "\n";
    if (!file) {
      err << "error: " << *r.json_path << ": cannot write report\n";
      return kInputError;
    }
  }
  return r.exit_code;
}

}  // namespace trimod::cli
