#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "trimod/cli.hpp"

using namespace trimod;
namespace fs = std::filesystem;

namespace {

const fs::path kData = TRIMOD_TEST_DATA;
const fs::path kGolden = TRIMOD_TEST_GOLDEN;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct CliRun {
  int exit;
  std::string output;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  const int code = cli::execute(args, out, out);
  return {code, out.str()};
}

// Runs relative to the data directory so reports carry short paths.
struct InData {
  fs::path saved = fs::current_path();
  InData() { fs::current_path(kData); }
  ~InData() { fs::current_path(saved); }
};

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "trimod_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const io::json& j) { std::ofstream(p) << j.dump(2) << "\n"; }

struct GoldenCase {
  std::string name;
  int exit;
  std::vector<std::string> args;
};

std::vector<GoldenCase> golden_cases() {
  std::vector<GoldenCase> cases;
  std::istringstream lines(slurp(kGolden / "cases.txt"));
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream words(line);
    GoldenCase c;
    words >> c.name >> c.exit;
    for (std::string w; words >> w;) c.args.push_back(w);
    cases.push_back(std::move(c));
  }
  return cases;
}

}  // namespace

TEST(CliGolden, OutputsAndExitCodes) {
  InData here;
  const auto cases = golden_cases();
  ASSERT_GE(cases.size(), 20u);
  for (const auto& c : cases) {
    const CliRun r = run_cli(c.args);
    EXPECT_EQ(r.exit, c.exit) << c.name;
    EXPECT_EQ(r.output, slurp(kGolden / (c.name + ".out"))) << c.name;
  }
}

TEST(CliGolden, DocumentedExamples) {
  EXPECT_EQ(run_cli({"classify", "3/1", "4/1", "5/1"}).output,
            "in M; scalene; stabilizer {e}; N-representative (3,4,5)\n");
  const CliRun demo = run_cli({"demo-remark25"});
  EXPECT_EQ(demo.exit, 0);
  EXPECT_NE(demo.output.find("same N-map: yes; isomorphic: no"), std::string::npos);
  EXPECT_NE(demo.output.find("edge-1 forces e, edge-2 forces (AB), vertex 1/2 clash"), std::string::npos);
  const std::string f = (kData / "remark25_f.json").string();
  const CliRun self = run_cli({"family-iso", f, f});
  EXPECT_EQ(self.exit, 0);
  EXPECT_NE(self.output.find("tau: edge-1=e, edge-2=e"), std::string::npos);
}

TEST(CliUsage, HelpAndBadInvocations) {
  EXPECT_EQ(run_cli({"--help"}).exit, 0);
  EXPECT_EQ(run_cli({}).exit, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).exit, 2);
  EXPECT_EQ(run_cli({"classify", "1", "2"}).exit, 2);
  EXPECT_EQ(run_cli({"coarse-check", "--beta", "volume"}).exit, 2);
  EXPECT_EQ(run_cli({"plot-data", "--denominator", "0"}).exit, 2);
  const CliRun wrong = run_cli({"descent-glue", "a.json", "b.json"});
  EXPECT_EQ(wrong.exit, 2);
}

TEST(CliAdapter, ClassifyMatchesGeometry) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    TriangleLengths t{Rational(static_cast<long>(rng() % 9) + 1, static_cast<long>(rng() % 4) + 1),
                            Rational(static_cast<long>(rng() % 9) + 1, static_cast<long>(rng() % 4) + 1),
                            Rational(static_cast<long>(rng() % 9) + 1, static_cast<long>(rng() % 4) + 1)};
    for (Rational* q : {&t.x, &t.y, &t.z}) q->canonicalize();
    const auto r = cli::run({"classify", to_string(t.x), to_string(t.y), to_string(t.z)});
    EXPECT_EQ(r.exit_code == 0, in_M(t)) << t;
    if (in_M(t)) {
      EXPECT_EQ(r.machine->at("result").at("stabilizer").size(), stabilizer(t).size()) << t;
      EXPECT_EQ(io::read_lengths(r.machine->at("result").at("nRepresentative"), ""), to_N(t)) << t;
    }
  }
}

TEST(CliAdapter, FamilyVerdictsMatchLibrary) {
  const auto families = family_corpus::generate(17, 24);
  for (std::size_t i = 0; i < families.size(); ++i) {
    const auto& f = families[i].family;
    const auto fp = scratch("f" + std::to_string(i) + ".json");
    write(fp, io::write_family(f));
    EXPECT_EQ(cli::run({"orientable", fp.string()}).exit_code == 0, is_orientable(f).orientable) << families[i].name;
    // Pair with a twisted copy and with the next family on the same base.
    const PLFamily g = twisted(f, Perm::from_index(static_cast<int>(i % 6)));
    const auto gp = scratch("g" + std::to_string(i) + ".json");
    write(gp, io::write_family(g));
    EXPECT_EQ(cli::run({"family-iso", fp.string(), gp.string()}).exit_code == 0, static_cast<bool>(are_isomorphic(f, g)));
    const auto& h = families[(i + 8) % families.size()].family;
    if (h.base == f.base) {
      const auto hp = scratch("h" + std::to_string(i) + ".json");
      write(hp, io::write_family(h));
      EXPECT_EQ(cli::run({"family-iso", fp.string(), hp.string()}).exit_code == 0,
                static_cast<bool>(are_isomorphic(f, h)));
    }
  }
}

TEST(CliAdapter, GlueVerdictsMatchLibrary) {
  std::mt19937_64 rng(5);
  int glued = 0;
  for (const auto& [name, base] : torsor_corpus::bases()) {
    for (int trial = 0; trial < 3; ++trial) {
      const FiniteGroup group = trial == 0 ? FiniteGroup::cyclic(2) : FiniteGroup::s3();
      TorsorCocycle t{base, group, {}};
      for (int e = 0; e < base.edge_count(); ++e)
        t.transitions.push_back(static_cast<int>(rng() % static_cast<unsigned>(group.order())));
      const auto p = scratch("pieces.json");
      write(p, io::write_torsor(t));
      const auto r = cli::run({"descent-glue", p.string()});
      EXPECT_EQ(r.exit_code == 0, validate_torsor(t).ok) << name;
      glued += r.exit_code == 0;
    }
  }
  EXPECT_GT(glued, 0);
}

TEST(CliReport, RerunFromEchoedArgumentsIsByteIdentical) {
  InData here;
  for (const auto& c : golden_cases()) {
    const auto first = scratch("first.json");
    const auto second = scratch("second.json");
    auto args = c.args;
    args.insert(args.begin(), {"--json", first.string()});
    run_cli(args);
    const auto report = io::json::parse(slurp(first));
    std::vector<std::string> again = report.at("args").get<std::vector<std::string>>();
    EXPECT_EQ(again, c.args) << c.name;
    again.push_back("--json=" + second.string());
    run_cli(again);
    EXPECT_EQ(slurp(first), slurp(second)) << c.name;
    EXPECT_EQ(report.at("exit").get<int>(), c.exit) << c.name;
  }
}

TEST(CliPlot, CsvShape) {
  const auto r = cli::run({"plot-data", "--denominator", "12"});
  std::istringstream csv(r.data);
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "x,y,z,region");
  std::map<std::string, int> regions;
  while (std::getline(csv, line)) {
    ASSERT_EQ(std::count(line.begin(), line.end(), ','), 3) << line;
    ++regions[line.substr(line.rfind(',') + 1)];
  }
  EXPECT_EQ(regions["N-equilateral"], 1);
  EXPECT_GT(regions["N-scalene"], 0);
  EXPECT_GT(regions["N-isosceles"], 0);
  EXPECT_GT(regions["M"], regions["N-scalene"]);
}
