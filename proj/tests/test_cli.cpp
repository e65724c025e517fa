#include <gtest/gtest.h>

#include <regex>

#include "tacalc/cli.hpp"
#include "test_support.hpp"

using namespace tacalc;
using tacalc::testing::data_path;
using tacalc::testing::kQ;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tacalc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir() {
  auto p = std::filesystem::temp_directory_path() / ("tacalc_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(p);
  return p;
}

std::string write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p.string();
}

// Every number in a JSON document, as printed by the JSON dumper.
void numbers(const Json& j, std::vector<std::string>& out) {
  if (j.is_number()) out.push_back(j.dump());
  if (j.is_structured())
    for (const auto& e : j) numbers(e, out);
}

}  // namespace

TEST(AlgebraFile, ShippedExamples) {
  const auto s = parse_algebra_file(data_path("S.alg"));
  EXPECT_EQ(s.vars.size(), 5u);
  EXPECT_EQ(s.relations.size(), 10u);
  const auto q = parse_algebra_file(data_path("Q.alg"));
  EXPECT_EQ(q.vars.size(), 4u);
  EXPECT_EQ(q.relations.size(), 7u);
  const auto r = parse_algebra_file(data_path("R.alg"));
  EXPECT_EQ(r.vars.size(), 9u);
  EXPECT_EQ(r.relations.size(), 17u);
}

TEST(AlgebraFile, EmptyRelationsParseButDoNotBuild) {
  const auto f = parse_algebra_text("field Q\nvars x y\n");
  const auto spec = to_spec<Rational>(f, f.field);
  EXPECT_TRUE(spec.relations.empty());
  EXPECT_THROW(GradedAlgebra<Rational>::build(spec), Error);
}

TEST(AlgebraFile, ErrorsCarryLineAndColumn) {
  auto message = [](const std::string& text) {
    try {
      const auto f = parse_algebra_text(text, "t.alg");
      to_spec<Rational>(f, f.field);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::parse);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_EQ(message("field Q\nvars x\nrel x^2 + x\n").rfind("t.alg:3:5: inhomogeneous relation", 0), 0u);
  EXPECT_EQ(message("field Q\nvars x\nrel x^2 + z\n").rfind("t.alg:3:5:", 0), 0u);
  EXPECT_EQ(message("field F 2\nvars x\n").rfind("t.alg:1:9: field F needs an odd prime", 0), 0u);
  EXPECT_EQ(message("field F 9\nvars x\n").rfind("t.alg:1:9:", 0), 0u);
  EXPECT_EQ(message("vars x\n  frob x\n").rfind("t.alg:2:3: unknown keyword", 0), 0u);
  EXPECT_EQ(message("rel x\n").rfind("t.alg:1:1: rel before vars", 0), 0u);
  EXPECT_EQ(message("vars x x\n").rfind("t.alg:1:8: variable x declared twice", 0), 0u);
}

TEST(AlgebraFile, CanonicalRoundTrip) {
  const std::string text = "# comment\nfield Q\nvars X1 X2 X3 X4 X5\nrel X3^2 + 2*X1*X5 - X2*X5\nrel X1^2\n";
  const std::string canonical = print_algebra_file(parse_algebra_text(text));
  EXPECT_EQ(canonical, "field Q\nvars X1 X2 X3 X4 X5\nrel 2*X1*X5 - X2*X5 + X3^2\nrel X1^2\n");
  EXPECT_EQ(print_algebra_file(parse_algebra_text(canonical)), canonical);
  const std::string modular = "field F 32003\nvars x y\nrel x^2 - 1/2*y^2\nmodule M degrees 0 1\nmodrel M y, x\n";
  const std::string printed = print_algebra_file(parse_algebra_text(modular));
  EXPECT_EQ(print_algebra_file(parse_algebra_text(printed)), printed);
  EXPECT_NE(printed.find("modrel M y, x"), std::string::npos);
}

TEST(AlgebraFile, ModulePresentation) {
  const auto f = parse_algebra_file(data_path("golod.alg"));
  const auto a = GradedAlgebra<Rational>::build(to_spec<Rational>(f, kQ));
  const auto m = to_module<Rational>(f, f.module("shifted_k"), a);
  const auto k = GradedModule<Rational>::residue_field(a, 1);
  for (int e = 0; e <= 4; ++e) EXPECT_EQ(m.piece_dim(e), k.piece_dim(e));
  EXPECT_THROW(parse_algebra_text("vars x\nmodule M degrees 0\nmodrel M x, x\n"), Error);
  EXPECT_THROW(f.module("nope"), Error);
}

TEST(ComplexFile, HypersurfaceAndMultilineMatrix) {
  const auto c = parse_complex_file(data_path("hypersurface.cpx"));
  EXPECT_EQ(c.period, 1);
  ASSERT_EQ(c.maps.size(), 1u);
  EXPECT_EQ(c.maps[0].rows[0][0].text, "x");

  const auto dir = scratch_dir();
  write(dir / "ci.alg", "field Q\nvars x y\nrel x^2\nrel y^2\n");
  const auto p = write(dir / "two.cpx",
                       "algebra ci.alg\nmodule A degrees 0\nmodule B degrees 1 1\nmodule C degrees 2\n"
                       "map d1 from B to A\n[[x, y]]\nmap d2 from C to B\n[[y],\n [-x]]\n");
  const auto cf = parse_complex_file(p);
  ASSERT_EQ(cf.maps.size(), 2u);
  EXPECT_EQ(cf.maps[1].rows.size(), 2u);
  EXPECT_EQ(cf.maps[1].rows[1][0].text, "-x");
  EXPECT_EQ(cf.maps[1].rows[1][0].line, 9);
  const auto a = GradedAlgebra<Rational>::build(to_spec<Rational>(parse_algebra_file(cf.algebra), kQ));
  const auto complex = to_complex<Rational>(cf, a);
  EXPECT_TRUE(check_complex(complex).is_complex);
  EXPECT_FALSE(complex.periodic());

  const auto bad = write(dir / "bad.cpx", "algebra ci.alg\nmodule A degrees 0\nmap d from A to A\n[[x]\n");
  EXPECT_THROW(parse_complex_file(bad), Error);
}

TEST(AssignmentFile, Parses) {
  const auto a = parse_assignment_text("field Q\nvars x y z\nt12 = x\nt13 = y + z\nt23 = 0\n");
  EXPECT_EQ(a.vars.size(), 3u);
  EXPECT_EQ(a.images.at("t13").text, "y + z");
  EXPECT_THROW(parse_assignment_text("t12 = x\n"), Error);
  EXPECT_THROW(parse_assignment_text("vars x\nt12 = x\nt12 = x\n"), Error);
}

TEST(Cli, DeviationsOfExampleRing) {
  const auto r = run({"deviations", data_path("S.alg")});
  EXPECT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["results"]["deviations"], Json::array({5, 10, 16}));
}

TEST(Cli, ObstructionOfTensorProduct) {
  const auto r = run({"obstruction", "--tensor", data_path("S.alg"), data_path("Q.alg")});
  EXPECT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["results"]["verdict"], "obstructed: no embedded deformation");
  for (const auto& c : j["cross_checks"]) EXPECT_TRUE(c["passed"].get<bool>());
}

TEST(Cli, ExitCodes) {
  const auto even = run({"pfaffian", "--size", "4"});
  EXPECT_EQ(even.code, 2);
  EXPECT_NE(even.err.find("odd"), std::string::npos);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"hilbert", "/no/such/file.alg"}).code, 2);
  EXPECT_EQ(run({"resolve", data_path("S.alg"), "--int-cap", "2"}).code, 3);
  EXPECT_EQ(run({"hilbert", data_path("S.alg"), "--degree-cap", "2"}).code, 3);
  EXPECT_EQ(run({"pi", data_path("nonkoszul.alg")}).code, 0);
}

TEST(Cli, NonKoszulWarning) {
  const auto r = run({"pi", data_path("nonkoszul.alg")});
  const Json j = Json::parse(r.out);
  EXPECT_FALSE(j["results"]["koszul_smoke"]["consistent"].get<bool>());
  EXPECT_EQ(j["results"]["koszul_smoke"]["rows"][3]["betti"], 33);
  EXPECT_EQ(j["results"]["koszul_smoke"]["rows"][3]["dual_dim"], 32);
  ASSERT_EQ(j["warnings"].size(), 1u);
  EXPECT_FALSE(j["results"].contains("pi2"));
  const Json forced = Json::parse(run({"pi", data_path("nonkoszul.alg"), "--allow-non-koszul"}).out);
  EXPECT_TRUE(forced["results"].contains("pi2"));
  EXPECT_TRUE(forced["cross_checks"].empty());
}

TEST(Cli, CrossCheckFailureSetsExitFour) {
  Report r("x", {});
  r.cross_check("always fails", false, "");
  EXPECT_EQ(r.exit_status(), 4);
  r.error(Error(ErrorKind::parse, "late"));
  EXPECT_EQ(r.exit_status(), 4);
}

TEST(Cli, ModularAndCharacteristicThree) {
  const Json j = Json::parse(run({"deviations", data_path("S.alg"), "--modular"}).out);
  EXPECT_EQ(j["field"], "F 32003");
  EXPECT_EQ(j["results"]["deviations"], Json::array({5, 10, 16}));
  const Json c3 = Json::parse(run({"hilbert", data_path("ci2.alg"), "--modular", "3"}).out);
  EXPECT_EQ(c3["field"], "F 3");
  EXPECT_NE(c3["warnings"][0].get<std::string>().find("characteristic 3"), std::string::npos);
}

TEST(Cli, TensorWritesLoadableFile) {
  const auto out = (scratch_dir() / "R.alg").string();
  ASSERT_EQ(run({"tensor", data_path("S.alg"), data_path("Q.alg"), "-o", out}).code, 0);
  const auto f = parse_algebra_file(out);
  EXPECT_EQ(f.vars.size(), 9u);
  EXPECT_EQ(f.relations.size(), 17u);
  EXPECT_EQ(print_algebra_file(f), print_algebra_file(parse_algebra_file(data_path("R.alg"))));
}

namespace {

// Small random algebra files: squares of all variables plus random mixed terms.
std::vector<std::string> random_algebra_files(std::mt19937& rng, int count) {
  const auto dir = scratch_dir();
  std::vector<std::string> out;
  for (int t = 0; t < count; ++t) {
    const std::size_t n = 1 + rng() % 3;
    std::string text = "field Q\nvars";
    for (std::size_t i = 0; i < n; ++i) text += " v" + std::to_string(i + 1);
    text += "\n";
    for (std::size_t i = 0; i < n; ++i) text += "rel v" + std::to_string(i + 1) + "^2\n";
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng() % 2)
          text += "rel " + std::to_string(1 + rng() % 4) + "*v" + std::to_string(i + 1) + "*v" + std::to_string(j + 1) +
                  "\n";
    out.push_back(write(dir / ("rand" + std::to_string(t) + ".alg"), text));
  }
  return out;
}

}  // namespace

TEST(Property, ByteIdenticalJsonReruns) {
  std::mt19937 rng(404);
  const std::vector<std::string> commands{"hilbert", "resolve", "deviations", "dual", "pi", "central", "gorenstein"};
  int checked = 0;
  for (const auto& file : random_algebra_files(rng, 50)) {
    const std::string& cmd = commands[rng() % commands.size()];
    const auto a = run({cmd, file, "--hom-cap", "3"});
    const auto b = run({cmd, file, "--hom-cap", "3"});
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
    ++checked;
  }
  EXPECT_EQ(checked, 50);
}

TEST(Property, JsonAndTextCarryTheSameNumbers) {
  std::mt19937 rng(405);
  const std::vector<std::string> commands{"hilbert", "resolve", "deviations", "dual", "pi", "central"};
  const std::regex token(R"(-?[0-9]+)");
  for (const auto& file : random_algebra_files(rng, 50)) {
    const std::string& cmd = commands[rng() % commands.size()];
    const Json j = Json::parse(run({cmd, file, "--hom-cap", "3"}).out);
    const std::string text = run({cmd, file, "--hom-cap", "3", "--format", "text"}).out;
    std::multiset<std::string> in_text;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), token); it != std::sregex_iterator(); ++it)
      in_text.insert(it->str());
    std::vector<std::string> in_json;
    numbers(j, in_json);
    // Each numeric value of the JSON document appears in the text at least as often.
    std::map<std::string, std::size_t> need;
    for (const auto& v : in_json) ++need[v];
    for (const auto& [v, n] : need) EXPECT_GE(in_text.count(v), n) << cmd << " " << file << " " << v;
  }
}
