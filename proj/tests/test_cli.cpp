#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eqorient/cli.hpp"

using eqorient::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(EQORIENT_SAMPLES_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / ("eqorient_test_" + name);
  std::ofstream(p) << text;
  return p.string();
}

bool single_line(const std::string& s) { return !s.empty() && s.find('\n') == s.size() - 1; }

}  // namespace

TEST(Cli, UnitsJson) {
  auto r = call({"burnside", "units", "--group", "C2xC2", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["dimension"], 4);
  EXPECT_EQ(j["order"], 16);
  EXPECT_EQ(j["units"].size(), 16u);
}

TEST(Cli, DocumentedExamples) {
  auto g = call({"orient", "gamma-rho", "--group", "C3"});
  EXPECT_EQ(g.code, 0);
  EXPECT_NE(g.out.find("HZ-orientable: false, HA-orientable: false"), std::string::npos);
  auto c2 = call({"orient", "gamma-rho", "--group", "C2"});
  EXPECT_NE(c2.out.find("HZ-orientable: true, HA-orientable: false"), std::string::npos);
  auto s = call({"group", "subgroups", "--group", "C2", "--json"});
  EXPECT_EQ(nlohmann::json::parse(s.out)["class_count"], 2);
  EXPECT_NE(call({"group", "subgroups", "--group", "C2"}).out.find("2 classes"), std::string::npos);
}

TEST(Cli, EveryCommandIsDeterministic) {
  const std::vector<std::vector<std::string>> commands{
      {"group", "info", "--group", "S4"},
      {"group", "subgroups", "--group", "D4", "--json"},
      {"burnside", "tom", "--group", "S3"},
      {"burnside", "mul", "--group", "C2xC2", "--x", "1,0,0,0,0", "--y", "0,1,0,0,1"},
      {"burnside", "res", "--group", "S3", "--subgroup", "1", "--x", "1,1,1,1"},
      {"burnside", "tr", "--group", "C4", "--subgroup", "1", "--x", "1,-1", "--json"},
      {"burnside", "norm", "--group", "C8", "--subgroup", "0", "--x", "-1"},
      {"burnside", "units", "--group", "D4"},
      {"mackey", "show", "--group", "C2xC2", "--coefficients", "units", "--json"},
      {"mackey", "verify", "--group", "S3", "--coefficients", "ghost"},
      {"mackey", "tn", "--n", "3"},
      {"rep", "homog", "--group", "C4", "--structure", "S3", "--rep", "external(regular(Pi), scale(2, regular(G)))"},
      {"rep", "fiber", "--group", "C2", "--structure", "Sigma2", "--rep", sample("rho_tensor_tau.json"), "--json"},
      {"orient", "gamma-rho", "--group", "D4", "--json"},
      {"orient", "pi0", "--group", "S3", "--structure", "C2xC2"},
      {"orient", "induced-line", "--group", "C2xC2", "--coefficients", "A"},
      {"orient", "odd-collapse", "--group", "C5"},
      {"bredon", "compute", "--group", "C2", "--complex", sample("antipodal_sphere.json"), "--json"},
  };
  for (const auto& c : commands) {
    auto a = call(c), b = call(c);
    EXPECT_EQ(a.code, 0) << c[0] << " " << c[1] << ": " << a.err;
    EXPECT_FALSE(a.out.empty());
    EXPECT_EQ(a.out, b.out) << c[0] << " " << c[1];
  }
}

TEST(Cli, SampleInputs) {
  auto g = call({"group", "info", "--group", sample("klein_four.json"), "--json"});
  ASSERT_EQ(g.code, 0) << g.err;
  EXPECT_EQ(nlohmann::json::parse(g.out)["order"], 4);

  auto r = call({"rep", "homog", "--group", "C2", "--structure", "Sigma2", "--rep", sample("rho_tensor_tau.json"),
                 "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["homogeneous"], true);

  auto h = call({"bredon", "compute", "--group", "C2", "--complex", sample("antipodal_sphere.json"), "--json"});
  ASSERT_EQ(h.code, 0) << h.err;
  auto j = nlohmann::json::parse(h.out);
  EXPECT_EQ(j["cohomology"][2]["text"], "(Z/2)");

  // the JSON S^σ and the built-in agree
  auto a = call({"bredon", "compute", "--group", "C2", "--complex", sample("sigma_sphere.json"), "--coefficients",
                 "burnside"});
  auto b = call({"bredon", "compute", "--group", "C2", "--complex", "sigma_sphere", "--coefficients", "burnside"});
  EXPECT_EQ(a.out.substr(a.out.find('\n')), b.out.substr(b.out.find('\n')));
}

TEST(Cli, BredonCriterionCommands) {
  auto u = call({"bredon", "compute", "--group", "C2", "--complex", "circle_trivial", "--coefficients", "units"});
  EXPECT_NE(u.out.find("H^1 = (Z/2)^2"), std::string::npos);
  auto p = call({"bredon", "compute", "--group", "S3", "--complex", "point", "--coefficients", "constZ"});
  EXPECT_NE(p.out.find("H^0 = Z\n"), std::string::npos);
}

TEST(Cli, InputErrorsExitTwoWithOneLine) {
  const std::vector<std::vector<std::string>> bad{
      {},
      {"group"},
      {"group", "info"},
      {"group", "info", "--group", "C0"},
      {"group", "info", "--group", "Nonsense"},
      {"burnside", "mul", "--group", "C2", "--x", "1,a", "--y", "1,0"},
      {"burnside", "res", "--group", "C2", "--x", "1,0"},
      {"burnside", "res", "--group", "C2", "--subgroup", "7", "--x", "1,0"},
      {"mackey", "show", "--group", "C2", "--coefficients", "weird"},
      {"mackey", "tn", "--n", "4"},
      {"rep", "homog", "--group", "C2", "--structure", "Sigma2", "--rep", "regular(G"},
      {"rep", "homog", "--group", "C3", "--structure", "Sigma2", "--rep", "sign(G)"},
      {"orient", "odd-collapse", "--group", "C4"},
      {"orient", "induced-line", "--group", "C2", "--coefficients", "Q"},
      {"bredon", "compute", "--group", "C2", "--complex", "nowhere"},
      {"bredon", "compute", "--group", "C3", "--complex", "sigma_sphere"},
      {"burnside", "units", "--group", "C2", "--bogus"},
  };
  for (const auto& c : bad) {
    auto r = call(c);
    std::string joined;
    for (const auto& a : c) joined += a + " ";
    EXPECT_EQ(r.code, 2) << joined << "-> " << r.out << r.err;
    EXPECT_TRUE(single_line(r.err)) << joined << "-> " << r.err;
  }
}

TEST(Cli, MalformedFilesAreInputErrors) {
  auto not_json = temp_file("garbage.json", "{ not json");
  auto bad_perm = temp_file("bad_perm.json", R"({"degree": 3, "generators": [[0, 0, 1]]})");
  auto bad_cell = temp_file("bad_cell.json",
                            R"({"cells": [[{"isotropyClass": 0}], [{"isotropyClass": 1}]],
                                "boundary": [{"from": 1, "to": 0, "terms": [{"coeff": 1, "conjugator": 0}]}]})");
  auto not_square_zero = temp_file("dd.json",
                                   R"({"cells": [[{"isotropyClass": 0}], [{"isotropyClass": 0}], [{"isotropyClass": 0}]],
        "boundary": [{"from": 1, "to": 0, "terms": [{"coeff": 1, "conjugator": 1}, {"coeff": 1, "conjugator": 0}]},
                     {"from": 2, "to": 1, "terms": [{"coeff": 1, "conjugator": 0}]}]})");
  auto bad_rep = temp_file("bad_rep.json", R"({"dim": 1, "generators": [{"pi": 1, "g": 0, "matrix": [[[2, 1]]]}]})");
  const std::vector<std::vector<std::string>> bad{
      {"group", "info", "--group", not_json},
      {"group", "info", "--group", bad_perm},
      {"bredon", "compute", "--group", "C2", "--complex", bad_cell},
      {"bredon", "compute", "--group", "C2", "--complex", not_square_zero},
      {"bredon", "compute", "--group", "C2", "--complex", not_json},
      {"rep", "homog", "--group", "C2", "--structure", "Sigma2", "--rep", bad_rep},
  };
  for (const auto& c : bad) {
    auto r = call(c);
    EXPECT_EQ(r.code, 2) << c.back() << ": " << r.err;
    EXPECT_TRUE(single_line(r.err)) << r.err;
  }
}

TEST(Cli, HelpExitsZero) {
  auto r = call({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("burnside"), std::string::npos);
}
