#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ktrans/cli.hpp"

using nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out, err;
  json report() const { return json::parse(out); }
};

CliRun run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  CliRun r;
  r.code = ktrans::cli::run(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("ktrans_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string slurp(const std::string& name) const {
    std::ifstream f(path(name));
    return std::string(std::istreambuf_iterator<char>(f), {});
  }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  std::filesystem::path dir_;
};

void expect_report_shape(const json& r) {
  for (const char* key : {"command", "verdict", "certificate", "residuals", "seed", "timing"})
    EXPECT_TRUE(r.contains(key)) << key;
}

}  // namespace

TEST_F(CliTest, Bound) {
  for (int d = 1; d <= 4; ++d)
    for (int k = 0; k < d; ++k)
      for (const char* f : {"R", "C"}) {
        const CliRun r = run({"bound", "--k", std::to_string(k), "--d", std::to_string(d), "--field", f});
        ASSERT_EQ(r.code, 0) << r.err;
        const json rep = r.report();
        expect_report_shape(rep);
        const int dim = std::string(f) == "C" ? 2 : 1;
        EXPECT_EQ(rep["bound"].get<long long>(), (k + 1) * (d - k) * dim + 1);
        EXPECT_TRUE(rep["seed"].is_null());
      }
  EXPECT_EQ(run({"bound", "--k", "3", "--d", "2", "--field", "R"}).code, 1);
}

TEST_F(CliTest, GenToStdoutIsTheScene) {
  const CliRun r = run({"gen", "--kind", "planted", "--seed", "3", "--d", "2", "--k", "1", "--n", "4"});
  ASSERT_EQ(r.code, 0);
  const json sc = json::parse(r.out);
  EXPECT_EQ(sc["d"], 2);
  EXPECT_EQ(sc["sets"].size(), 4u);
  EXPECT_EQ(sc["label"]["value"], "yes");
  EXPECT_EQ(run({"gen", "--kind", "planted", "--seed", "3", "--d", "2", "--k", "1", "--n", "4"}).out, r.out);
}

TEST_F(CliTest, FindTransversalPointCase) {
  write("two.json", R"({"field":"R","d":2,"k":0,"sets":[[[0,0],[2,0],[0,2]],[[0.5,0.5],[3,0],[0,3]]]})");
  const CliRun r = run({"find-transversal", path("two.json"), "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const json rep = r.report();
  expect_report_shape(rep);
  EXPECT_EQ(rep["verdict"], "found");
  EXPECT_EQ(rep["seed"], 1);
  EXPECT_LT(rep["residuals"]["max_distance"].get<double>(), 1e-6);
  EXPECT_EQ(rep["flat"]["dirs"].size(), 0u);

  // the report itself verifies offline
  write("report.json", r.out);
  const CliRun v = run({"verify", path("two.json"), "--flat", path("report.json")});
  ASSERT_EQ(v.code, 0);
  EXPECT_EQ(v.report()["verdict"], "valid");
}

TEST_F(CliTest, FindTransversalInconclusive) {
  write("far.json", R"({"field":"R","d":2,"k":0,"sets":[[[0,0]],[[5,0]]]})");
  const CliRun r = run({"find-transversal", path("far.json"), "--seed", "1", "--restarts", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.report()["verdict"], "not-found");
  EXPECT_EQ(r.report()["restart_log"].size(), 2u);
}

TEST_F(CliTest, CheckConsistencyOnSingletons) {
  ASSERT_EQ(run({"gen", "--kind", "singletons", "--seed", "5", "--d", "2", "--k", "1", "--n", "5", "--out",
                 path("pts.json")})
                .code,
            0);
  const CliRun r = run({"check-consistency", path("pts.json"), "--seed", "7", "--samples", "4096"});
  ASSERT_EQ(r.code, 0) << r.out;
  const json rep = r.report();
  EXPECT_EQ(rep["verdict"], "inconsistent");
  EXPECT_EQ(rep["certificate"]["kind"], "farkas");
  EXPECT_GT(rep["certificate"]["farkas_value"].get<double>(), 0.0);

  write("cert.json", r.out);
  const CliRun v = run({"verify", path("pts.json"), "--flat", path("cert.json")});
  ASSERT_EQ(v.code, 0) << v.out;
  EXPECT_EQ(v.report()["verdict"], "valid");
}

TEST_F(CliTest, CheckConsistencyOnPlantedIsInconclusive) {
  ASSERT_EQ(run({"gen", "--kind", "planted", "--seed", "2", "--d", "2", "--k", "1", "--n", "5", "--out",
                 path("pl.json")})
                .code,
            0);
  const CliRun r = run({"check-consistency", path("pl.json"), "--seed", "7", "--samples", "100"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.report()["verdict"], "consistent-up-to-resolution");
}

TEST_F(CliTest, ReportsAreDeterministic) {
  ASSERT_EQ(run({"gen", "--kind", "planted", "--seed", "8", "--d", "3", "--k", "1", "--n", "5", "--out",
                 path("s.json")})
                .code,
            0);
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"find-transversal", path("s.json"), "--seed", "4"},
        std::vector<std::string>{"check-consistency", path("s.json"), "--seed", "4", "--samples", "50"}}) {
    const CliRun a = run(args), b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST_F(CliTest, ErrorReports) {
  write("bad.json", "{\"field\": \"R\",\n \"d\": 2,,\n}");
  const CliRun r = run({"find-transversal", path("bad.json"), "--seed", "1"});
  EXPECT_EQ(r.code, 1);
  const json rep = r.report();
  expect_report_shape(rep);
  EXPECT_EQ(rep["verdict"], "error");
  EXPECT_EQ(rep["error"]["code"], "ParseError");
  EXPECT_NE(rep["error"]["message"].get<std::string>().find("line 2"), std::string::npos);

  const CliRun missing = run({"find-transversal", path("nope.json"), "--seed", "1"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_EQ(missing.report()["error"]["code"], "InvalidInput");

  const CliRun usage = run({"find-transversal"});
  EXPECT_EQ(usage.code, 1);
  EXPECT_NE(usage.err.find("usage error"), std::string::npos);
  EXPECT_EQ(run({}).code, 1);
}

TEST_F(CliTest, SceneFromStdin) {
  const std::string scene = R"({"field":"R","d":1,"k":0,"sets":[[[0],[2]],[[1],[3]]]})";
  const CliRun r = run({"find-transversal", "-", "--seed", "0"}, scene);
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.report()["verdict"], "found");
}

TEST_F(CliTest, WitnessAndPlot) {
  ASSERT_EQ(run({"gen", "--kind", "planted", "--seed", "6", "--d", "2", "--k", "1", "--n", "4", "--out",
                 path("s.json")})
                .code,
            0);
  const json sc = json::parse(slurp("s.json"));
  write("flat.json", json{{"field", "R"}, {"base", sc["planted"]["base"]}, {"dirs", sc["planted"]["dirs"]}}.dump());
  const CliRun w = run({"witness", path("s.json"), "--flat", path("flat.json")});
  ASSERT_EQ(w.code, 0) << w.out;
  EXPECT_EQ(w.report()["verdict"], "witness");
  EXPECT_EQ(w.report()["certificate"]["points"].size(), 4u);

  const CliRun p = run({"plot", path("s.json"), "--flat", path("flat.json"), "--witness", "--out", path("s.svg")});
  ASSERT_EQ(p.code, 0) << p.out;
  const std::string svg = slurp("s.svg");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_EQ(p.report()["timing"]["bytes"].get<std::size_t>(), svg.size());
}

TEST_F(CliTest, HadwigerAndSeparation) {
  ASSERT_EQ(run({"gen", "--kind", "disjoint2d", "--mode", "triangle", "--seed", "0", "--d", "2", "--k", "1", "--n",
                 "3", "--out", path("tri.json")})
                .code,
            0);
  const CliRun h = run({"hadwiger", path("tri.json"), "--find-order"});
  ASSERT_EQ(h.code, 0) << h.out;
  EXPECT_EQ(h.report()["verdict"], "no-order");
  // no assignment and k = 1: there is no default
  const CliRun bare = run({"check-separation", path("tri.json")});
  EXPECT_EQ(bare.code, 1);
  EXPECT_EQ(bare.report()["error"]["code"], "InvalidInput");

  ASSERT_EQ(run({"gen", "--kind", "singletons", "--seed", "1", "--d", "2", "--k", "1", "--n", "4", "--out",
                 path("pts.json")})
                .code,
            0);
  const CliRun s = run({"check-separation", path("pts.json")});
  ASSERT_EQ(s.code, 0) << s.out;
  const std::string verdict = s.report()["verdict"];
  EXPECT_TRUE(verdict == "ok" || verdict == "counterexample") << verdict;
}
