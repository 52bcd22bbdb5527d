#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "app.hpp"
#include "matrix_io.hpp"
#include "report.hpp"

using namespace dkit;
using namespace dkit::cli;

namespace {

std::filesystem::path tmp_dir() {
  std::filesystem::path p(DKIT_TEST_TMP);
  std::filesystem::create_directories(p);
  return p;
}

std::string write_file(const std::string& name, const std::string& text) {
  const std::filesystem::path p = tmp_dir() / name;
  std::ofstream(p) << text;
  return p.string();
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

CliRun invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(ParseMatrix, JsonPairs) {
  const ComplexMatrix m = parse_matrix(R"({"rows":2,"cols":2,"data":[[[0,0],[1,0]],[[0,0],[0,0]]]})");
  ComplexMatrix e = ComplexMatrix::Zero(2, 2);
  e(0, 1) = 1;
  EXPECT_EQ(m, e);
}

TEST(ParseMatrix, JsonBareRealsAndComplex) {
  const ComplexMatrix m = parse_matrix(R"({"rows":1,"cols":2,"data":[[1.5,[0,-2]]]})");
  EXPECT_EQ(m(0, 0), Complex(1.5, 0));
  EXPECT_EQ(m(0, 1), Complex(0, -2));
}

TEST(ParseMatrix, Csv) {
  const ComplexMatrix m = parse_matrix("1,2\n3,4\n");
  ASSERT_EQ(m.rows(), 2);
  EXPECT_EQ(m(1, 0), Complex(3, 0));
  EXPECT_EQ(m.imag().norm(), 0.0);
  EXPECT_EQ(parse_matrix(" 1 , -2.5e1 \r\n+3,4").row(0)(1), Complex(-25));
}

TEST(ParseMatrix, ShapeMismatch) {
  EXPECT_THROW(parse_matrix(R"({"rows":2,"cols":2,"data":[[1,2],[3,4],[5,6]]})"), InputError);
  EXPECT_THROW(parse_matrix(R"({"rows":2,"cols":2,"data":[[1,2],[3]]})"), InputError);
  EXPECT_THROW(parse_matrix(R"({"rows":1,"cols":1})"), InputError);
  EXPECT_THROW(parse_matrix(R"({"rows":1,"cols":1,"data":[["a"]]})"), InputError);
  EXPECT_THROW(parse_matrix("1,2\n3\n"), InputError);
  EXPECT_THROW(parse_matrix(""), InputError);
}

TEST(ParseMatrix, LineColumnDiagnostics) {
  try {
    parse_matrix("1,2\n3,x4\n", "m.csv");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
    EXPECT_NE(std::string(e.what()).find("m.csv:2:3"), std::string::npos);
  }
  try {
    parse_matrix("{\"rows\": 2,\n  \"cols\": ,}", "m.json");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 1u);
  }
}

TEST(Report, SeventeenDigits) {
  Json j;
  j["x"] = 0.1;
  j["y"] = 2.0;
  j["z"] = std::nan("");
  const std::string s = dump(j);
  EXPECT_NE(s.find("0.10000000000000001"), std::string::npos);
  EXPECT_NE(s.find("2.0"), std::string::npos);
  EXPECT_NE(s.find("null"), std::string::npos);
  EXPECT_NO_THROW((void)nlohmann::json::parse(s));
}

TEST(Cli, DeltaHermitianExample) {
  const std::string f = write_file("her3.json", R"({"rows":3,"cols":3,"data":[[3,0,0],[0,1,0],[0,0,-1]]})");
  const CliRun r = invoke({"delta", f});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["schema"], "discrepancy-kit/1");
  EXPECT_EQ(j["payload"]["values"], nlohmann::json::parse("[2.0, 2.0, 0.0]"));
  EXPECT_EQ(j["inputs"][0]["digest"].get<std::string>().size(), 16u);
  EXPECT_EQ(j["status"], "ok");
}

TEST(Cli, DeltaOptions) {
  const std::string f = write_file("g.csv", "1,2,0\n0,1,3\n-1,0.5,2\n");
  CliRun r = invoke({"delta", f, "--force-general", "--k", "2", "--emit-sdp"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.json();
  EXPECT_EQ(j["payload"]["selected"]["k"], 2);
  EXPECT_EQ(j["payload"]["sdp"].size(), 1u);
  EXPECT_NEAR(j["payload"]["selected"]["norm"].get<double>(), j["payload"]["norms"][1].get<double>(), 0.0);
  r = invoke({"delta", f, "--k", "4"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, Kyfan) {
  const std::string f = write_file("d.csv", "3,0,0\n0,2,0\n0,0,1\n");
  const CliRun r = invoke({"kyfan", f, "--k", "2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_DOUBLE_EQ(r.json()["payload"]["value"].get<double>(), 5.0);
  EXPECT_EQ(invoke({"kyfan", f}).code, 2);
}

TEST(Cli, CheckRandomHolds) {
  const CliRun r = invoke({"check", "R2", "--n", "4", "--trials", "50", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.json()["status"], "holds");
  EXPECT_EQ(r.json()["seed"], 1);
  EXPECT_EQ(invoke({"check", "R5", "--n", "3"}).code, 2);
  EXPECT_EQ(invoke({"check", "R99"}).code, 2);
}

TEST(Cli, CheckWithFiles) {
  const std::string a = write_file("ca.csv", "1,0\n0,-1\n");
  const std::string b = write_file("cb.csv", "0,1\n1,0\n");
  CliRun r = invoke({"check", "R16", "--a", a, "--b", b});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.json()["payload"]["entries"][0]["status"], "holds");
  r = invoke({"check", "all", "--a", a, "--b", b});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.json()["payload"]["entries"].size(), 25u);
  r = invoke({"check", "R10", "--a", a});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, FuzzTwoByTwo) {
  const CliRun r = invoke({"fuzz", "conjecture", "--n-min", "2", "--n-max", "2", "--trials", "100", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["payload"]["violations"], 0);
  EXPECT_EQ(r.json()["status"], "no counterexample found");
}

TEST(Cli, FuzzJobsDoNotChangeOutput) {
  std::vector<std::string> base{"fuzz", "conjecture", "--n-min", "2", "--n-max", "4", "--trials", "30", "--seed", "5"};
  auto with = base;
  with.insert(with.end(), {"--jobs", "3"});
  const nlohmann::json a = invoke(base).json(), b = invoke(with).json();
  EXPECT_EQ(a["payload"], b["payload"]);
  EXPECT_EQ(invoke({"fuzz", "conjecture", "--n-min", "2", "--n-max", "2", "--trials", "0", "--seed", "1"}).code, 2);
  EXPECT_EQ(invoke({"fuzz", "conjecture", "--n-min", "2", "--n-max", "2", "--trials", "3", "--seed", "1", "--class",
                    "weird"})
                .code,
            2);
}

TEST(Cli, MaximizeOrbitXdecompOracle) {
  const std::string a = write_file("ma.csv", "2,1,0\n1,0,0\n0,0,-1\n");
  const std::string b = write_file("mb.csv", "1,0,0\n0,3,1\n0,1,0\n");
  CliRun r = invoke({"maximize", "commutator", "--a", a, "--b", b});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.json()["status"], "attained");
  r = invoke({"orbit-diameter", "--a", a, "--k", "2"});
  ASSERT_EQ(r.code, 0) << r.out;
  r = invoke({"xdecomp", a});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.json()["status"], "verified");
  r = invoke({"oracle", "delta", a, "--k", "1", "--resolution", "64"});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.json()["payload"]["results"][0]["k"], 1);
  EXPECT_EQ(invoke({"oracle", "delta", a, "--resolution", "8"}).code, 2);

  const std::string ng = write_file("ng.csv", "0,1\n0,0\n");
  EXPECT_EQ(invoke({"xdecomp", ng}).code, 2);
  EXPECT_EQ(invoke({"maximize", "commutator", "--a", ng, "--b", ng}).code, 2);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"bogus"}).code, 2);
  EXPECT_EQ(invoke({"delta", (tmp_dir() / "missing.json").string()}).code, 2);
  const std::string bad = write_file("bad.json", R"({"rows":2,"cols":2,"data":[[1,2],[3,4],[5,6]]})");
  const CliRun r = invoke({"delta", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("expected 2"), std::string::npos);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, DeterministicOutput) {
  const std::string f = write_file("det.csv", "1,2,0\n0,1,3\n-1,0.5,2\n");
  for (const std::vector<std::string>& cmd :
       {std::vector<std::string>{"delta", f, "--force-general"},
        std::vector<std::string>{"check", "all", "--n", "3", "--trials", "2", "--seed", "4"},
        std::vector<std::string>{"fuzz", "conjecture", "--n-min", "2", "--n-max", "3", "--trials", "10", "--seed", "2"}}) {
    EXPECT_EQ(invoke(cmd).out, invoke(cmd).out);
  }
}

TEST(Cli, GlobalTolerances) {
  const CliRun r = invoke({"--atol", "1e-6", "check", "R2", "--n", "3", "--trials", "3", "--rtol", "1e-7"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_DOUBLE_EQ(r.json()["tolerance"]["atol"].get<double>(), 1e-6);
  EXPECT_DOUBLE_EQ(r.json()["tolerance"]["rtol"].get<double>(), 1e-7);
}
