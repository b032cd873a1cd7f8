#include <gtest/gtest.h>

#include <cstdlib>
#include <functional>
#include <sstream>

#include "commands.hpp"
#include "etaq/error.hpp"

using namespace etaq::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "etaq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, ExpandExamples) {
  EXPECT_EQ(invoke({"expand", "-s", "1^-1", "-n", "5"}).out, "1 1 2 3 5\n");
  EXPECT_EQ(invoke({"expand", "-s", "1^1", "-n", "3"}).out, "1 -1 -1\n");
  EXPECT_EQ(invoke({"expand", "-s", "1^-1", "--index", "0"}).out, "1\n");
  EXPECT_EQ(invoke({"expand", "-s", "1^-1", "--index", "100"}).out, "190569292\n");
  EXPECT_EQ(invoke({"expand", "-s", "1^-1", "-n", "8", "--start", "5"}).out, "7 11 15\n");
  EXPECT_EQ(invoke({"expand", "-s", "1^-1", "-n", "6", "-m", "5"}).out, "1 1 2 3 0 2\n");
}

TEST(Cli, ExpandJson) {
  const auto r = invoke({"expand", "-s", "2^-1 1^-1", "-n", "4", "--json"});
  ASSERT_EQ(r.code, kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "expand");
  EXPECT_EQ(j["spec"], "1^-1 2^-1");
  EXPECT_EQ(j["results"]["coefficients"], nlohmann::json({"1", "1", "3", "4"}));
  EXPECT_EQ(j["version"], kVersion);
}

TEST(Cli, EnvironmentDefaultsAndFlagPrecedence) {
  ::setenv("ETAQ_PRECISION", "3", 1);
  EXPECT_EQ(invoke({"expand", "-s", "1^-1"}).out, "1 1 2\n");
  EXPECT_EQ(invoke({"expand", "-s", "1^-1", "-n", "4"}).out, "1 1 2 3\n");
  ::unsetenv("ETAQ_PRECISION");
  EXPECT_EQ(invoke({"expand", "-s", "1^-1"}).out.size(), std::string("1 1 2 3 5 7 11 15 22 30 42 56 77 101 135 176 231 297 385 490\n").size());
}

TEST(Cli, ScanAndClassify) {
  const auto scan = invoke({"scan", "-s", "1^-1 2^-1", "--horizon", "10000", "--json"});
  ASSERT_EQ(scan.code, kExitOk);
  const auto j = nlohmann::json::parse(scan.out);
  ASSERT_EQ(j["results"]["candidates"].size(), 1u);
  EXPECT_EQ(j["results"]["candidates"][0]["ell"], "3");
  EXPECT_EQ(j["results"]["candidates"][0]["a"], "2");

  const auto table = invoke({"classify", "--from", "2", "--to", "12"});
  ASSERT_EQ(table.code, kExitOk);
  EXPECT_NE(table.out.find("N=2: (3, 2) empirical"), std::string::npos);
  EXPECT_NE(table.out.find("N=10: (5, 4) certified"), std::string::npos);
  EXPECT_NE(table.out.find("N=11: (11, 6) certified"), std::string::npos);
  EXPECT_NE(table.out.find("N=12: none"), std::string::npos);

  const auto csv = invoke({"classify", "--from", "5", "--to", "6", "--csv"});
  EXPECT_EQ(csv.out, "N,ell,a,status,route\n5,5,4,certified,DivisorReduction\n6,,,,\n");
}

TEST(Cli, CertifyAndRefute) {
  const auto c = invoke({"certify", "-s", "1^-1 2^-1", "-l", "7", "-a", "0", "--json"});
  ASSERT_EQ(c.code, kExitOk);
  const auto j = nlohmann::json::parse(c.out);
  EXPECT_EQ(j["results"]["route"], "Refuted");
  EXPECT_FALSE(j["results"]["witness"].is_null());

  const auto r = invoke({"refute", "-s", "1^-1", "-l", "5", "-a", "4", "--horizon", "5000"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("route: EmpiricalOnly"), std::string::npos);
}

TEST(Cli, FormCommands) {
  const auto cycle = invoke({"theta-cycle", "--form", "delta", "-l", "5"});
  ASSERT_EQ(cycle.code, kExitOk);
  EXPECT_NE(cycle.out.find("filtrations: 12 18 24 30 12"), std::string::npos);
  EXPECT_NE(cycle.out.find("case: II"), std::string::npos);
  EXPECT_EQ(invoke({"filtration", "--form", "delta", "-l", "5"}).out, "12\n");
  EXPECT_EQ(invoke({"filtration", "--form", "E4", "-l", "5"}).out, "0\n");
  EXPECT_EQ(invoke({"filtration", "--form", "E6", "-l", "7"}).out, "0\n");
  EXPECT_EQ(invoke({"filtration", "--form", "F", "-s", "1^-2", "-l", "5"}).out, "24\n");
}

TEST(Cli, UsageErrors) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"bogus"},
           {"expand"},
           {"expand", "-s", "1^0"},
           {"expand", "-s", "x^y"},
           {"expand", "-s", "1^-1", "-n", "0"},
           {"expand", "-s", "1^-1", "-m", "4"},
           {"certify", "-s", "1^-1", "-l", "6", "-a", "0"},
           {"certify", "-s", "1^-1", "-l", "5", "-a", "5"},
           {"refute", "-s", "1^-1", "-l", "5", "-a", "-1"},
           {"theta-cycle", "--form", "F", "-s", "1^-1 2^-1", "-l", "5"},
           {"theta-cycle", "--form", "E4", "-l", "5"},
           {"filtration", "--form", "nope", "-l", "5"},
           {"scan", "-s", "1^-1", "--horizon", "10"},
           {"scan", "-s", "1^-1", "--csv"},
       }) {
    const auto r = invoke(args);
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    EXPECT_EQ(r.code, kExitUsage) << joined;
    EXPECT_FALSE(r.err.empty()) << joined;
  }
}

TEST(Cli, PrecisionShortfallExitCode) {
  const auto r = invoke({"filtration", "--form", "delta", "-l", "5", "-n", "2"});
  EXPECT_EQ(r.code, kExitPrecision);
  const auto c = invoke({"certify", "-s", "1^-1 2^-1", "-l", "13", "-a", "5", "--max-sturm", "10"});
  EXPECT_EQ(c.code, kExitPrecision);
}

TEST(Cli, HelpAndVersion) {
  const auto h = invoke({"--help"});
  EXPECT_EQ(h.code, kExitOk);
  EXPECT_NE(h.out.find("expand"), std::string::npos);
  const auto v = invoke({"--version"});
  EXPECT_EQ(v.code, kExitOk);
  EXPECT_NE(v.out.find(kVersion), std::string::npos);
}

TEST(Cli, DeterministicOutput) {
  const std::vector<std::vector<std::string>> commands{
      {"expand", "-s", "1^-3 5^2", "-n", "40", "--json"},
      {"scan", "-s", "1^-1 5^-1", "--json"},
      {"classify", "--from", "2", "--to", "15", "--json"},
      {"audit", "-s", "1^-1 2^-1", "--from", "7", "--to", "13", "--json"},
      {"theta-cycle", "--form", "delta", "-l", "7", "--json"},
      {"certify", "-s", "1^-1 2^-1", "-l", "13", "-a", "5", "--json"},
  };
  for (const auto& args : commands) {
    const auto a = invoke(args);
    const auto b = invoke(args);
    ASSERT_EQ(a.code, kExitOk) << args[0] << a.err;
    EXPECT_EQ(a.out, b.out) << args[0];
    // Round trip through the record type reproduces the bytes.
    const auto record = OutputRecord::from_json(nlohmann::json::parse(a.out));
    EXPECT_EQ(record.dump(), a.out) << args[0];
    // Exact payload: no floating point anywhere.
    std::function<void(const nlohmann::json&)> no_floats = [&](const nlohmann::json& j) {
      EXPECT_FALSE(j.is_number_float()) << args[0];
      if (j.is_structured()) {
        for (const auto& x : j) no_floats(x);
      }
    };
    no_floats(nlohmann::json::parse(a.out));
  }
}

TEST(Cli, RecordRendering) {
  OutputRecord r = cmd_expand({"1^-1", 6, 2, std::nullopt, std::nullopt});
  EXPECT_EQ(render_human(r), "2 3 5 7\n");
  EXPECT_THROW(render_csv(r), etaq::InvalidArgument);
  EXPECT_EQ(nlohmann::json::parse(r.dump()), r.to_json());
}
