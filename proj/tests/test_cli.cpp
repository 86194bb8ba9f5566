#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  args.insert(args.end(), {"--threads", "2"});
  int code = zslen::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kU = "(0,1)^3 (1,0) (1,1) (0,3)^3 (1,0) (1,3)";

}  // namespace

TEST(Cli, LengthsExample) {
  auto r = run({"lengths", "--group", "C2xC4", "--seq", kU});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "{2,4,5}\n");
}

TEST(Cli, DecideExample) {
  auto r = run({"decide", "--group", "C2xC4", "--set", "4,6,7,8,9,10"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "not realizable\n");
}

TEST(Cli, DavenportExample) {
  auto r = run({"davenport", "--group", "C5xC5"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "9\n");
}

TEST(Cli, DecideExpect) {
  EXPECT_EQ(run({"decide", "-g", "C2xC4", "--set", "{4,6,7,8,9,10}", "--expect", "false"}).code, 0);
  EXPECT_EQ(run({"decide", "-g", "C2xC4", "--set", "4,6,7,8,9,10", "--expect", "true"}).code, 1);
  auto r = run({"decide", "-g", "C2xC4", "--set", "2,4,5", "--expect", "true"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("witness: "), std::string::npos);
}

TEST(Cli, UsageErrors) {
  for (std::vector<std::string> args : std::vector<std::vector<std::string>>{
           {},
           {"bogus"},
           {"davenport"},
           {"davenport", "--group", "C2^4"},
           {"davenport", "--group", "C0"},
           {"lengths", "--group", "C3", "--seq", "(1) (1)"},
           {"lengths", "--group", "C3", "--seq", "(3)"},
           {"lengths", "--group", "C3"},
           {"decide", "--group", "C3", "--set", "a,b"},
           {"system", "--group", "C3", "--bound", "4", "--kind", "other"},
           {"davenport", "--group", "C3", "--threads", "0"},
           {"verify", "--scenario", "nope"},
           {"aamp", "--set", "1,2"},
       }) {
    auto r = run(args);
    EXPECT_EQ(r.code, 2) << (args.empty() ? "" : args[0]);
    EXPECT_NE(r.err.find("group spec:"), std::string::npos);
  }
}

TEST(Cli, BudgetExhausted) {
  EXPECT_EQ(run({"decide", "-g", "C2xC4", "--set", "2,4,5", "--budget", "3"}).code, 3);
  EXPECT_EQ(run({"system", "-g", "C3xC3", "--bound", "10", "--budget", "100"}).code, 3);
  EXPECT_EQ(run({"factorize", "-g", "C3", "--seq", "(1)^12 (2)^12", "--max-factorizations", "2"}).code, 3);
}

TEST(Cli, BudgetFromEnvironment) {
  ::setenv("ZSLEN_BUDGET", "3", 1);
  auto r = run({"decide", "-g", "C2xC4", "--set", "2,4,5"});
  ::unsetenv("ZSLEN_BUDGET");
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(run({"decide", "-g", "C2xC4", "--set", "2,4,5"}).code, 0);
}

TEST(Cli, HelpExitsZero) {
  auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(Cli, SequenceJsonSchema) {
  auto r = run({"catenary", "-g", "C2xC4", "--seq", kU, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["lengths"], json({2, 4, 5}));
  EXPECT_EQ(j["delta"], json({1, 2}));
  EXPECT_EQ(j["catenary"], 4);
  EXPECT_EQ(j["num_factorizations"], 3);
  EXPECT_TRUE(j["seq"].is_string());

  j = json::parse(run({"lengths", "-g", "C2xC4", "--seq", kU, "--json"}).out);
  EXPECT_TRUE(j["catenary"].is_null());
  EXPECT_TRUE(j["num_factorizations"].is_null());

  j = json::parse(run({"factorize", "-g", "C2xC4", "--seq", kU, "--json"}).out);
  EXPECT_EQ(j["factorizations"].size(), 3u);
}

TEST(Cli, AtomsJsonSchema) {
  json j = json::parse(run({"atoms", "-g", "C2xC4", "--json"}).out);
  EXPECT_EQ(j["group"], "C2xC4");
  EXPECT_EQ(j["davenport"], 5);
  EXPECT_EQ(j["count"], j["atoms"].size());
  EXPECT_EQ(j["support"].size(), 8u);
  j = json::parse(run({"atoms", "-g", "C2xC4", "--support", "(0,1) (0,3)", "--json"}).out);
  EXPECT_EQ(j["atoms"], json({"(0,1) (0,3)", "(0,1)^4", "(0,3)^4"}));
  EXPECT_EQ(j["davenport"], 4);
}

TEST(Cli, ClosedJsonSchema) {
  auto r = run({"closed", "-g", "C2xC4", "--bound", "10", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "NOT-CLOSED");
  ASSERT_EQ(j["witness_pair"].size(), 2u);
  EXPECT_FALSE(j["failed_sumset"].empty());
  EXPECT_TRUE(j["inconclusive"].empty());
  j = json::parse(run({"closed", "-g", "C3", "--bound", "10", "--json"}).out);
  EXPECT_EQ(j["verdict"], "CLOSED-AT-BOUND");
  EXPECT_TRUE(j["witness_pair"].empty());
}

TEST(Cli, RhoDeltaAamp) {
  json j = json::parse(run({"rho", "-g", "C3xC3", "--k", "3", "--json"}).out);
  EXPECT_EQ(j["rho_k"], 7);
  EXPECT_EQ(j["elasticity"], "5/2");
  j = json::parse(run({"rho", "-g", "C3xC3", "--seq", "(0,1)^2 (1,0)^2 (1,1) (0,2)^2 (2,0)^2 (2,2)", "--json"}).out);
  EXPECT_EQ(j["extremal"].size(), 1u);
  j = json::parse(run({"delta", "-g", "C2xC2xC2", "--bound", "10", "--star", "--json"}).out);
  EXPECT_EQ(j["max"], 2);
  EXPECT_EQ(j["formula"], 2);
  j = json::parse(run({"aamp", "--set", "2,5,8,9", "--d", "3", "--max-bound", "3", "--json"}).out);
  EXPECT_EQ(j["witness"]["bound"], 4);
  EXPECT_EQ(j["is_aamp"], false);
}

TEST(Cli, VerifyJson) {
  auto r = run({"verify", "--scenario", "lemma-3.3", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["scenario"], "lemma-3.3");
  ASSERT_FALSE(j["claims"].empty());
  for (const auto& c : j["claims"]) {
    for (const char* key : {"desc", "ref", "pass", "computed", "expected"}) EXPECT_TRUE(c.contains(key)) << key;
    EXPECT_EQ(c["pass"], true);
  }
}

TEST(Cli, VerifyInconclusiveExitsThree) {
  EXPECT_EQ(run({"verify", "--scenario", "prop-el2-r2", "--budget", "10"}).code, 3);
}

TEST(Cli, JsonIdenticalAcrossThreads) {
  std::vector<std::string> base{"system", "-g", "C3xC3", "--bound", "9", "--json"};
  std::string ref;
  for (const char* t : {"1", "3", "8"})
    for (bool sym : {false, true}) {
      std::vector<std::string> args = base;
      args.insert(args.end(), {"--threads", t});
      if (sym) args.push_back("--symmetry");
      std::ostringstream out, err;
      ASSERT_EQ(zslen::cli::run(args, out, err), 0);
      if (ref.empty())
        ref = out.str();
      else
        EXPECT_EQ(out.str(), ref);
    }
}
