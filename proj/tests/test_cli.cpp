#include <campana/cli.hpp>
#include <campana/verify.hpp>

#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using campana::cli::Config;
using campana::cli::run;
using campana::cli::UsageError;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + name; }

}  // namespace

TEST(Cli, Hilbert) {
  Outcome a = call({"hilbert", "-1", "-1", "inf"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, "-1\n");
  EXPECT_EQ(call({"hilbert", "2", "5", "5"}).out, "-1\n");
  EXPECT_EQ(call({"hilbert", "2", "7", "7"}).out, "+1\n");
  EXPECT_EQ(call({"hilbert", "-1/2", "3/4", "3"}).code, 0);
  EXPECT_EQ(call({"hilbert", "3", "x", "7"}).code, 2);
  EXPECT_EQ(call({"hilbert", "3", "5", "4"}).code, 2);
  EXPECT_EQ(call({"hilbert", "0", "5", "5"}).code, 2);
  EXPECT_EQ(call({"hilbert", "3"}).code, 2);
}

TEST(Cli, Construct) {
  Outcome r = call({"construct", "3", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["achieved"], nlohmann::json::array({3, 5}));
  EXPECT_EQ(j["target"], j["achieved"]);

  Outcome empty = call({"construct"});
  ASSERT_EQ(empty.code, 0);
  auto e = nlohmann::json::parse(empty.out);
  EXPECT_EQ(e["a"], "1/1");
  EXPECT_TRUE(e["achieved"].empty());

  EXPECT_EQ(call({"construct", "4"}).code, 2);
  EXPECT_EQ(call({"construct", "3", "3"}).code, 2);
  EXPECT_EQ(call({"construct", "3", "5", "--max-steps", "1"}).code, 1);
}

TEST(Cli, ConstructIsDeterministic) {
  EXPECT_EQ(call({"construct", "2", "3", "7"}).out, call({"construct", "2", "3", "7"}).out);
}

TEST(Cli, Member) {
  EXPECT_EQ(call({"member", "campana", "1/8", "--n", "3", "--s", ""}).out, "true\n");
  EXPECT_EQ(call({"member", "campana", "1/4", "--n", "3", "--s", ""}).out, "false\n");
  EXPECT_EQ(call({"member", "sintegers", "7/25", "--s", "5"}).out, "true\n");
  EXPECT_EQ(call({"member", "campana", "1/8", "--n", "3"}).code, 2);
  EXPECT_EQ(call({"member", "unknown", "1"}).code, 2);
}

TEST(Cli, EmitToStdout) {
  Outcome r = call({"emit", "S"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 9), "{\"free\":[");
  EXPECT_EQ(r.err, "universals=0 existentials=3 degree<=4\n");
}

TEST(Cli, EmitToFile) {
  std::string path = temp_path("campana_emit_test.sexpr");
  Outcome r = call({"emit", "campana", "--n", "2", "--format", "sexpr", "-o", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "universals=838 existentials=558 degree<=3387\n");
  std::ifstream in(path);
  std::string head;
  std::getline(in, head);
  EXPECT_EQ(head, "(formula");
  std::remove(path.c_str());

  EXPECT_EQ(call({"emit", "campana", "--n", "2", "--real", "-o", temp_path("campana_real.json")}).out,
            "universals=838 existentials=558 degree<=27\n");
  std::remove(temp_path("campana_real.json").c_str());
  EXPECT_EQ(call({"emit", "campana", "--n", "1"}).code, 2);
  EXPECT_EQ(call({"emit", "S", "--format", "yaml"}).code, 2);
  EXPECT_EQ(call({"emit", "S", "-o", "/nonexistent/dir/out.json"}).code, 1);
}

TEST(Cli, Verify) {
  Outcome r = call({"verify", "hilbert", "--samples", "50"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("hilbert"), std::string::npos);
  EXPECT_EQ(call({"verify", "nothing"}).code, 2);
  EXPECT_EQ(call({"verify", "hilbert", "--samples", "50", "--seed", "7"}).out,
            call({"verify", "hilbert", "--samples", "50", "--seed", "7"}).out);
}

TEST(Cli, VerifySuitesPass) {
  Config cfg;
  cfg.samples = 100;
  for (const auto& r : campana::cli::run_suite("all", cfg)) {
    EXPECT_TRUE(r.passed()) << r.suite << "/" << r.property << ": " << r.counterexample.value_or("");
  }
  EXPECT_THROW(campana::cli::run_suite("bogus", cfg), UsageError);
}

TEST(Cli, UsageAndHelp) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"--help"}).code, 0);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
}

TEST(Config, Parse) {
  Config c = campana::cli::parse_config("# comment\n\nmax_steps = 10\naux_prime_bound=50\ntimeout_seconds = 1.5\nseed=9\n");
  EXPECT_EQ(c.max_steps, 10u);
  EXPECT_EQ(c.aux_prime_bound, 50u);
  EXPECT_DOUBLE_EQ(c.timeout_seconds, 1.5);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.samples, Config{}.samples);
  EXPECT_THROW(campana::cli::parse_config("colour = blue\n"), UsageError);
  EXPECT_THROW(campana::cli::parse_config("max_steps = many\n"), UsageError);
  EXPECT_THROW(campana::cli::parse_config("max_steps = -3\n"), UsageError);
  EXPECT_THROW(campana::cli::parse_config("max_steps\n"), UsageError);
}

TEST(Config, FileAndFlagPrecedence) {
  std::string path = temp_path("campana_test.cfg");
  {
    std::ofstream out(path);
    out << "max_steps = 1\n";
  }
  EXPECT_EQ(campana::cli::load_config(path).max_steps, 1u);
  EXPECT_EQ(call({"--config", path, "construct", "3", "5"}).code, 1);
  EXPECT_EQ(call({"--config", path, "construct", "3", "5", "--max-steps", "100000"}).code, 0);
  std::remove(path.c_str());
  EXPECT_THROW(campana::cli::load_config(temp_path("does_not_exist.cfg")), UsageError);
  EXPECT_EQ(call({"--config", temp_path("does_not_exist.cfg"), "construct"}).code, 2);
}

TEST(Parsing, RationalsAndPrimeLists) {
  EXPECT_EQ(campana::cli::parse_rational("-6/4"), campana::Rational(campana::BigInt(-3), campana::BigInt(2)));
  EXPECT_THROW(campana::cli::parse_rational("1/0"), UsageError);
  EXPECT_THROW(campana::cli::parse_rational("abc"), UsageError);
  EXPECT_EQ(campana::cli::parse_prime_list("3, 5 7").size(), 3u);
  EXPECT_TRUE(campana::cli::parse_prime_list("").empty());
  EXPECT_THROW(campana::cli::parse_prime_list("3,3"), UsageError);
  EXPECT_THROW(campana::cli::parse_prime_list("9"), UsageError);
}
