#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "projdyn/mpoly.hpp"

namespace {

using projdyn::Field;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = projdyn::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::vector<std::string> kLinearMapSearch = {"improper-search", "--field", "QQ",      "--map",   "[x0, x1/2, -x2/3]",
                                             "--form",          "x0+x1+x2", "--bound", "3"};

// Invocations whose first output line is a polynomial or a list of them.
const std::vector<std::vector<std::string>> kPolynomialOutputs = {
    {"iterate", "--map", "[x0^2-x1^2, 2*x0*x1+x1^2]", "--s", "3"},
    {"iterate", "--field", "Fp:101", "--map", "[x0^2+x1*x2, x1^2, x2^2-x0*x1]", "--s", "2"},
    {"jacobian", "--map", "[x0^2+x1^2, x1^2, x2^2]"},
    {"resultant", "--map", "[x0^2+x3*x1^2, x1^2, x2^2+x4*x0*x1]"},
    {"pushforward", "--map", "[x0^2+7*x1^2, x1^2, x2^2]", "--form", "x0-3*x1"},
    {"pushforward", "--map", "[x0^2, x1^2, x2^2]", "--form", "x0+x1+x2", "--s", "2"},
    {"improper-cert", "--map", "[x0, x1/2, -x2/3]", "--form", "x0+x1+x2", "--indices", "0,1,3"},
    {"sympow", "--map", "[x^2, y^2]", "--n", "2"},
    {"period-poly", "--d", "2", "--s", "4"},
    {"find-pcf", "--d", "2", "--s", "3"},
};

}  // namespace

TEST(Cli, LinearMapWitness) {
  const Invocation r = run(kLinearMapSearch);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(0,1,3)\n");
}

TEST(Cli, LinearMapSecondIterateHasNoWitness) {
  const Invocation r = run({"improper-search", "--map", "[x0, x1/4, x2/9]", "--form", "x0+x1+x2", "--bound", "6"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "none with indices up to 6\n");
}

TEST(Cli, Pushforward) {
  const Invocation r = run({"pushforward", "--field", "QQ", "--map", "[x0^2+7*x1^2, x1^2, x2^2]", "--form", "x0-3*x1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x0-16*x1\n");
}

TEST(Cli, PeriodPolynomial) {
  const Invocation r = run({"period-poly", "--d", "2", "--s", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "[0, 1, 0, 0, 3, 0, 0, 1]\n");
}

TEST(Cli, FlagsBeforeSubcommand) {
  const Invocation r = run({"--d", "2", "--s", "3", "period-poly"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "[1, 0, 0, 1]\n");
}

TEST(Cli, Orbit) {
  const Invocation r = run({"orbit", "--map", "[x0^2-2*x1^2, x0^2]", "--point", "(0:1)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(0:1)\n(1:0)\n(1:1)\n(-1:1)\n(-1:1)\ntail 3 period 1\n");
  const Invocation cut = run({"orbit", "--map", "[x0^2+x1^2, x1^2]", "--point", "1,1", "--max-steps", "4"});
  EXPECT_EQ(cut.code, 1);
}

TEST(Cli, PeriodicCriticalTest) {
  const Invocation no = run({"ys-test", "--map", "[x0^2-2*x1^2, x0^2]", "--s", "4"});
  EXPECT_EQ(no.code, 1);
  EXPECT_EQ(no.out, "false\nscope resultant\n");
  const Invocation yes = run({"ys-test", "--map", "[x1^2-x0^2, x0^2]", "--s", "3"});
  EXPECT_EQ(yes.code, 0);
  EXPECT_EQ(yes.out.substr(0, 5), "true\n");
  const Invocation scan = run({"ys-test", "--field", "Fp:7", "--map", "[x0^2, x1^2, x2^2]", "--s", "1"});
  EXPECT_EQ(scan.code, 0);
  EXPECT_NE(scan.out.find("exhaustive-scan"), std::string::npos);
}

TEST(Cli, FindPcf) {
  EXPECT_EQ(run({"find-pcf", "--d", "2", "--s", "3"}).out, "-1\n");
  const Invocation none = run({"find-pcf", "--d", "2", "--s", "5"});
  EXPECT_EQ(none.code, 1);
  EXPECT_EQ(none.out, "none in QQ\n");
}

TEST(Cli, Dims) {
  const Invocation r = run({"dims", "--n", "2", "--m", "1", "--d", "2", "--indices", "0,1,2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "dim_forms 2\ndim_end 17\ngeneric_cert_degree 56\n");
  EXPECT_EQ(run({"dims", "--n", "1", "--d", "2"}).out, "dim_end 5\n");
}

TEST(Cli, MapFromFile) {
  const std::string path = ::testing::TempDir() + "projdyn_cli_map.txt";
  {
    std::ofstream f(path);
    f << "[x0^2+7*x1^2,\n x1^2,\n x2^2]\n";
  }
  const Invocation r = run({"pushforward", "--map", "@" + path, "--form", "x0-3*x1"});
  std::remove(path.c_str());
  EXPECT_EQ(r.out, "x0-16*x1\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"pushforward", "--map", "[x0^2, x1^2]"}).code, 2);
  EXPECT_EQ(run({"iterate", "--map", "[x0^2, x1]"}).code, 2);
  EXPECT_EQ(run({"iterate", "--field", "Fp:8", "--map", "[x0, x1]"}).code, 2);
  EXPECT_EQ(run({"resultant", "--map", "[x0^2, x1^2]", "--strategy", "fast"}).code, 2);
  EXPECT_EQ(run({"pushforward", "--map", "[x0^2, x0*x1, x0*x2]", "--form", "x1"}).code, 2);
  EXPECT_EQ(run({"period-poly", "--d", "2", "--s", "1"}).code, 2);
  // A map of P^2 over QQ: periodic critical points are not decided.
  EXPECT_EQ(run({"ys-test", "--map", "[x0^2, x1^2, x2^2]", "--s", "1"}).code, 3);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ErrorsAsJson) {
  const Invocation r = run({"pushforward", "--json", "--map", "[x0^2, x0*x1, x0*x2]", "--form", "x1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("\"status\": \"error\""), std::string::npos);
  EXPECT_NE(r.out.find("\"code\": \"not-morphism\""), std::string::npos) << r.out;
}

TEST(Cli, Deterministic) {
  std::vector<std::vector<std::string>> cases = kPolynomialOutputs;
  cases.push_back(kLinearMapSearch);
  cases.push_back({"orbit", "--map", "[x0^2-2*x1^2, x0^2]", "--point", "(0:1)", "--json"});
  for (auto args : cases) {
    args.push_back("--seed");
    args.push_back("7");
    const Invocation a = run(args), b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out) << args.front();
  }
}

TEST(Cli, TextOutputRoundTrips) {
  for (const auto& args : kPolynomialOutputs) {
    const Invocation r = run(args);
    ASSERT_EQ(r.code, 0) << args.front() << ": " << r.err;
    const std::string line = r.out.substr(0, r.out.find('\n'));
    Field field = Field::rationals();
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] == "--field") field = Field::parse(args[i + 1]);
    }
    if (line.front() == '[') {
      const auto ps = projdyn::parse_polynomial_list(line, 8, field);
      std::string again = "[";
      for (std::size_t i = 0; i < ps.size(); ++i) again += (i ? ", " : "") + projdyn::to_string(ps[i]);
      EXPECT_EQ(again + "]", line);
    } else {
      EXPECT_EQ(projdyn::to_string(projdyn::parse_polynomial(line, 8, field)), line);
    }
  }
}
