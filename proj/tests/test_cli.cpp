#include <json.hpp>

#include <sstream>

#include "heegner/errors.hpp"
#include "heegner_cli/acceptance.hpp"
#include "heegner_cli/cli.hpp"
#include "test_support.hpp"

using namespace heegner;
using namespace heegner::cli;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "heegner");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, Pi) {
  CliRun r = run_cli({"pi", "--digits", "50"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "3.14159265358979323846264338327950288419716939937510\n");
  CliRun g = run_cli({"pi", "--digits", "20", "--group"});
  EXPECT_EQ(g.out, "3.1415926535 8979323846\n");
  CliRun j = run_cli({"pi", "--digits", "5", "--json"});
  EXPECT_EQ(nlohmann::json::parse(j.out)["pi"], "3.14159");
}

TEST(Cli, EvalS2) {
  CliRun r = run_cli({"eval", "--function", "s2", "--tau", "heegner:1,1,2", "--digits", "100"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("0.238095238095", 0), 0u) << r.out;
}

TEST(Cli, EvalJsonAndRegion) {
  CliRun r = run_cli({"eval", "--function", "period", "--tau", "complex:0,1.5", "--region", "one", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["region"], "one");
  EXPECT_EQ(j["im"], "0");
}

TEST(Cli, EvalErrors) {
  EXPECT_EQ(run_cli({"eval", "--function", "s2", "--tau", "heegner:1,0,1"}).code, 1);
  EXPECT_EQ(run_cli({"eval", "--function", "s2", "--tau", "bogus:1"}).code, 2);
  EXPECT_EQ(run_cli({"eval", "--function", "E8", "--tau", "heegner:1,0,2"}).code, 2);
  EXPECT_EQ(run_cli({"eval", "--function", "J", "--tau", "complex:0,-1"}).code, 2);
}

TEST(Cli, VerifyJson) {
  CliRun r = run_cli({"verify", "--id", "series.sqrt-2", "--digits", "1000", "--json"});
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["digits"], 1000);
}

TEST(Cli, VerifyAllOrdered) {
  CliRun r = run_cli({"verify", "--all", "--digits", "60", "--json"});
  EXPECT_EQ(r.code, 0) << r.err;
  auto arr = nlohmann::json::parse(r.out);
  ASSERT_EQ(arr.size(), 55u);
  for (size_t i = 1; i < arr.size(); ++i) EXPECT_LT(arr[i - 1]["id"], arr[i]["id"]);
}

TEST(Cli, VerifyPrintedFails) {
  EXPECT_EQ(run_cli({"verify", "--id", "series.sqrt-7", "--printed"}).code, 1);
}

TEST(Cli, UnknownId) {
  CliRun r = run_cli({"verify", "--id", "series.sqrt-5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("series.sqrt-2"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"pi", "--digits", "x"}).code, 2);
  EXPECT_EQ(run_cli({"pi", "--digits", "0"}).code, 2);
  EXPECT_EQ(run_cli({"verify"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--all", "--id", "eta.i"}).code, 2);
  EXPECT_EQ(run_cli({"selftest", "--level", "medium"}).code, 2);
  EXPECT_EQ(run_cli({"selftest", "--inject-fault", "nope"}).code, 2);
}

TEST(Cli, CatalogJson) {
  CliRun r = run_cli({"catalog", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  auto arr = nlohmann::json::parse(r.out);
  EXPECT_EQ(arr.size(), 55u);
  EXPECT_EQ(nlohmann::json::parse(arr.dump()), arr);
  CliRun t = run_cli({"catalog"});
  EXPECT_NE(t.out.find("series.halfint-163"), std::string::npos);
}

TEST(Cli, SelftestQuick) {
  CliRun r = run_cli({"selftest", "--level", "quick"});
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Cli, FaultInjectionNamesRecord) {
  CliRun r = run_cli({"selftest", "--level", "quick", "--inject-fault", "zero.halfint-67"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("zero.halfint-67"), std::string::npos);

  AcceptanceOptions opt;
  opt.inject_fault = "table.s2.sqrt-2";
  CriterionResult c = criterion_tables(opt);
  EXPECT_FALSE(c.pass);
  EXPECT_NE(c.detail.find("table.s2.sqrt-2"), std::string::npos);
}

TEST(Format, Decimal) {
  const mpfr_prec_t p = 200;
  EXPECT_EQ(format_decimal(Real(mpq_class(5, 21), p), 6), "0.238095");
  EXPECT_EQ(format_decimal(Real(mpq_class(125, 27), p), 5), "4.6296");
  EXPECT_EQ(format_decimal(Real(-1728, p), 4), "-1728");
  EXPECT_EQ(format_decimal(Real(p), 4), "0");
  EXPECT_EQ(format_decimal(Real(mpq_class(1, mpz_class("100000000000000000000000000")), p), 3), "1.00e-26");
  Complex z(Real(1, p), Real(-2, p));
  EXPECT_EQ(format_decimal(z, 3), "1.00 - 2.00i");
}

TEST(Format, TauSpec) {
  TauPoint t = parse_tau_spec("heegner:1,1,2");
  EXPECT_EQ(*t.exact_re(), mpq_class(-1, 2));
  EXPECT_EQ(*t.exact_im2(), mpq_class(7, 4));
  TauPoint c = parse_tau_spec("complex:0.25,1.5");
  EXPECT_EQ(*c.exact_re(), mpq_class(1, 4));
  EXPECT_THROW(parse_tau_spec("heegner:1,2"), ParameterError);
  EXPECT_THROW(parse_tau_spec("heegner:1,3,2"), ParameterError);
  EXPECT_EQ(group_digits("3.14159265358979"), "3.1415926535 8979");
}
