#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "ca/report.hpp"
#include "ca/suites.hpp"

using namespace ca::cli;

TEST(Config, EmptyMeansDefaults) {
  auto c = parse_config("");
  SuiteConfig d;
  EXPECT_EQ(c.seed, d.seed);
  EXPECT_EQ(c.hbar_grid, d.hbar_grid);
  EXPECT_EQ(config_digest(c), config_digest(d));
  auto e = parse_config("# only a comment\n\n   \n");
  EXPECT_EQ(config_digest(e), config_digest(d));
}

TEST(Config, ParsesKeys) {
  auto c = parse_config(
      "seed = 7\nsamples=3\neta = 1.25 # trailing\nhbar_grid = 4e-2, 2e-2\nzeta_grid=0.02,0.01\nk=0.5\ntau=1.3\n"
      "P=200\nN=9\nquad_tol=1e-9\ntol.cybe-trig/r0 = 1e-8\nsuite = cybe-trig\n");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.samples, 3);
  EXPECT_EQ(c.eta, 1.25);
  EXPECT_EQ(c.hbar_grid, (std::vector<double>{4e-2, 2e-2}));
  EXPECT_EQ(c.P, 200);
  EXPECT_EQ(c.N, 9);
  EXPECT_EQ(c.tolerances.at("cybe-trig/r0"), 1e-8);
  EXPECT_EQ(c.suite, "cybe-trig");
}

TEST(Config, Rejections) {
  EXPECT_THROW(parse_config("tol.cybe-trig/r0 = -1"), config_error);
  EXPECT_THROW(parse_config("tol.no-such-case = 1e-3"), config_error);
  EXPECT_THROW(parse_config("hbar_grid = 1e-3, 2e-3"), config_error);
  EXPECT_THROW(parse_config("zeta_grid = 1e-2, 1e-2"), config_error);
  EXPECT_THROW(parse_config("eta = 0"), config_error);
  EXPECT_THROW(parse_config("k = 1"), config_error);
  EXPECT_THROW(parse_config("seed = x"), config_error);
  EXPECT_THROW(parse_config("colour = red"), config_error);
  EXPECT_THROW(parse_config("seed = 1\nseed = 2"), config_error);
  EXPECT_THROW(parse_config("just words"), config_error);
  EXPECT_THROW(parse_config("suite = nothing"), config_error);
  EXPECT_THROW(load_config("/nonexistent/config.txt"), config_error);
}

TEST(Config, DigestDeterminismAndSensitivity) {
  std::string text = "seed = 11\neta = 0.9\n";
  EXPECT_EQ(config_digest(parse_config(text)), config_digest(parse_config(text)));
  EXPECT_NE(config_digest(parse_config(text)), config_digest(parse_config("seed = 12\neta = 0.9\n")));
  EXPECT_EQ(config_digest(parse_config(text)).size(), 16u);
}

TEST(Report, EmptyAndSummary) {
  VerificationReport r;
  r.suite = "x";
  finalize(r);
  EXPECT_EQ(r.summary.total, 0);
  EXPECT_EQ(r.summary.passed, 0);
  EXPECT_TRUE(all_pass(r));
  auto j = from_json(to_json(r));
  EXPECT_EQ(j.summary.total, 0);

  r.cases = {make_case("b", "", 2e-3, 1e-3), make_case("a", "", 1e-9, 1e-3), make_case("c", "", NAN, 1.0)};
  finalize(r);
  EXPECT_EQ(r.cases[0].name, "a");
  EXPECT_EQ(r.summary.total, 3);
  EXPECT_EQ(r.summary.passed, 1);
  EXPECT_FALSE(r.cases[2].pass);
  EXPECT_TRUE(std::isinf(r.summary.max_residual));
  EXPECT_FALSE(all_pass(r));
}

TEST(Report, JsonRoundTripAndDigits) {
  VerificationReport r;
  r.suite = "demo";
  r.seed = 42;
  r.config_digest = "0123456789abcdef";
  r.cases = {make_case("demo/one", "u=\"0.3\"", 1.2345678901234567e-11, 1e-10),
             make_case("demo/two", "", 0.1 + 0.2, 0.25)};
  finalize(r);
  std::string s = to_json(r);
  auto q = from_json(s);
  EXPECT_EQ(q.suite, r.suite);
  EXPECT_EQ(q.seed, r.seed);
  EXPECT_EQ(q.config_digest, r.config_digest);
  ASSERT_EQ(q.cases.size(), 2u);
  for (size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(q.cases[i].name, r.cases[i].name);
    EXPECT_EQ(q.cases[i].inputs, r.cases[i].inputs);
    EXPECT_EQ(q.cases[i].residual, r.cases[i].residual);
    EXPECT_EQ(q.cases[i].tolerance, r.cases[i].tolerance);
    EXPECT_EQ(q.cases[i].pass, r.cases[i].pass);
  }
  EXPECT_EQ(q.summary.passed, 1);
  EXPECT_EQ(to_json(q), s);
  // 17 significant digits even for round tolerances
  EXPECT_NE(s.find("1.0000000000000000e-10"), std::string::npos);
}

TEST(Report, TextOneLinePerCase) {
  VerificationReport r;
  r.suite = "demo";
  r.cases = {make_case("demo/one", "", 1e-12, 1e-10), make_case("demo/two", "", 1.0, 0.5)};
  finalize(r);
  std::string t = to_text(r);
  int lines = 0;
  for (char c : t) lines += c == '\n';
  EXPECT_EQ(lines, 3);
  EXPECT_NE(t.find("\nFAIL demo 1/2 passed"), std::string::npos);
  EXPECT_EQ(t.rfind("PASS demo/one", 0), 0u);
}

TEST(Report, EmitToFile) {
  VerificationReport r;
  r.suite = "demo";
  finalize(r);
  std::string path = testing::TempDir() + "report_emit.json";
  emit_report(r, Format::json, path);
  std::ifstream f(path);
  std::string body((std::istreambuf_iterator<char>(f)), {});
  EXPECT_EQ(body, to_json(r));
  EXPECT_THROW(emit_report(r, Format::json, "/nonexistent/dir/x.json"), config_error);
}

TEST(Suites, NamesAndTolerances) {
  EXPECT_EQ(suite_names().size(), 22u);
  for (auto& [k, v] : default_tolerances()) EXPECT_GT(v, 0.0) << k;
  EXPECT_THROW(run_suite("nope", SuiteConfig{}), config_error);
}

TEST(Suites, DeterministicForASeed) {
  SuiteConfig c;
  c.samples = 5;
  auto a = run_suite("cybe-trig", c), b = run_suite("cybe-trig", c);
  EXPECT_EQ(to_json(a), to_json(b));
  c.seed += 1;
  auto d = run_suite("cybe-trig", c);
  EXPECT_NE(a.cases[0].residual, d.cases[0].residual);
  EXPECT_TRUE(all_pass(a));
}

TEST(Suites, ToleranceOverrideDecidesPass) {
  SuiteConfig c;
  c.samples = 3;
  c.tolerances["cybe-trig/r0"] = 1e-30;
  auto r = run_suite("cybe-trig", c);
  ASSERT_EQ(r.cases.size(), 1u);
  EXPECT_EQ(r.cases[0].tolerance, 1e-30);
  EXPECT_EQ(r.cases[0].pass, r.cases[0].residual <= 1e-30);
}

TEST(Suites, CasesSortedByName) {
  SuiteConfig c;
  c.samples = 2;
  auto r = run_suite("gauge", c);
  ASSERT_EQ(r.cases.size(), 3u);
  EXPECT_TRUE(std::is_sorted(r.cases.begin(), r.cases.end(), [](auto& a, auto& b) { return a.name < b.name; }));
  EXPECT_TRUE(all_pass(r));
}
