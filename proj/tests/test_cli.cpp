#include <gtest/gtest.h>

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "iwasawa/cache.hpp"
#include "iwasawa/cli.hpp"
#include "iwasawa/error.hpp"
#include "iwasawa/selfcheck.hpp"

using namespace iwasawa;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("iwasawa-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::vector<nlohmann::json> records(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  return out;
}

}  // namespace

TEST(CurveFile, ParsesCommentsAndFractions) {
  auto v = parse_curve_text("# header\n11a1 : 0 -1 1 -10 -20  # trailing\n\nq : 0 0 1/1 -1 0\n");
  ASSERT_EQ(v.size(), 2U);
  EXPECT_EQ(v[0].label(), "11a1");
  EXPECT_EQ(v[0].a4(), -10);
  EXPECT_EQ(format_curve_line(v[1]), "q : 0 0 1 -1 0");
}

TEST(CurveFile, ErrorsCarryLineNumbers) {
  try {
    parse_curve_text("a : 0 0 1 -1 0\n\nb : 0 0 x -1 0\n", "f.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
    EXPECT_NE(std::string(e.what()).find("f.txt:3"), std::string::npos) << e.what();
  }
  try {
    parse_curve_text("a : 0 0 1 -1\n", "g");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("g:1"), std::string::npos);
  }
}

TEST(CurveFile, RejectsSingularAndDuplicate) {
  try {
    parse_curve_text("node : 0 1 0 0 0\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SingularCurve);
  }
  try {
    parse_curve_text("a : 0 0 1 -1 0\na : 0 -1 1 -10 -20\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
  }
}

TEST(PairsFile, LabelsAndTwists) {
  auto v = parse_pairs_text("11a1 tw:-4\n# c\n11a1 37a1\n");
  ASSERT_EQ(v.size(), 2U);
  EXPECT_EQ(*v[0].twist, -4);
  EXPECT_EQ(v[1].second, "37a1");
  EXPECT_EQ(v[1].line, 3);
  EXPECT_THROW(parse_pairs_text("11a1 tw:x\n"), Error);
  EXPECT_THROW(parse_pairs_text("11a1\n"), Error);
}

TEST(CacheFile, RealsRoundTripExactly) {
  for (const char* s : {"0.1", "-2.5e-300", "3.14159265358979323846264338327950288"}) {
    Real x(s);
    EXPECT_EQ(real_from_text(real_to_text(x)), x);
  }
  EXPECT_THROW(real_from_text("zz"), Error);
}

TEST(CacheFile, CoefficientsRoundTripAndReuse) {
  auto dir = scratch("an");
  CurveData E(reference_curve("11a1"));
  Cache c(dir);
  auto a = c.an(E, 500);
  EXPECT_EQ(a, an_coeffs(E, 500));
  EXPECT_TRUE(fs::exists(c.path_for("11a1", "an")));
  Cache again(dir);
  EXPECT_EQ(again.an(E, 300), std::vector<long>(a.begin(), a.begin() + 301));
  EXPECT_TRUE(again.warnings().empty());
  fs::remove_all(dir);
}

TEST(CacheFile, HashMismatchRebuilds) {
  auto dir = scratch("hash");
  Cache c(dir);
  c.an(CurveData(reference_curve("11a1")), 200);
  // Same label, different curve.
  CurveModel other("11a1", 0, 0, 1, -1, 0);
  auto a = c.an(CurveData(other), 200);
  EXPECT_EQ(a, an_coeffs(CurveData(other), 200));
  ASSERT_FALSE(c.warnings().empty());
  fs::remove_all(dir);
}

TEST(CacheFile, CorruptFileRebuilds) {
  auto dir = scratch("corrupt");
  Cache c(dir);
  CurveData E(reference_curve("37a1"));
  c.an(E, 200);
  {
    std::ofstream f(c.path_for("37a1", "an"), std::ios::trunc);
    f << "# iwasawa-cache schema=1\nkind an\ngarbage\n";
  }
  Cache d(dir);
  EXPECT_EQ(d.an(E, 200), an_coeffs(E, 200));
  EXPECT_FALSE(d.warnings().empty());
  Cache e(dir);
  e.an(E, 200);
  EXPECT_TRUE(e.warnings().empty());
  fs::remove_all(dir);
}

TEST(CacheFile, ConcurrentReadersSeeCompleteFiles) {
  auto dir = scratch("concurrent");
  CurveData E(reference_curve("11a1"));
  auto want = an_coeffs(E, 2000);
  std::vector<std::thread> ts;
  std::atomic<int> bad{0};
  for (int t = 0; t < 6; ++t)
    ts.emplace_back([&] {
      Cache c(dir);
      for (int i = 0; i < 5; ++i)
        if (c.an(E, 2000) != want || !c.warnings().empty()) ++bad;
    });
  for (auto& t : ts) t.join();
  EXPECT_EQ(bad.load(), 0);
  fs::remove_all(dir);
}

TEST(CacheFile, TwistedLevelsRoundTrip) {
  auto dir = scratch("lvalues");
  LFunction L(CurveData(reference_curve("11a1")));
  Cache c(dir);
  auto first = c.twisted_level(L, 5, 1);
  LFunction M(CurveData(reference_curve("11a1")));
  Cache d(dir);
  auto second = d.twisted_level(M, 5, 1);
  ASSERT_EQ(first.size(), second.size());
  for (const auto& [chi, v] : first) EXPECT_EQ(second.at(chi).value, v.value);
  EXPECT_TRUE(M.has_level(5, 1));
  fs::remove_all(dir);
}

TEST(Commands, ClassifyReportsOrdinaryReduction) {
  CliConfig cfg;
  cfg.curves = {reference_curve("11a1")};
  cfg.timestamps = false;
  std::ostringstream out;
  auto s = run_command("classify", cfg, out);
  EXPECT_EQ(s.exit_code, 0);
  auto recs = records(out.str());
  ASSERT_EQ(recs.size(), 1U);
  EXPECT_EQ(recs[0]["status"], "ok");
  EXPECT_EQ(recs[0]["result"]["conductor"], 11);
  EXPECT_EQ(recs[0]["result"]["reduction"]["type"], "good-ordinary");
  EXPECT_EQ(recs[0]["result"]["reduction"]["ap"], 1);
  EXPECT_EQ(recs[0]["schema"], kSchemaVersion);
}

TEST(Commands, UnknownCommandIsUsageError) {
  CliConfig cfg;
  cfg.curves = {reference_curve("11a1")};
  std::ostringstream out;
  EXPECT_EQ(run_command("frobnicate", cfg, out).exit_code, 2);
  EXPECT_TRUE(out.str().empty());
  CliConfig empty;
  EXPECT_EQ(run_command("classify", empty, out).exit_code, 2);
  EXPECT_EQ(run_command("verify-eq13", empty, out).exit_code, 2);
}

TEST(Commands, OutputIsDeterministicWithoutTimestamps) {
  CliConfig cfg;
  cfg.curves = {reference_curve("11a1"), reference_curve("37a1"), reference_curve("14a1")};
  cfg.timestamps = false;
  cfg.nmax = 20000;
  std::ostringstream a, b;
  run_command("lvalue", cfg, a);
  cfg.threads = 3;
  run_command("lvalue", cfg, b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(records(a.str()).size(), 3U);
}

TEST(Commands, PadicSeriesThroughCache) {
  auto dir = scratch("padic");
  CliConfig cfg;
  cfg.curves = {reference_curve("11a1")};
  cfg.timestamps = false;
  cfg.cache_dir = dir.string();
  std::ostringstream a, b;
  EXPECT_EQ(run_command("padic-l", cfg, a).exit_code, 0);
  EXPECT_EQ(run_command("padic-l", cfg, b).exit_code, 0);
  EXPECT_EQ(a.str(), b.str());
  auto r = records(a.str()).at(0);
  EXPECT_EQ(r["result"]["l_over_omega"], "1/5");
  EXPECT_EQ(r["result"]["order"], 0);
  EXPECT_EQ(r["result"]["interpolation"], "holds-at-precision");
  fs::remove_all(dir);
}

TEST(Commands, SupersingularGivesRecordError) {
  CliConfig cfg;
  cfg.p = 2;
  cfg.curves = {reference_curve("11a1")};
  cfg.timestamps = false;
  std::ostringstream out;
  auto s = run_command("padic-l", cfg, out);
  EXPECT_EQ(s.exit_code, 1);
  auto r = records(out.str()).at(0);
  EXPECT_EQ(r["status"], "error");
}

TEST(Commands, SelfcheckPasses) {
  CliConfig cfg;
  cfg.timestamps = false;
  std::ostringstream out;
  auto s = run_command("selfcheck", cfg, out);
  EXPECT_EQ(s.exit_code, 0) << out.str();
  EXPECT_EQ(s.fails, 0);
}
