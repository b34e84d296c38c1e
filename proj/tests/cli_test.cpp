#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  ::unsetenv(xmap::cli::kCacheEnv);
  args.insert(args.begin(), "xmap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = xmap::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("xmap_cli_test_" + name);
  fs::remove(p);
  return p;
}

TEST(CliTest, XAndOrbit) {
  const Result x = run({"x", "21"});
  EXPECT_EQ(x.code, 0);
  EXPECT_EQ(x.out, "Pi=10 C=22 X=9\n");

  const Result o = run({"orbit", "7"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "7 13 25 4 1 0 DIES\n");
  EXPECT_EQ(run({"orbit", "11"}).out, "11 21 9 SURVIVES\n");
  EXPECT_EQ(run({"orbit", "7", "--budget", "2"}).out, "7 13 25 BUDGET_EXCEEDED\n");
}

TEST(CliTest, SearchBothMethodsAgree) {
  const Result r = run({"search", "--max", "600", "--method", "both"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 30u);
  EXPECT_EQ(r.out.substr(0, 16), "1 2\n2 3\n3 5\n4 9\n");
  EXPECT_NE(r.out.find("30 553\n"), std::string::npos);
  EXPECT_EQ(run({"search", "--max", "600", "--method", "preimage"}).out, r.out);
  EXPECT_EQ(run({"search", "--max", "600", "--no-filter"}).out, r.out);
}

TEST(CliTest, UsageErrors) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{}, {"bogus"}, {"x"}, {"x", "0"}, {"search"},
        {"search", "--max", "1"}, {"search", "--max", "100", "--method", "sideways"},
        {"chain", "9"}, {"tree"}, {"scaling", "--max", "100", "--kmin", "1"},
        {"verify-lemmas", "--max", "10"}, {"preimage", "1"}}) {
    const Result r = run(args);
    EXPECT_EQ(r.code, 1) << (args.empty() ? "" : args[0]);
    EXPECT_EQ(r.err.rfind("error: ", 0), 0u) << r.err;
    EXPECT_EQ(count_lines(r.err), 1u) << r.err;
  }
}

TEST(CliTest, BudgetExhaustionExitsTwo) {
  const Result r = run({"search", "--max", "100", "--budget", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.err.rfind("error: budget", 0), 0u) << r.err;
}

TEST(CliTest, MalformedCacheNamesLine) {
  const fs::path cache = scratch("bad.cache");
  std::ofstream(cache) << "abc S\n";
  const Result r = run({"search", "--max", "100", "--cache", cache.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;
  fs::remove(cache);
}

TEST(CliTest, WarmCacheMatchesColdRun) {
  const fs::path cache = scratch("warm.cache");
  ASSERT_EQ(run({"search", "--max", "10000", "--cache", cache.string()}).code, 0);
  ASSERT_TRUE(fs::exists(cache));
  const Result warm = run({"search", "--max", "100000", "--cache", cache.string()});
  const Result cold = run({"search", "--max", "100000"});
  EXPECT_EQ(warm.code, 0);
  EXPECT_EQ(warm.out, cold.out);

  ::setenv(xmap::cli::kCacheEnv, cache.string().c_str(), 1);
  std::vector<const char*> argv{"xmap", "search", "--max", "5000"};
  std::ostringstream out, err;
  EXPECT_EQ(xmap::cli::run(4, argv.data(), out, err), 0);
  ::unsetenv(xmap::cli::kCacheEnv);
  EXPECT_EQ(count_lines(out.str()), count_lines(run({"search", "--max", "5000"}).out));
  fs::remove(cache);
}

TEST(CliTest, OutputIndependentOfWorkers) {
  for (const std::string method : {"forward", "preimage"}) {
    const auto one = run({"search", "--max", "50000", "--method", method, "--workers", "1"});
    const auto many = run({"search", "--max", "50000", "--method", method, "--workers", "7"});
    EXPECT_EQ(one.out, many.out) << method;
  }
  const auto s1 = run({"scaling", "--max", "100000", "--workers", "1"});
  const auto s4 = run({"scaling", "--max", "100000", "--workers", "4"});
  EXPECT_EQ(s1.out, s4.out);
  EXPECT_EQ(s1.err, s4.err);
  EXPECT_EQ(s1.err.rfind("fit: exponent=", 0), 0u);
}

TEST(CliTest, OutputFile) {
  const fs::path out = scratch("survivors.txt");
  const Result r = run({"search", "--max", "25", "-o", out.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(out), "1 2\n2 3\n3 5\n4 9\n5 11\n6 21\n");
  fs::remove(out);
}

TEST(CliTest, PreimageTreeChain) {
  EXPECT_EQ(run({"preimage", "21"}).out,
            "11 prime_half\n57 biprime_pair 3 19\n85 biprime_pair 5 17\n");
  const Result dot = run({"tree", "--max", "100"});
  EXPECT_EQ(dot.code, 0);
  EXPECT_EQ(dot.out.rfind("digraph survivors {", 0), 0u);
  EXPECT_NE(dot.out.find("11 -> 21;"), std::string::npos);

  const Result json = run({"tree", "--subtree", "21", "--format", "json"});
  EXPECT_EQ(json.code, 0);
  const auto doc = nlohmann::json::parse(json.out);
  EXPECT_EQ(doc["roots"][0]["value"], 21);
  EXPECT_EQ(doc["roots"][0]["children"].size(), 3u);

  EXPECT_EQ(run({"chain", "2"}).out, "p,length,members\n2,3,2 3 5\n");
  const Result scan = run({"chain-scan", "--max", "1000"});
  EXPECT_EQ(scan.code, 0);
  EXPECT_EQ(count_lines(scan.out), 1u + 168u);
}

TEST(CliTest, ScalingFitOutput) {
  const fs::path fit = scratch("fit.txt");
  const Result r = run({"scaling", "--max", "100000", "--alphas", "1.5", "--fit-output",
                        fit.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("k,n_k,inv_log_k,ratio_1.5\n", 0), 0u);
  EXPECT_EQ(slurp(fit).rfind("method=least_squares_loglog_slope\nk_min=100\n", 0), 0u);
  fs::remove(fit);

  const Result small = run({"scaling", "--max", "600", "--fit-output", fit.string()});
  EXPECT_EQ(small.code, 1);
  EXPECT_EQ(small.err.rfind("error: insufficient_data", 0), 0u) << small.err;
}

TEST(CliTest, VerifyLemmas) {
  const Result text = run({"verify-lemmas", "--max", "20000"});
  EXPECT_EQ(text.code, 0) << text.err;
  EXPECT_EQ(count_lines(text.out), 7u);
  const Result json = run({"verify-lemmas", "--max", "5000", "--lemma3-max", "1000", "--json"});
  EXPECT_EQ(json.code, 0);
  const auto doc = nlohmann::json::parse(json.out);
  EXPECT_EQ(doc[2]["range"], "[1,1000]");
}

}  // namespace
