#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/format.hpp"
#include "cli/record_store.hpp"

namespace fs = std::filesystem;
using namespace ldproj::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ldproj_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    store_ = (dir_ / "runs.ndjson").string();
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
  std::string store_;
};

double b2_oracle(double p, double x) {
  const double m = std::tgamma(3.0 / p) / std::tgamma(1.0 / p) * std::pow(p, 2.0 / p);
  const double lo = std::sqrt(m), hi = std::max(x, lo);
  double best = INFINITY;
  for (int i = 0; i <= 1000000; ++i) {
    const double y = lo + (hi - lo) * i / 1e6;
    const double r = x / y;
    best = std::min(best, (r * r - 1) / 2 - std::log(r) +
                              std::pow(std::max(y * y - m, 0.0), p / 2) / p);
  }
  return best;
}

}  // namespace

TEST(CliFormat, Doubles) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(INFINITY), "inf");
  EXPECT_EQ(format_double(-INFINITY), "-inf");
  EXPECT_EQ(format_double(NAN), "nan");
  for (double x : {1.0 / 3.0, 1e-300, 6.02214076e23, -2.5}) EXPECT_EQ(parse_double(format_double(x)), x);
  EXPECT_EQ(parse_double("inf"), INFINITY);
  EXPECT_THROW(parse_double("1.5x"), std::invalid_argument);
  EXPECT_EQ(json_number(INFINITY), nlohmann::json("inf"));
  EXPECT_EQ(from_json_number(nlohmann::json("-inf")), -INFINITY);
  EXPECT_EQ(from_json_number(nlohmann::json(2.5)), 2.5);
}

TEST(CliFormat, Grid) {
  EXPECT_EQ(parse_grid("1:3:3"), (std::vector<double>{1.0, 2.0, 3.0}));
  EXPECT_EQ(parse_grid("2:5:1"), (std::vector<double>{2.0}));
  EXPECT_THROW(parse_grid("1:3"), std::invalid_argument);
  EXPECT_THROW(parse_grid("1:3:0"), std::invalid_argument);
  EXPECT_THROW(parse_grid("a:3:2"), std::invalid_argument);
}

TEST(CliStore, Sha256KnownAnswer) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_F(CliTest, RecordRoundTrip) {
  const auto rec = make_record("mc", {{"n", 10}, {"x", 1.5}}, 7, {{"p_hat", 0.25}, {"r_hat", INFINITY}});
  EXPECT_EQ(rec.id, rec.config_hash.substr(0, 12));
  EXPECT_EQ(rec.config_hash.size(), 64u);
  append_record(store_, rec);
  append_record(store_, make_record("rate", {{"a", 1}}, 0, {}));
  const auto all = read_records(store_);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].serialize(), rec.serialize());
  EXPECT_EQ(RunRecord::from_json(nlohmann::json::parse(rec.serialize())).serialize(), rec.serialize());
  ASSERT_TRUE(find_record(store_, rec.id.substr(0, 6)).has_value());
  EXPECT_FALSE(find_record(store_, "zzzz").has_value());
  EXPECT_THROW(append_record((dir_ / "missing" / "x.ndjson").string(), rec), StoreError);
}

TEST_F(CliTest, StorePathResolution) {
  EXPECT_EQ(resolve_store_path("a.ndjson"), "a.ndjson");
  ::setenv(kStoreEnv, "env.ndjson", 1);
  EXPECT_EQ(resolve_store_path(""), "env.ndjson");
  ::unsetenv(kStoreEnv);
  EXPECT_EQ(resolve_store_path(""), kDefaultStore);
}

TEST_F(CliTest, HelpAndUsage) {
  for (const char* sub : {"sample", "rate", "mc", "verify", "probe"}) {
    EXPECT_EQ(call({sub, "--help"}).code, kOk) << sub;
  }
  EXPECT_EQ(call({"--help"}).code, kOk);
  EXPECT_EQ(call({}).code, kUsage);
  EXPECT_EQ(call({"frobnicate"}).code, kUsage);
  EXPECT_EQ(call({"rate", "--bogus"}).code, kUsage);
}

TEST_F(CliTest, RateCrosspolytopeTable) {
  const auto r = call({"rate", "--regime", "crosspoly", "--x-grid", "1.01:3:5"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 6u);
  EXPECT_EQ(l[0], "x,rate,regime,p,lambda");
  const double v = std::stod(l[1].substr(l[1].find(',') + 1));
  EXPECT_NEAR(v, 0.1418, 5e-5);
}

TEST_F(CliTest, RateB2MatchesGridOracle) {
  const auto r = call({"rate", "--regime", "critB2", "--p", "1", "--x-grid", "2:4:3", "--tol", "1e-8"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 4u);
  for (int i = 1; i <= 3; ++i) {
    std::istringstream row(l[i]);
    std::string xs, vs;
    std::getline(row, xs, ',');
    std::getline(row, vs, ',');
    EXPECT_NEAR(std::stod(vs), b2_oracle(1.0, std::stod(xs)), 1e-6) << l[i];
  }
}

TEST_F(CliTest, RateErrorsMapToExitCodes) {
  EXPECT_EQ(call({"rate", "--regime", "subcrit", "--p", "2", "--lambda", "1", "--x-grid", "0:1:3"}).code,
            kDegenerate);
  EXPECT_EQ(call({"rate", "--regime", "critA", "--p", "1.5", "--x-grid", "0:1:3"}).code, kUsage);
  EXPECT_EQ(call({"rate", "--regime", "critB2", "--p", "1.5", "--tol", "0"}).code, kUsage);
  EXPECT_EQ(call({"rate", "--regime", "critA", "--x-grid", "1:2"}).code, kUsage);
  EXPECT_EQ(call({"rate", "--regime", "bivariate"}).code, kUsage);
}

TEST_F(CliTest, RateRecordAndProbeFromRun) {
  const auto r = call({"rate", "--regime", "crosspoly", "--x-grid", "1:40:400", "--record", "--store", store_});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto recs = read_records(store_);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].command, "rate");
  const auto p = call({"probe", "--condition", "b", "--rate-from-run", recs[0].id, "--t0", "2", "--tmax", "30",
                       "--store", store_});
  ASSERT_EQ(p.code, kOk) << p.err;
  EXPECT_NE(p.out.find("verdict: consistent-with-KLS"), std::string::npos) << p.out;
  EXPECT_EQ(call({"probe", "--rate-from-run", "nope", "--store", store_}).code, kUsage);
}

TEST_F(CliTest, SampleIsDeterministic) {
  const std::vector<std::string> args = {"sample", "--n", "50", "--k", "5", "--p", "3", "--count", "20", "--seed", "9"};
  const auto a = call(args), b = call(args);
  ASSERT_EQ(a.code, kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(lines(a.out).size(), 20u);
  auto other = args;
  other.back() = "10";
  EXPECT_NE(call(other).out, a.out);
  const auto sums = call({"sample", "--stat", "sums", "--n", "20", "--k", "20", "--p", "3", "--count", "3"});
  ASSERT_EQ(sums.code, kOk) << sums.err;
  const auto pts = call({"sample", "--stat", "point", "--n", "4", "--k", "2", "--count", "2"});
  ASSERT_EQ(pts.code, kOk);
  const auto first = lines(pts.out).at(0);
  EXPECT_EQ(std::count(first.begin(), first.end(), ','), 3);
  EXPECT_EQ(call({"sample", "--n", "300", "--sampler", "direct", "--count", "1"}).code, kUsage);
}

TEST_F(CliTest, McStoresReproducibleRecords) {
  const std::vector<std::string> base = {"mc", "--stat", "chisq", "--k", "30", "--n", "30", "--x", "1.4",
                                         "--budget", "50000", "--seed", "3", "--store", store_};
  auto a = call(base);
  ASSERT_EQ(a.code, kOk) << a.err;
  EXPECT_NE(a.out.find("p_hat="), std::string::npos);
  auto with_workers = base;
  with_workers.insert(with_workers.end(), {"--workers", "3"});
  ASSERT_EQ(call(base).code, kOk);
  ASSERT_EQ(call(with_workers).code, kOk);
  const auto recs = read_records(store_);
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_EQ(recs[0].payload.dump(), recs[1].payload.dump());
  EXPECT_EQ(recs[0].payload_hash, recs[1].payload_hash);
  EXPECT_EQ(recs[0].id, recs[1].id);
  EXPECT_EQ(recs[0].payload.dump(), recs[2].payload.dump());
}

TEST_F(CliTest, McErrors) {
  EXPECT_EQ(call({"mc", "--budget", "0", "--store", store_}).code, kUsage);
  EXPECT_EQ(call({"mc", "--stat", "znorm", "--n", "300", "--sampler", "direct", "--store", store_}).code, kUsage);
  EXPECT_EQ(call({"mc", "--tilt", "0.7", "--stat", "chisq", "--store", store_}).code, kUsage);
  EXPECT_EQ(call({"mc", "--budget", "100", "--store", (dir_ / "no" / "such" / "file").string()}).code, kIo);
}

TEST_F(CliTest, McTiltAutoAndBudgetLimited) {
  const auto t = call({"mc", "--stat", "znorm", "--n", "1000", "--k", "100", "--x", "1.3", "--tilt", "auto",
                       "--budget", "20000", "--store", store_});
  ASSERT_EQ(t.code, kOk) << t.err;
  EXPECT_EQ(t.out.find("budget-limited"), std::string::npos);
  const auto z = call({"mc", "--stat", "chisq", "--n", "50", "--k", "50", "--x", "6", "--budget", "1000",
                       "--store", store_});
  ASSERT_EQ(z.code, kOk) << z.err;
  EXPECT_NE(z.out.find("budget-limited"), std::string::npos);
}

TEST_F(CliTest, McEnvironmentStore) {
  const std::string env_store = (dir_ / "env.ndjson").string();
  ::setenv(kStoreEnv, env_store.c_str(), 1);
  const auto r = call({"mc", "--budget", "1000"});
  ::unsetenv(kStoreEnv);
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(read_records(env_store).size(), 1u);
}

TEST_F(CliTest, ConfigFileWithOverrides) {
  const auto ini = dir_ / "run.ini";
  std::ofstream(ini) << "[mc]\nstat=chisq\nk=50\nn=50\nx=1.4\nbudget=2000\n";
  ASSERT_EQ(call({"mc", "--config", ini.string(), "--x", "1.2", "--store", store_}).code, kOk);
  ASSERT_EQ(call({"--config", ini.string(), "mc", "--store", store_}).code, kOk);
  const auto recs = read_records(store_);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].config.at("stat"), "chisq");
  EXPECT_EQ(from_json_number(recs[0].config.at("x")), 1.2);
  EXPECT_EQ(from_json_number(recs[1].config.at("x")), 1.4);
  EXPECT_TRUE(recs[0].config.contains("config_file"));
}

TEST_F(CliTest, VerifySuites) {
  const auto r = call({"verify", "--suite", "moments"});
  EXPECT_EQ(r.code, kOk) << r.out << r.err;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_EQ(call({"verify", "--suite", "alpha"}).code, kOk);
  EXPECT_EQ(call({"verify", "--suite", "all", "--quick"}).code, kOk);
  EXPECT_EQ(call({"verify", "--suite", "nonsense"}).code, kUsage);
}

TEST_F(CliTest, ProbeVerdicts) {
  const auto b = call({"probe", "--condition", "b", "--rate", "crosspoly", "--t0", "2"});
  ASSERT_EQ(b.code, kOk) << b.err;
  EXPECT_NE(b.out.find("verdict: consistent-with-KLS"), std::string::npos);
  EXPECT_NE(b.out.find("0.866025403784"), std::string::npos);
  const auto s = call({"probe", "--condition", "b", "--rate", "sqrt", "--t0", "2"});
  EXPECT_NE(s.out.find("verdict: would-disprove-KLS"), std::string::npos) << s.out;
  const auto a = call({"probe", "--condition", "a", "--rate", "subcrit", "--p", "3", "--lambda", "0.5",
                       "--x-grid", "-2:2:9"});
  ASSERT_EQ(a.code, kOk) << a.err;
  EXPECT_NE(a.out.find("verdict: would-disprove-KLS"), std::string::npos);
  EXPECT_NE(a.out.find("caveat:"), std::string::npos);
  EXPECT_EQ(call({"probe", "--condition", "b", "--rate", "crosspoly", "--t0", "1"}).code, kUsage);
}
