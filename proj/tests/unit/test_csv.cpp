#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "noisyfb/csv.hpp"
#include "noisyfb/error.hpp"

using namespace noisyfb;

namespace {

CsvRow row(std::size_t T, std::size_t K, std::string learner) {
  CsvRow r;
  r.setting = "full-const-known";
  r.learner = std::move(learner);
  r.adversary = "stochastic-gap";
  r.actions = K;
  r.horizon = T;
  r.eps_or_dist = "eps=0.5";
  r.eta = 0.1;
  r.seed_count = 3;
  r.mean_regret = 1.5;
  r.std_error = 0.25;
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Csv, HeaderAndSingleRow) {
  std::ostringstream out;
  write_csv(out, {row(100, 2, "uniform")});
  const auto l = lines(out.str());
  ASSERT_EQ(l.size(), 2U);
  EXPECT_EQ(l[0],
            "setting,learner,adversary,K,T,eps_or_dist,eta,theta,seed_count,mean_regret,stderr,"
            "theoretical_bound,fitted_exponent");
  EXPECT_EQ(l[1], "full-const-known,uniform,stochastic-gap,2,100,eps=0.5,0.1,,3,1.5,0.25,,");
}

TEST(Csv, ShortestRoundTripFloats) {
  CsvRow r = row(10, 2, "x");
  r.mean_regret = 0.1 + 0.2;
  r.theoretical_bound = 606.9708517540585;
  std::ostringstream out;
  write_csv(out, {r});
  EXPECT_NE(out.str().find("0.30000000000000004"), std::string::npos);
  EXPECT_NE(out.str().find("606.9708517540585"), std::string::npos);
}

TEST(Csv, SortedByHorizonThenActionsThenLearner) {
  std::ostringstream out;
  write_csv(out, {row(1000, 2, "b"), row(10, 5, "a"), row(10, 2, "z"), row(10, 2, "a"),
                  row(100, 2, "a")});
  const auto l = lines(out.str());
  ASSERT_EQ(l.size(), 6U);
  EXPECT_EQ(l[1].substr(0, 30), "full-const-known,a,stochastic-");
  EXPECT_NE(l[1].find(",2,10,"), std::string::npos);
  EXPECT_NE(l[2].find(",z,"), std::string::npos);
  EXPECT_NE(l[3].find(",5,10,"), std::string::npos);
  EXPECT_NE(l[4].find(",2,100,"), std::string::npos);
  EXPECT_NE(l[5].find(",2,1000,"), std::string::npos);
}

TEST(Csv, EmptyRowsRejected) {
  std::ostringstream out;
  EXPECT_THROW(write_csv(out, {}), std::invalid_argument);
}

TEST(Csv, EmitIsByteStable) {
  const auto dir = std::filesystem::temp_directory_path() / "noisyfb_csv_test";
  std::filesystem::create_directories(dir);
  emit_csv({row(10, 2, "a"), row(5, 2, "b")}, dir / "a.csv");
  emit_csv({row(10, 2, "a"), row(5, 2, "b")}, dir / "b.csv");
  const auto read = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  };
  EXPECT_EQ(read(dir / "a.csv"), read(dir / "b.csv"));
}

TEST(Csv, UnwritablePathNamesThePath) {
  try {
    emit_csv({row(10, 2, "a")}, "/nonexistent-dir/out.csv");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/out.csv"), std::string::npos);
  }
}
