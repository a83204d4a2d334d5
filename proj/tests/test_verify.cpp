#include <gtest/gtest.h>

#include <set>

#include "rpos/verify.hpp"

using namespace rpos;

TEST(Registry, IdsUniqueSortedAndInKnownSuites) {
  const auto reg = registry();
  std::set<std::string> ids;
  for (std::size_t k = 0; k < reg.size(); ++k) {
    EXPECT_TRUE(ids.insert(reg[k].id).second) << reg[k].id;
    if (k > 0) {
      EXPECT_LT(reg[k - 1].id, reg[k].id);
    }
    EXPECT_NE(std::find(suite_names().begin(), suite_names().end(), reg[k].suite), suite_names().end());
    EXPECT_FALSE(reg[k].anchor.empty());
  }
}

TEST(Suites, AppendixPasses) {
  const VerificationReport r = run_suite("appendix");
  EXPECT_GE(r.results.size(), 6u);
  EXPECT_EQ(r.failed, 0);
  for (const auto& c : r.results) EXPECT_EQ(c.id.rfind("appendix.", 0), 0u);
}

TEST(Suites, FilterAndCounts) {
  for (const std::string s : {"kernels", "measures", "modular", "rp"}) {
    const VerificationReport r = run_suite(s);
    EXPECT_GT(r.results.size(), 0u);
    EXPECT_EQ(r.failed, 0) << s;
    EXPECT_EQ(r.passed + r.failed, static_cast<int>(r.results.size()));
  }
  EXPECT_THROW(run_suite("nonsense"), Error);
}

TEST(Suites, AllReportsTheBergmanRateHonestly) {
  const VerificationReport r = run_suite("all");
  EXPECT_EQ(r.results.size(), registry().size());
  for (const auto& c : r.results) {
    EXPECT_EQ(c.pass, c.defect <= c.tol) << c.id;
    if (c.id == "series.bergman.n10000") {
      EXPECT_FALSE(c.pass);
      // the tail behaves like 1/(8 pi^2 beta^2 N)
      EXPECT_NEAR(c.defect, 1.0 / (8 * pi * pi * 1e4), 0.01 / (8 * pi * pi * 1e4));
    } else {
      EXPECT_TRUE(c.pass) << c.id << " defect " << c.defect << " tol " << c.tol;
    }
  }
}

TEST(Suites, InjectDefectFails) {
  const VerificationReport r = run_suite("appendix", true);
  EXPECT_EQ(r.failed, 1);
  for (const auto& c : r.results)
    if (!c.pass) {
      EXPECT_EQ(c.tol, 0.0) << c.id;
    }
}
