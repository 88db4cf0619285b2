#include <gtest/gtest.h>

#include <cmath>

#include "finnet/error.hpp"
#include "finnet/random.hpp"
#include "finnet/stats.hpp"

using namespace finnet;

namespace {

AlignedPanel panel_of(std::vector<double> prices) {
  AlignedPanel p;
  p.asset_ids = {"A"};
  p.prices = Matrix(prices.size(), 1);
  for (std::size_t t = 0; t < prices.size(); ++t) {
    p.dates.push_back(add_days(*parse_date("2024-01-01"), static_cast<long long>(t)));
    p.prices(t, 0) = prices[t];
  }
  return p;
}

Matrix column(std::vector<double> v) {
  Matrix m(v.size(), 1);
  for (std::size_t t = 0; t < v.size(); ++t) m(t, 0) = v[t];
  return m;
}

}  // namespace

TEST(Returns, ConstantSeries) {
  const auto r = compute_returns(panel_of({100, 100, 100}), ReturnKind::log);
  ASSERT_EQ(r.samples(), 2u);
  EXPECT_EQ(r.values(0, 0), 0.0);
  EXPECT_EQ(r.values(1, 0), 0.0);
}

TEST(Returns, LogAndSimple) {
  const auto lr = compute_returns(panel_of({100, 110}), ReturnKind::log);
  ASSERT_EQ(lr.samples(), 1u);
  EXPECT_NEAR(lr.values(0, 0), 0.09531017980432493, 1e-15);
  const auto sr = compute_returns(panel_of({100, 110}), ReturnKind::simple);
  EXPECT_NEAR(sr.values(0, 0), 0.1, 1e-15);
  EXPECT_EQ(sr.kind, ReturnKind::simple);
}

TEST(Returns, DatesAreTheLaterPrice) {
  const auto p = panel_of({1, 2, 4});
  const auto r = compute_returns(p);
  EXPECT_EQ(r.dates.front(), p.dates[1]);
  EXPECT_EQ(r.dates.back(), p.dates[2]);
}

TEST(Describe, SymmetricColumn) {
  std::vector<double> v;
  for (int k = 0; k < 50; ++k) {
    v.push_back(-1.0);
    v.push_back(1.0);
  }
  const auto s = describe(make_returns(column(v)));
  ASSERT_EQ(s.assets.size(), 1u);
  EXPECT_EQ(s.assets[0].count, 100u);
  EXPECT_NEAR(s.assets[0].mean, 0.0, 1e-15);
  EXPECT_NEAR(s.assets[0].skewness, 0.0, 1e-12);
  EXPECT_NEAR(s.assets[0].std_dev, std::sqrt(100.0 / 99.0), 1e-12);
  // Two-point distribution: fourth standardised moment 1, excess −2.
  EXPECT_NEAR(s.assets[0].excess_kurtosis, -2.0, 1e-12);
}

TEST(Describe, Errors) {
  try {
    describe(make_returns(column({0.1, 0.1, 0.1, 0.1, 0.1})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::degenerate_series);
  }
  try {
    describe(make_returns(column({0.1, 0.2, 0.3})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::too_few_samples);
  }
}

TEST(Describe, GaussianMoments) {
  Rng rng(11);
  std::vector<double> v(200000);
  for (auto& x : v) x = 0.5 + 2.0 * rng.normal();
  const auto a = describe(make_returns(column(v))).assets[0];
  EXPECT_NEAR(a.mean, 0.5, 0.02);
  EXPECT_NEAR(a.std_dev, 2.0, 0.02);
  EXPECT_NEAR(a.skewness, 0.0, 0.03);
  EXPECT_NEAR(a.excess_kurtosis, 0.0, 0.06);
}

TEST(Correlation, DuplicateAndNegation) {
  Rng rng(3);
  Matrix m(500, 3);
  for (std::size_t t = 0; t < 500; ++t) {
    m(t, 0) = rng.normal();
    m(t, 1) = m(t, 0);
    m(t, 2) = -m(t, 0);
  }
  const auto c = correlation_matrix(make_returns(m));
  EXPECT_DOUBLE_EQ(c.values(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(c.values(0, 2), -1.0);
  EXPECT_DOUBLE_EQ(c.values(1, 1), 1.0);
  EXPECT_FALSE(c.directed);
  EXPECT_EQ(c.measure, Measure::correlation);
  EXPECT_EQ(c.units, Units::dimensionless);
  EXPECT_EQ(c.values, c.values.transposed());
  check_invariants(c);
}

TEST(Correlation, ConstantColumnIsDegenerate) {
  Matrix m(10, 2, 1.0);
  for (std::size_t t = 0; t < 10; ++t) m(t, 0) = static_cast<double>(t);
  try {
    correlation_matrix(make_returns(m));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::degenerate_series);
  }
}
