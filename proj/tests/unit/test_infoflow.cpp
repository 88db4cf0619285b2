#include <gtest/gtest.h>

#include <cmath>

#include "finnet/error.hpp"
#include "finnet/infoflow.hpp"
#include "finnet/random.hpp"
#include "oracles.hpp"

using namespace finnet;
using finnet::testing::brute_mi;
using finnet::testing::brute_te;

namespace {

SymbolSequence random_symbols(Rng& rng, std::size_t n, int bins) {
  std::vector<int> v(n);
  for (auto& s : v) s = static_cast<int>(rng.below(static_cast<std::uint64_t>(bins)));
  return make_symbols(std::move(v), bins);
}

JointHistogram counts(std::vector<std::uint64_t> c) {
  JointHistogram h({static_cast<int>(c.size())});
  for (std::size_t k = 0; k < c.size(); ++k) h.add(std::vector<int>{static_cast<int>(k)}, c[k]);
  return h;
}

}  // namespace

TEST(Entropy, Examples) {
  EXPECT_DOUBLE_EQ(entropy(counts({5, 5})), 1.0);
  EXPECT_DOUBLE_EQ(entropy(counts({7})), 0.0);
  EXPECT_NEAR(entropy(counts({3, 1})), 0.8112781244591328, 1e-15);
  EXPECT_NEAR(entropy(counts({3, 0, 1})), 0.8112781244591328, 1e-15);
}

TEST(MutualInformation, IdentityGivesEntropy) {
  Rng rng(1);
  const auto x = random_symbols(rng, 500, 4);
  EXPECT_NEAR(mutual_information(x, x), finnet::testing::brute_entropy(x.symbols), 1e-12);
}

TEST(MutualInformation, ProductStructureIsZero) {
  const auto x = make_symbols({0, 0, 1, 1}, 2);
  const auto y = make_symbols({0, 1, 0, 1}, 2);
  EXPECT_EQ(mutual_information(x, y), 0.0);
}

TEST(MutualInformation, Errors) {
  try {
    mutual_information(make_symbols({0, 1, 0}, 2), make_symbols({0, 1}, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::length_mismatch);
  }
}

TEST(MutualInformation, SymmetricNonNegativeAndMatchesOracle) {
  Rng rng(2);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rng.below(60);
    const int bx = 2 + static_cast<int>(rng.below(4));
    const int by = 2 + static_cast<int>(rng.below(4));
    const auto x = random_symbols(rng, n, bx);
    const auto y = random_symbols(rng, n, by);
    const double xy = mutual_information(x, y);
    EXPECT_EQ(xy, mutual_information(y, x));
    EXPECT_GE(xy, 0.0);
    EXPECT_NEAR(xy, brute_mi(x.symbols, y.symbols, bx, by), 1e-12);
  }
}

TEST(TransferEntropy, AlternatingTargetIsZero) {
  std::vector<int> alt(200);
  for (std::size_t t = 0; t < alt.size(); ++t) alt[t] = static_cast<int>(t % 2);
  Rng rng(4);
  const auto source = random_symbols(rng, alt.size(), 3);
  EXPECT_EQ(transfer_entropy(source, make_symbols(alt, 2)), 0.0);
}

TEST(TransferEntropy, ShiftedCopyIsOneBit) {
  // Source cycles 0,0,1,1 so every (previous, current) pair is equally common.
  std::vector<int> src(1000), tgt(1000);
  for (std::size_t t = 0; t < src.size(); ++t) src[t] = static_cast<int>((t / 2) % 2);
  tgt[0] = 0;
  for (std::size_t t = 1; t < tgt.size(); ++t) tgt[t] = src[t - 1];
  const auto s = make_symbols(src, 2);
  const auto g = make_symbols(tgt, 2);
  const double te = transfer_entropy(s, g);
  EXPECT_NEAR(te, brute_te(src, tgt, 2, 2), 1e-12);
  EXPECT_NEAR(te, 1.0, 5e-3);
}

TEST(TransferEntropy, NonNegativeAndMatchesOracle) {
  Rng rng(6);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t dt = 1 + rng.below(3);
    const std::size_t n = dt + 2 + rng.below(50);
    const int bs = 2 + static_cast<int>(rng.below(3));
    const int bt = 2 + static_cast<int>(rng.below(3));
    const auto s = random_symbols(rng, n, bs);
    const auto g = random_symbols(rng, n, bt);
    const double te = transfer_entropy(s, g, dt);
    EXPECT_GE(te, 0.0);
    EXPECT_NEAR(te, brute_te(s.symbols, g.symbols, bs, bt, dt), 1e-12);
  }
}

TEST(TransferEntropy, Errors) {
  const auto a = make_symbols({0, 1, 0}, 2);
  try {
    transfer_entropy(a, make_symbols({0, 1}, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::length_mismatch);
  }
  try {
    transfer_entropy(a, a, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::empty_overlap);
  }
}

TEST(TeMatrix, SingleAsset) {
  Rng rng(7);
  const std::vector<SymbolSequence> one{random_symbols(rng, 100, 2)};
  const std::vector<std::string> ids{"A"};
  const auto m = te_matrix(one, ids);
  EXPECT_EQ(m.values.rows(), 1u);
  EXPECT_NEAR(m.values(0, 0), conditional_self_entropy(one[0]), 0.0);
  EXPECT_TRUE(m.directed);
}

TEST(TeMatrix, OrientationAndIndependentFloor) {
  Rng rng(8);
  const std::size_t n = 100000;
  auto x = random_symbols(rng, n, 2);
  auto y = random_symbols(rng, n, 2);
  // z copies x with a one-step delay.
  std::vector<int> z(n, 0);
  for (std::size_t t = 1; t < n; ++t) z[t] = x.symbols[t - 1];
  const std::vector<SymbolSequence> series{x, y, make_symbols(z, 2)};
  const std::vector<std::string> ids{"x", "y", "z"};
  const auto m = te_matrix(series, ids);
  EXPECT_LE(m.values(0, 1), 0.01);
  EXPECT_LE(m.values(1, 0), 0.01);
  EXPECT_NEAR(m.values(2, 0), 1.0, 1e-3);  // x → z lands in row z, column x
  EXPECT_LE(m.values(0, 2), 0.01);
  EXPECT_EQ(m.params["orientation"], "values[i][j] = TE(j -> i)");
}

TEST(TeMatrix, ThreadCountDoesNotChangeResults) {
  Rng rng(10);
  std::vector<SymbolSequence> series;
  std::vector<std::string> ids;
  for (int k = 0; k < 5; ++k) {
    series.push_back(random_symbols(rng, 3000, 4));
    ids.push_back("a" + std::to_string(k));
  }
  TeMatrixOptions one{1, 3, 42, 1};
  TeMatrixOptions four{1, 3, 42, 4};
  const auto a = te_matrix(series, ids, one);
  const auto b = te_matrix(series, ids, four);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.params, b.params);
  EXPECT_TRUE(a.params.contains("surrogate_floor"));
}

TEST(SurrogateFloor, ReproducibleAndSmall) {
  Rng rng(12);
  const auto s = random_symbols(rng, 20000, 2);
  const auto g = random_symbols(rng, 20000, 2);
  const double f1 = surrogate_floor(s, g, 1, 10, 99);
  EXPECT_EQ(f1, surrogate_floor(s, g, 1, 10, 99));
  EXPECT_NE(f1, surrogate_floor(s, g, 1, 10, 100));
  EXPECT_GE(f1, 0.0);
  EXPECT_LT(f1, 0.001);
}

TEST(MiMatrix, DiagonalIsEntropy) {
  Rng rng(13);
  const std::vector<SymbolSequence> series{random_symbols(rng, 400, 3), random_symbols(rng, 400, 3)};
  const std::vector<std::string> ids{"a", "b"};
  const auto m = mi_matrix(series, ids);
  EXPECT_NEAR(m.values(0, 0), finnet::testing::brute_entropy(series[0].symbols), 1e-12);
  EXPECT_EQ(m.values(0, 1), m.values(1, 0));
  EXPECT_FALSE(m.directed);
  EXPECT_EQ(m.units, Units::bits);
}
