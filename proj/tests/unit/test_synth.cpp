#include <gtest/gtest.h>

#include <cmath>

#include "finnet/error.hpp"
#include "finnet/infoflow.hpp"
#include "finnet/kmdrift.hpp"
#include "finnet/linalg.hpp"
#include "finnet/random.hpp"
#include "finnet/synth.hpp"

using namespace finnet;

TEST(Rng, ReferenceOutputs) {
  // 10000th output of the 64-bit Mersenne Twister with its default seed.
  Rng rng(5489);
  std::uint64_t v = 0;
  for (int k = 0; k < 10000; ++k) v = rng.next_u64();
  EXPECT_EQ(v, 9981545732273789042ULL);
  // First SplitMix64 output from state 0.
  EXPECT_EQ(mix_seed(0, 0), 0xe220a8397b1dcdafULL);
}

TEST(Rng, UniformAndBelow) {
  Rng rng(1);
  double sum = 0;
  for (int k = 0; k < 100000; ++k) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
  std::vector<int> hits(7, 0);
  for (int k = 0; k < 70000; ++k) hits[rng.below(7)]++;
  for (int h : hits) EXPECT_NEAR(h, 10000, 400);
}

TEST(Rng, NormalMoments) {
  Rng rng(2);
  double s1 = 0, s2 = 0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    const double z = rng.normal();
    s1 += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s1 / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.01);
}

TEST(BinaryEntropy, Values) {
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_NEAR(1.0 - binary_entropy(0.1), 0.5310044064107188, 1e-15);
}

TEST(CoupledBinary, DeterministicCoupling) {
  const auto c = gen_coupled_binary(0.0, 5000, 1);
  ASSERT_EQ(c.x.size(), 5000u);
  for (std::size_t t = 0; t + 1 < 5000; ++t) ASSERT_EQ(c.y.symbols[t + 1], c.x.symbols[t]);
  EXPECT_NEAR(transfer_entropy(c.x, c.y), 1.0, 0.01);
}

TEST(CoupledBinary, Decoupled) {
  const auto c = gen_coupled_binary(0.5, 50000, 2);
  EXPECT_LT(transfer_entropy(c.x, c.y), 0.001);
}

TEST(CoupledBinary, ReproducibleAndValidated) {
  const auto a = gen_coupled_binary(0.1, 1000, 3);
  const auto b = gen_coupled_binary(0.1, 1000, 3);
  EXPECT_EQ(a.x.symbols, b.x.symbols);
  EXPECT_EQ(a.y.symbols, b.y.symbols);
  EXPECT_NE(a.x.symbols, gen_coupled_binary(0.1, 1000, 4).x.symbols);
  EXPECT_THROW(gen_coupled_binary(0.7, 10, 1), Error);
  EXPECT_THROW(gen_coupled_binary(-0.1, 10, 1), Error);
}

TEST(Ou, NoiseFreeDecay) {
  const Matrix x = gen_ou(Matrix{{-1.0}}, 0.0, 0.01, 500, 1, {1.0});
  EXPECT_EQ(x(0, 0), 1.0);
  EXPECT_NEAR(x(1, 0), 0.99, 1e-15);
  const auto d = estimate_drift(make_returns(x), 1, false, DriftOptions{0.01, 0.0, 1e12});
  EXPECT_NEAR(d.A(0, 0), -1.0, 1e-9);
  // Continuous-time solution differs by O(dt_sim) per unit time.
  EXPECT_NEAR(x(100, 0), std::exp(-1.0), 0.01);
}

TEST(Ou, UnstableSpec) {
  try {
    gen_ou(Matrix{{0.1, 0.0}, {0.0, -0.5}}, 0.1, 0.01, 10, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unstable_spec);
  }
  // Stable in continuous time but the Euler step overshoots.
  EXPECT_THROW(gen_ou(Matrix{{-300.0}}, 0.1, 0.01, 10, 1), Error);
  EXPECT_THROW(gen_var1(Matrix{{1.0, 0.0}, {0.0, 0.2}}, 1.0, 10, 1), Error);
}

TEST(Ou, StationaryCovarianceSolvesLyapunov) {
  const Matrix a{{-0.5, 0.2}, {0.0, -0.3}};
  const double sigma = 0.1;
  // (I ⊗ A + A ⊗ I) vec Σ = −σ² vec I
  Matrix k(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t p = 0; p < 2; ++p)
        for (std::size_t q = 0; q < 2; ++q) {
          double v = 0;
          if (j == q) v += a(i, p);
          if (i == p) v += a(j, q);
          k(i * 2 + j, p * 2 + q) = v;
        }
  std::vector<double> rhs{-sigma * sigma, 0.0, 0.0, -sigma * sigma};
  const auto vec = LuDecomposition(k).solve(rhs);

  const Matrix x = gen_ou(a, sigma, 0.01, 1000000, 7);
  double s00 = 0, s01 = 0, s11 = 0;
  const std::size_t burn = 2000;
  for (std::size_t t = burn; t < x.rows(); ++t) {
    s00 += x(t, 0) * x(t, 0);
    s01 += x(t, 0) * x(t, 1);
    s11 += x(t, 1) * x(t, 1);
  }
  const double n = static_cast<double>(x.rows() - burn);
  EXPECT_NEAR(s00 / n, vec[0], 0.1 * vec[0]);
  EXPECT_NEAR(s11 / n, vec[3], 0.1 * vec[3]);
  EXPECT_NEAR(s01 / n, vec[1], 0.1 * std::sqrt(vec[0] * vec[3]));
}

TEST(Var1, CouplingStructure) {
  const auto te_offdiag = [](const Matrix& x) {
    std::vector<SymbolSequence> s{bin_series(x.column(0), 4), bin_series(x.column(1), 4)};
    const std::vector<std::string> ids{"a", "b"};
    return te_matrix(s, ids, {1, 5, 3, 1});
  };
  const std::size_t n = 50000;

  const auto iid = te_offdiag(gen_var1(Matrix{{0.0, 0.0}, {0.0, 0.0}}, 1.0, n, 1));
  const auto own = gen_var1(Matrix{{0.5, 0.0}, {0.0, 0.5}}, 1.0, n, 2);
  const auto diag = te_offdiag(own);
  const auto one = te_offdiag(gen_var1(Matrix{{0.3, 0.0}, {0.5, 0.3}}, 1.0, n, 3));

  for (const auto* m : {&iid, &diag}) {
    const Matrix floor = [&] {
      Matrix f(2, 2);
      const auto rows = m->params["surrogate_floor"];
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) f(i, j) = rows[i][j].get<double>();
      return f;
    }();
    EXPECT_LT(m->values(0, 1), 3.0 * floor(0, 1) + 1e-3);
    EXPECT_LT(m->values(1, 0), 3.0 * floor(1, 0) + 1e-3);
  }
  const auto km = estimate_drift(make_returns(own));
  EXPECT_NEAR(km.A(0, 1), 0.0, 0.02);
  EXPECT_NEAR(km.A(1, 0), 0.0, 0.02);

  // Only a → b is coupled: row b, column a.
  EXPECT_GT(one.values(1, 0), 0.05);
  EXPECT_LT(one.values(0, 1), 0.005);
}

TEST(RegimeShift, SignCoupling) {
  const Matrix x = gen_regime_shift(0.5, 0.0, 500, 1000, 9);
  ASSERT_EQ(x.rows(), 1000u);
  for (std::size_t t = 500; t + 1 < 1000; ++t)
    ASSERT_EQ(std::signbit(x(t + 1, 1)), std::signbit(x(t, 0))) << t;
  EXPECT_THROW(gen_regime_shift(0.5, 0.1, 2000, 1000, 9), Error);
}

TEST(Generate, Dispatch) {
  ProcessSpec spec;
  spec.kind = ProcessSpec::Kind::var1;
  spec.a = Matrix{{0.5}};
  spec.steps = 100;
  spec.seed = 3;
  EXPECT_EQ(generate(spec), gen_var1(Matrix{{0.5}}, 0.1, 100, 3));
  spec.kind = ProcessSpec::Kind::regime_shift;
  spec.flip = 0.2;
  EXPECT_EQ(generate(spec), gen_regime_shift(0.5, 0.2, 50, 100, 3));
  EXPECT_EQ(parse_process_kind("ou_euler"), ProcessSpec::Kind::ou_euler);
  EXPECT_FALSE(parse_process_kind("garch"));
}

TEST(Spectral, Values) {
  EXPECT_NEAR(spectral_radius(Matrix{{0.0, 1.0}, {-1.0, 0.0}}), 1.0, 1e-12);
  EXPECT_NEAR(spectral_abscissa(Matrix{{-0.5, 0.2}, {0.0, -0.3}}), -0.3, 1e-12);
}
