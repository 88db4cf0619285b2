#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "finnet/discretize.hpp"
#include "finnet/matrix.hpp"

namespace finnet {

/// Binary H_b(p) in bits.
double binary_entropy(double p);

struct CoupledBinary {
  SymbolSequence x;
  SymbolSequence y;
};

/// x_t iid Bernoulli(0.5); y_0 iid; y_{t+1} = x_t XOR Bernoulli(flip).
/// TE(X→Y) = 1 − H_b(flip), TE(Y→X) = 0.
CoupledBinary gen_coupled_binary(double flip, std::size_t steps, std::uint64_t seed);

/// Euler–Maruyama: x_{t+1} = x_t + dt·A x_t + σ√dt ξ_t. Row 0 is `initial`
/// (zeros when empty); the result has `steps` rows.
Matrix gen_ou(const Matrix& a_true, double sigma, double dt_sim, std::size_t steps,
              std::uint64_t seed, std::vector<double> initial = {});

/// x_{t+1} = A x_t + σ ξ_t; row 0 is `initial` (zeros when empty).
Matrix gen_var1(const Matrix& a_step, double sigma, std::size_t steps, std::uint64_t seed,
                std::vector<double> initial = {});

/// Two-asset continuous panel whose median-split signs form a coupled binary
/// chain: column 0 is iid N(0,1); column 1 at t+1 has magnitude |N(0,1)| and
/// the sign of column 0 at t, flipped with probability `flip_before` for
/// rows before `shift_at` and `flip_after` from then on. With any
/// quantile binning the analytic TE(0→1) is 1 − H_b(flip).
Matrix gen_regime_shift(double flip_before, double flip_after, std::size_t shift_at,
                        std::size_t steps, std::uint64_t seed);

/// Spectral radius of a real square matrix.
double spectral_radius(const Matrix& a);
/// Largest real part among the eigenvalues of a real square matrix.
double spectral_abscissa(const Matrix& a);

struct ProcessSpec {
  enum class Kind { coupled_binary, var1, ou_euler, regime_shift };

  Kind kind = Kind::ou_euler;
  Matrix a;                  // var1: A_step; ou_euler: A_true
  double sigma = 0.1;
  double dt_sim = 0.01;
  double flip = 0.1;         // coupled_binary; regime_shift after the shift
  double flip_before = 0.5;  // regime_shift
  std::size_t shift_at = 0;  // regime_shift; 0 means steps / 2
  std::size_t steps = 1000;
  std::uint64_t seed = 0;
};

std::string_view process_kind_name(ProcessSpec::Kind kind) noexcept;
std::optional<ProcessSpec::Kind> parse_process_kind(std::string_view name) noexcept;

/// Generates the state panel for any kind (binary symbols as 0/1 values).
Matrix generate(const ProcessSpec& spec);

}  // namespace finnet
