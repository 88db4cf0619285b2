#include "finnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "finnet/error.hpp"
#include "finnet/random.hpp"

namespace finnet {

namespace {

Eigen::VectorXcd eigenvalues(const Matrix& a) {
  if (!a.square() || a.empty()) throw Error(Errc::invalid_argument, "matrix must be square");
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  if (solver.info() != Eigen::Success)
    throw Error(Errc::unstable_spec, "eigenvalue computation did not converge");
  return solver.eigenvalues();
}

std::vector<double> initial_state(std::vector<double> initial, std::size_t n) {
  if (initial.empty()) return std::vector<double>(n, 0.0);
  if (initial.size() != n)
    throw Error(Errc::invalid_argument, "initial state has " + std::to_string(initial.size()) +
                                            " entries, expected " + std::to_string(n));
  return initial;
}

void check_common(const Matrix& a, double sigma, std::size_t steps) {
  if (!a.square() || a.empty()) throw Error(Errc::invalid_argument, "coefficient matrix must be square");
  if (!(sigma >= 0.0)) throw Error(Errc::invalid_argument, "sigma must be >= 0");
  if (steps < 1) throw Error(Errc::invalid_argument, "steps must be >= 1");
}

}  // namespace

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double spectral_radius(const Matrix& a) {
  double r = 0.0;
  for (const auto& ev : eigenvalues(a)) r = std::max(r, std::abs(ev));
  return r;
}

double spectral_abscissa(const Matrix& a) {
  double r = -std::numeric_limits<double>::infinity();
  for (const auto& ev : eigenvalues(a)) r = std::max(r, ev.real());
  return r;
}

CoupledBinary gen_coupled_binary(double flip, std::size_t steps, std::uint64_t seed) {
  if (!(flip >= 0.0 && flip <= 0.5))
    throw Error(Errc::invalid_argument, "flip probability must lie in [0, 0.5]");
  if (steps < 1) throw Error(Errc::invalid_argument, "steps must be >= 1");
  Rng rng(seed);
  std::vector<int> x(steps), y(steps);
  // Draw order: y_0, then per step t: x_t and (for t + 1 < steps) the flip.
  y[0] = rng.bernoulli(0.5) ? 1 : 0;
  for (std::size_t t = 0; t < steps; ++t) {
    x[t] = rng.bernoulli(0.5) ? 1 : 0;
    if (t + 1 < steps) y[t + 1] = x[t] ^ (rng.bernoulli(flip) ? 1 : 0);
  }
  return {make_symbols(std::move(x), 2), make_symbols(std::move(y), 2)};
}

Matrix gen_ou(const Matrix& a_true, double sigma, double dt_sim, std::size_t steps,
              std::uint64_t seed, std::vector<double> initial) {
  check_common(a_true, sigma, steps);
  if (!(dt_sim > 0.0)) throw Error(Errc::invalid_argument, "dt_sim must be positive");
  const std::size_t n = a_true.rows();
  const double abscissa = spectral_abscissa(a_true);
  if (!(abscissa < 0.0))
    throw Error(Errc::unstable_spec, "drift matrix has an eigenvalue with real part " +
                                         std::to_string(abscissa) + " >= 0");
  Matrix step = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) step(i, j) += dt_sim * a_true(i, j);
  const double radius = spectral_radius(step);
  if (!(radius < 1.0))
    throw Error(Errc::unstable_spec, "Euler step I + dt·A has spectral radius " +
                                         std::to_string(radius) + " >= 1; reduce dt_sim");

  Matrix out(steps, n);
  auto state = initial_state(std::move(initial), n);
  std::copy(state.begin(), state.end(), out.row(0).begin());
  Rng rng(seed);
  const double scale = sigma * std::sqrt(dt_sim);
  for (std::size_t t = 1; t < steps; ++t) {
    const auto prev = out.row(t - 1);
    auto next = out.row(t);
    for (std::size_t i = 0; i < n; ++i) {
      double drift = 0.0;
      for (std::size_t j = 0; j < n; ++j) drift += a_true(i, j) * prev[j];
      next[i] = prev[i] + dt_sim * drift;
    }
    for (std::size_t i = 0; i < n; ++i) next[i] += scale * rng.normal();
  }
  return out;
}

Matrix gen_var1(const Matrix& a_step, double sigma, std::size_t steps, std::uint64_t seed,
                std::vector<double> initial) {
  check_common(a_step, sigma, steps);
  const std::size_t n = a_step.rows();
  const double radius = spectral_radius(a_step);
  if (!(radius < 1.0))
    throw Error(Errc::unstable_spec,
                "VAR(1) matrix has spectral radius " + std::to_string(radius) + " >= 1");
  Matrix out(steps, n);
  auto state = initial_state(std::move(initial), n);
  std::copy(state.begin(), state.end(), out.row(0).begin());
  Rng rng(seed);
  for (std::size_t t = 1; t < steps; ++t) {
    const auto prev = out.row(t - 1);
    auto next = out.row(t);
    for (std::size_t i = 0; i < n; ++i) {
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) v += a_step(i, j) * prev[j];
      next[i] = v;
    }
    for (std::size_t i = 0; i < n; ++i) next[i] += sigma * rng.normal();
  }
  return out;
}

Matrix gen_regime_shift(double flip_before, double flip_after, std::size_t shift_at,
                        std::size_t steps, std::uint64_t seed) {
  for (double f : {flip_before, flip_after})
    if (!(f >= 0.0 && f <= 0.5))
      throw Error(Errc::invalid_argument, "flip probability must lie in [0, 0.5]");
  if (steps < 2) throw Error(Errc::invalid_argument, "steps must be >= 2");
  if (shift_at > steps) throw Error(Errc::invalid_argument, "shift_at lies beyond the last step");
  Rng rng(seed);
  Matrix out(steps, 2);
  out(0, 1) = rng.normal();
  for (std::size_t t = 0; t < steps; ++t) {
    out(t, 0) = rng.normal();
    if (t + 1 < steps) {
      const double flip = t + 1 < shift_at ? flip_before : flip_after;
      const bool positive = (out(t, 0) > 0.0) != rng.bernoulli(flip);
      const double magnitude = std::abs(rng.normal());
      out(t + 1, 1) = positive ? magnitude : -magnitude;
    }
  }
  return out;
}

std::string_view process_kind_name(ProcessSpec::Kind kind) noexcept {
  switch (kind) {
    case ProcessSpec::Kind::coupled_binary: return "coupled_binary";
    case ProcessSpec::Kind::var1: return "var1";
    case ProcessSpec::Kind::ou_euler: return "ou_euler";
    case ProcessSpec::Kind::regime_shift: return "regime_shift";
  }
  return "unknown";
}

std::optional<ProcessSpec::Kind> parse_process_kind(std::string_view name) noexcept {
  if (name == "coupled_binary") return ProcessSpec::Kind::coupled_binary;
  if (name == "var1") return ProcessSpec::Kind::var1;
  if (name == "ou_euler" || name == "ou") return ProcessSpec::Kind::ou_euler;
  if (name == "regime_shift") return ProcessSpec::Kind::regime_shift;
  return std::nullopt;
}

Matrix generate(const ProcessSpec& spec) {
  switch (spec.kind) {
    case ProcessSpec::Kind::coupled_binary: {
      // Continuous panel so quantile binning has no ties; its signs follow
      // the coupled chain.
      return gen_regime_shift(spec.flip, spec.flip, 0, spec.steps, spec.seed);
    }
    case ProcessSpec::Kind::var1:
      return gen_var1(spec.a, spec.sigma, spec.steps, spec.seed);
    case ProcessSpec::Kind::ou_euler:
      return gen_ou(spec.a, spec.sigma, spec.dt_sim, spec.steps, spec.seed);
    case ProcessSpec::Kind::regime_shift:
      return gen_regime_shift(spec.flip_before, spec.flip, spec.shift_at ? spec.shift_at : spec.steps / 2,
                              spec.steps, spec.seed);
  }
  throw Error(Errc::invalid_argument, "unknown process kind");
}

}  // namespace finnet
