#include "finnet/kmdrift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "finnet/error.hpp"
#include "finnet/linalg.hpp"

namespace finnet {

namespace {

nlohmann::json to_rows(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (double v : m.row(i)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

IncrementMoments increment_moments(const ReturnsMatrix& returns, std::size_t dt, bool center) {
  if (dt == 0) throw Error(Errc::invalid_argument, "drift lag must be >= 1");
  const std::size_t n = returns.samples();
  const std::size_t N = returns.assets();
  if (n < dt + 2)
    throw Error(Errc::too_few_samples, std::to_string(n) + " rows leave fewer than two increments at lag " +
                                           std::to_string(dt));

  Matrix x = returns.values;
  if (center) {
    for (std::size_t c = 0; c < N; ++c) {
      double sum = 0.0;
      for (std::size_t t = 0; t < n; ++t) sum += x(t, c);
      const double mean = sum / static_cast<double>(n);
      for (std::size_t t = 0; t < n; ++t) x(t, c) -= mean;
    }
  }

  const std::size_t m = n - dt;
  IncrementMoments out{Matrix(N, N), Matrix(N, N), m, center};
  for (std::size_t t = 0; t < m; ++t) {
    const auto now = x.row(t);
    const auto later = x.row(t + dt);
    for (std::size_t i = 0; i < N; ++i) {
      const double y = later[i] - now[i];
      for (std::size_t j = 0; j < N; ++j) out.cross(i, j) += y * now[j];
      for (std::size_t j = i; j < N; ++j) out.second(i, j) += now[i] * now[j];
    }
  }
  const double inv = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      out.cross(i, j) *= inv;
      if (j >= i) {
        out.second(i, j) *= inv;
        out.second(j, i) = out.second(i, j);
      }
    }
  return out;
}

DriftEstimate solve_drift(const Matrix& cross, const Matrix& second, double dt,
                          const DriftOptions& options) {
  const std::size_t N = second.rows();
  if (!second.square() || cross.rows() != N || cross.cols() != N)
    throw Error(Errc::invalid_argument, "moment matrices must both be N×N");
  if (!(dt > 0.0)) throw Error(Errc::invalid_argument, "dt must be positive");
  if (options.ridge < 0.0) throw Error(Errc::invalid_argument, "ridge must be >= 0");
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) {
      const double scale = std::max(std::abs(second(i, j)), std::abs(second(j, i)));
      if (std::abs(second(i, j) - second(j, i)) > 1e-12 * std::max(scale, 1.0))
        throw Error(Errc::invalid_argument, "second-moment matrix is not symmetric");
    }

  Matrix system = second;
  for (std::size_t i = 0; i < N; ++i) system(i, i) += options.ridge;
  const LuDecomposition lu(system);
  const double cond = lu.singular() ? std::numeric_limits<double>::infinity()
                                    : norm1(system) * norm1(lu.inverse());
  if (lu.singular() || !std::isfinite(cond) ||
      (cond > options.max_condition && options.ridge == 0.0))
    throw Error(Errc::singular_moment_matrix,
                "moment matrix condition number " + std::to_string(cond) + " exceeds " +
                    std::to_string(options.max_condition) +
                    (options.ridge == 0.0 ? " (enable a ridge term to regularise)" : ""));

  DriftEstimate est;
  est.psi = Matrix(N, N);
  est.A = Matrix(N, N);
  est.dt = dt;
  est.moment_matrix = second;
  est.cond = cond;
  est.ridge = options.ridge;
  for (std::size_t i = 0; i < N; ++i) {
    const auto row = lu.solve(cross.row(i));
    for (std::size_t j = 0; j < N; ++j) {
      est.psi(i, j) = row[j];
      est.A(i, j) = row[j] / dt;
    }
  }
  return est;
}

DriftEstimate estimate_drift(const ReturnsMatrix& returns, std::size_t lag, bool center,
                             const DriftOptions& options) {
  if (!(options.step > 0.0)) throw Error(Errc::invalid_argument, "time step must be positive");
  const auto moments = increment_moments(returns, lag, center);
  auto est = solve_drift(moments.cross, moments.second,
                         static_cast<double>(lag) * options.step, options);
  est.centered = center;
  return est;
}

InteractionMatrix km_drift_matrix(const ReturnsMatrix& returns, std::size_t lag, bool center,
                                  const DriftOptions& options) {
  const auto est = estimate_drift(returns, lag, center, options);
  InteractionMatrix out;
  out.asset_ids = returns.asset_ids;
  out.values = est.A;
  out.measure = Measure::km_drift;
  out.directed = true;
  out.units = Units::per_step;
  out.params = {{"estimator", "km_linear_drift"},
                {"lag", lag},
                {"step", options.step},
                {"dt", est.dt},
                {"centered", center},
                {"ridge", options.ridge},
                {"cond", est.cond},
                {"orientation", "values[i][j] = effect of asset j on d/dt of asset i"},
                {"psi", to_rows(est.psi)}};
  return out;
}

}  // namespace finnet
