#pragma once

#include <cstddef>

#include "finnet/interaction_matrix.hpp"
#include "finnet/matrix.hpp"
#include "finnet/stats.hpp"

namespace finnet {

/// Sample averages behind the drift estimator, over the n − dt rows t
/// where x(t + dt) exists:
///   cross(i, j)  = ⟨(x_i(t+dt) − x_i(t)) x_j(t)⟩
///   second(k, j) = ⟨x_k(t) x_j(t)⟩
struct IncrementMoments {
  Matrix cross;
  Matrix second;
  std::size_t samples = 0;
  bool centered = true;
};

/// `dt` is the lag in rows. Centering subtracts each column's full-sample
/// mean first.
IncrementMoments increment_moments(const ReturnsMatrix& returns, std::size_t dt = 1,
                                   bool center = true);

struct DriftOptions {
  /// Time elapsed per row, so A = psi / (lag · step). Use dt_sim for
  /// simulated panels; 1 means "per trading step".
  double step = 1.0;
  /// Tikhonov term added to the moment-matrix diagonal; 0 disables it.
  double ridge = 0.0;
  /// Condition numbers above this fail with SingularMomentMatrix unless
  /// ridge > 0.
  double max_condition = 1e12;
};

/// Linear drift dx/dt = A x estimated from conditional increment moments.
/// psi = dt·A is the per-lag coefficient matrix.
struct DriftEstimate {
  Matrix psi;
  Matrix A;
  double dt = 1.0;
  Matrix moment_matrix;
  /// 1-norm condition number of the (possibly ridged) moment matrix.
  double cond = 0.0;
  bool centered = true;
  double ridge = 0.0;
};

/// Row i of psi solves  second · psi_i = cross_i.
/// `options.step` is ignored here; dt is the full time span of one lag.
DriftEstimate solve_drift(const Matrix& cross, const Matrix& second, double dt,
                          const DriftOptions& options = {});

/// increment_moments + solve_drift with dt = lag · options.step.
DriftEstimate estimate_drift(const ReturnsMatrix& returns, std::size_t lag = 1,
                             bool center = true, const DriftOptions& options = {});

/// Directed drift matrix A; values(i, j) is the effect of asset j on dx_i/dt.
InteractionMatrix km_drift_matrix(const ReturnsMatrix& returns, std::size_t lag = 1,
                                  bool center = true, const DriftOptions& options = {});

}  // namespace finnet
