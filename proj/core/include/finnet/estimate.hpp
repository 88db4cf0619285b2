#pragma once

#include <cstdint>

#include <nlohmann/json.hpp>

#include "finnet/discretize.hpp"
#include "finnet/interaction_matrix.hpp"
#include "finnet/kmdrift.hpp"
#include "finnet/stats.hpp"

namespace finnet {

/// Settings shared by every measure; each measure reads the ones it needs.
struct EstimatorParams {
  int bins = 8;
  BinStrategy strategy = BinStrategy::quantile;
  std::size_t dt = 1;
  std::size_t surrogates = 0;
  std::uint64_t seed = 0;
  bool center = true;
  double ridge = 0.0;
  /// Time per row for the drift estimator (A = psi / (dt · step)).
  double step = 1.0;
  /// Execution only; never recorded in outputs.
  unsigned threads = 1;
};

/// Bins every column of `returns` with the given settings.
std::vector<SymbolSequence> discretize_columns(const ReturnsMatrix& returns, int bins,
                                               BinStrategy strategy);

/// Evaluates one measure on the full sample of `returns`, recording the
/// relevant settings (and bin edges for MI/TE) in the result's params.
InteractionMatrix estimate(const ReturnsMatrix& returns, Measure measure,
                           const EstimatorParams& params);

}  // namespace finnet
