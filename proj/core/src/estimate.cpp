#include "finnet/estimate.hpp"

#include "finnet/error.hpp"
#include "finnet/infoflow.hpp"
#include "finnet/kmdrift.hpp"
#include "finnet/stats.hpp"

namespace finnet {

std::vector<SymbolSequence> discretize_columns(const ReturnsMatrix& returns, int bins,
                                               BinStrategy strategy) {
  std::vector<SymbolSequence> out;
  out.reserve(returns.assets());
  for (std::size_t c = 0; c < returns.assets(); ++c) {
    const auto col = returns.values.column(c);
    try {
      out.push_back(bin_series(col, bins, strategy));
    } catch (const Error& e) {
      throw Error(e.code(), "column '" + returns.asset_ids[c] + "': " + e.what(), e.detail());
    }
  }
  return out;
}

namespace {

nlohmann::json binning_params(const std::vector<SymbolSequence>& syms,
                              const std::vector<std::string>& ids, const EstimatorParams& p) {
  nlohmann::json edges = nlohmann::json::object();
  for (std::size_t c = 0; c < syms.size(); ++c) edges[ids[c]] = syms[c].edges;
  return {{"bins", p.bins},
          {"strategy", std::string(bin_strategy_name(p.strategy))},
          {"edges", std::move(edges)}};
}

}  // namespace

InteractionMatrix estimate(const ReturnsMatrix& returns, Measure measure,
                           const EstimatorParams& params) {
  InteractionMatrix out;
  switch (measure) {
    case Measure::correlation:
      out = correlation_matrix(returns);
      break;
    case Measure::mutual_information: {
      const auto syms = discretize_columns(returns, params.bins, params.strategy);
      out = mi_matrix(syms, returns.asset_ids, params.threads);
      out.params.update(binning_params(syms, returns.asset_ids, params));
      break;
    }
    case Measure::transfer_entropy: {
      const auto syms = discretize_columns(returns, params.bins, params.strategy);
      TeMatrixOptions opts;
      opts.dt = params.dt;
      opts.surrogates = params.surrogates;
      opts.seed = params.seed;
      opts.threads = params.threads;
      out = te_matrix(syms, returns.asset_ids, opts);
      out.params.update(binning_params(syms, returns.asset_ids, params));
      break;
    }
    case Measure::km_drift: {
      DriftOptions opts;
      opts.ridge = params.ridge;
      opts.step = params.step;
      out = km_drift_matrix(returns, params.dt, params.center, opts);
      break;
    }
  }
  out.params["return_kind"] = std::string(return_kind_name(returns.kind));
  out.params["samples"] = returns.samples();
  out.params["measure"] = std::string(measure_name(measure));
  return out;
}

}  // namespace finnet
