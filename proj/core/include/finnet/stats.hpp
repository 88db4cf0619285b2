#pragma once

#include <string>
#include <string_view>
#include <optional>
#include <vector>

#include "finnet/date.hpp"
#include "finnet/ingest.hpp"
#include "finnet/interaction_matrix.hpp"
#include "finnet/matrix.hpp"

namespace finnet {

enum class ReturnKind { log, simple };

std::string_view return_kind_name(ReturnKind kind) noexcept;
std::optional<ReturnKind> parse_return_kind(std::string_view name) noexcept;

/// (T−1)×N matrix of fractional returns; dates[t] is the date the return
/// for row t is realised (the later of the two prices).
struct ReturnsMatrix {
  std::vector<std::string> asset_ids;
  std::vector<Date> dates;
  Matrix values;
  ReturnKind kind = ReturnKind::log;

  std::size_t assets() const noexcept { return values.cols(); }
  std::size_t samples() const noexcept { return values.rows(); }

  /// Rows [begin, end).
  ReturnsMatrix slice(std::size_t begin, std::size_t end) const;
};

/// Wraps an already generated state panel (e.g. from `synth`) as returns.
/// Dates default to consecutive days from 2000-01-01 when `dates` is empty.
ReturnsMatrix make_returns(Matrix values, std::vector<std::string> asset_ids = {},
                           std::vector<Date> dates = {});

ReturnsMatrix compute_returns(const AlignedPanel& panel, ReturnKind kind = ReturnKind::log);

struct AssetStats {
  std::string asset_id;
  std::size_t count = 0;
  double mean = 0.0;
  /// Sample standard deviation (n − 1 denominator).
  double std_dev = 0.0;
  /// m3 / m2^{3/2} with central moments over n.
  double skewness = 0.0;
  /// m4 / m2² − 3.
  double excess_kurtosis = 0.0;
};

struct StatsSummary {
  std::vector<AssetStats> assets;
};

StatsSummary describe(const ReturnsMatrix& returns);

/// Full-sample Pearson correlation, symmetric with unit diagonal.
InteractionMatrix correlation_matrix(const ReturnsMatrix& returns);

}  // namespace finnet
