#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "finnet/date.hpp"
#include "finnet/matrix.hpp"

namespace finnet {

struct Observation {
  Date date;
  double price = 0.0;

  friend bool operator==(const Observation&, const Observation&) = default;
};

/// Dated prices for one asset. Valid series have strictly increasing dates,
/// positive prices and at least two observations.
struct PriceSeries {
  std::string asset_id;
  std::vector<Observation> observations;

  std::size_t size() const noexcept { return observations.size(); }
  friend bool operator==(const PriceSeries&, const PriceSeries&) = default;
};

/// Common-date panel: prices(t, n) is asset n's price on dates[t].
struct AlignedPanel {
  std::vector<std::string> asset_ids;
  std::vector<Date> dates;
  Matrix prices;

  std::size_t assets() const noexcept { return asset_ids.size(); }
  std::size_t samples() const noexcept { return dates.size(); }
};

/// Column names of the price CSV. Adjusted close by default.
struct CsvSchema {
  std::string date_column = "Date";
  std::string price_column = "Adj Close";
};

/// Throws Error unless `series` satisfies the PriceSeries invariants.
void validate(const PriceSeries& series);

/// Parses CSV text (header row required). Rows are re-sorted by date;
/// duplicate dates, non-positive prices and malformed rows are rejected with
/// the 1-based file line number.
PriceSeries parse_csv(std::string_view text, const CsvSchema& schema,
                      std::string asset_id);

/// Reads `path` through parse_csv. The asset id defaults to the file stem.
PriceSeries load_csv(const std::filesystem::path& path, const CsvSchema& schema = {},
                     std::optional<std::string> asset_id = std::nullopt);

std::string to_csv(const PriceSeries& series, const CsvSchema& schema = {});
void write_csv(const PriceSeries& series, const std::filesystem::path& path,
               const CsvSchema& schema = {});

/// Intersects the date sets of all series; columns follow input order.
AlignedPanel align(std::span<const PriceSeries> series);

struct FetchRequest {
  /// URL with `{asset}`, `{start}` and `{end}` placeholders, e.g.
  /// `http://host:8080/prices/{asset}.csv?from={start}&to={end}`.
  std::string url_template;
  std::string asset_id;
  Date start;
  Date end;
  CsvSchema schema;
  /// When set, raw payloads are cached as `{asset}_{start}_{end}.csv` and a
  /// cached payload is used instead of the network.
  std::optional<std::filesystem::path> cache_dir;
  int timeout_seconds = 30;
};

std::string expand_url_template(std::string_view url_template, std::string_view asset,
                                Date start, Date end);

/// Parses a remote payload: CSV with the load_csv schema, or JSON of the
/// shape `{"timestamps": [...], "closes": [...]}` where timestamps are unix
/// seconds or `YYYY-MM-DD` strings.
PriceSeries parse_payload(std::string_view payload, const CsvSchema& schema,
                          std::string asset_id);

/// Blocking HTTP(S) GET of one asset's price history.
PriceSeries fetch_remote(const FetchRequest& request);

}  // namespace finnet
