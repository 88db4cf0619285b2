#include "finnet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "finnet/error.hpp"
#include "csv_util.hpp"

namespace finnet {

void validate(const PriceSeries& series) {
  const auto& obs = series.observations;
  if (obs.size() < 2)
    throw Error(Errc::too_few_samples,
                "series '" + series.asset_id + "' needs at least 2 observations, has " +
                    std::to_string(obs.size()));
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (!(obs[i].price > 0.0) || !std::isfinite(obs[i].price))
      throw Error(Errc::non_positive_price,
                  "series '" + series.asset_id + "' has non-positive price at index " +
                      std::to_string(i),
                  static_cast<std::int64_t>(i));
    if (i > 0 && !(obs[i - 1].date < obs[i].date))
      throw Error(Errc::duplicate_date,
                  "series '" + series.asset_id + "' dates not strictly increasing at index " +
                      std::to_string(i),
                  static_cast<std::int64_t>(i));
  }
}

PriceSeries parse_csv(std::string_view text, const CsvSchema& schema, std::string asset_id) {
  detail::LineReader reader(text);
  std::string_view line;
  std::size_t line_no = 0;

  std::optional<std::vector<std::string>> header;
  while (reader.next(line, line_no)) {
    if (detail::is_blank(line)) continue;
    header = detail::split_csv_line(line);
    break;
  }
  if (!header) throw Error(Errc::empty_file, "no header row in '" + asset_id + "'");

  const auto find_col = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < header->size(); ++i)
      if (detail::trim((*header)[i]) == name) return i;
    throw Error(Errc::malformed_row,
                "line " + std::to_string(line_no) + ": header lacks column '" + name + "'",
                static_cast<std::int64_t>(line_no));
  };
  const std::size_t date_col = find_col(schema.date_column);
  const std::size_t price_col = find_col(schema.price_column);
  const std::size_t header_line = line_no;

  struct Row {
    Observation obs;
    std::size_t line;
  };
  std::vector<Row> rows;
  while (reader.next(line, line_no)) {
    if (detail::is_blank(line)) continue;
    const auto fields = detail::split_csv_line(line);
    const auto where = "line " + std::to_string(line_no);
    const auto bad = [&](const std::string& why) {
      return Error(Errc::malformed_row, where + ": " + why, static_cast<std::int64_t>(line_no));
    };
    if (fields.size() <= std::max(date_col, price_col)) throw bad("too few fields");
    const auto date = parse_date(detail::trim(fields[date_col]));
    if (!date) throw bad("date '" + fields[date_col] + "' is not YYYY-MM-DD");
    const auto price = detail::parse_real(detail::trim(fields[price_col]));
    if (!price) throw bad("price '" + fields[price_col] + "' is not a number");
    if (!(*price > 0.0))
      throw Error(Errc::non_positive_price, where + ": price " + fields[price_col] + " <= 0",
                  static_cast<std::int64_t>(line_no));
    rows.push_back({{*date, *price}, line_no});
  }
  if (rows.empty())
    throw Error(Errc::empty_file, "no data rows after header (line " +
                                      std::to_string(header_line) + ") in '" + asset_id + "'");

  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.obs.date < b.obs.date; });
  PriceSeries series{std::move(asset_id), {}};
  series.observations.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].obs.date == rows[i - 1].obs.date)
      throw Error(Errc::duplicate_date,
                  "line " + std::to_string(rows[i].line) + ": duplicate date " +
                      format_date(rows[i].obs.date),
                  static_cast<std::int64_t>(rows[i].line));
    series.observations.push_back(rows[i].obs);
  }
  validate(series);
  return series;
}

PriceSeries load_csv(const std::filesystem::path& path, const CsvSchema& schema,
                     std::optional<std::string> asset_id) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), schema, asset_id.value_or(path.stem().string()));
}

std::string to_csv(const PriceSeries& series, const CsvSchema& schema) {
  std::string out = detail::quote_csv(schema.date_column) + "," +
                    detail::quote_csv(schema.price_column) + "\n";
  for (const auto& o : series.observations) {
    out += format_date(o.date);
    out += ',';
    out += detail::format_double(o.price);
    out += '\n';
  }
  return out;
}

void write_csv(const PriceSeries& series, const std::filesystem::path& path,
               const CsvSchema& schema) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write '" + path.string() + "'");
  out << to_csv(series, schema);
  if (!out) throw Error(Errc::io_error, "write failed for '" + path.string() + "'");
}

AlignedPanel align(std::span<const PriceSeries> series) {
  if (series.empty()) throw Error(Errc::insufficient_overlap, "no series to align");
  std::unordered_set<std::string> ids;
  for (const auto& s : series) {
    if (!ids.insert(s.asset_id).second)
      throw Error(Errc::duplicate_asset_id, "asset id '" + s.asset_id + "' appears twice");
    validate(s);
  }

  // date -> number of series containing it
  std::map<Date, std::size_t> seen;
  for (const auto& s : series)
    for (const auto& o : s.observations) ++seen[o.date];

  AlignedPanel panel;
  for (const auto& [date, n] : seen)
    if (n == series.size()) panel.dates.push_back(date);
  if (panel.dates.size() < 3)
    throw Error(Errc::insufficient_overlap,
                "only " + std::to_string(panel.dates.size()) + " common dates (need 3)",
                static_cast<std::int64_t>(panel.dates.size()));

  panel.prices = Matrix(panel.dates.size(), series.size());
  for (std::size_t n = 0; n < series.size(); ++n) {
    panel.asset_ids.push_back(series[n].asset_id);
    const auto& obs = series[n].observations;
    std::size_t k = 0;
    for (std::size_t t = 0; t < panel.dates.size(); ++t) {
      while (obs[k].date < panel.dates[t]) ++k;
      panel.prices(t, n) = obs[k].price;
    }
  }
  return panel;
}

}  // namespace finnet
