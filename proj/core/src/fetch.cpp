#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "csv_util.hpp"
#include "finnet/error.hpp"
#include "finnet/ingest.hpp"

namespace finnet {

namespace {

void replace_all(std::string& s, std::string_view what, std::string_view with) {
  for (auto pos = s.find(what); pos != std::string::npos; pos = s.find(what, pos + with.size()))
    s.replace(pos, what.size(), with);
}

PriceSeries parse_json_payload(std::string_view payload, std::string asset_id) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(payload);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::payload_parse_error, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("timestamps") || !doc.contains("closes") ||
      !doc["timestamps"].is_array() || !doc["closes"].is_array())
    throw Error(Errc::payload_parse_error, "expected {\"timestamps\": [...], \"closes\": [...]}");
  const auto& ts = doc["timestamps"];
  const auto& closes = doc["closes"];
  if (ts.size() != closes.size())
    throw Error(Errc::payload_parse_error, "timestamps and closes differ in length");
  if (ts.empty()) throw Error(Errc::empty_file, "payload has no observations");

  std::vector<Observation> obs;
  obs.reserve(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto idx = static_cast<std::int64_t>(i);
    std::optional<Date> date;
    if (ts[i].is_number_integer()) {
      date = date_from_unix_seconds(ts[i].get<long long>());
    } else if (ts[i].is_string()) {
      date = parse_date(ts[i].get<std::string>());
    }
    if (!date)
      throw Error(Errc::payload_parse_error,
                  "timestamps[" + std::to_string(i) + "] is not a date", idx);
    if (!closes[i].is_number())
      throw Error(Errc::payload_parse_error,
                  "closes[" + std::to_string(i) + "] is " +
                      (closes[i].is_null() ? std::string("null") : closes[i].dump()),
                  idx);
    const double price = closes[i].get<double>();
    if (!(price > 0.0))
      throw Error(Errc::non_positive_price,
                  "closes[" + std::to_string(i) + "] = " + closes[i].dump() + " <= 0", idx);
    obs.push_back({*date, price});
  }
  std::stable_sort(obs.begin(), obs.end(),
                   [](const Observation& a, const Observation& b) { return a.date < b.date; });
  for (std::size_t i = 1; i < obs.size(); ++i)
    if (obs[i].date == obs[i - 1].date)
      throw Error(Errc::duplicate_date, "duplicate date " + format_date(obs[i].date));
  PriceSeries series{std::move(asset_id), std::move(obs)};
  validate(series);
  return series;
}

std::optional<std::string> read_cache(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Readers only ever see complete files: write aside, then rename.
void write_cache(const std::filesystem::path& file, std::string_view bytes) {
  static std::atomic<unsigned> counter{0};
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  std::ostringstream tmp_name;
  tmp_name << file.filename().string() << ".tmp." << std::this_thread::get_id() << '.'
           << counter++;
  const auto tmp = file.parent_path() / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot write cache file '" + tmp.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(Errc::io_error, "cache write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, file, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(Errc::io_error, "cannot move cache file into '" + file.string() + "'");
  }
}

std::string http_get(const std::string& url, int timeout_seconds) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw Error(Errc::invalid_argument, "URL '" + url + "' has no scheme");
  const auto path_start = url.find('/', scheme_end + 3);
  const std::string origin = url.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

  httplib::Client client(origin);
  if (!client.is_valid())
    throw Error(Errc::network_error, "unsupported or invalid endpoint '" + origin + "'");
  client.set_connection_timeout(timeout_seconds, 0);
  client.set_read_timeout(timeout_seconds, 0);
  client.set_follow_location(true);
  auto res = client.Get(path);
  if (!res)
    throw Error(Errc::network_error,
                "GET " + url + " failed: " + httplib::to_string(res.error()));
  if (res->status < 200 || res->status >= 300)
    throw Error(Errc::http_status_error,
                "GET " + url + " returned HTTP " + std::to_string(res->status), res->status);
  return res->body;
}

}  // namespace

std::string expand_url_template(std::string_view url_template, std::string_view asset,
                                Date start, Date end) {
  std::string url(url_template);
  replace_all(url, "{asset}", asset);
  replace_all(url, "{start}", format_date(start));
  replace_all(url, "{end}", format_date(end));
  return url;
}

PriceSeries parse_payload(std::string_view payload, const CsvSchema& schema,
                          std::string asset_id) {
  const auto body = detail::trim(payload);
  if (body.empty()) throw Error(Errc::empty_file, "empty payload for '" + asset_id + "'");
  if (body.front() == '{') return parse_json_payload(body, std::move(asset_id));
  return parse_csv(payload, schema, std::move(asset_id));
}

PriceSeries fetch_remote(const FetchRequest& request) {
  if (request.end < request.start)
    throw Error(Errc::invalid_argument, "date range end precedes start");
  std::optional<std::filesystem::path> cache_file;
  if (request.cache_dir) {
    cache_file = *request.cache_dir / (request.asset_id + "_" + format_date(request.start) +
                                       "_" + format_date(request.end) + ".csv");
    if (auto cached = read_cache(*cache_file))
      return parse_payload(*cached, request.schema, request.asset_id);
  }
  const auto url =
      expand_url_template(request.url_template, request.asset_id, request.start, request.end);
  const auto body = http_get(url, request.timeout_seconds);
  auto series = parse_payload(body, request.schema, request.asset_id);
  if (cache_file) write_cache(*cache_file, body);
  return series;
}

}  // namespace finnet
