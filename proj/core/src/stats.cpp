#include "finnet/stats.hpp"

#include <algorithm>
#include <cmath>

#include "finnet/error.hpp"

namespace finnet {

std::string_view return_kind_name(ReturnKind kind) noexcept {
  return kind == ReturnKind::log ? "log" : "simple";
}

std::optional<ReturnKind> parse_return_kind(std::string_view name) noexcept {
  if (name == "log") return ReturnKind::log;
  if (name == "simple") return ReturnKind::simple;
  return std::nullopt;
}

ReturnsMatrix ReturnsMatrix::slice(std::size_t begin, std::size_t end) const {
  ReturnsMatrix out;
  out.asset_ids = asset_ids;
  out.dates.assign(dates.begin() + static_cast<std::ptrdiff_t>(begin),
                   dates.begin() + static_cast<std::ptrdiff_t>(end));
  out.values = values.slice_rows(begin, end);
  out.kind = kind;
  return out;
}

ReturnsMatrix make_returns(Matrix values, std::vector<std::string> asset_ids,
                           std::vector<Date> dates) {
  if (asset_ids.empty())
    for (std::size_t n = 0; n < values.cols(); ++n) asset_ids.push_back("x" + std::to_string(n));
  if (asset_ids.size() != values.cols())
    throw Error(Errc::length_mismatch, "asset id count does not match column count");
  if (dates.empty()) {
    const Date origin{std::chrono::year{2000}, std::chrono::January, std::chrono::day{1}};
    dates.reserve(values.rows());
    for (std::size_t t = 0; t < values.rows(); ++t)
      dates.push_back(add_days(origin, static_cast<long long>(t)));
  }
  if (dates.size() != values.rows())
    throw Error(Errc::length_mismatch, "date count does not match row count");
  return ReturnsMatrix{std::move(asset_ids), std::move(dates), std::move(values),
                       ReturnKind::log};
}

ReturnsMatrix compute_returns(const AlignedPanel& panel, ReturnKind kind) {
  const std::size_t T = panel.samples();
  const std::size_t N = panel.assets();
  if (T < 2 || N == 0) throw Error(Errc::too_few_samples, "panel too small for returns");
  ReturnsMatrix out;
  out.asset_ids = panel.asset_ids;
  out.dates.assign(panel.dates.begin() + 1, panel.dates.end());
  out.values = Matrix(T - 1, N);
  out.kind = kind;
  for (std::size_t t = 0; t + 1 < T; ++t)
    for (std::size_t n = 0; n < N; ++n) {
      const double ratio = panel.prices(t + 1, n) / panel.prices(t, n);
      out.values(t, n) = kind == ReturnKind::log ? std::log(ratio) : ratio - 1.0;
    }
  return out;
}

namespace {

bool all_equal(std::span<const double> v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

}  // namespace

StatsSummary describe(const ReturnsMatrix& returns) {
  const std::size_t n = returns.samples();
  if (n < 4)
    throw Error(Errc::too_few_samples,
                "describe needs at least 4 observations, has " + std::to_string(n));
  StatsSummary summary;
  for (std::size_t c = 0; c < returns.assets(); ++c) {
    const auto col = returns.values.column(c);
    if (all_equal(col))
      throw Error(Errc::degenerate_series,
                  "column '" + returns.asset_ids[c] + "' has zero variance",
                  static_cast<std::int64_t>(c));
    double sum = 0.0;
    for (double v : col) sum += v;
    const double mean = sum / static_cast<double>(n);
    double s2 = 0.0, s3 = 0.0, s4 = 0.0;
    for (double v : col) {
      const double d = v - mean;
      const double d2 = d * d;
      s2 += d2;
      s3 += d2 * d;
      s4 += d2 * d2;
    }
    const double nn = static_cast<double>(n);
    const double m2 = s2 / nn, m3 = s3 / nn, m4 = s4 / nn;
    AssetStats st;
    st.asset_id = returns.asset_ids[c];
    st.count = n;
    st.mean = mean;
    st.std_dev = std::sqrt(s2 / (nn - 1.0));
    st.skewness = m3 / std::pow(m2, 1.5);
    st.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    summary.assets.push_back(std::move(st));
  }
  return summary;
}

InteractionMatrix correlation_matrix(const ReturnsMatrix& returns) {
  const std::size_t n = returns.samples();
  const std::size_t N = returns.assets();
  if (n < 3)
    throw Error(Errc::too_few_samples,
                "correlation needs at least 3 observations, has " + std::to_string(n));
  std::vector<std::vector<double>> centered(N);
  std::vector<double> ss(N, 0.0);
  for (std::size_t c = 0; c < N; ++c) {
    auto col = returns.values.column(c);
    if (all_equal(col))
      throw Error(Errc::degenerate_series,
                  "column '" + returns.asset_ids[c] + "' has zero variance",
                  static_cast<std::int64_t>(c));
    double sum = 0.0;
    for (double v : col) sum += v;
    const double mean = sum / static_cast<double>(n);
    for (double& v : col) {
      v -= mean;
      ss[c] += v * v;
    }
    centered[c] = std::move(col);
  }

  InteractionMatrix out;
  out.asset_ids = returns.asset_ids;
  out.values = Matrix(N, N);
  out.measure = Measure::correlation;
  out.directed = false;
  out.units = Units::dimensionless;
  for (std::size_t i = 0; i < N; ++i) {
    out.values(i, i) = 1.0;
    for (std::size_t j = i + 1; j < N; ++j) {
      double sxy = 0.0;
      for (std::size_t t = 0; t < n; ++t) sxy += centered[i][t] * centered[j][t];
      const double r = std::clamp(sxy / std::sqrt(ss[i] * ss[j]), -1.0, 1.0);
      out.values(i, j) = r;
      out.values(j, i) = r;
    }
  }
  out.params = {{"estimator", "pearson"},
                {"return_kind", std::string(return_kind_name(returns.kind))},
                {"samples", n}};
  return out;
}

}  // namespace finnet
