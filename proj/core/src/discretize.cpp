#include "finnet/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "finnet/error.hpp"

namespace finnet {

std::string_view bin_strategy_name(BinStrategy s) noexcept {
  return s == BinStrategy::quantile ? "quantile" : "equal_width";
}

std::optional<BinStrategy> parse_bin_strategy(std::string_view name) noexcept {
  if (name == "quantile") return BinStrategy::quantile;
  if (name == "equal_width") return BinStrategy::equal_width;
  return std::nullopt;
}

SymbolSequence make_symbols(std::vector<int> symbols, int bins) {
  if (bins < 1) throw Error(Errc::invalid_argument, "bin count must be positive");
  for (std::size_t t = 0; t < symbols.size(); ++t)
    if (symbols[t] < 0 || symbols[t] >= bins)
      throw Error(Errc::invalid_argument,
                  "symbol " + std::to_string(symbols[t]) + " at index " + std::to_string(t) +
                      " outside [0, " + std::to_string(bins) + ")",
                  static_cast<std::int64_t>(t));
  return SymbolSequence{std::move(symbols), bins, {}};
}

SymbolSequence bin_series(std::span<const double> column, int bins, BinStrategy strategy) {
  if (bins < 2) throw Error(Errc::invalid_argument, "bin count must be at least 2");
  for (double v : column)
    if (!std::isfinite(v)) throw Error(Errc::invalid_argument, "non-finite value in column");
  const std::size_t n = column.size();
  const std::size_t need = strategy == BinStrategy::quantile ? static_cast<std::size_t>(bins) : 2;
  if (n < need)
    throw Error(Errc::too_few_samples, std::to_string(n) + " samples for " +
                                           std::to_string(bins) + " " +
                                           std::string(bin_strategy_name(strategy)) + " bins");

  const auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
  const double lo = *lo_it, hi = *hi_it;
  if (lo == hi) throw Error(Errc::degenerate_series, "all values are equal");

  std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
  edges.front() = lo;
  edges.back() = hi;
  if (strategy == BinStrategy::quantile) {
    std::vector<double> sorted(column.begin(), column.end());
    std::sort(sorted.begin(), sorted.end());
    for (int k = 1; k < bins; ++k) {
      const double h = static_cast<double>(n - 1) * k / bins;
      const auto base = static_cast<std::size_t>(std::floor(h));
      const double frac = h - static_cast<double>(base);
      double q = sorted[base];
      if (frac > 0.0) q += frac * (sorted[base + 1] - sorted[base]);
      edges[static_cast<std::size_t>(k)] = q;
    }
  } else {
    const double width = (hi - lo) / bins;
    for (int k = 1; k < bins; ++k) edges[static_cast<std::size_t>(k)] = lo + k * width;
  }
  for (std::size_t k = 0; k + 1 < edges.size(); ++k)
    if (!(edges[k] < edges[k + 1]))
      throw Error(Errc::degenerate_series,
                  "tied values collapse bin " + std::to_string(k) + " (edge " +
                      std::to_string(edges[k]) + ")",
                  static_cast<std::int64_t>(k));

  // Symbol = number of interior edges strictly below the value, so values on
  // an edge fall into the lower bin.
  const auto inner_begin = edges.begin() + 1;
  const auto inner_end = edges.end() - 1;
  SymbolSequence out{std::vector<int>(n), bins, std::move(edges)};
  for (std::size_t t = 0; t < n; ++t)
    out.symbols[t] =
        static_cast<int>(std::lower_bound(inner_begin, inner_end, column[t]) - inner_begin);
  return out;
}

JointHistogram::JointHistogram(std::vector<int> dims) : dims_(std::move(dims)) {
  std::size_t cells = 1;
  for (int d : dims_) {
    if (d < 1) throw Error(Errc::invalid_argument, "histogram axis size must be positive");
    cells *= static_cast<std::size_t>(d);
  }
  counts_.assign(cells, 0);
}

std::size_t JointHistogram::offset(std::span<const int> index) const {
  if (index.size() != dims_.size())
    throw Error(Errc::invalid_argument, "histogram index rank mismatch");
  std::size_t off = 0;
  for (std::size_t a = 0; a < dims_.size(); ++a) {
    if (index[a] < 0 || index[a] >= dims_[a])
      throw Error(Errc::invalid_argument, "histogram index out of range");
    off = off * static_cast<std::size_t>(dims_[a]) + static_cast<std::size_t>(index[a]);
  }
  return off;
}

std::uint64_t JointHistogram::at(std::span<const int> index) const {
  return counts_[offset(index)];
}

void JointHistogram::add(std::span<const int> index, std::uint64_t n) {
  counts_[offset(index)] += n;
  total_ += n;
}

JointHistogram JointHistogram::marginal(std::span<const std::size_t> keep) const {
  std::vector<int> dims;
  for (std::size_t a : keep) {
    if (a >= dims_.size()) throw Error(Errc::invalid_argument, "marginal axis out of range");
    dims.push_back(dims_[a]);
  }
  JointHistogram out(std::move(dims));
  std::vector<int> idx(dims_.size(), 0);
  std::vector<int> sub(keep.size());
  for (std::size_t cell = 0; cell < counts_.size(); ++cell) {
    if (counts_[cell] != 0) {
      for (std::size_t k = 0; k < keep.size(); ++k) sub[k] = idx[keep[k]];
      out.add(sub, counts_[cell]);
    }
    // odometer increment in row-major order
    for (std::size_t a = dims_.size(); a-- > 0;) {
      if (++idx[a] < dims_[a]) break;
      idx[a] = 0;
    }
  }
  return out;
}

std::vector<double> JointHistogram::probabilities() const {
  std::vector<double> p(counts_.size(), 0.0);
  if (total_ == 0) return p;
  const double total = static_cast<double>(total_);
  for (std::size_t i = 0; i < counts_.size(); ++i) p[i] = static_cast<double>(counts_[i]) / total;
  return p;
}

JointHistogram joint_histogram(std::span<const SymbolSequence> seqs,
                               std::span<const std::size_t> lags) {
  if (seqs.empty() || lags.empty())
    throw Error(Errc::invalid_argument, "joint_histogram needs sequences and lags");
  if (seqs.size() != 1 && seqs.size() != lags.size())
    throw Error(Errc::length_mismatch, "one lag per sequence required");
  const std::size_t n = seqs.front().size();
  for (const auto& s : seqs)
    if (s.size() != n)
      throw Error(Errc::length_mismatch, "sequence lengths " + std::to_string(n) + " and " +
                                             std::to_string(s.size()) + " differ");
  const std::size_t max_lag = *std::max_element(lags.begin(), lags.end());
  if (max_lag >= n)
    throw Error(Errc::empty_overlap, "lag " + std::to_string(max_lag) +
                                         " leaves no samples from length " + std::to_string(n));

  const auto axis_seq = [&](std::size_t a) -> const SymbolSequence& {
    return seqs.size() == 1 ? seqs.front() : seqs[a];
  };
  std::vector<int> dims(lags.size());
  for (std::size_t a = 0; a < lags.size(); ++a) dims[a] = axis_seq(a).bins;
  JointHistogram hist(std::move(dims));
  std::vector<int> idx(lags.size());
  for (std::size_t t = 0; t + max_lag < n; ++t) {
    for (std::size_t a = 0; a < lags.size(); ++a) idx[a] = axis_seq(a).symbols[t + lags[a]];
    hist.add(idx);
  }
  return hist;
}

}  // namespace finnet
