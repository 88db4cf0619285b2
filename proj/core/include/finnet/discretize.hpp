#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace finnet {

enum class BinStrategy { quantile, equal_width };

std::string_view bin_strategy_name(BinStrategy s) noexcept;
std::optional<BinStrategy> parse_bin_strategy(std::string_view name) noexcept;

/// A discretised series. symbols[t] ∈ [0, bins); edges has bins + 1
/// strictly increasing entries (edges.front() = min, edges.back() = max).
/// Sequences built directly from symbols (e.g. synthetic binary chains)
/// carry no edges.
struct SymbolSequence {
  std::vector<int> symbols;
  int bins = 0;
  std::vector<double> edges;

  std::size_t size() const noexcept { return symbols.size(); }
};

/// Validates symbols against `bins` and returns an edge-free sequence.
SymbolSequence make_symbols(std::vector<int> symbols, int bins);

/// Discretises a real-valued column into `bins` symbols.
///
/// quantile: interior edges are the linearly interpolated empirical
/// quantiles q(k/bins). equal_width: interior edges split [min, max]
/// uniformly. In both cases a value equal to an interior edge goes to the
/// lower bin, so min → 0 and max → bins − 1.
SymbolSequence bin_series(std::span<const double> column, int bins,
                          BinStrategy strategy = BinStrategy::quantile);

/// Dense joint count table over k axes.
class JointHistogram {
 public:
  JointHistogram() = default;
  explicit JointHistogram(std::vector<int> dims);

  const std::vector<int>& dims() const noexcept { return dims_; }
  std::size_t rank() const noexcept { return dims_.size(); }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::uint64_t total() const noexcept { return total_; }

  std::uint64_t at(std::span<const int> index) const;
  void add(std::span<const int> index, std::uint64_t n = 1);

  /// Flat row-major offset of a multi-index.
  std::size_t offset(std::span<const int> index) const;

  /// Histogram over the listed axes only (in the given order), summing out
  /// the rest.
  JointHistogram marginal(std::span<const std::size_t> keep) const;

  /// counts / total.
  std::vector<double> probabilities() const;

 private:
  std::vector<int> dims_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Joint counts of lagged symbols. Axis k reads seqs[k][t + lags[k]] (a
/// single sequence is reused for every lag) over every t for which all
/// lagged indices are in range.
JointHistogram joint_histogram(std::span<const SymbolSequence> seqs,
                               std::span<const std::size_t> lags);

}  // namespace finnet
