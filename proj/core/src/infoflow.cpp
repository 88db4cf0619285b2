#include "finnet/infoflow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "finnet/error.hpp"
#include "finnet/random.hpp"
#include "parallel.hpp"

namespace finnet {

namespace {

void require_same_length(const SymbolSequence& a, const SymbolSequence& b) {
  if (a.size() != b.size())
    throw Error(Errc::length_mismatch, "sequence lengths " + std::to_string(a.size()) +
                                           " and " + std::to_string(b.size()) + " differ");
}

void require_te_length(std::size_t n, std::size_t dt) {
  if (dt == 0) throw Error(Errc::invalid_argument, "transfer entropy needs dt >= 1");
  if (n < dt + 2)
    throw Error(Errc::empty_overlap, "length " + std::to_string(n) + " too short for dt " +
                                         std::to_string(dt));
}

// Conditional mutual information I(A; C | B) in bits from the (A, B, C)
// histogram, using only marginals of that same histogram.
double conditional_mi(const JointHistogram& abc) {
  const int na = abc.dims()[0], nb = abc.dims()[1], nc = abc.dims()[2];
  const auto counts = abc.counts();
  std::vector<std::uint64_t> ab(static_cast<std::size_t>(na * nb), 0);
  std::vector<std::uint64_t> bc(static_cast<std::size_t>(nb * nc), 0);
  std::vector<std::uint64_t> b(static_cast<std::size_t>(nb), 0);
  for (int ia = 0; ia < na; ++ia)
    for (int ib = 0; ib < nb; ++ib)
      for (int ic = 0; ic < nc; ++ic) {
        const auto c = counts[static_cast<std::size_t>((ia * nb + ib) * nc + ic)];
        ab[static_cast<std::size_t>(ia * nb + ib)] += c;
        bc[static_cast<std::size_t>(ib * nc + ic)] += c;
        b[static_cast<std::size_t>(ib)] += c;
      }
  const double total = static_cast<double>(abc.total());
  double sum = 0.0;
  for (int ia = 0; ia < na; ++ia)
    for (int ib = 0; ib < nb; ++ib)
      for (int ic = 0; ic < nc; ++ic) {
        const auto c = counts[static_cast<std::size_t>((ia * nb + ib) * nc + ic)];
        if (c == 0) continue;
        const double ratio =
            (static_cast<double>(c) * static_cast<double>(b[static_cast<std::size_t>(ib)])) /
            (static_cast<double>(ab[static_cast<std::size_t>(ia * nb + ib)]) *
             static_cast<double>(bc[static_cast<std::size_t>(ib * nc + ic)]));
        sum += static_cast<double>(c) / total * std::log2(ratio);
      }
  return std::max(sum, 0.0);
}

double te_unchecked(const SymbolSequence& source, const SymbolSequence& target, std::size_t dt) {
  const SymbolSequence* axes[] = {&target, &target, &source};
  const std::size_t lags[] = {dt, 0, 0};
  JointHistogram hist({target.bins, target.bins, source.bins});
  const std::size_t n = target.size();
  std::array<int, 3> idx{};
  for (std::size_t t = 0; t + dt < n; ++t) {
    for (std::size_t a = 0; a < 3; ++a) idx[a] = axes[a]->symbols[t + lags[a]];
    hist.add(idx);
  }
  return conditional_mi(hist);
}

}  // namespace

double entropy(const JointHistogram& hist) {
  if (hist.total() == 0) return 0.0;
  const double total = static_cast<double>(hist.total());
  double h = 0.0;
  for (auto c : hist.counts()) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log2(p);
  }
  return std::max(h, 0.0);
}

double mutual_information(const SymbolSequence& x, const SymbolSequence& y) {
  require_same_length(x, y);
  if (x.size() < 2) throw Error(Errc::too_few_samples, "mutual information needs length >= 2");
  const SymbolSequence seqs[] = {x, y};
  const std::size_t lags[] = {0, 0};
  const auto xy = joint_histogram(seqs, lags);
  const int nx = x.bins, ny = y.bins;
  std::vector<std::uint64_t> cx(static_cast<std::size_t>(nx), 0), cy(static_cast<std::size_t>(ny), 0);
  const auto counts = xy.counts();
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const auto c = counts[static_cast<std::size_t>(i * ny + j)];
      cx[static_cast<std::size_t>(i)] += c;
      cy[static_cast<std::size_t>(j)] += c;
    }
  const double total = static_cast<double>(xy.total());
  std::vector<double> terms;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const auto c = counts[static_cast<std::size_t>(i * ny + j)];
      if (c == 0) continue;
      const double ratio = static_cast<double>(c) * total /
                           (static_cast<double>(cx[static_cast<std::size_t>(i)]) *
                            static_cast<double>(cy[static_cast<std::size_t>(j)]));
      terms.push_back(static_cast<double>(c) / total * std::log2(ratio));
    }
  // Summing in sorted order makes I(x; y) and I(y; x) bit-identical.
  std::sort(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += t;
  return std::max(sum, 0.0);
}

double transfer_entropy(const SymbolSequence& source, const SymbolSequence& target,
                        std::size_t dt) {
  require_same_length(source, target);
  require_te_length(target.size(), dt);
  return te_unchecked(source, target, dt);
}

double conditional_self_entropy(const SymbolSequence& target, std::size_t dt) {
  require_te_length(target.size(), dt);
  const SymbolSequence seqs[] = {target};
  const std::size_t lags[] = {dt, 0};
  const auto pair = joint_histogram(seqs, lags);
  const std::size_t keep[] = {1};
  return std::max(entropy(pair) - entropy(pair.marginal(keep)), 0.0);
}

double surrogate_floor(const SymbolSequence& source, const SymbolSequence& target,
                       std::size_t dt, std::size_t shuffles, std::uint64_t seed) {
  require_same_length(source, target);
  require_te_length(target.size(), dt);
  if (shuffles == 0) return 0.0;
  SymbolSequence shuffled = source;
  double sum = 0.0;
  for (std::size_t s = 0; s < shuffles; ++s) {
    Rng rng(mix_seed(seed, s));
    shuffled.symbols = source.symbols;
    auto& v = shuffled.symbols;
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
    sum += te_unchecked(shuffled, target, dt);
  }
  return sum / static_cast<double>(shuffles);
}

InteractionMatrix te_matrix(std::span<const SymbolSequence> series,
                            std::span<const std::string> asset_ids,
                            const TeMatrixOptions& options) {
  const std::size_t N = series.size();
  if (asset_ids.size() != N)
    throw Error(Errc::length_mismatch, "one asset id per sequence required");
  for (const auto& s : series) {
    require_same_length(series.front(), s);
    require_te_length(s.size(), options.dt);
  }

  InteractionMatrix out;
  out.asset_ids.assign(asset_ids.begin(), asset_ids.end());
  out.values = Matrix(N, N);
  out.measure = Measure::transfer_entropy;
  out.directed = true;
  out.units = Units::bits;
  Matrix floor(N, N);

  // Task k covers ordered pair (i, j) = (k / N, k % N): source j, target i.
  detail::parallel_for(N * N, options.threads, [&](std::size_t k) {
    const std::size_t i = k / N, j = k % N;
    if (i == j) {
      out.values(i, i) = conditional_self_entropy(series[i], options.dt);
      return;
    }
    out.values(i, j) = te_unchecked(series[j], series[i], options.dt);
    if (options.surrogates > 0)
      floor(i, j) = surrogate_floor(series[j], series[i], options.dt, options.surrogates,
                                    mix_seed(options.seed, k));
  });

  out.params = {{"estimator", "plug_in"},
                {"history_target", 1},
                {"history_source", 1},
                {"dt", options.dt},
                {"diagonal", "conditional_self_entropy"},
                {"orientation", "values[i][j] = TE(j -> i)"},
                {"surrogates", options.surrogates}};
  if (options.surrogates > 0) {
    out.params["seed"] = options.seed;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < N; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t j = 0; j < N; ++j) row.push_back(floor(i, j));
      rows.push_back(std::move(row));
    }
    out.params["surrogate_floor"] = std::move(rows);
  }
  return out;
}

InteractionMatrix mi_matrix(std::span<const SymbolSequence> series,
                            std::span<const std::string> asset_ids, unsigned threads) {
  const std::size_t N = series.size();
  if (asset_ids.size() != N)
    throw Error(Errc::length_mismatch, "one asset id per sequence required");
  for (const auto& s : series) require_same_length(series.front(), s);

  InteractionMatrix out;
  out.asset_ids.assign(asset_ids.begin(), asset_ids.end());
  out.values = Matrix(N, N);
  out.measure = Measure::mutual_information;
  out.directed = false;
  out.units = Units::bits;
  detail::parallel_for(N * N, threads, [&](std::size_t k) {
    const std::size_t i = k / N, j = k % N;
    if (j < i) return;
    const double v = mutual_information(series[i], series[j]);
    out.values(i, j) = v;
    out.values(j, i) = v;
  });
  out.params = {{"estimator", "plug_in"}, {"diagonal", "entropy"}};
  return out;
}

}  // namespace finnet
