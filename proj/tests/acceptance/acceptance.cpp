// Acceptance suite: one [PASS]/[FAIL]/[SKIP] line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "finnet/discretize.hpp"
#include "finnet/error.hpp"
#include "finnet/infoflow.hpp"
#include "finnet/ingest.hpp"
#include "finnet/kmdrift.hpp"
#include "finnet/netout.hpp"
#include "finnet/random.hpp"
#include "finnet/stats.hpp"
#include "finnet/synth.hpp"
#include "finnet/windows.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace finnet;
namespace fs = std::filesystem;

namespace {

enum class Outcome { pass, fail, skip };

struct Result {
  Outcome outcome;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

Result verdict(bool ok, std::string detail) {
  return {ok ? Outcome::pass : Outcome::fail, std::move(detail)};
}

// 1
Result te_coupling_oracle() {
  const auto start = Clock::now();
  const double analytic = 1.0 - binary_entropy(0.1);
  const auto chain = gen_coupled_binary(0.1, 100000, 20240911);
  const double forward = transfer_entropy(chain.x, chain.y);
  const double backward = transfer_entropy(chain.y, chain.x);
  const double elapsed = seconds_since(start);
  const bool ok = std::abs(forward - analytic) <= 0.03 && backward <= 0.01 && elapsed < 5.0;
  return verdict(ok, "TE(X->Y)=" + fmt(forward) + " analytic=" + fmt(analytic) +
                         " TE(Y->X)=" + fmt(backward) + " runtime=" + fmt(elapsed, 3) + "s");
}

// 2
Result te_null_floor() {
  const std::size_t seeds = 20, shuffles = 10;
  double te_sum = 0.0, floor_sum = 0.0;
  for (std::size_t s = 0; s < seeds; ++s) {
    // flip 0.5 makes y independent of x
    const auto pair = gen_coupled_binary(0.5, 100000, 1000 + s);
    te_sum += transfer_entropy(pair.x, pair.y);
    floor_sum += surrogate_floor(pair.x, pair.y, 1, shuffles, 5000 + s);
  }
  const double te_mean = te_sum / seeds;
  const double floor_mean = floor_sum / seeds;
  const double ratio = floor_mean / te_mean;
  const bool ok = te_mean <= 0.005 && ratio >= 0.5 && ratio <= 2.0;
  return verdict(ok, "mean TE=" + fmt(te_mean) + " mean surrogate floor=" + fmt(floor_mean) +
                         " ratio=" + fmt(ratio, 3));
}

// 3
Result km_drift_recovery() {
  const auto start = Clock::now();
  const Matrix a_true{{-0.5, 0.2}, {0.0, -0.3}};
  const Matrix x = gen_ou(a_true, 0.1, 0.01, 1000000, 20240911);
  const auto est = estimate_drift(make_returns(x), 1, true, DriftOptions{0.01, 0.0, 1e12});
  const double elapsed = seconds_since(start);
  const double err = max_abs_diff(est.A, a_true);
  std::ostringstream os;
  os << "A=[[" << fmt(est.A(0, 0), 4) << "," << fmt(est.A(0, 1), 4) << "],[" << fmt(est.A(1, 0), 4)
     << "," << fmt(est.A(1, 1), 4) << "]] max|err|=" << fmt(err, 3) << " runtime=" << fmt(elapsed, 3)
     << "s";
  return verdict(err <= 0.02 && elapsed < 30.0, os.str());
}

// 4
Result km_white_noise() {
  Rng rng(77);
  Matrix m(100000, 4);
  for (auto& v : m.data()) v = rng.normal();
  const auto est = estimate_drift(make_returns(std::move(m)));
  double diag_err = 0.0, off_err = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j) diag_err = std::max(diag_err, std::abs(est.A(i, j) + 1.0));
      else off_err = std::max(off_err, std::abs(est.A(i, j)));
    }
  return verdict(diag_err <= 0.05 && off_err <= 0.05,
                 "max|diag+1|=" + fmt(diag_err, 3) + " max|offdiag|=" + fmt(off_err, 3));
}

// 5
Result plug_in_equivalence() {
  Rng rng(5);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 4 + rng.below(47);  // 4..50
    const int bx = 2 + static_cast<int>(rng.below(3));
    const int by = 2 + static_cast<int>(rng.below(3));
    std::vector<int> x(n), y(n);
    for (auto& v : x) v = static_cast<int>(rng.below(static_cast<std::uint64_t>(bx)));
    for (auto& v : y) v = static_cast<int>(rng.below(static_cast<std::uint64_t>(by)));
    const auto sx = make_symbols(x, bx);
    const auto sy = make_symbols(y, by);
    worst = std::max(worst, std::abs(mutual_information(sx, sy) -
                                     finnet::testing::brute_mi(x, y, bx, by)));
    worst = std::max(worst, std::abs(transfer_entropy(sx, sy) -
                                     finnet::testing::brute_te(x, y, bx, by)));
    worst = std::max(worst, std::abs(transfer_entropy(sy, sx) -
                                     finnet::testing::brute_te(y, x, by, bx)));
  }
  return verdict(worst <= 1e-12, "max |estimator - enumeration| = " + fmt(worst, 3));
}

// 6
Result regime_shift_detection() {
  // Flip probability with 1 - H_b(flip) = 0.2 bits.
  const double flip = 0.2430038538089539;
  const double analytic = 1.0 - binary_entropy(flip);
  const std::size_t steps = 20000;
  const Matrix panel = gen_regime_shift(0.5, flip, steps / 2, steps, 20240911);
  EstimatorParams params;
  params.bins = 2;
  const auto w = evolve(make_returns(panel), WindowSpec::segmented(10),
                        Measure::transfer_entropy, params);
  double pre = 0.0, post = 0.0, pre_dir = 0.0, post_dir = 0.0;
  for (std::size_t k = 0; k < 10; ++k) {
    const auto& v = w.windows[k].matrix.values;
    const double mean_off = 0.5 * (v(0, 1) + v(1, 0));
    (k < 5 ? pre : post) += mean_off / 5.0;
    (k < 5 ? pre_dir : post_dir) += v(1, 0) / 5.0;
  }
  const bool ok = post >= 1.3 * pre;
  return verdict(ok, "analytic TE=" + fmt(analytic, 4) + " pre mean=" + fmt(pre, 4) +
                         " post mean=" + fmt(post, 4) + " increase=" +
                         fmt(100.0 * (post - pre) / pre, 4) + "% coupled-direction shift=" +
                         fmt(post_dir - pre_dir, 4));
}

// 7
std::optional<std::size_t> find_asset(const std::vector<std::string>& ids,
                                      std::initializer_list<const char*> keys) {
  for (std::size_t n = 0; n < ids.size(); ++n) {
    std::string lower = ids[n];
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const char* k : keys)
      if (lower.find(k) != std::string::npos) return n;
  }
  return std::nullopt;
}

Result market_panel() {
  const char* dir = std::getenv("FINNET_MARKET_PANEL_DIR");
  if (!dir) return {Outcome::skip, "set FINNET_MARKET_PANEL_DIR to a directory of the four daily price CSVs"};
  try {
    std::vector<PriceSeries> series;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
      if (e.path().extension() == ".csv") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      auto s = load_csv(f);
      std::erase_if(s.observations, [](const Observation& o) {
        return o.date < *parse_date("2014-08-11") || o.date > *parse_date("2024-09-08");
      });
      series.push_back(std::move(s));
    }
    const auto returns = compute_returns(align(series));
    const auto& ids = returns.asset_ids;
    const auto nasdaq = find_asset(ids, {"ixic", "nasdaq"});
    const auto oil = find_asset(ids, {"cl=f", "oil"});
    const auto gold = find_asset(ids, {"gc=f", "gold"});
    const auto usd = find_asset(ids, {"dx-y", "dollar", "usd"});
    if (!nasdaq || !oil || !gold || !usd)
      return {Outcome::fail, "could not identify Nasdaq, crude oil, gold and US dollar files"};

    struct Row { std::size_t col; const char* name; double mean, sd, skew, kurt; };
    const std::vector<Row> table{{*nasdaq, "Nasdaq", 0.00062, 0.0133, -0.4417, 7.5326},
                                 {*oil, "Crude-oil", 0.00057, 0.0294, 1.1527, 25.138},
                                 {*gold, "Gold", 0.00029, 0.0092, 0.0086, 3.7718},
                                 {*usd, "US-dollar", 0.0001, 0.0043, -0.0757, 1.6591}};
    const auto summary = describe(returns);
    bool ok = true;
    std::ostringstream os;
    const auto within = [&](double got, double want, const std::string& what) {
      const bool good = std::abs(got - want) <= 0.1 * std::abs(want);
      if (!good) os << what << "=" << fmt(got, 4) << "(reference " << want << ") ";
      ok = ok && good;
    };
    for (const auto& r : table) {
      const auto& a = summary.assets[r.col];
      within(a.mean, r.mean, std::string(r.name) + " mean");
      within(a.std_dev, r.sd, std::string(r.name) + " std");
      within(a.skewness, r.skew, std::string(r.name) + " skew");
      within(a.excess_kurtosis, r.kurt, std::string(r.name) + " kurt");
    }
    const auto corr = correlation_matrix(returns);
    const double gd = corr.values(*gold, *usd);
    if (std::abs(gd + 0.4) > 0.05) {
      ok = false;
      os << "gold-dollar corr=" << fmt(gd, 3) << " ";
    }
    const auto te = estimate(returns, Measure::transfer_entropy, EstimatorParams{});
    double best = -1.0;
    std::pair<std::size_t, std::size_t> arg{0, 0};
    for (std::size_t i = 0; i < te.values.rows(); ++i)
      for (std::size_t j = 0; j < te.values.cols(); ++j)
        if (i != j && te.values(i, j) > best) {
          best = te.values(i, j);
          arg = {i, j};
        }
    const bool top_pair = (arg == std::pair{*gold, *usd}) || (arg == std::pair{*usd, *gold});
    if (!top_pair) {
      ok = false;
      os << "largest TE pair is " << ids[arg.second] << "->" << ids[arg.first] << " ";
    }
    os << "T=" << returns.samples() << " gold-dollar corr=" << fmt(gd, 3);
    return verdict(ok, os.str());
  } catch (const std::exception& e) {
    return {Outcome::fail, e.what()};
  }
}

// 8
std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = read_file(e.path());
  return out;
}

Result determinism() {
  finnet::testing::TempDir tmp;
  std::ostringstream sink;
  const auto cli = [&](std::vector<std::string> args) { return cli::run_cli(args, sink, sink); };
  const std::string data = (tmp / "data").string();
  if (cli({"simulate", "--kind", "var1", "--a", "[[0.3,0.2,0],[0,0.4,0.1],[0.1,0,0.2]]",
           "--sigma", "1", "--steps", "3000", "--seed", "3", "--out", data,
           "--generated-at", "2026-01-01T00:00:00Z", "--names", "a,b,c"}) != 0)
    return {Outcome::fail, "simulate failed"};

  const std::string out = (tmp / "out").string();
  const auto run_all = [&](const std::string& threads) {
    fs::remove_all(out);
    const std::vector<std::string> common{"-i", data, "--out", out, "--seed", "11",
                                          "--surrogates", "3", "--bins", "4", "--threads", threads,
                                          "--format", "json,csv,csv_long,dot,svg_heatmap",
                                          "--generated-at", "2026-01-01T00:00:00Z"};
    std::vector<std::string> analyze{"analyze"}, evolve{"evolve", "--windows", "5"}, stats{"stats"};
    for (auto* v : {&analyze, &evolve, &stats}) v->insert(v->end(), common.begin(), common.end());
    int rc = cli(analyze) | cli(evolve) | cli(stats);
    if (rc != 0) return std::map<std::string, std::string>{};
    return snapshot(out);
  };
  const auto first = run_all("1");
  const auto second = run_all("1");
  const auto threaded = run_all("4");
  if (first.empty()) return {Outcome::fail, "CLI run failed: " + sink.str()};
  const bool ok = first == second && first == threaded;
  return verdict(ok, std::to_string(first.size()) + " files compared across 2 runs and 1/4 threads" +
                         (ok ? "" : "; outputs differ"));
}

// 9
Result invariants() {
  Rng rng(9);
  std::vector<std::string> failures;
  const auto check = [&](bool cond, const std::string& what) {
    if (!cond) failures.push_back(what);
  };
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 10 + rng.below(200);
    const int b = 2 + static_cast<int>(rng.below(4));
    std::vector<int> x(n), y(n);
    for (auto& v : x) v = static_cast<int>(rng.below(static_cast<std::uint64_t>(b)));
    for (auto& v : y) v = static_cast<int>(rng.below(static_cast<std::uint64_t>(b)));
    const auto sx = make_symbols(x, b), sy = make_symbols(y, b);
    const double mxy = mutual_information(sx, sy);
    check(mxy == mutual_information(sy, sx), "MI symmetry");
    check(mxy >= 0.0, "MI non-negativity");
    check(transfer_entropy(sx, sy) >= 0.0 && transfer_entropy(sy, sx) >= 0.0, "TE non-negativity");

    const std::vector<SymbolSequence> seqs{sx, sy, sx};
    const std::vector<std::size_t> lags{1, 0, 0};
    const auto h = joint_histogram(seqs, lags);
    for (std::size_t axis = 0; axis < 3; ++axis) {
      const std::vector<std::size_t> keep{axis};
      const auto m = h.marginal(keep);
      std::vector<std::uint64_t> direct(static_cast<std::size_t>(b), 0);
      const auto& src = axis == 1 ? y : x;
      for (std::size_t t = 0; t + 1 < n; ++t) direct[static_cast<std::size_t>(src[t + lags[axis]])]++;
      for (int s = 0; s < b; ++s)
        check(m.at(std::vector<int>{s}) == direct[static_cast<std::size_t>(s)],
              "histogram marginalization");
    }
  }
  for (std::size_t T = 1; T <= 80; ++T)
    for (std::size_t K = 1; K <= T; K += 1 + K / 4) {
      const auto w = make_windows(T, WindowSpec::segmented(K));
      std::size_t covered = 0;
      bool contiguous = w.front().begin == 0 && w.back().end == T;
      for (std::size_t k = 0; k < w.size(); ++k) {
        covered += w[k].size();
        if (k && w[k].begin != w[k - 1].end) contiguous = false;
      }
      check(contiguous && covered == T && w.size() == K, "windows partition");
    }
  {
    const Matrix base = gen_var1(Matrix{{0.5, 0.2}, {0.1, 0.6}}, 1.0, 5000, 3);
    Matrix scaled = base;
    const double s[2] = {13.0, 0.002};
    for (std::size_t t = 0; t < base.rows(); ++t)
      for (std::size_t c = 0; c < 2; ++c) scaled(t, c) *= s[c];
    const auto a0 = estimate_drift(make_returns(base)).A;
    const auto a1 = estimate_drift(make_returns(scaled)).A;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        check(std::abs(a1(i, j) - s[i] * a0(i, j) / s[j]) <= 1e-9 * (1 + s[i] / s[j]),
              "KM scale-equivariance");
  }
  {
    InteractionMatrix m;
    m.asset_ids = {"a", "b", "c"};
    m.values = Matrix(3, 3);
    for (auto& v : m.values.data()) v = rng.normal() / 7.0;
    m.measure = Measure::transfer_entropy;
    m.directed = true;
    m.units = Units::bits;
    const auto j = matrix_from_json(nlohmann::json::parse(to_json(m).dump()));
    const auto c = matrix_from_csv_wide(to_csv_wide(m), m.measure, true, m.units);
    check(max_abs_diff(j.values, m.values) <= 1e-12 && max_abs_diff(c.values, m.values) <= 1e-12,
          "serialization round-trip");
  }
  std::sort(failures.begin(), failures.end());
  failures.erase(std::unique(failures.begin(), failures.end()), failures.end());
  std::string detail = failures.empty() ? "MI symmetry/non-negativity, TE non-negativity, "
                                          "marginalization, windows partition, KM scale-equivariance, "
                                          "JSON/CSV round-trips"
                                        : "violated: ";
  for (const auto& f : failures) detail += f + "; ";
  return verdict(failures.empty(), detail);
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    bool blocking;
    std::function<Result()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "TE directional-coupling oracle", true, te_coupling_oracle},
      {2, "TE null floor", true, te_null_floor},
      {3, "KM drift recovery", true, km_drift_recovery},
      {4, "KM white-noise identity", true, km_white_noise},
      {5, "Plug-in equivalence", true, plug_in_equivalence},
      {6, "Regime-shift detection", true, regime_shift_detection},
      {7, "Market panel statistics (optional)", false, market_panel},
      {8, "Determinism", true, determinism},
      {9, "Invariant suite", true, invariants},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {Outcome::fail, std::string("exception: ") + e.what()};
    }
    const char* tag = r.outcome == Outcome::pass ? "PASS" : r.outcome == Outcome::skip ? "SKIP" : "FAIL";
    std::printf("[%s] %d. %s: %s\n", tag, c.id, c.name, r.detail.c_str());
    std::fflush(stdout);
    if (r.outcome == Outcome::fail && c.blocking) ++failed;
  }
  std::printf("%d blocking criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
