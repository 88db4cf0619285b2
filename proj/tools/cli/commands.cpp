#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "finnet/error.hpp"
#include "finnet/ingest.hpp"
#include "finnet/netout.hpp"
#include "finnet/stats.hpp"
#include "finnet/synth.hpp"
#include "finnet/windows.hpp"

namespace fs = std::filesystem;

namespace finnet::cli {

namespace {

void log(const Context& ctx, const std::string& msg) { ctx.err << "finnet: " << msg << '\n'; }

int exit_code_for(const Error& e) { return is_validation_error(e.code()) ? kValidation : kRuntime; }

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

OutputContext output_context(RunConfig& config) {
  if (config.generated_at.empty()) config.generated_at = utc_now();
  return {to_json(config), config.generated_at};
}

Date require_date(const std::string& text, const std::string& field) {
  const auto d = parse_date(text);
  if (!d) throw Error(Errc::invalid_argument, "config field '" + field + "': '" + text +
                                                  "' is not YYYY-MM-DD");
  return *d;
}

void prepare_out_dir(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.out, ec);
  if (ec || !fs::is_directory(config.out))
    throw Error(Errc::invalid_argument,
                "config field 'out': cannot create directory '" + config.out + "'");
}

std::vector<PriceSeries> fetch_all(const RunConfig& config) {
  if (config.assets.empty())
    throw Error(Errc::invalid_argument, "config field 'assets': endpoint requires assets");
  FetchRequest req;
  req.url_template = config.endpoint;
  req.start = require_date(config.start, "start");
  req.end = require_date(config.end, "end");
  req.schema = schema_of(config);
  if (!config.cache_dir.empty()) req.cache_dir = config.cache_dir;
  std::vector<PriceSeries> out;
  for (const auto& asset : config.assets) {
    req.asset_id = asset;
    out.push_back(fetch_remote(req));
  }
  return out;
}

std::vector<PriceSeries> load_inputs(const RunConfig& config, const Context& ctx) {
  const auto schema = schema_of(config);
  std::vector<fs::path> files;
  for (const auto& input : config.inputs) {
    const fs::path p(input);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(p))
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
          found.push_back(entry.path());
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(p)) {
      files.push_back(p);
    } else {
      throw Error(Errc::invalid_argument, "config field 'inputs': '" + input + "' does not exist");
    }
  }
  std::vector<PriceSeries> series;
  for (const auto& f : files) {
    log(ctx, "reading " + f.string());
    series.push_back(load_csv(f, schema));
  }
  if (!config.endpoint.empty()) {
    auto remote = fetch_all(config);
    series.insert(series.end(), std::make_move_iterator(remote.begin()),
                  std::make_move_iterator(remote.end()));
  }
  if (series.empty()) throw Error(Errc::invalid_argument, "config field 'inputs': no input series");
  return series;
}

ReturnsMatrix load_returns(const RunConfig& config, const Context& ctx) {
  const auto series = load_inputs(config, ctx);
  const auto panel = align(series);
  log(ctx, "aligned panel: " + std::to_string(panel.assets()) + " assets x " +
               std::to_string(panel.samples()) + " dates");
  return compute_returns(panel, return_kind_of(config));
}

using FileSet = std::vector<std::pair<fs::path, std::string>>;

// Writes every file or none of them.
void write_all(const FileSet& files) {
  std::vector<fs::path> written;
  try {
    for (const auto& [path, bytes] : files) {
      write_file(path, bytes);
      written.push_back(path);
    }
  } catch (...) {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    throw;
  }
}

template <class Body>
int guarded(const Context& ctx, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    log(ctx, e.what());
    return exit_code_for(e);
  }
}

}  // namespace

int cmd_stats(RunConfig config, const Context& ctx) {
  return guarded(ctx, [&] {
    const auto returns = load_returns(config, ctx);
    prepare_out_dir(config);
    const auto octx = output_context(config);
    StatsSummary summary;
    try {
      summary = describe(returns);
    } catch (const Error& e) {
      log(ctx, std::string("stats failed: ") + e.what());
      return exit_code_for(e);
    }
    const fs::path out(config.out);
    write_all({{out / "stats.csv", to_csv(summary, octx)},
               {out / "stats.json", to_json(summary, octx).dump(2) + "\n"}});
    log(ctx, "wrote " + (out / "stats.csv").string());
    return int{kOk};
  });
}

int cmd_analyze(RunConfig config, const Context& ctx) {
  return guarded(ctx, [&] {
    const auto measures = measures_of(config);
    const auto formats = formats_of(config);
    const auto params = estimator_params_of(config, ctx.threads);
    if (!(config.threshold >= 0.0))
      throw Error(Errc::invalid_argument, "config field 'threshold': must be >= 0");
    const auto returns = load_returns(config, ctx);
    prepare_out_dir(config);
    const auto octx = output_context(config);
    const fs::path out(config.out);

    int status = kOk;
    for (const auto measure : measures) {
      const std::string name(measure_name(measure));
      try {
        const auto m = estimate(returns, measure, params);
        FileSet files;
        for (const auto f : formats) {
          const auto path = out / (name + std::string(format_extension(f)));
          if (f == Format::dot)
            files.emplace_back(path, to_dot(matrix_to_graph(m, config.threshold, config.keep_self), octx));
          else
            files.emplace_back(path, render(m, f, octx));
        }
        write_all(files);
        log(ctx, name + ": wrote " + std::to_string(files.size()) + " files");
      } catch (const Error& e) {
        log(ctx, name + " failed: " + e.what());
        status = std::max(status, exit_code_for(e) == kValidation ? int{kValidation} : int{kRuntime});
      }
    }
    return status;
  });
}

int cmd_evolve(RunConfig config, const Context& ctx) {
  return guarded(ctx, [&] {
    const auto measures = measures_of(config);
    const auto formats = formats_of(config);
    const auto params = estimator_params_of(config, ctx.threads);
    const auto spec = window_spec_of(config);
    const auto returns = load_returns(config, ctx);
    const auto ranges = make_windows(returns.samples(), spec);  // WindowTooLarge → 2
    log(ctx, std::to_string(ranges.size()) + " windows (" + format_window_spec(spec) + ")");
    prepare_out_dir(config);
    const auto octx = output_context(config);
    const fs::path out(config.out);

    int status = kOk;
    for (const auto measure : measures) {
      const std::string name(measure_name(measure));
      try {
        const auto result = evolve(returns, spec, measure, params);
        FileSet files;
        bool csv_done = false;
        for (const auto f : formats) {
          if (f == Format::dot) continue;
          if (f == Format::csv || f == Format::csv_long) {
            if (csv_done) continue;
            csv_done = true;
            files.emplace_back(out / (name + "_evolution.csv"), to_csv_long(result, octx));
            continue;
          }
          files.emplace_back(out / (name + "_evolution" + std::string(format_extension(f))),
                             render(result, f, octx));
        }
        write_all(files);
        log(ctx, name + ": wrote " + std::to_string(files.size()) + " files");
      } catch (const Error& e) {
        log(ctx, name + " failed: " + e.what());
        status = std::max(status, exit_code_for(e) == kValidation ? int{kValidation} : int{kRuntime});
      }
    }
    return status;
  });
}

int cmd_simulate(RunConfig config, const Context& ctx) {
  return guarded(ctx, [&] {
    const auto spec = process_spec_of(config);
    const auto start = require_date(config.simulate.start_date, "simulate.start_date");
    if (!(config.simulate.price_scale > 0.0))
      throw Error(Errc::invalid_argument, "config field 'simulate.price_scale': must be > 0");
    const Matrix states = generate(spec);

    auto names = config.simulate.asset_names;
    if (names.empty())
      for (std::size_t n = 0; n < states.cols(); ++n) names.push_back("x" + std::to_string(n));
    if (names.size() != states.cols())
      throw Error(Errc::invalid_argument, "config field 'simulate.asset_names': expected " +
                                              std::to_string(states.cols()) + " names");

    prepare_out_dir(config);
    const auto octx = output_context(config);
    const auto schema = schema_of(config);
    const fs::path out(config.out);
    FileSet files;
    for (std::size_t n = 0; n < states.cols(); ++n) {
      // Prices whose log returns reproduce scale·x row by row.
      PriceSeries series{names[n], {}};
      double log_price = std::log(100.0);
      series.observations.push_back({start, 100.0});
      for (std::size_t t = 0; t < states.rows(); ++t) {
        log_price += config.simulate.price_scale * states(t, n);
        const double price = std::exp(log_price);
        if (!std::isfinite(price) || !(price > 0.0))
          throw Error(Errc::invalid_argument,
                      "config field 'simulate.price_scale': price path of '" + names[n] +
                          "' leaves the double range; lower steps or price_scale");
        series.observations.push_back({add_days(start, static_cast<long long>(t) + 1), price});
      }
      files.emplace_back(out / (names[n] + ".csv"), to_csv(series, schema));
    }
    nlohmann::json meta = {{"kind", "simulation"},
                           {"schema_version", kSchemaVersion},
                           {"generated_at", octx.generated_at},
                           {"config", octx.config},
                           {"process", std::string(process_kind_name(spec.kind))},
                           {"assets", names},
                           {"rows", states.rows()}};
    if (spec.kind == ProcessSpec::Kind::coupled_binary)
      meta["analytic_te_bits"] = 1.0 - binary_entropy(spec.flip);
    if (spec.kind == ProcessSpec::Kind::regime_shift)
      meta["analytic_te_bits"] = {{"before", 1.0 - binary_entropy(spec.flip_before)},
                                  {"after", 1.0 - binary_entropy(spec.flip)}};
    files.emplace_back(out / "simulation.json", meta.dump(2) + "\n");
    write_all(files);
    log(ctx, "wrote " + std::to_string(states.cols()) + " simulated series to " + config.out);
    return int{kOk};
  });
}

int cmd_fetch(RunConfig config, const Context& ctx) {
  return guarded(ctx, [&] {
    if (config.endpoint.empty())
      throw Error(Errc::invalid_argument, "config field 'endpoint': required for fetch");
    const auto series = fetch_all(config);
    prepare_out_dir(config);
    const auto schema = schema_of(config);
    FileSet files;
    for (const auto& s : series)
      files.emplace_back(fs::path(config.out) / (s.asset_id + ".csv"), to_csv(s, schema));
    write_all(files);
    log(ctx, "fetched " + std::to_string(series.size()) + " series into " + config.out);
    return int{kOk};
  });
}

// ---------------------------------------------------------------- parsing

namespace {

struct Overrides {
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> appliers;

  template <class T>
  CLI::Option* add(CLI::App& app, const std::string& name, const std::string& help,
                   std::function<void(RunConfig&, const T&)> apply) {
    auto value = std::make_shared<T>();
    auto* opt = app.add_option(name, *value, help);
    appliers.emplace_back(opt, [value, apply](RunConfig& c) { apply(c, *value); });
    return opt;
  }

  CLI::Option* flag(CLI::App& app, const std::string& name, const std::string& help,
                    std::function<void(RunConfig&)> apply) {
    auto* opt = app.add_flag(name, help);
    appliers.emplace_back(opt, std::move(apply));
    return opt;
  }

  void apply(RunConfig& c) const {
    for (const auto& [opt, fn] : appliers)
      if (opt->count() > 0) fn(c);
  }
};

using Strings = std::vector<std::string>;

struct Subcommand {
  CLI::App* app = nullptr;
  Overrides overrides;
  std::string config_path;
  unsigned threads = 1;
};

void add_common(Subcommand& s) {
  auto& app = *s.app;
  auto& o = s.overrides;
  app.add_option("--config", s.config_path,
                 "JSON run configuration (or any output file embedding one)");
  app.add_option("--threads", s.threads, "worker threads (does not affect results)")
      ->check(CLI::Range(1u, 1024u));
  o.add<Strings>(app, "inputs,--input,-i", "price CSV files or directories",
                 [](RunConfig& c, const Strings& v) { c.inputs = v; });
  o.add<std::string>(app, "--out,-o", "output directory",
                     [](RunConfig& c, const std::string& v) { c.out = v; });
  o.add<Strings>(app, "--format", "output formats: json,csv,csv_long,dot,svg_heatmap",
                 [](RunConfig& c, const Strings& v) { c.formats = v; })
      ->delimiter(',');
  o.add<std::uint64_t>(app, "--seed", "seed for surrogates and simulation",
                       [](RunConfig& c, const std::uint64_t& v) { c.seed = v; });
  o.add<int>(app, "--bins", "bins per series for MI/TE",
             [](RunConfig& c, const int& v) { c.bins = v; });
  o.add<std::string>(app, "--strategy", "binning: quantile | equal_width",
                     [](RunConfig& c, const std::string& v) { c.strategy = v; });
  o.add<std::string>(app, "--return-kind", "returns: log | simple",
                     [](RunConfig& c, const std::string& v) { c.return_kind = v; });
  o.add<std::size_t>(app, "--dt", "lag in rows for TE and drift",
                     [](RunConfig& c, const std::size_t& v) { c.dt = v; });
  o.add<double>(app, "--step", "time per row for the drift rate",
                [](RunConfig& c, const double& v) { c.step = v; });
  o.add<std::string>(app, "--windows", "K | segmented:K | sliding:LENGTH:STRIDE",
                     [](RunConfig& c, const std::string& v) { c.windows = v; });
  o.add<double>(app, "--threshold", "minimum |weight| for graph edges",
                [](RunConfig& c, const double& v) { c.threshold = v; });
  o.add<Strings>(app, "--measures,-m", "correlation,mutual_information,transfer_entropy,km_drift",
                 [](RunConfig& c, const Strings& v) { c.measures = v; })
      ->delimiter(',');
  o.add<std::size_t>(app, "--surrogates", "shuffled-source surrogates per TE pair",
                     [](RunConfig& c, const std::size_t& v) { c.surrogates = v; });
  o.add<double>(app, "--ridge", "Tikhonov term for the drift moment matrix",
                [](RunConfig& c, const double& v) { c.ridge = v; });
  o.flag(app, "--no-center", "do not mean-centre series before drift estimation",
         [](RunConfig& c) { c.center = false; });
  o.flag(app, "--keep-self", "keep self-loops in graphs", [](RunConfig& c) { c.keep_self = true; });
  o.add<std::string>(app, "--date-column", "CSV date column",
                     [](RunConfig& c, const std::string& v) { c.date_column = v; });
  o.add<std::string>(app, "--price-column", "CSV price column",
                     [](RunConfig& c, const std::string& v) { c.price_column = v; });
  o.add<std::string>(app, "--generated-at", "timestamp recorded in outputs",
                     [](RunConfig& c, const std::string& v) { c.generated_at = v; });
  o.add<std::string>(app, "--endpoint", "URL template with {asset} {start} {end}",
                     [](RunConfig& c, const std::string& v) { c.endpoint = v; });
  o.add<Strings>(app, "--assets", "asset ids to fetch",
                 [](RunConfig& c, const Strings& v) { c.assets = v; })
      ->delimiter(',');
  o.add<std::string>(app, "--start", "first date (YYYY-MM-DD)",
                     [](RunConfig& c, const std::string& v) { c.start = v; });
  o.add<std::string>(app, "--end", "last date (YYYY-MM-DD)",
                     [](RunConfig& c, const std::string& v) { c.end = v; });
  o.add<std::string>(app, "--cache-dir", "cache directory for fetched payloads",
                     [](RunConfig& c, const std::string& v) { c.cache_dir = v; });
}

void add_simulation(Subcommand& s) {
  auto& app = *s.app;
  auto& o = s.overrides;
  o.add<std::string>(app, "--kind", "coupled_binary | var1 | ou_euler | regime_shift",
                     [](RunConfig& c, const std::string& v) { c.simulate.kind = v; });
  o.add<std::string>(app, "--a", "coefficient matrix as JSON, e.g. [[-0.5,0.2],[0,-0.3]]",
                     [](RunConfig& c, const std::string& v) {
                       try {
                         c.simulate.a = nlohmann::json::parse(v).get<std::vector<std::vector<double>>>();
                       } catch (const nlohmann::json::exception&) {
                         throw Error(Errc::invalid_argument,
                                     "config field 'simulate.a': not a JSON matrix");
                       }
                     });
  o.add<double>(app, "--sigma", "noise scale",
                [](RunConfig& c, const double& v) { c.simulate.sigma = v; });
  o.add<double>(app, "--dt-sim", "Euler–Maruyama step",
                [](RunConfig& c, const double& v) { c.simulate.dt_sim = v; });
  o.add<double>(app, "--flip", "flip probability (after the shift for regime_shift)",
                [](RunConfig& c, const double& v) { c.simulate.flip = v; });
  o.add<double>(app, "--flip-before", "regime_shift flip probability before the shift",
                [](RunConfig& c, const double& v) { c.simulate.flip_before = v; });
  o.add<std::size_t>(app, "--shift-at", "regime_shift row (default steps/2)",
                     [](RunConfig& c, const std::size_t& v) { c.simulate.shift_at = v; });
  o.add<std::size_t>(app, "--steps", "rows to generate",
                     [](RunConfig& c, const std::size_t& v) { c.simulate.steps = v; });
  o.add<double>(app, "--price-scale", "log-price change per unit of state",
                [](RunConfig& c, const double& v) { c.simulate.price_scale = v; });
  o.add<std::string>(app, "--start-date", "date of the first simulated price",
                     [](RunConfig& c, const std::string& v) { c.simulate.start_date = v; });
  o.add<Strings>(app, "--names", "asset names for the generated columns",
                 [](RunConfig& c, const Strings& v) { c.simulate.asset_names = v; })
      ->delimiter(',');
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finnet: pairwise interaction networks for financial time series", "finnet"};
  app.require_subcommand(1);

  using Handler = int (*)(RunConfig, const Context&);
  const std::vector<std::tuple<std::string, std::string, Handler>> table = {
      {"stats", "descriptive statistics of returns", &cmd_stats},
      {"analyze", "full-sample interaction matrices, graphs and heatmaps", &cmd_analyze},
      {"evolve", "windowed interaction matrices and evolution heatmaps", &cmd_evolve},
      {"simulate", "write a synthetic panel as price CSVs", &cmd_simulate},
      {"fetch", "download price series from an HTTP endpoint", &cmd_fetch},
  };
  std::vector<Subcommand> subs(table.size());
  for (std::size_t k = 0; k < table.size(); ++k) {
    subs[k].app = app.add_subcommand(std::get<0>(table[k]), std::get<1>(table[k]));
    add_common(subs[k]);
    if (std::get<0>(table[k]) == "simulate") add_simulation(subs[k]);
  }

  std::vector<const char*> argv{"finnet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "finnet: " << e.what() << '\n';
    return kValidation;
  }

  for (std::size_t k = 0; k < table.size(); ++k) {
    auto& s = subs[k];
    if (!s.app->parsed()) continue;
    const Context ctx{out, err, s.threads};
    try {
      RunConfig config = s.config_path.empty() ? RunConfig{} : load_config(s.config_path);
      s.overrides.apply(config);
      return std::get<2>(table[k])(std::move(config), ctx);
    } catch (const Error& e) {
      err << "finnet: " << e.what() << '\n';
      return exit_code_for(e);
    }
  }
  return kValidation;
}

}  // namespace finnet::cli
