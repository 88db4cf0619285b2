#include "run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "finnet/error.hpp"

namespace finnet::cli {

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw Error(Errc::invalid_argument, "config field '" + field + "': " + why);
}

template <class T>
void read(const nlohmann::json& doc, const char* key, T& into, const std::string& prefix = "") {
  if (!doc.contains(key)) return;
  try {
    into = doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    bad_field(prefix + key, e.what());
  }
}

void reject_unknown(const nlohmann::json& doc, const std::set<std::string>& known,
                    const std::string& prefix) {
  for (const auto& [key, _] : doc.items())
    if (!known.contains(key)) bad_field(prefix + key, "unknown key");
}

}  // namespace

nlohmann::json to_json(const RunConfig& c) {
  const auto& s = c.simulate;
  return {
      {"config_version", kConfigVersion},
      {"inputs", c.inputs},
      {"endpoint", c.endpoint},
      {"assets", c.assets},
      {"start", c.start},
      {"end", c.end},
      {"cache_dir", c.cache_dir},
      {"date_column", c.date_column},
      {"price_column", c.price_column},
      {"return_kind", c.return_kind},
      {"bins", c.bins},
      {"strategy", c.strategy},
      {"dt", c.dt},
      {"step", c.step},
      {"surrogates", c.surrogates},
      {"center", c.center},
      {"ridge", c.ridge},
      {"windows", c.windows},
      {"measures", c.measures},
      {"threshold", c.threshold},
      {"keep_self", c.keep_self},
      {"formats", c.formats},
      {"out", c.out},
      {"seed", c.seed},
      {"generated_at", c.generated_at},
      {"simulate",
       {{"kind", s.kind},
        {"a", s.a},
        {"sigma", s.sigma},
        {"dt_sim", s.dt_sim},
        {"flip", s.flip},
        {"flip_before", s.flip_before},
        {"shift_at", s.shift_at},
        {"steps", s.steps},
        {"price_scale", s.price_scale},
        {"start_date", s.start_date},
        {"asset_names", s.asset_names}}},
  };
}

RunConfig config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) bad_field("<root>", "config must be a JSON object");
  reject_unknown(doc,
                 {"config_version", "inputs", "endpoint", "assets", "start", "end", "cache_dir",
                  "date_column", "price_column", "return_kind", "bins", "strategy", "dt", "step",
                  "surrogates", "center", "ridge", "windows", "measures", "threshold",
                  "keep_self", "formats", "out", "seed", "generated_at", "simulate"},
                 "");
  int version = kConfigVersion;
  read(doc, "config_version", version);
  if (version != kConfigVersion)
    bad_field("config_version", "unsupported version " + std::to_string(version));

  RunConfig c;
  read(doc, "inputs", c.inputs);
  read(doc, "endpoint", c.endpoint);
  read(doc, "assets", c.assets);
  read(doc, "start", c.start);
  read(doc, "end", c.end);
  read(doc, "cache_dir", c.cache_dir);
  read(doc, "date_column", c.date_column);
  read(doc, "price_column", c.price_column);
  read(doc, "return_kind", c.return_kind);
  read(doc, "bins", c.bins);
  read(doc, "strategy", c.strategy);
  read(doc, "dt", c.dt);
  read(doc, "step", c.step);
  read(doc, "surrogates", c.surrogates);
  read(doc, "center", c.center);
  read(doc, "ridge", c.ridge);
  read(doc, "windows", c.windows);
  read(doc, "measures", c.measures);
  read(doc, "threshold", c.threshold);
  read(doc, "keep_self", c.keep_self);
  read(doc, "formats", c.formats);
  read(doc, "out", c.out);
  read(doc, "seed", c.seed);
  read(doc, "generated_at", c.generated_at);
  if (doc.contains("simulate")) {
    const auto& sd = doc.at("simulate");
    if (!sd.is_object()) bad_field("simulate", "must be an object");
    reject_unknown(sd,
                   {"kind", "a", "sigma", "dt_sim", "flip", "flip_before", "shift_at", "steps",
                    "price_scale", "start_date", "asset_names"},
                   "simulate.");
    auto& s = c.simulate;
    const std::string p = "simulate.";
    read(sd, "kind", s.kind, p);
    read(sd, "a", s.a, p);
    read(sd, "sigma", s.sigma, p);
    read(sd, "dt_sim", s.dt_sim, p);
    read(sd, "flip", s.flip, p);
    read(sd, "flip_before", s.flip_before, p);
    read(sd, "shift_at", s.shift_at, p);
    read(sd, "steps", s.steps, p);
    read(sd, "price_scale", s.price_scale, p);
    read(sd, "start_date", s.start_date, p);
    read(sd, "asset_names", s.asset_names, p);
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::invalid_argument, "config field 'config': cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::invalid_argument,
                "config field 'config': '" + path + "' is not JSON: " + e.what());
  }
  // Output documents carry the run's config under "config".
  if (doc.is_object() && doc.contains("schema_version") && doc.contains("config"))
    return config_from_json(doc.at("config"));
  return config_from_json(doc);
}

ReturnKind return_kind_of(const RunConfig& c) {
  if (auto k = parse_return_kind(c.return_kind)) return *k;
  bad_field("return_kind", "expected 'log' or 'simple', got '" + c.return_kind + "'");
}

BinStrategy strategy_of(const RunConfig& c) {
  if (auto s = parse_bin_strategy(c.strategy)) return *s;
  bad_field("strategy", "expected 'quantile' or 'equal_width', got '" + c.strategy + "'");
}

WindowSpec window_spec_of(const RunConfig& c) {
  const auto spec = parse_window_spec(c.windows);
  if (!spec) bad_field("windows", "expected K, segmented:K or sliding:LENGTH:STRIDE");
  if (spec->mode == WindowSpec::Mode::segmented && spec->segments == 0)
    bad_field("windows", "segment count must be >= 1");
  if (spec->mode == WindowSpec::Mode::sliding && (spec->length == 0 || spec->stride == 0))
    bad_field("windows", "sliding length and stride must be >= 1");
  return *spec;
}

std::vector<Measure> measures_of(const RunConfig& c) {
  if (c.measures.empty()) bad_field("measures", "at least one measure is required");
  std::vector<Measure> out;
  for (const auto& name : c.measures) {
    const auto m = parse_measure(name);
    if (!m) bad_field("measures", "unknown measure '" + name + "'");
    if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
  }
  return out;
}

std::vector<Format> formats_of(const RunConfig& c) {
  if (c.formats.empty()) bad_field("formats", "at least one format is required");
  std::vector<Format> out;
  for (const auto& name : c.formats) {
    const auto f = parse_format(name);
    if (!f) bad_field("formats", "unknown format '" + name + "'");
    if (std::find(out.begin(), out.end(), *f) == out.end()) out.push_back(*f);
  }
  return out;
}

EstimatorParams estimator_params_of(const RunConfig& c, unsigned threads) {
  if (c.bins < 2) bad_field("bins", "must be >= 2");
  if (c.dt < 1) bad_field("dt", "must be >= 1");
  if (!(c.step > 0.0)) bad_field("step", "must be > 0");
  if (!(c.ridge >= 0.0)) bad_field("ridge", "must be >= 0");
  EstimatorParams p;
  p.bins = c.bins;
  p.strategy = strategy_of(c);
  p.dt = c.dt;
  p.step = c.step;
  p.surrogates = c.surrogates;
  p.seed = c.seed;
  p.center = c.center;
  p.ridge = c.ridge;
  p.threads = threads;
  return p;
}

CsvSchema schema_of(const RunConfig& c) {
  if (c.date_column.empty()) bad_field("date_column", "must not be empty");
  if (c.price_column.empty()) bad_field("price_column", "must not be empty");
  return {c.date_column, c.price_column};
}

ProcessSpec process_spec_of(const RunConfig& c) {
  const auto& s = c.simulate;
  ProcessSpec spec;
  const auto kind = parse_process_kind(s.kind);
  if (!kind) bad_field("simulate.kind", "unknown process kind '" + s.kind + "'");
  spec.kind = *kind;
  if (spec.kind == ProcessSpec::Kind::var1 || spec.kind == ProcessSpec::Kind::ou_euler) {
    if (s.a.empty()) bad_field("simulate.a", "coefficient matrix required");
    spec.a = Matrix(s.a.size(), s.a.size());
    for (std::size_t i = 0; i < s.a.size(); ++i) {
      if (s.a[i].size() != s.a.size()) bad_field("simulate.a", "matrix must be square");
      for (std::size_t j = 0; j < s.a.size(); ++j) spec.a(i, j) = s.a[i][j];
    }
  }
  spec.sigma = s.sigma;
  spec.dt_sim = s.dt_sim;
  spec.flip = s.flip;
  spec.flip_before = s.flip_before;
  spec.shift_at = s.shift_at;
  spec.steps = s.steps;
  spec.seed = c.seed;
  if (spec.steps < 2) bad_field("simulate.steps", "must be >= 2");
  return spec;
}

}  // namespace finnet::cli
