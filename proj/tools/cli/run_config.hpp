#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "finnet/estimate.hpp"
#include "finnet/ingest.hpp"
#include "finnet/netout.hpp"
#include "finnet/stats.hpp"
#include "finnet/synth.hpp"
#include "finnet/windows.hpp"

namespace finnet::cli {

inline constexpr int kConfigVersion = 1;

struct SimulationConfig {
  std::string kind = "ou_euler";
  std::vector<std::vector<double>> a = {{-0.5, 0.2}, {0.0, -0.3}};
  double sigma = 0.1;
  double dt_sim = 0.01;
  double flip = 0.1;
  double flip_before = 0.5;
  std::size_t shift_at = 0;
  std::size_t steps = 5000;
  /// Log-price increment per unit of state; prices are 100·exp(scale·Σx).
  double price_scale = 1.0;
  std::string start_date = "2000-01-01";
  std::vector<std::string> asset_names;
};

/// Everything that determines a run's outputs. Serialises to JSON and is
/// embedded in every file the run writes.
struct RunConfig {
  std::vector<std::string> inputs;

  std::string endpoint;
  std::vector<std::string> assets;
  std::string start;
  std::string end;
  std::string cache_dir;

  std::string date_column = "Date";
  std::string price_column = "Adj Close";
  std::string return_kind = "log";

  int bins = 8;
  std::string strategy = "quantile";
  std::size_t dt = 1;
  double step = 1.0;
  std::size_t surrogates = 0;
  bool center = true;
  double ridge = 0.0;

  std::string windows = "segmented:10";
  std::vector<std::string> measures = {"correlation", "mutual_information", "transfer_entropy",
                                       "km_drift"};
  double threshold = 0.0;
  bool keep_self = false;
  std::vector<std::string> formats = {"json", "csv", "dot", "svg_heatmap"};

  std::string out = "out";
  std::uint64_t seed = 0;
  std::string generated_at;

  SimulationConfig simulate;
};

nlohmann::json to_json(const RunConfig& c);
/// Missing keys keep their defaults; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& doc);
/// Reads a config file, or the `config` object embedded in any output file.
RunConfig load_config(const std::string& path);

/// Validation helpers; each throws Error(invalid_argument) naming the field.
ReturnKind return_kind_of(const RunConfig& c);
BinStrategy strategy_of(const RunConfig& c);
WindowSpec window_spec_of(const RunConfig& c);
std::vector<Measure> measures_of(const RunConfig& c);
std::vector<Format> formats_of(const RunConfig& c);
EstimatorParams estimator_params_of(const RunConfig& c, unsigned threads);
CsvSchema schema_of(const RunConfig& c);
ProcessSpec process_spec_of(const RunConfig& c);

}  // namespace finnet::cli
