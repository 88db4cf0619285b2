#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "finnet/interaction_matrix.hpp"
#include "finnet/kmdrift.hpp"
#include "finnet/stats.hpp"
#include "finnet/windows.hpp"

namespace finnet {

inline constexpr int kSchemaVersion = 1;

struct Edge {
  std::string from;
  std::string to;
  double weight = 0.0;
};

struct InteractionGraph {
  std::vector<std::string> nodes;
  std::vector<Edge> edges;
  bool directed = false;
  double threshold = 0.0;
};

/// Keeps every entry with |value| ≥ threshold as an edge j → i (the
/// column asset influences the row asset). Undirected matrices emit each
/// unordered pair once from the upper triangle. Self-loops only when
/// `keep_self`.
InteractionGraph matrix_to_graph(const InteractionMatrix& m, double threshold,
                                 bool keep_self = false);

/// Document-level fields written into every file: the run configuration
/// and the generation timestamp. Both are caller-supplied so output bytes
/// are a pure function of the inputs.
struct OutputContext {
  nlohmann::json config = nlohmann::json::object();
  std::string generated_at = "1970-01-01T00:00:00Z";
};

// JSON (schema v1)
nlohmann::json to_json(const InteractionMatrix& m, const OutputContext& ctx = {});
nlohmann::json to_json(const InteractionGraph& g, const OutputContext& ctx = {});
nlohmann::json to_json(const WindowedResult& w, const OutputContext& ctx = {});
nlohmann::json to_json(const DriftEstimate& d, const OutputContext& ctx = {});
nlohmann::json to_json(const StatsSummary& s, const OutputContext& ctx = {});
InteractionMatrix matrix_from_json(const nlohmann::json& doc);
WindowedResult windowed_from_json(const nlohmann::json& doc);

/// Shortest decimal text that parses back to the same double.
std::string format_real(double v);

// CSV. Lines starting with '#' carry metadata and are skipped by readers.
std::string to_csv_wide(const InteractionMatrix& m, const OutputContext& ctx = {});
std::string to_csv_long(const InteractionMatrix& m, const OutputContext& ctx = {});
std::string to_csv_long(const WindowedResult& w, const OutputContext& ctx = {});
std::string to_csv(const StatsSummary& s, const OutputContext& ctx = {});
/// Inverse of to_csv_wide; measure, units and direction are not stored in
/// the wide layout and are taken from the arguments.
InteractionMatrix matrix_from_csv_wide(std::string_view text, Measure measure, bool directed,
                                       Units units);

// DOT
std::string to_dot(const InteractionGraph& g, const OutputContext& ctx = {});

// SVG heatmaps
std::string to_svg_heatmap(const InteractionMatrix& m, const OutputContext& ctx = {});
/// Rows are asset pairs (ordered pairs for directed measures), columns are
/// windows in time order.
std::string to_svg_heatmap(const WindowedResult& w, const OutputContext& ctx = {});

enum class Format { json, csv, csv_long, dot, svg_heatmap };

std::string_view format_name(Format f) noexcept;
std::optional<Format> parse_format(std::string_view name) noexcept;
std::string_view format_extension(Format f) noexcept;

using Emittable = std::variant<InteractionMatrix, InteractionGraph, WindowedResult>;

/// Renders `item` in `format`; throws UnsupportedFormatForShape for
/// combinations that have no rendering (e.g. a graph as a heatmap).
std::string render(const Emittable& item, Format format, const OutputContext& ctx = {});

/// render + write_file.
void emit(const Emittable& item, Format format, const std::filesystem::path& path,
          const OutputContext& ctx = {});

/// Writes bytes to `path` (via a sibling temporary file and rename);
/// throws IoError.
void write_file(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace finnet
