#include "finnet/netout.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "csv_util.hpp"
#include "finnet/error.hpp"

namespace finnet {

// ---------------------------------------------------------------- graphs

InteractionGraph matrix_to_graph(const InteractionMatrix& m, double threshold, bool keep_self) {
  if (!(threshold >= 0.0)) throw Error(Errc::invalid_argument, "threshold must be >= 0");
  check_invariants(m);
  InteractionGraph g;
  g.nodes = m.asset_ids;
  g.directed = m.directed;
  g.threshold = threshold;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j && !keep_self) continue;
      if (!m.directed && j < i) continue;
      const double v = m.values(i, j);
      if (std::abs(v) < threshold) continue;
      if (m.directed)
        g.edges.push_back({m.asset_ids[j], m.asset_ids[i], v});
      else
        g.edges.push_back({m.asset_ids[i], m.asset_ids[j], v});
    }
  }
  return g;
}

// ---------------------------------------------------------------- helpers

std::string format_real(double v) { return detail::format_double(v); }

namespace {

nlohmann::json matrix_rows(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (double v : m.row(i)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_rows(const nlohmann::json& rows, std::size_t n) {
  if (!rows.is_array() || rows.size() != n)
    throw Error(Errc::payload_parse_error, "values must be an N×N array");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n)
      throw Error(Errc::payload_parse_error, "values row " + std::to_string(i) + " has wrong size");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

void add_context(nlohmann::json& doc, const OutputContext& ctx) {
  doc["schema_version"] = kSchemaVersion;
  doc["generated_at"] = ctx.generated_at;
  doc["config"] = ctx.config;
}

nlohmann::json matrix_body(const InteractionMatrix& m) {
  return {{"measure", std::string(measure_name(m.measure))},
          {"directed", m.directed},
          {"units", std::string(units_name(m.units))},
          {"asset_ids", m.asset_ids},
          {"values", matrix_rows(m.values)},
          {"params", m.params}};
}

InteractionMatrix matrix_from_body(const nlohmann::json& doc) {
  try {
    InteractionMatrix m;
    m.asset_ids = doc.at("asset_ids").get<std::vector<std::string>>();
    const auto measure = parse_measure(doc.at("measure").get<std::string>());
    const auto units = parse_units(doc.at("units").get<std::string>());
    if (!measure || !units) throw Error(Errc::payload_parse_error, "unknown measure or units");
    m.measure = *measure;
    m.units = *units;
    m.directed = doc.at("directed").get<bool>();
    m.values = matrix_from_rows(doc.at("values"), m.asset_ids.size());
    m.params = doc.value("params", nlohmann::json::object());
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::payload_parse_error, std::string("bad matrix document: ") + e.what());
  }
}

std::string csv_header_comment(std::string_view kind, const OutputContext& ctx,
                               std::string_view extra = {}) {
  std::string out = "# finnet " + std::string(kind) + " schema_version=" +
                    std::to_string(kSchemaVersion);
  if (!extra.empty()) out += " " + std::string(extra);
  out += "\n# generated_at: " + ctx.generated_at + "\n# config: " + ctx.config.dump() + "\n";
  return out;
}

std::string matrix_tag(const InteractionMatrix& m) {
  return "measure=" + std::string(measure_name(m.measure)) +
         " directed=" + (m.directed ? "true" : "false") + " units=" +
         std::string(units_name(m.units));
}

}  // namespace

// ---------------------------------------------------------------- JSON

nlohmann::json to_json(const InteractionMatrix& m, const OutputContext& ctx) {
  auto doc = matrix_body(m);
  doc["kind"] = "interaction_matrix";
  add_context(doc, ctx);
  return doc;
}

nlohmann::json to_json(const InteractionGraph& g, const OutputContext& ctx) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"weight", e.weight}});
  nlohmann::json doc = {{"kind", "interaction_graph"},
                        {"nodes", g.nodes},
                        {"edges", std::move(edges)},
                        {"directed", g.directed},
                        {"threshold", g.threshold}};
  add_context(doc, ctx);
  return doc;
}

nlohmann::json to_json(const WindowedResult& w, const OutputContext& ctx) {
  nlohmann::json windows = nlohmann::json::array();
  for (std::size_t k = 0; k < w.windows.size(); ++k) {
    const auto& win = w.windows[k];
    windows.push_back({{"index", k},
                       {"start_index", win.range.begin},
                       {"end_index", win.range.end},
                       {"start", format_date(win.start)},
                       {"end", format_date(win.end)},
                       {"matrix", matrix_body(win.matrix)}});
  }
  nlohmann::json doc = {{"kind", "windowed_result"},
                        {"measure", std::string(measure_name(w.measure))},
                        {"window_spec", format_window_spec(w.spec)},
                        {"bins_refit_per_window", true},
                        {"windows", std::move(windows)}};
  add_context(doc, ctx);
  return doc;
}

nlohmann::json to_json(const DriftEstimate& d, const OutputContext& ctx) {
  nlohmann::json doc = {{"kind", "drift_estimate"},
                        {"psi", matrix_rows(d.psi)},
                        {"A", matrix_rows(d.A)},
                        {"dt", d.dt},
                        {"cond", d.cond},
                        {"centered", d.centered},
                        {"ridge", d.ridge},
                        {"moment_matrix", matrix_rows(d.moment_matrix)}};
  add_context(doc, ctx);
  return doc;
}

nlohmann::json to_json(const StatsSummary& s, const OutputContext& ctx) {
  nlohmann::json assets = nlohmann::json::array();
  for (const auto& a : s.assets)
    assets.push_back({{"asset_id", a.asset_id},
                      {"count", a.count},
                      {"mean", a.mean},
                      {"std", a.std_dev},
                      {"skewness", a.skewness},
                      {"excess_kurtosis", a.excess_kurtosis}});
  nlohmann::json doc = {{"kind", "descriptive_statistics"},
                        {"std_denominator", "n-1"},
                        {"kurtosis_convention", "excess"},
                        {"assets", std::move(assets)}};
  add_context(doc, ctx);
  return doc;
}

InteractionMatrix matrix_from_json(const nlohmann::json& doc) {
  if (doc.value("kind", "") != "interaction_matrix")
    throw Error(Errc::payload_parse_error, "document is not an interaction_matrix");
  if (doc.value("schema_version", 0) != kSchemaVersion)
    throw Error(Errc::payload_parse_error, "unsupported schema_version");
  return matrix_from_body(doc);
}

WindowedResult windowed_from_json(const nlohmann::json& doc) {
  if (doc.value("kind", "") != "windowed_result")
    throw Error(Errc::payload_parse_error, "document is not a windowed_result");
  try {
    WindowedResult w;
    const auto measure = parse_measure(doc.at("measure").get<std::string>());
    const auto spec = parse_window_spec(doc.at("window_spec").get<std::string>());
    if (!measure || !spec) throw Error(Errc::payload_parse_error, "bad measure or window_spec");
    w.measure = *measure;
    w.spec = *spec;
    for (const auto& win : doc.at("windows")) {
      const auto start = parse_date(win.at("start").get<std::string>());
      const auto end = parse_date(win.at("end").get<std::string>());
      if (!start || !end) throw Error(Errc::payload_parse_error, "bad window date");
      w.windows.push_back({{win.at("start_index").get<std::size_t>(),
                            win.at("end_index").get<std::size_t>()},
                           *start,
                           *end,
                           matrix_from_body(win.at("matrix"))});
    }
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::payload_parse_error, std::string("bad windowed document: ") + e.what());
  }
}

// ---------------------------------------------------------------- CSV

std::string to_csv_wide(const InteractionMatrix& m, const OutputContext& ctx) {
  std::string out = csv_header_comment("interaction_matrix", ctx, matrix_tag(m));
  out += "asset";
  for (const auto& id : m.asset_ids) out += "," + detail::quote_csv(id);
  out += '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += detail::quote_csv(m.asset_ids[i]);
    for (double v : m.values.row(i)) out += "," + format_real(v);
    out += '\n';
  }
  return out;
}

std::string to_csv_long(const InteractionMatrix& m, const OutputContext& ctx) {
  std::string out = csv_header_comment("interaction_matrix_long", ctx, matrix_tag(m));
  out += "from_asset,to_asset,value\n";
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      out += detail::quote_csv(m.asset_ids[j]) + "," + detail::quote_csv(m.asset_ids[i]) + "," +
             format_real(m.values(i, j)) + "\n";
  return out;
}

std::string to_csv_long(const WindowedResult& w, const OutputContext& ctx) {
  std::string out = csv_header_comment(
      "windowed_result_long", ctx,
      "measure=" + std::string(measure_name(w.measure)) + " window_spec=" + format_window_spec(w.spec));
  out += "window_start,window_end,from_asset,to_asset,value\n";
  for (const auto& win : w.windows) {
    const auto& m = win.matrix;
    const auto prefix = format_date(win.start) + "," + format_date(win.end) + ",";
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        out += prefix + detail::quote_csv(m.asset_ids[j]) + "," +
               detail::quote_csv(m.asset_ids[i]) + "," + format_real(m.values(i, j)) + "\n";
  }
  return out;
}

std::string to_csv(const StatsSummary& s, const OutputContext& ctx) {
  std::string out = csv_header_comment("descriptive_statistics", ctx,
                                       "std_denominator=n-1 kurtosis=excess");
  out += "asset,count,mean,std,skewness,excess_kurtosis\n";
  for (const auto& a : s.assets)
    out += detail::quote_csv(a.asset_id) + "," + std::to_string(a.count) + "," +
           format_real(a.mean) + "," + format_real(a.std_dev) + "," + format_real(a.skewness) +
           "," + format_real(a.excess_kurtosis) + "\n";
  return out;
}

InteractionMatrix matrix_from_csv_wide(std::string_view text, Measure measure, bool directed,
                                       Units units) {
  detail::LineReader reader(text);
  std::string_view line;
  std::size_t line_no = 0;
  std::vector<std::vector<std::string>> rows;
  while (reader.next(line, line_no)) {
    if (detail::is_blank(line) || line.front() == '#') continue;
    rows.push_back(detail::split_csv_line(line));
  }
  if (rows.empty()) throw Error(Errc::empty_file, "matrix CSV has no header");
  InteractionMatrix m;
  m.asset_ids.assign(rows.front().begin() + 1, rows.front().end());
  const std::size_t n = m.asset_ids.size();
  if (rows.size() != n + 1) throw Error(Errc::malformed_row, "matrix CSV is not N×N");
  m.values = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = rows[i + 1];
    if (r.size() != n + 1 || r.front() != m.asset_ids[i])
      throw Error(Errc::malformed_row, "matrix CSV row " + std::to_string(i) + " malformed",
                  static_cast<std::int64_t>(i));
    for (std::size_t j = 0; j < n; ++j) {
      const auto v = detail::parse_real(detail::trim(r[j + 1]));
      if (!v) throw Error(Errc::malformed_row, "bad number '" + r[j + 1] + "'");
      m.values(i, j) = *v;
    }
  }
  m.measure = measure;
  m.directed = directed;
  m.units = units;
  return m;
}

// ---------------------------------------------------------------- DOT

namespace {

std::string dot_quote(std::string_view id) {
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Fixed-point with at least two decimals and two significant digits.
std::string edge_label(double w) {
  int decimals = 2;
  const double a = std::abs(w);
  if (a > 0.0 && a < 0.1) decimals = std::min(12, static_cast<int>(-std::floor(std::log10(a))) + 1);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, w);
  return buf;
}

}  // namespace

std::string to_dot(const InteractionGraph& g, const OutputContext& ctx) {
  std::string out = "// finnet interaction_graph schema_version=" + std::to_string(kSchemaVersion) +
                    " threshold=" + format_real(g.threshold) + "\n";
  out += "// generated_at: " + ctx.generated_at + "\n";
  out += "// config: " + ctx.config.dump() + "\n";
  out += g.directed ? "digraph {\n" : "graph {\n";
  for (const auto& n : g.nodes) out += "  " + dot_quote(n) + ";\n";
  const char* arrow = g.directed ? " -> " : " -- ";
  for (const auto& e : g.edges)
    out += "  " + dot_quote(e.from) + arrow + dot_quote(e.to) + " [label=\"" +
           edge_label(e.weight) + "\"];\n";
  out += "}\n";
  return out;
}

// ---------------------------------------------------------------- SVG

namespace {

struct Rgb {
  int r, g, b;
};

std::string hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

Rgb lerp(Rgb a, Rgb b, double t) {
  t = std::clamp(t, 0.0, 1.0);
  const auto mix = [t](int x, int y) {
    return static_cast<int>(std::lround(x + (y - x) * t));
  };
  return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

constexpr Rgb kNegative{33, 102, 172};
constexpr Rgb kWhite{247, 247, 247};
constexpr Rgb kPositive{178, 24, 43};
constexpr Rgb kSequentialHigh{8, 81, 156};
constexpr Rgb kDiagonal{221, 221, 221};

bool diverging(Measure m) { return m == Measure::correlation || m == Measure::km_drift; }

struct ColorScale {
  bool diverging = false;
  double lo = 0.0;
  double hi = 1.0;

  Rgb color(double v) const {
    if (diverging) {
      if (v < 0.0) return lerp(kWhite, kNegative, hi > 0.0 ? -v / hi : 0.0);
      return lerp(kWhite, kPositive, hi > 0.0 ? v / hi : 0.0);
    }
    return lerp(kWhite, kSequentialHigh, hi > lo ? (v - lo) / (hi - lo) : 0.0);
  }
};

ColorScale make_scale(Measure m, const std::vector<double>& values) {
  ColorScale s;
  s.diverging = diverging(m);
  double lo = 0.0, hi = 0.0;
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (s.diverging) {
    s.lo = -std::max(std::abs(lo), std::abs(hi));
    s.hi = -s.lo;
  } else {
    s.lo = 0.0;
    s.hi = hi;
  }
  if (s.hi == s.lo) s.hi = s.lo + 1.0;
  return s;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Grid {
  std::string title;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<double>> cells;        // [row][col]
  std::vector<std::vector<bool>> neutral;        // drawn grey, excluded from scale
  Measure measure = Measure::correlation;
};

std::string render_grid(const Grid& grid, const OutputContext& ctx) {
  constexpr int cell = 56;
  constexpr int left = 140;
  constexpr int top = 96;
  constexpr int legend_w = 16;
  const int rows = static_cast<int>(grid.row_labels.size());
  const int cols = static_cast<int>(grid.col_labels.size());

  std::vector<double> scaled;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (!grid.neutral[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)])
        scaled.push_back(grid.cells[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
  const auto scale = make_scale(grid.measure, scaled);
  double vmin = 0.0, vmax = 0.0;
  if (!scaled.empty()) {
    vmin = *std::min_element(scaled.begin(), scaled.end());
    vmax = *std::max_element(scaled.begin(), scaled.end());
  }

  const int grid_w = cols * cell;
  const int grid_h = rows * cell;
  const int legend_x = left + grid_w + 24;
  const int width = legend_x + legend_w + 90;
  const int height = top + grid_h + 40;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
      << "\" font-family=\"Helvetica, Arial, sans-serif\">\n";
  svg << "<metadata>" << xml_escape(nlohmann::json{{"schema_version", kSchemaVersion},
                                                   {"generated_at", ctx.generated_at},
                                                   {"config", ctx.config}}
                                        .dump())
      << "</metadata>\n";
  svg << "<defs><linearGradient id=\"legend\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">";
  for (int k = 0; k <= 4; ++k) {
    const double v = scale.lo + (scale.hi - scale.lo) * k / 4.0;
    svg << "<stop offset=\"" << k * 25 << "%\" stop-color=\"" << hex(scale.color(v)) << "\"/>";
  }
  svg << "</linearGradient></defs>\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  svg << "<text x=\"" << left << "\" y=\"24\" font-size=\"16\" font-weight=\"bold\">"
      << xml_escape(grid.title) << "</text>\n";
  svg << "<text x=\"" << left << "\" y=\"44\" font-size=\"11\">min " << short_num(vmin)
      << ", max " << short_num(vmax) << "</text>\n";

  for (int c = 0; c < cols; ++c) {
    const int x = left + c * cell + cell / 2;
    svg << "<text x=\"" << x << "\" y=\"" << top - 8 << "\" font-size=\"11\" text-anchor=\"start\" transform=\"rotate(-45 "
        << x << ' ' << top - 8 << ")\">" << xml_escape(grid.col_labels[static_cast<std::size_t>(c)])
        << "</text>\n";
  }
  for (int r = 0; r < rows; ++r) {
    const int y = top + r * cell;
    svg << "<text x=\"" << left - 8 << "\" y=\"" << y + cell / 2 + 4
        << "\" font-size=\"11\" text-anchor=\"end\">"
        << xml_escape(grid.row_labels[static_cast<std::size_t>(r)]) << "</text>\n";
    for (int c = 0; c < cols; ++c) {
      const double v = grid.cells[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      const bool neutral = grid.neutral[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      const int x = left + c * cell;
      svg << "<rect class=\"cell\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell
          << "\" height=\"" << cell << "\" fill=\"" << hex(neutral ? kDiagonal : scale.color(v))
          << "\" stroke=\"#ffffff\"/>";
      svg << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 4
          << "\" font-size=\"10\" text-anchor=\"middle\">" << short_num(v) << "</text>\n";
    }
  }
  svg << "<rect x=\"" << legend_x << "\" y=\"" << top << "\" width=\"" << legend_w
      << "\" height=\"" << grid_h << "\" fill=\"url(#legend)\" stroke=\"#999999\"/>\n";
  svg << "<text x=\"" << legend_x + legend_w + 6 << "\" y=\"" << top + 10
      << "\" font-size=\"10\">" << short_num(scale.hi) << "</text>\n";
  svg << "<text x=\"" << legend_x + legend_w + 6 << "\" y=\"" << top + grid_h
      << "\" font-size=\"10\">" << short_num(scale.lo) << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::string heatmap_title(Measure m, Units u) {
  return std::string(measure_name(m)) + " (" + std::string(units_name(u)) + ")";
}

}  // namespace

std::string to_svg_heatmap(const InteractionMatrix& m, const OutputContext& ctx) {
  Grid grid;
  grid.measure = m.measure;
  grid.title = heatmap_title(m.measure, m.units);
  grid.row_labels = m.asset_ids;
  grid.col_labels = m.asset_ids;
  const std::size_t n = m.size();
  grid.cells.assign(n, std::vector<double>(n));
  grid.neutral.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      grid.cells[i][j] = m.values(i, j);
      grid.neutral[i][j] = (i == j && n > 1);
    }
  return render_grid(grid, ctx);
}

std::string to_svg_heatmap(const WindowedResult& w, const OutputContext& ctx) {
  if (w.windows.empty()) throw Error(Errc::invalid_argument, "windowed result has no windows");
  const auto& first = w.windows.front().matrix;
  const std::size_t n = first.size();
  Grid grid;
  grid.measure = w.measure;
  grid.title = heatmap_title(w.measure, first.units) + " by window";
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (to i, from j)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || (!first.directed && j < i)) continue;
      pairs.emplace_back(i, j);
      grid.row_labels.push_back(first.directed
                                    ? first.asset_ids[j] + " → " + first.asset_ids[i]
                                    : first.asset_ids[i] + " – " + first.asset_ids[j]);
    }
  if (pairs.empty()) {
    // Single asset: show its diagonal.
    pairs.emplace_back(0, 0);
    grid.row_labels.push_back(first.asset_ids.front());
  }
  for (const auto& win : w.windows) grid.col_labels.push_back(format_date(win.start));
  grid.cells.assign(pairs.size(), std::vector<double>(w.windows.size()));
  grid.neutral.assign(pairs.size(), std::vector<bool>(w.windows.size(), false));
  for (std::size_t r = 0; r < pairs.size(); ++r)
    for (std::size_t c = 0; c < w.windows.size(); ++c)
      grid.cells[r][c] = w.windows[c].matrix.values(pairs[r].first, pairs[r].second);
  return render_grid(grid, ctx);
}

// ---------------------------------------------------------------- dispatch

std::string_view format_name(Format f) noexcept {
  switch (f) {
    case Format::json: return "json";
    case Format::csv: return "csv";
    case Format::csv_long: return "csv_long";
    case Format::dot: return "dot";
    case Format::svg_heatmap: return "svg_heatmap";
  }
  return "unknown";
}

std::optional<Format> parse_format(std::string_view name) noexcept {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "csv_long") return Format::csv_long;
  if (name == "dot") return Format::dot;
  if (name == "svg_heatmap" || name == "svg") return Format::svg_heatmap;
  return std::nullopt;
}

std::string_view format_extension(Format f) noexcept {
  switch (f) {
    case Format::json: return ".json";
    case Format::csv: return ".csv";
    case Format::csv_long: return "_long.csv";
    case Format::dot: return ".dot";
    case Format::svg_heatmap: return ".svg";
  }
  return "";
}

namespace {

[[noreturn]] void unsupported(std::string_view shape, Format f) {
  throw Error(Errc::unsupported_format_for_shape,
              std::string(shape) + " cannot be rendered as " + std::string(format_name(f)));
}

std::string edge_list_csv(const InteractionGraph& g, const OutputContext& ctx) {
  std::string out = csv_header_comment("interaction_graph", ctx,
                                       std::string("directed=") + (g.directed ? "true" : "false") +
                                           " threshold=" + format_real(g.threshold));
  out += "from_asset,to_asset,weight\n";
  for (const auto& e : g.edges)
    out += detail::quote_csv(e.from) + "," + detail::quote_csv(e.to) + "," + format_real(e.weight) + "\n";
  return out;
}

}  // namespace

std::string render(const Emittable& item, Format format, const OutputContext& ctx) {
  if (const auto* m = std::get_if<InteractionMatrix>(&item)) {
    switch (format) {
      case Format::json: return to_json(*m, ctx).dump(2) + "\n";
      case Format::csv: return to_csv_wide(*m, ctx);
      case Format::csv_long: return to_csv_long(*m, ctx);
      case Format::dot: return to_dot(matrix_to_graph(*m, 0.0), ctx);
      case Format::svg_heatmap: return to_svg_heatmap(*m, ctx);
    }
  } else if (const auto* g = std::get_if<InteractionGraph>(&item)) {
    switch (format) {
      case Format::json: return to_json(*g, ctx).dump(2) + "\n";
      case Format::csv:
      case Format::csv_long: return edge_list_csv(*g, ctx);
      case Format::dot: return to_dot(*g, ctx);
      case Format::svg_heatmap: unsupported("interaction graph", format);
    }
  } else if (const auto* w = std::get_if<WindowedResult>(&item)) {
    switch (format) {
      case Format::json: return to_json(*w, ctx).dump(2) + "\n";
      case Format::csv:
      case Format::csv_long: return to_csv_long(*w, ctx);
      case Format::svg_heatmap: return to_svg_heatmap(*w, ctx);
      case Format::dot: unsupported("windowed result", format);
    }
  }
  unsupported("item", format);
}

void emit(const Emittable& item, Format format, const std::filesystem::path& path,
          const OutputContext& ctx) {
  write_file(path, render(item, format, ctx));
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  static std::atomic<unsigned> counter{0};
  const auto tmp = path.string() + ".part" + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot open '" + path.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(Errc::io_error, "write failed for '" + path.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(Errc::io_error, "cannot move output into '" + path.string() + "'");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace finnet
