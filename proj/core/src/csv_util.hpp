#pragma once

// Internal CSV helpers shared by ingest and netout.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace finnet::detail {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  /// Next line without its terminator; `line_no` is 1-based.
  bool next(std::string_view& line, std::size_t& line_no);

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

bool is_blank(std::string_view line);
std::string_view trim(std::string_view s);

/// RFC 4180 field splitting for a single physical line.
std::vector<std::string> split_csv_line(std::string_view line);
std::string quote_csv(std::string_view field);

std::optional<double> parse_real(std::string_view s);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace finnet::detail
