#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace finnet {

enum class Errc {
  // ingest
  malformed_row,
  non_positive_price,
  duplicate_date,
  empty_file,
  insufficient_overlap,
  duplicate_asset_id,
  network_error,
  http_status_error,
  payload_parse_error,
  // estimators
  degenerate_series,
  too_few_samples,
  length_mismatch,
  empty_overlap,
  singular_moment_matrix,
  // windows / synth
  window_too_large,
  unstable_spec,
  // output
  io_error,
  unsupported_format_for_shape,
  invalid_argument,
};

std::string_view errc_name(Errc code) noexcept;

/// True for errors caused by bad input data or configuration, as opposed to
/// an estimator failing on otherwise valid input.
bool is_validation_error(Errc code) noexcept;

/// Single exception type for the library. `detail` carries the line number,
/// HTTP status or element index when the error has one; `window` is set when
/// the failure happened inside a windowed evaluation.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message,
        std::optional<std::int64_t> detail = std::nullopt);

  Errc code() const noexcept { return code_; }
  std::optional<std::int64_t> detail() const noexcept { return detail_; }
  std::optional<std::size_t> window() const noexcept { return window_; }

  Error with_window(std::size_t index) const;

 private:
  Errc code_;
  std::optional<std::int64_t> detail_;
  std::optional<std::size_t> window_;
};

}  // namespace finnet
