#include "finnet/error.hpp"

namespace finnet {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::malformed_row: return "MalformedRow";
    case Errc::non_positive_price: return "NonPositivePrice";
    case Errc::duplicate_date: return "DuplicateDate";
    case Errc::empty_file: return "EmptyFile";
    case Errc::insufficient_overlap: return "InsufficientOverlap";
    case Errc::duplicate_asset_id: return "DuplicateAssetId";
    case Errc::network_error: return "NetworkError";
    case Errc::http_status_error: return "HttpStatusError";
    case Errc::payload_parse_error: return "PayloadParseError";
    case Errc::degenerate_series: return "DegenerateSeries";
    case Errc::too_few_samples: return "TooFewSamples";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::empty_overlap: return "EmptyOverlap";
    case Errc::singular_moment_matrix: return "SingularMomentMatrix";
    case Errc::window_too_large: return "WindowTooLarge";
    case Errc::unstable_spec: return "UnstableSpec";
    case Errc::io_error: return "IoError";
    case Errc::unsupported_format_for_shape: return "UnsupportedFormatForShape";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_validation_error(Errc code) noexcept {
  switch (code) {
    case Errc::degenerate_series:
    case Errc::too_few_samples:
    case Errc::length_mismatch:
    case Errc::empty_overlap:
    case Errc::singular_moment_matrix:
    case Errc::network_error:
    case Errc::http_status_error:
    case Errc::io_error:
      return false;
    default:
      return true;
  }
}

Error::Error(Errc code, const std::string& message, std::optional<std::int64_t> detail)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message),
      code_(code),
      detail_(detail) {}

Error Error::with_window(std::size_t index) const {
  std::string msg = what();
  // Strip our own "Name: " prefix; the constructor adds it back.
  const auto prefix = std::string(errc_name(code_)) + ": ";
  if (msg.starts_with(prefix)) msg.erase(0, prefix.size());
  Error e(code_, "window " + std::to_string(index) + ": " + msg, detail_);
  e.window_ = index;
  return e;
}

}  // namespace finnet
