#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "finnet/date.hpp"
#include "finnet/estimate.hpp"
#include "finnet/interaction_matrix.hpp"
#include "finnet/stats.hpp"

namespace finnet {

struct WindowSpec {
  enum class Mode { sliding, segmented };

  Mode mode = Mode::segmented;
  std::size_t length = 0;    // sliding
  std::size_t stride = 1;    // sliding
  std::size_t segments = 10; // segmented

  static WindowSpec sliding(std::size_t length, std::size_t stride);
  static WindowSpec segmented(std::size_t k);
};

/// Accepts `K`, `segmented:K` or `sliding:LENGTH:STRIDE`.
std::optional<WindowSpec> parse_window_spec(std::string_view text);
std::string format_window_spec(const WindowSpec& spec);

/// Half-open row range [begin, end).
struct WindowRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const WindowRange&, const WindowRange&) = default;
};

/// sliding: [k·stride, k·stride + length) while inside [0, T).
/// segmented: K contiguous blocks; the first T mod K are one row longer.
std::vector<WindowRange> make_windows(std::size_t samples, const WindowSpec& spec);

struct Window {
  WindowRange range;
  Date start;
  Date end;  // inclusive: date of the last row
  InteractionMatrix matrix;
};

struct WindowedResult {
  Measure measure = Measure::correlation;
  WindowSpec spec;
  std::vector<Window> windows;
};

/// Runs `estimate` independently on each window (bins refit per window).
/// Estimator errors are rethrown with the window index attached.
WindowedResult evolve(const ReturnsMatrix& returns, const WindowSpec& spec, Measure measure,
                      const EstimatorParams& params);

}  // namespace finnet
