#include "finnet/windows.hpp"

#include <charconv>

#include "finnet/error.hpp"
#include "parallel.hpp"

namespace finnet {

WindowSpec WindowSpec::sliding(std::size_t length, std::size_t stride) {
  WindowSpec s;
  s.mode = Mode::sliding;
  s.length = length;
  s.stride = stride;
  return s;
}

WindowSpec WindowSpec::segmented(std::size_t k) {
  WindowSpec s;
  s.mode = Mode::segmented;
  s.segments = k;
  return s;
}

namespace {

std::optional<std::size_t> to_size(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

std::optional<WindowSpec> parse_window_spec(std::string_view text) {
  if (auto k = to_size(text)) return WindowSpec::segmented(*k);
  if (text.starts_with("segmented:")) {
    if (auto k = to_size(text.substr(10))) return WindowSpec::segmented(*k);
    return std::nullopt;
  }
  if (text.starts_with("sliding:")) {
    const auto rest = text.substr(8);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    auto len = to_size(rest.substr(0, colon));
    auto stride = to_size(rest.substr(colon + 1));
    if (!len || !stride) return std::nullopt;
    return WindowSpec::sliding(*len, *stride);
  }
  return std::nullopt;
}

std::string format_window_spec(const WindowSpec& spec) {
  if (spec.mode == WindowSpec::Mode::segmented)
    return "segmented:" + std::to_string(spec.segments);
  return "sliding:" + std::to_string(spec.length) + ":" + std::to_string(spec.stride);
}

std::vector<WindowRange> make_windows(std::size_t samples, const WindowSpec& spec) {
  std::vector<WindowRange> out;
  if (spec.mode == WindowSpec::Mode::sliding) {
    if (spec.length == 0 || spec.stride == 0)
      throw Error(Errc::invalid_argument, "sliding windows need length >= 1 and stride >= 1");
    if (spec.length > samples)
      throw Error(Errc::window_too_large, "window length " + std::to_string(spec.length) +
                                              " exceeds " + std::to_string(samples) + " samples");
    for (std::size_t start = 0; start + spec.length <= samples; start += spec.stride)
      out.push_back({start, start + spec.length});
    return out;
  }
  if (spec.segments == 0) throw Error(Errc::invalid_argument, "segment count must be >= 1");
  if (spec.segments > samples)
    throw Error(Errc::window_too_large, std::to_string(spec.segments) + " segments exceed " +
                                            std::to_string(samples) + " samples");
  const std::size_t base = samples / spec.segments;
  const std::size_t extra = samples % spec.segments;
  std::size_t start = 0;
  for (std::size_t k = 0; k < spec.segments; ++k) {
    const std::size_t len = base + (k < extra ? 1 : 0);
    out.push_back({start, start + len});
    start += len;
  }
  return out;
}

WindowedResult evolve(const ReturnsMatrix& returns, const WindowSpec& spec, Measure measure,
                      const EstimatorParams& params) {
  const auto ranges = make_windows(returns.samples(), spec);
  WindowedResult result;
  result.measure = measure;
  result.spec = spec;
  result.windows.resize(ranges.size());

  EstimatorParams inner = params;
  inner.threads = 1;
  detail::parallel_for(ranges.size(), params.threads, [&](std::size_t k) {
    const auto& r = ranges[k];
    Window& w = result.windows[k];
    w.range = r;
    w.start = returns.dates[r.begin];
    w.end = returns.dates[r.end - 1];
    try {
      w.matrix = estimate(returns.slice(r.begin, r.end), measure, inner);
    } catch (const Error& e) {
      throw e.with_window(k);
    }
  });
  return result;
}

}  // namespace finnet
