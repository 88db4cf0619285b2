#include "finnet/date.hpp"

#include <charconv>
#include <cstdio>

namespace finnet {

namespace {

bool parse_digits(std::string_view s, int& out) {
  for (char c : s)
    if (c < '0' || c > '9') return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_digits(text.substr(0, 4), y) || !parse_digits(text.substr(5, 2), m) ||
      !parse_digits(text.substr(8, 2), d))
    return std::nullopt;
  Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
            std::chrono::day{static_cast<unsigned>(d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_date(Date date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

Date date_from_unix_seconds(long long seconds) {
  long long days = seconds / 86400;
  if (seconds % 86400 < 0) --days;
  return Date{std::chrono::sys_days{std::chrono::days{days}}};
}

long long days_since_epoch(Date date) {
  return std::chrono::sys_days{date}.time_since_epoch().count();
}

Date add_days(Date date, long long days) {
  return Date{std::chrono::sys_days{date} + std::chrono::days{days}};
}

}  // namespace finnet
