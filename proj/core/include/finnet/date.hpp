#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace finnet {

/// Timezone-free calendar day.
using Date = std::chrono::year_month_day;

/// Strict ISO-8601 `YYYY-MM-DD`; nullopt on any deviation or invalid day.
std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date date);

Date date_from_unix_seconds(long long seconds);
long long days_since_epoch(Date date);
Date add_days(Date date, long long days);

}  // namespace finnet
