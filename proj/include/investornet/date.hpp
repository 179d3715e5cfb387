#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace investornet {

using Date = std::chrono::year_month_day;

// Strict YYYY-MM-DD. Returns nullopt for anything else, including
// out-of-range days such as 1999-02-30.
std::optional<Date> parse_date(std::string_view text);

std::string format_date(Date date);

// Next Monday-Friday date strictly after `date`.
Date next_business_day(Date date);

}  // namespace investornet
