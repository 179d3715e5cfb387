#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "investornet/error.hpp"
#include "investornet/windows.hpp"

using namespace investornet;
using namespace investornet::testing;

namespace {

TradingCalendar calendar_of(std::size_t days) {
  std::vector<TransactionRecord> records;
  for (auto d : business_days(days)) records.push_back(trade("a", d, Direction::Buy, 1));
  return build_calendar(records);
}

// Owner trading on the first `active` days of a 126-day window.
std::vector<TransactionRecord> owner_trading(const std::string& owner, const std::vector<Date>& days,
                                             std::size_t active, const std::string& sector,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TransactionRecord> out;
  for (std::size_t t = 0; t < active; ++t) {
    out.push_back(trade(owner, days[t], rng() % 2 ? Direction::Buy : Direction::Sell,
                        1 + static_cast<std::int64_t>(rng() % 50), sector));
  }
  return out;
}

}  // namespace

TEST_CASE("window_count") {
  const WindowSpec spec;
  CHECK(window_count(1252, spec) == 54);
  CHECK(window_count(126, spec) == 1);
  CHECK(window_count(146, spec) == 1);
  CHECK(window_count(147, spec) == 2);
  CHECK_THROWS_AS(window_count(125, spec), DataError);
  CHECK_THROWS_WITH_AS(window_count(0, spec),
                       doctest::Contains("insufficient history"), DataError);
}

TEST_CASE("window spec validation") {
  WindowSpec spec;
  spec.step_days = 0;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = {};
  spec.min_active_days = 127;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = {};
  spec.smooth_days = 0;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = {};
  spec.min_active_days = 0;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  CHECK_NOTHROW(WindowSpec{}.validate());
}

TEST_CASE("enumerate_windows geometry") {
  const auto cal = calendar_of(1252);
  const auto windows = enumerate_windows(cal, {});
  REQUIRE(windows.size() == 54);
  for (std::size_t t = 0; t < windows.size(); ++t) {
    CHECK(windows[t].index == t);
    CHECK(windows[t].start_day == 21 * t);
    CHECK(windows[t].end_day - windows[t].start_day + 1 == 126);
    CHECK(windows[t].end_day < 1252);
    CHECK(windows[t].start_date == cal.date(windows[t].start_day));
    CHECK(windows[t].end_date == cal.date(windows[t].end_day));
  }
  CHECK(windows[0].end_day == 125);
  CHECK(windows.back().end_day == 21 * 53 + 125);
}

TEST_CASE("smooth") {
  const std::vector<std::int64_t> impulse{5, 0, 0, 0, 0};
  CHECK(smooth(impulse, 5) == std::vector<double>{1, 1, 1, 1, 1});
  const std::vector<std::int64_t> two{2, 4};
  CHECK(smooth(two, 2) == std::vector<double>{1, 3});
  const std::vector<std::int64_t> any{3, -7, 0, 12, 5};
  CHECK(smooth(any, 1) == std::vector<double>{3, -7, 0, 12, 5});
  CHECK(smooth(std::vector<std::int64_t>{}, 5).empty());
  CHECK_THROWS_AS(smooth(any, 0), ConfigError);
}

TEST_CASE("smooth matches a direct trailing mean and never looks ahead") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    std::vector<std::int64_t> v(200);
    for (auto& x : v) x = rng() % 3 ? 0 : static_cast<std::int64_t>(rng() % 2001) - 1000;
    const int width = 1 + static_cast<int>(rng() % 10);
    const auto s = smooth(v, width);
    for (std::size_t t = 0; t < v.size(); ++t) {
      std::int64_t sum = 0;
      for (std::size_t k = 0; k < static_cast<std::size_t>(width) && k <= t; ++k) sum += v[t - k];
      CHECK(s[t] == static_cast<double>(sum) / width);
    }
    auto extended = v;
    extended.push_back(999999);
    const auto s2 = smooth(extended, width);
    CHECK(std::equal(s.begin(), s.end(), s2.begin()));
  }
}

TEST_CASE("activeness threshold") {
  const auto days = business_days(126);
  std::vector<TransactionRecord> records;
  for (auto& r : owner_trading("at20", days, 20, "HH", 1)) records.push_back(r);
  for (auto& r : owner_trading("at19", days, 19, "HH", 2)) records.push_back(r);
  for (auto& r : owner_trading("all", days, 126, "HH", 3)) records.push_back(r);
  // Net-zero trades still count as active days.
  for (std::size_t t = 0; t < 20; ++t) {
    records.push_back(trade("flat", days[t], Direction::Buy, 5));
    records.push_back(trade("flat", days[t], Direction::Sell, 5));
  }
  const auto cal = build_calendar(records);
  const auto series = aggregate_net_volumes(records, cal);
  const auto windows = enumerate_windows(cal, {});
  REQUIRE(windows.size() == 1);
  CHECK(active_investors(windows[0], series, 20) == std::vector<std::string>{"all", "at20", "flat"});
}

TEST_CASE("panels per category and merged") {
  const auto days = business_days(126);
  std::vector<TransactionRecord> records;
  int seed = 0;
  for (const auto& [owner, sector] : std::vector<std::pair<std::string, std::string>>{
           {"h1", "HH"}, {"h2", "HH"}, {"h3", "HH"}, {"f1", "FI"}, {"f2", "FI"}, {"n1", "NFI"},
           {"x1", "FOREIGN"}}) {
    for (auto& r : owner_trading(owner, days, 60, sector, ++seed)) records.push_back(r);
  }
  for (auto& r : owner_trading("h_idle", days, 5, "HH", 99)) records.push_back(r);
  for (auto& r : owner_trading("x2", days, 126, "FOREIGN", 98)) records.push_back(r);

  const auto cal = build_calendar(records);
  const auto series = aggregate_net_volumes(records, cal);
  const auto categories = categorize(records, default_category_mapping());
  const WindowSpec spec;
  const PanelSource source(series, categories, spec);
  const auto window = enumerate_windows(cal, spec)[0];

  const auto hh = build_panel(window, Category::Household, source);
  CHECK(hh.investors == std::vector<std::string>{"h1", "h2", "h3"});
  CHECK(hh.rows() == 3);
  CHECK(hh.width == 126);
  CHECK(hh.values.size() == 3 * 126);

  const auto merged = build_panel(window, Category::Merged, source);
  CHECK(merged.investors == std::vector<std::string>{"f1", "f2", "h1", "h2", "h3", "n1"});
  CHECK(merged.rows() == 6);

  // Rows are the smoothed net volume restricted to the window.
  const auto expected = smooth(series.at("h2").values, spec.smooth_days);
  const auto row = hh.row(1);
  CHECK(std::equal(row.begin(), row.end(), expected.begin()));

  std::int64_t gross = 0;
  for (const auto& r : records) {
    if (r.owner_id == "f1") gross += r.volume;
  }
  CHECK(merged.node_volume[0] == static_cast<double>(gross));
}

TEST_CASE("empty panel when nobody is active") {
  const auto days = business_days(130);
  std::vector<TransactionRecord> records{trade("a", days[0], Direction::Buy, 1),
                                         trade("b", days[129], Direction::Buy, 1)};
  for (std::size_t t = 1; t < 129; ++t) records.push_back(trade("c", days[t], Direction::Buy, 1, "FOREIGN"));
  const auto cal = build_calendar(records);
  const auto series = aggregate_net_volumes(records, cal);
  const auto categories = categorize(records, default_category_mapping());
  const PanelSource source(series, categories, {});
  const auto window = enumerate_windows(cal, {})[0];
  const auto panel = build_panel(window, Category::Household, source);
  CHECK(panel.rows() == 0);
  CHECK(panel.values.empty());
  CHECK(source.active(window, Category::Merged).empty());
}
