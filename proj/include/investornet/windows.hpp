#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "investornet/date.hpp"
#include "investornet/ingest.hpp"

namespace investornet {

// Rolling-window geometry in trading days. Defaults: six-month windows
// (126 days) advanced by one month (21 days), at least 20 trading days per
// investor inside a window, one-week (5 day) trailing moving average.
struct WindowSpec {
  int width_days = 126;
  int step_days = 21;
  int min_active_days = 20;
  int smooth_days = 5;

  // Throws ConfigError unless width >= min_active >= 1, step >= 1, smooth >= 1.
  void validate() const;
};

struct Window {
  std::size_t index = 0;
  std::size_t start_day = 0;
  std::size_t end_day = 0;  // inclusive
  Date start_date{};
  Date end_date{};
};

// floor((D - W) / step) + 1; throws DataError("insufficient history") if D < W.
std::size_t window_count(std::size_t day_count, const WindowSpec& spec);

// Window t covers [t*step, t*step + W - 1]; window 0 ends at day W - 1.
std::vector<Window> enumerate_windows(const TradingCalendar& calendar, const WindowSpec& spec);

// Trailing moving average with zero left-padding:
// out[t] = (values[t] + ... + values[t - width + 1]) / width.
std::vector<double> smooth(std::span<const std::int64_t> values, int width);

// Owners with at least `min_active_days` raw trading days inside the window,
// sorted ascending.
std::vector<std::string> active_investors(const Window& window, const SeriesMap& series,
                                          int min_active_days);

struct WindowPanel {
  Window window;
  Category category = Category::Merged;
  std::vector<std::string> investors;  // ascending
  std::size_t width = 0;
  std::vector<double> values;          // investors.size() x width, row-major
  std::vector<double> node_volume;     // raw bought + sold shares inside the window

  std::size_t rows() const { return investors.size(); }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * width, width};
  }
};

// Smoothed series plus categories, computed once per run and sliced per window.
class PanelSource {
 public:
  PanelSource(const SeriesMap& series, const CategoryAssignment& categories,
              const WindowSpec& spec);

  // Active investors of `group` (Merged = any category), sorted ascending.
  std::vector<std::string> active(const Window& window, Category group) const;

  WindowPanel build(const Window& window, Category group) const;

 private:
  struct Entry {
    const NetVolumeSeries* series;
    Category category;
    std::vector<double> smoothed;
  };
  std::vector<std::size_t> active_entries(const Window& window, Category group) const;

  WindowSpec spec_;
  std::vector<Entry> entries_;  // ordered by owner id
};

WindowPanel build_panel(const Window& window, Category group, const PanelSource& source);

}  // namespace investornet
