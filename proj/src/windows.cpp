#include "investornet/windows.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "investornet/error.hpp"

namespace investornet {

void WindowSpec::validate() const {
  if (step_days < 1) throw ConfigError("step_days must be >= 1");
  if (smooth_days < 1) throw ConfigError("smooth_days must be >= 1");
  if (min_active_days < 1) throw ConfigError("min_active_days must be >= 1");
  if (width_days < min_active_days) {
    throw ConfigError(fmt::format("width_days ({}) must be >= min_active_days ({})", width_days,
                                  min_active_days));
  }
}

std::size_t window_count(std::size_t day_count, const WindowSpec& spec) {
  spec.validate();
  const auto width = static_cast<std::size_t>(spec.width_days);
  if (day_count < width) {
    throw DataError(fmt::format("insufficient history: {} trading days, window needs {}",
                                day_count, width));
  }
  return (day_count - width) / static_cast<std::size_t>(spec.step_days) + 1;
}

std::vector<Window> enumerate_windows(const TradingCalendar& calendar, const WindowSpec& spec) {
  const std::size_t count = window_count(calendar.size(), spec);
  std::vector<Window> windows;
  windows.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    Window w;
    w.index = t;
    w.start_day = t * static_cast<std::size_t>(spec.step_days);
    w.end_day = w.start_day + static_cast<std::size_t>(spec.width_days) - 1;
    w.start_date = calendar.date(w.start_day);
    w.end_date = calendar.date(w.end_day);
    windows.push_back(w);
  }
  return windows;
}

std::vector<double> smooth(std::span<const std::int64_t> values, int width) {
  if (width < 1) throw ConfigError("smoothing width must be >= 1");
  const auto w = static_cast<std::size_t>(width);
  std::vector<double> out(values.size());
  // Exact integer running sum; one rounding per output.
  std::int64_t running = 0;
  for (std::size_t t = 0; t < values.size(); ++t) {
    running += values[t];
    if (t >= w) running -= values[t - w];
    out[t] = static_cast<double>(running) / static_cast<double>(width);
  }
  return out;
}

std::vector<std::string> active_investors(const Window& window, const SeriesMap& series,
                                          int min_active_days) {
  std::vector<std::string> out;
  for (const auto& [owner, s] : series) {
    if (s.active_count(window.start_day, window.end_day) >=
        static_cast<std::size_t>(min_active_days)) {
      out.push_back(owner);
    }
  }
  return out;
}

PanelSource::PanelSource(const SeriesMap& series, const CategoryAssignment& categories,
                         const WindowSpec& spec)
    : spec_(spec) {
  spec_.validate();
  entries_.reserve(series.size());
  for (const auto& [owner, s] : series) {
    auto category = categories.find(owner);
    if (!category) continue;
    entries_.push_back(Entry{&s, *category, smooth(s.values, spec_.smooth_days)});
  }
}

std::vector<std::size_t> PanelSource::active_entries(const Window& window, Category group) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (group != Category::Merged && e.category != group) continue;
    if (e.series->active_count(window.start_day, window.end_day) >=
        static_cast<std::size_t>(spec_.min_active_days)) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<std::string> PanelSource::active(const Window& window, Category group) const {
  std::vector<std::string> out;
  for (auto i : active_entries(window, group)) out.push_back(entries_[i].series->owner_id);
  return out;
}

WindowPanel PanelSource::build(const Window& window, Category group) const {
  WindowPanel panel;
  panel.window = window;
  panel.category = group;
  panel.width = window.end_day - window.start_day + 1;
  const auto rows = active_entries(window, group);
  panel.investors.reserve(rows.size());
  panel.values.reserve(rows.size() * panel.width);
  panel.node_volume.reserve(rows.size());
  for (auto i : rows) {
    const auto& e = entries_[i];
    panel.investors.push_back(e.series->owner_id);
    panel.values.insert(panel.values.end(), e.smoothed.begin() + window.start_day,
                        e.smoothed.begin() + window.end_day + 1);
    panel.node_volume.push_back(
        static_cast<double>(e.series->gross_between(window.start_day, window.end_day)));
  }
  return panel;
}

WindowPanel build_panel(const Window& window, Category group, const PanelSource& source) {
  return source.build(window, group);
}

}  // namespace investornet
