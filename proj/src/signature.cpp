#include "investornet/signature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace investornet {

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> plain_correlation(const std::vector<double>& x,
                                        const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

std::optional<double> trend(const PipelineResult& result, Category category, std::size_t before_day,
                            std::size_t& windows) {
  std::vector<double> index, value;
  for (const auto& row : result.rows) {
    if (row.category != category || !row.l_max) continue;
    if (result.windows[row.window_index].end_day >= before_day) continue;
    index.push_back(static_cast<double>(row.window_index));
    value.push_back(*row.l_max);
  }
  windows = index.size();
  return spearman(index, value);
}

}  // namespace

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  return plain_correlation(average_ranks(x), average_ranks(y));
}

BubbleSignature measure_bubble_signature(const PipelineResult& result, const SynthConfig& config) {
  BubbleSignature sig;
  const auto tip = static_cast<std::size_t>(config.tipping_day);
  const auto onset = static_cast<std::size_t>(config.contrarian_onset_day);

  sig.herding_trend = trend(result, Category::Household, tip, sig.pre_tipping_windows);
  std::size_t unused = 0;
  sig.institution_trend =
      trend(result, Category::Financial, std::numeric_limits<std::size_t>::max(), unused);

  double pre_sum = 0.0;
  std::size_t post_seen = 0;
  std::optional<double> post_min;
  for (const auto& row : result.rows) {
    if (row.category != Category::Household || !row.l_min) continue;
    const auto& window = result.windows[row.window_index];
    if (window.end_day < onset) {
      pre_sum += *row.l_min;
      ++sig.pre_onset_windows;
    } else if (window.start_day >= onset && post_seen < 3) {
      ++post_seen;
      post_min = post_min ? std::min(*post_min, *row.l_min) : *row.l_min;
    }
  }
  if (sig.pre_onset_windows > 0 && post_min) {
    sig.polarization_drop = pre_sum / static_cast<double>(sig.pre_onset_windows) - *post_min;
  }
  return sig;
}

}  // namespace investornet
