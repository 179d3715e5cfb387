#include "investornet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

namespace investornet {

std::optional<double> node_jaccard(std::span<const std::string> prev,
                                   std::span<const std::string> curr) {
  if (prev.empty() && curr.empty()) return std::nullopt;
  std::size_t shared = 0;
  auto p = prev.begin();
  auto c = curr.begin();
  while (p != prev.end() && c != curr.end()) {
    if (*p < *c) {
      ++p;
    } else if (*c < *p) {
      ++c;
    } else {
      ++shared;
      ++p;
      ++c;
    }
  }
  const std::size_t total = prev.size() + curr.size() - shared;
  return static_cast<double>(shared) / static_cast<double>(total);
}

std::optional<double> edge_change(const CorrelationNetwork& prev, const CorrelationNetwork& curr) {
  // Index pairs (in prev, in curr) of shared nodes, in owner order.
  std::vector<std::pair<std::size_t, std::size_t>> shared;
  std::size_t p = 0, c = 0;
  while (p < prev.size() && c < curr.size()) {
    if (prev.nodes[p] < curr.nodes[c]) {
      ++p;
    } else if (curr.nodes[c] < prev.nodes[p]) {
      ++c;
    } else {
      shared.emplace_back(p++, c++);
    }
  }
  if (shared.size() < 2) return std::nullopt;
  double sum = 0.0;
  for (std::size_t u = 0; u < shared.size(); ++u) {
    for (std::size_t v = u + 1; v < shared.size(); ++v) {
      sum += std::abs(curr.weight(shared[u].second, shared[v].second) -
                      prev.weight(shared[u].first, shared[v].first));
    }
  }
  const double pairs = static_cast<double>(shared.size()) * (shared.size() - 1) / 2.0;
  return sum / pairs;
}

std::optional<double> average_edge_weight(const CorrelationNetwork& network) {
  if (network.degenerate()) return std::nullopt;
  const std::size_t n = network.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) sum += network.weight(i, j);
  }
  return sum / static_cast<double>(network.edge_count());
}

std::vector<double> normalize_counts(std::span<const std::size_t> counts) {
  if (counts.empty()) throw std::domain_error("normalize_counts: empty series");
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  if (total == 0.0) throw std::domain_error("normalize_counts: zero mean");
  const double mean = total / static_cast<double>(counts.size());
  std::vector<double> out;
  out.reserve(counts.size());
  for (auto c : counts) out.push_back(static_cast<double>(c) / mean);
  return out;
}

std::vector<std::string> validate_rows(std::span<const MetricsRow> rows) {
  std::vector<std::string> violations;
  auto report = [&](const MetricsRow& r, std::string_view what) {
    violations.push_back(
        fmt::format("window {} {}: {}", r.window_index, category_token(r.category), what));
  };
  std::map<Category, std::size_t> first_window;
  for (const auto& r : rows) {
    auto [it, inserted] = first_window.try_emplace(r.category, r.window_index);
    if (!inserted) it->second = std::min(it->second, r.window_index);
  }
  for (const auto& r : rows) {
    if (r.node_jaccard_prev && !(*r.node_jaccard_prev >= 0.0 && *r.node_jaccard_prev <= 1.0)) {
      report(r, fmt::format("node Jaccard {} outside [0,1]", *r.node_jaccard_prev));
    }
    if (r.edge_change_prev && !(*r.edge_change_prev >= 0.0 && *r.edge_change_prev <= 2.0)) {
      report(r, fmt::format("edge change {} outside [0,2]", *r.edge_change_prev));
    }
    if (r.l_min && r.l_max && !(*r.l_min <= *r.l_max)) {
      report(r, fmt::format("L_min {} > L_max {}", *r.l_min, *r.l_max));
    }
    for (const auto& v : {r.l_min, r.l_max, r.avg_corr}) {
      if (v && !(*v >= -1.0 && *v <= 1.0)) report(r, fmt::format("correlation {} outside [-1,1]", *v));
    }
    if (r.n_dropped > r.n_active) report(r, "more dropped than active investors");
    if (r.window_index == first_window[r.category] &&
        (r.node_jaccard_prev || r.edge_change_prev)) {
      report(r, "first window has previous-window metrics");
    }
  }
  return violations;
}

}  // namespace investornet
