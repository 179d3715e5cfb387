#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "investornet/corrnet.hpp"

namespace investornet {

struct MetricsRow {
  std::size_t window_index = 0;
  Date window_start{};
  Date window_end{};
  Category category = Category::Merged;
  std::size_t n_active = 0;
  std::size_t n_dropped = 0;
  std::optional<double> l_min;
  std::optional<double> l_max;
  std::optional<double> avg_corr;
  std::optional<double> node_jaccard_prev;
  std::optional<double> edge_change_prev;
  std::optional<double> n_normalized;
};

// |prev ∩ curr| / |prev ∪ curr| over sorted, duplicate-free id lists.
// nullopt when both are empty.
std::optional<double> node_jaccard(std::span<const std::string> prev,
                                   std::span<const std::string> curr);

// Mean |rho_curr - rho_prev| over all pairs of nodes present in both
// networks. nullopt when fewer than two nodes are shared.
std::optional<double> edge_change(const CorrelationNetwork& prev, const CorrelationNetwork& curr);

// Mean of the N(N-1)/2 off-diagonal weights; nullopt for a degenerate network.
std::optional<double> average_edge_weight(const CorrelationNetwork& network);

// Each count divided by the mean count. Throws std::domain_error on an empty
// series or a zero mean.
std::vector<double> normalize_counts(std::span<const std::size_t> counts);

// Post-run bounds and identity checks: Jaccard in [0,1], edge change in
// [0,2], L_min <= L_max, null *_prev fields on each category's first window.
// Returns one message per violation.
std::vector<std::string> validate_rows(std::span<const MetricsRow> rows);

}  // namespace investornet
