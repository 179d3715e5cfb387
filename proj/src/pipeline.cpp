#include "investornet/pipeline.hpp"

#include <array>
#include <optional>

#include "investornet/parallel.hpp"

namespace investornet {

namespace {

constexpr std::size_t kGroups = kNetworkGroups.size();

std::size_t count_rho_violations(const CorrelationNetwork& net) {
  std::size_t bad = 0;
  const std::size_t n = net.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = net.weight(i, j);
      if (!(r >= -1.0 && r <= 1.0) || r != net.weight(j, i)) ++bad;
    }
  }
  return bad;
}

struct GroupState {
  std::vector<std::string> active;
  std::optional<CorrelationNetwork> network;
};

}  // namespace

PipelineResult run_pipeline(std::span<const TransactionRecord> records,
                            const CategoryMapping& mapping, const PipelineOptions& options) {
  options.spec.validate();
  PipelineResult result;

  const auto calendar = build_calendar(records);
  const auto series = aggregate_net_volumes(records, calendar);
  const auto categories = categorize(records, mapping);
  result.day_count = calendar.size();
  result.owners = series.size();
  result.dropped_owners = categories.dropped_owners;
  result.windows = enumerate_windows(calendar, options.spec);

  const PanelSource source(series, categories, options.spec);
  std::array<GroupState, kGroups> previous;
  std::array<std::vector<std::size_t>, kGroups> counts;

  for (const auto& window : result.windows) {
    std::array<GroupState, kGroups> current;
    std::array<MetricsRow, kGroups> rows;
    for (std::size_t g = 0; g < kGroups; ++g) {
      const auto panel = build_panel(window, kNetworkGroups[g], source);
      current[g].active = panel.investors;
      current[g].network = correlation_network(panel, options.jobs);
      result.rho_violations += count_rho_violations(*current[g].network);
      if (options.network_sink) options.network_sink(*current[g].network);
    }

    std::array<std::optional<std::pair<SpanningTree, SpanningTree>>, kGroups> trees;
    parallel_for(kGroups, options.jobs, [&](std::size_t g) {
      const auto& net = *current[g].network;
      auto& row = rows[g];
      row.window_index = window.index;
      row.window_start = window.start_date;
      row.window_end = window.end_date;
      row.category = kNetworkGroups[g];
      row.n_active = current[g].active.size();
      row.n_dropped = net.dropped_zero_variance.size();
      row.avg_corr = average_edge_weight(net);
      if (!net.degenerate()) {
        trees[g] = spanning_trees(net);
        row.l_min = trees[g]->first.average_weight;
        row.l_max = trees[g]->second.average_weight;
      }
      if (previous[g].network) {
        row.node_jaccard_prev = node_jaccard(previous[g].active, current[g].active);
        row.edge_change_prev = edge_change(*previous[g].network, net);
      }
    });

    for (std::size_t g = 0; g < kGroups; ++g) {
      counts[g].push_back(rows[g].n_active);
      result.rows.push_back(rows[g]);
      if (options.collect_trees) {
        const auto& net = *current[g].network;
        for (std::size_t i = 0; i < net.size(); ++i) {
          result.nodes.push_back({window.index, net.category, net.nodes[i], net.node_volume[i]});
        }
        if (trees[g]) {
          result.trees.push_back(std::move(trees[g]->first));
          result.trees.push_back(std::move(trees[g]->second));
        }
      }
    }
    previous = std::move(current);
  }

  for (std::size_t g = 0; g < kGroups; ++g) {
    double total = 0.0;
    for (auto c : counts[g]) total += static_cast<double>(c);
    if (total == 0.0) continue;  // category never active: n_normalized stays null
    const auto normalized = normalize_counts(counts[g]);
    for (std::size_t t = 0; t < normalized.size(); ++t) {
      result.rows[t * kGroups + g].n_normalized = normalized[t];
    }
  }
  return result;
}

}  // namespace investornet
