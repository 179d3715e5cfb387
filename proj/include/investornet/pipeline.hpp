#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "investornet/ingest.hpp"
#include "investornet/metrics.hpp"
#include "investornet/spantree.hpp"
#include "investornet/windows.hpp"

namespace investornet {

struct NodeRecord {
  std::size_t window_index = 0;
  Category category = Category::Merged;
  std::string owner_id;
  double node_volume = 0.0;
};

struct PipelineOptions {
  WindowSpec spec;
  unsigned jobs = 1;
  // Keep spanning trees and the per-window node table in the result.
  bool collect_trees = false;
  // Receives every network in (window_index, category) order, on the
  // calling thread.
  std::function<void(const CorrelationNetwork&)> network_sink;
};

struct PipelineResult {
  std::size_t day_count = 0;
  std::vector<Window> windows;
  std::vector<MetricsRow> rows;  // ordered by (window_index, category)
  std::vector<SpanningTree> trees;
  std::vector<NodeRecord> nodes;
  std::size_t owners = 0;
  std::size_t dropped_owners = 0;
  // Network weights found outside [-1, 1] or asymmetric. Always 0 unless a
  // numerical invariant is broken.
  std::size_t rho_violations = 0;
};

// Calendar, net volumes, categories, windows, networks, trees and metrics for
// every window and each of HH, NFI, FI and MERGED. Degenerate windows yield
// null metrics. Each row uses only data up to its window's end date, except
// n_normalized, which divides by the mean count over the whole run.
PipelineResult run_pipeline(std::span<const TransactionRecord> records,
                            const CategoryMapping& mapping, const PipelineOptions& options);

}  // namespace investornet
