#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "investornet/windows.hpp"

namespace investornet {

// Thrown by pearson() when either input is constant.
class UndefinedCorrelation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Product-moment correlation, clamped to [-1, 1]. Requires equal lengths >= 2.
double pearson(std::span<const double> x, std::span<const double> y);

// Complete weighted graph of one window. Nodes are sorted by owner id, so node
// index order equals lexicographic owner order.
struct CorrelationNetwork {
  Window window;
  Category category = Category::Merged;
  std::vector<std::string> nodes;
  std::vector<double> weights;  // nodes.size()^2, symmetric; diagonal unused (1.0)
  std::vector<std::string> dropped_zero_variance;
  std::vector<double> node_volume;

  std::size_t size() const { return nodes.size(); }
  double weight(std::size_t i, std::size_t j) const { return weights[i * nodes.size() + j]; }
  bool degenerate() const { return nodes.size() < 2; }
  std::size_t edge_count() const { return nodes.empty() ? 0 : nodes.size() * (nodes.size() - 1) / 2; }
};

// All pairwise correlations of the panel rows after removing constant rows.
// Every weight depends only on its two rows, so the result is bit-identical
// for any `jobs`.
CorrelationNetwork correlation_network(const WindowPanel& panel, unsigned jobs = 1);

// Builds a network from explicit weights (row-major n x n, symmetric).
CorrelationNetwork make_network(std::vector<std::string> nodes, std::vector<double> weights);

}  // namespace investornet
