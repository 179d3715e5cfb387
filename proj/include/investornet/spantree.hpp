#pragma once

#include <string>
#include <utility>
#include <vector>

#include "investornet/corrnet.hpp"

namespace investornet {

enum class TreeKind { Min, Max };

std::string_view tree_kind_token(TreeKind kind);  // "min" / "max"

struct TreeEdge {
  std::size_t a = 0;  // node index, a < b
  std::size_t b = 0;
  double weight = 0.0;

  friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
};

struct SpanningTree {
  Window window;
  Category category = Category::Merged;
  TreeKind kind = TreeKind::Max;
  std::vector<std::string> nodes;
  std::vector<TreeEdge> edges;  // in order of acceptance
  double average_weight = 0.0;  // L_min or L_max
};

// Kruskal over the complete graph with union-find. Edges are ranked by
// (weight, a, b); the max tree scans weights descending but keeps (a, b)
// ascending within equal weights. Throws std::invalid_argument if the
// network has fewer than two nodes.
SpanningTree max_spanning_tree(const CorrelationNetwork& network);
SpanningTree min_spanning_tree(const CorrelationNetwork& network);

// Both trees from a single sort of the edge list. Returns {min, max}.
std::pair<SpanningTree, SpanningTree> spanning_trees(const CorrelationNetwork& network);

// Sum of edge weights / (N - 1); throws std::invalid_argument on an empty tree.
double average_tree_weight(const SpanningTree& tree);
double average_tree_weight(std::span<const TreeEdge> edges);

// d = sqrt(2 (1 - rho)), in [0, 2]. Not used by the pipeline.
CorrelationNetwork distance_transform(const CorrelationNetwork& network);

}  // namespace investornet
