#include "investornet/spantree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace investornet {

std::string_view tree_kind_token(TreeKind kind) {
  return kind == TreeKind::Min ? "min" : "max";
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }

  std::uint32_t find(std::uint32_t x) {
    std::uint32_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      auto next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rank_;
};

struct RankedEdge {
  double weight;
  std::uint32_t a;
  std::uint32_t b;
};

std::vector<RankedEdge> sorted_edges(const CorrelationNetwork& net) {
  const std::size_t n = net.size();
  std::vector<RankedEdge> edges;
  edges.reserve(net.edge_count());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      edges.push_back({net.weight(i, j), static_cast<std::uint32_t>(i),
                       static_cast<std::uint32_t>(j)});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const RankedEdge& x, const RankedEdge& y) {
    if (x.weight != y.weight) return x.weight < y.weight;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  return edges;
}

SpanningTree empty_tree(const CorrelationNetwork& net, TreeKind kind) {
  if (net.degenerate()) throw std::invalid_argument("degenerate network");
  SpanningTree tree;
  tree.window = net.window;
  tree.category = net.category;
  tree.kind = kind;
  tree.nodes = net.nodes;
  tree.edges.reserve(net.size() - 1);
  return tree;
}

bool accept(DisjointSets& sets, SpanningTree& tree, const RankedEdge& e, std::size_t target) {
  if (sets.unite(e.a, e.b)) tree.edges.push_back({e.a, e.b, e.weight});
  return tree.edges.size() == target;
}

SpanningTree kruskal_min(const CorrelationNetwork& net, const std::vector<RankedEdge>& edges) {
  auto tree = empty_tree(net, TreeKind::Min);
  const std::size_t target = net.size() - 1;
  DisjointSets sets(net.size());
  for (const auto& e : edges) {
    if (accept(sets, tree, e, target)) break;
  }
  tree.average_weight = average_tree_weight(tree);
  return tree;
}

SpanningTree kruskal_max(const CorrelationNetwork& net, const std::vector<RankedEdge>& edges) {
  auto tree = empty_tree(net, TreeKind::Max);
  const std::size_t target = net.size() - 1;
  DisjointSets sets(net.size());
  // Walk runs of equal weight from the heaviest down, each run in (a, b) order.
  std::size_t end = edges.size();
  bool done = false;
  while (end > 0 && !done) {
    std::size_t begin = end - 1;
    while (begin > 0 && edges[begin - 1].weight == edges[end - 1].weight) --begin;
    for (std::size_t k = begin; k < end && !done; ++k) done = accept(sets, tree, edges[k], target);
    end = begin;
  }
  tree.average_weight = average_tree_weight(tree);
  return tree;
}

}  // namespace

SpanningTree max_spanning_tree(const CorrelationNetwork& network) {
  if (network.degenerate()) throw std::invalid_argument("degenerate network");
  return kruskal_max(network, sorted_edges(network));
}

SpanningTree min_spanning_tree(const CorrelationNetwork& network) {
  if (network.degenerate()) throw std::invalid_argument("degenerate network");
  return kruskal_min(network, sorted_edges(network));
}

std::pair<SpanningTree, SpanningTree> spanning_trees(const CorrelationNetwork& network) {
  if (network.degenerate()) throw std::invalid_argument("degenerate network");
  const auto edges = sorted_edges(network);
  return {kruskal_min(network, edges), kruskal_max(network, edges)};
}

double average_tree_weight(std::span<const TreeEdge> edges) {
  if (edges.empty()) throw std::invalid_argument("empty tree");
  double sum = 0.0;
  for (const auto& e : edges) sum += e.weight;
  return sum / static_cast<double>(edges.size());
}

double average_tree_weight(const SpanningTree& tree) { return average_tree_weight(tree.edges); }

CorrelationNetwork distance_transform(const CorrelationNetwork& network) {
  CorrelationNetwork out = network;
  const std::size_t n = network.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.weights[i * n + j] =
          i == j ? 0.0 : std::sqrt(std::max(0.0, 2.0 * (1.0 - network.weight(i, j))));
    }
  }
  return out;
}

}  // namespace investornet
