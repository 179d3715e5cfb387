#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "investornet/oracle.hpp"
#include "investornet/spantree.hpp"

using namespace investornet;

namespace {

using EdgeSet = std::set<std::pair<std::size_t, std::size_t>>;

EdgeSet edge_set(const SpanningTree& tree) {
  EdgeSet out;
  for (const auto& e : tree.edges) out.emplace(e.a, e.b);
  return out;
}

double total(const SpanningTree& tree) {
  double sum = 0.0;
  for (const auto& e : tree.edges) sum += e.weight;
  return sum;
}

CorrelationNetwork triangle() {
  // A, B, C with rho(AB)=0.9, rho(AC)=0.5, rho(BC)=0.1.
  return make_network({"A", "B", "C"}, {1.0, 0.9, 0.5, 0.9, 1.0, 0.1, 0.5, 0.1, 1.0});
}

// Random symmetric network with distinct dyadic weights in (-1, 1).
CorrelationNetwork random_network(std::mt19937_64& rng, std::size_t n) {
  std::vector<int> pool(2047);
  std::iota(pool.begin(), pool.end(), -1023);
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<std::string> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back("n" + std::to_string(10 + i));
  std::vector<double> w(n * n, 1.0);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      w[i * n + j] = w[j * n + i] = pool[next++] / 1024.0;
    }
  }
  return make_network(std::move(nodes), std::move(w));
}

CorrelationNetwork mapped(const CorrelationNetwork& net, double (*f)(double)) {
  auto out = net;
  for (std::size_t i = 0; i < net.size(); ++i) {
    for (std::size_t j = 0; j < net.size(); ++j) {
      if (i != j) out.weights[i * net.size() + j] = f(net.weight(i, j));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("max tree of the triangle") {
  const auto tree = max_spanning_tree(triangle());
  CHECK(edge_set(tree) == EdgeSet{{0, 1}, {0, 2}});
  CHECK(total(tree) == doctest::Approx(1.4));
  CHECK(tree.average_weight == doctest::Approx(0.7));
  CHECK(tree.kind == TreeKind::Max);
}

TEST_CASE("min tree of the triangle") {
  const auto tree = min_spanning_tree(triangle());
  CHECK(edge_set(tree) == EdgeSet{{1, 2}, {0, 2}});
  CHECK(total(tree) == doctest::Approx(0.6));
  CHECK(tree.average_weight == doctest::Approx(0.3));
  CHECK(tree.kind == TreeKind::Min);
}

TEST_CASE("two nodes give the single edge") {
  const auto net = make_network({"a", "b"}, {1.0, -0.45, -0.45, 1.0});
  for (const auto& tree : {max_spanning_tree(net), min_spanning_tree(net)}) {
    REQUIRE(tree.edges.size() == 1);
    CHECK(tree.edges[0] == TreeEdge{0, 1, -0.45});
    CHECK(tree.average_weight == -0.45);
  }
}

TEST_CASE("degenerate networks are rejected") {
  CHECK_THROWS_WITH_AS(max_spanning_tree(make_network({"a"}, {1.0})), "degenerate network",
                       std::invalid_argument);
  CHECK_THROWS_AS(min_spanning_tree(make_network({}, {})), std::invalid_argument);
  CHECK_THROWS_AS(spanning_trees(make_network({"a"}, {1.0})), std::invalid_argument);
}

TEST_CASE("equal weights pick the lexicographically smallest edge sequence") {
  std::vector<double> w(16, 0.3);
  for (std::size_t i = 0; i < 4; ++i) w[i * 4 + i] = 1.0;
  const auto net = make_network({"a", "b", "c", "d"}, w);
  const std::vector<TreeEdge> expected{{0, 1, 0.3}, {0, 2, 0.3}, {0, 3, 0.3}};
  const auto max_tree = max_spanning_tree(net);
  const auto min_tree = min_spanning_tree(net);
  CHECK(max_tree.edges == expected);
  CHECK(min_tree.edges == expected);
  CHECK(total(max_tree) == doctest::Approx(0.9));
  CHECK(max_tree.average_weight == doctest::Approx(0.3));
}

TEST_CASE("average_tree_weight") {
  const std::vector<TreeEdge> a{{0, 1, 0.9}, {0, 2, 0.5}};
  const std::vector<TreeEdge> b{{0, 1, 0.1}, {1, 2, 0.5}};
  const std::vector<TreeEdge> c{{0, 1, -0.45}};
  CHECK(average_tree_weight(a) == doctest::Approx(0.7));
  CHECK(average_tree_weight(b) == doctest::Approx(0.3));
  CHECK(average_tree_weight(c) == -0.45);
  CHECK_THROWS_AS(average_tree_weight(std::span<const TreeEdge>{}), std::invalid_argument);
}

TEST_CASE("distance_transform") {
  const auto net = make_network({"a", "b", "c"}, {1.0, 1.0, -1.0, 1.0, 1.0, 0.5, -1.0, 0.5, 1.0});
  const auto d = distance_transform(net);
  CHECK(d.weight(0, 1) == 0.0);
  CHECK(d.weight(0, 2) == 2.0);
  CHECK(d.weight(1, 2) == doctest::Approx(1.0));
}

TEST_CASE("spanning_trees matches the single-kind functions") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 200; ++round) {
    const auto net = random_network(rng, 2 + rng() % 30);
    const auto [min_tree, max_tree] = spanning_trees(net);
    CHECK(min_tree.edges == min_spanning_tree(net).edges);
    CHECK(max_tree.edges == max_spanning_tree(net).edges);
    CHECK(min_tree.average_weight <= max_tree.average_weight);
  }
}

TEST_CASE("trees agree with brute-force enumeration") {
  std::mt19937_64 rng(29);
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = 2 + rng() % 6;
    const auto net = random_network(rng, n);
    for (auto kind : {TreeKind::Min, TreeKind::Max}) {
      const auto tree = kind == TreeKind::Max ? max_spanning_tree(net) : min_spanning_tree(net);
      const auto ref = oracle::brute_force_tree(n, net.weights, kind);
      CHECK(static_cast<long double>(total(tree)) == ref.total);
      const auto set = edge_set(tree);
      const std::vector<std::pair<std::size_t, std::size_t>> edges(set.begin(), set.end());
      CHECK(edges == ref.edges);
    }
  }
}

TEST_CASE("tree structure properties") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 2 + rng() % 40;
    const auto net = random_network(rng, n);
    const auto max_tree = max_spanning_tree(net);
    const auto min_tree = min_spanning_tree(net);

    // N - 1 edges, a < b, and the tree connects every node.
    for (const auto& tree : {max_tree, min_tree}) {
      REQUIRE(tree.edges.size() == n - 1);
      std::vector<std::size_t> parent(n);
      std::iota(parent.begin(), parent.end(), std::size_t{0});
      auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x];
        return x;
      };
      for (const auto& e : tree.edges) {
        CHECK(e.a < e.b);
        CHECK(e.weight == net.weight(e.a, e.b));
        const auto ra = find(e.a), rb = find(e.b);
        CHECK(ra != rb);
        parent[ra] = rb;
      }
      CHECK(tree.nodes == net.nodes);
    }

    // Duality under d = sqrt(2 (1 - rho)).
    CHECK(edge_set(max_tree) == edge_set(min_spanning_tree(distance_transform(net))));

    // Negation swaps min and max.
    const auto negated = mapped(net, [](double w) { return -w; });
    CHECK(edge_set(min_spanning_tree(negated)) == edge_set(max_tree));
    CHECK(edge_set(max_spanning_tree(negated)) == edge_set(min_tree));

    // A strictly increasing relabeling keeps both edge sets.
    const auto relabeled = mapped(net, [](double w) { return std::tanh(3.0 * w) + w * w * w; });
    CHECK(edge_set(max_spanning_tree(relabeled)) == edge_set(max_tree));
    CHECK(edge_set(min_spanning_tree(relabeled)) == edge_set(min_tree));

    CHECK(min_tree.average_weight <= max_tree.average_weight);
  }
}
