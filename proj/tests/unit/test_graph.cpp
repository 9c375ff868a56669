#include <gtest/gtest.h>

#include "stree/errors.hpp"
#include "stree/graph.hpp"
#include "support/fixtures.hpp"

namespace stree {
namespace {

using testing::fig2_graph;
using testing::graph_of;

std::vector<std::string> labels_of(const BipartiteGraph& g, std::span<const NodeIndex> xs,
                                   bool sources) {
  std::vector<std::string> out;
  for (NodeIndex x : xs) out.push_back(sources ? g.source_label(x) : g.target_label(x));
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Graph, DuplicateEdgeCollapses) {
  auto g = graph_of({{"a", "X"}, {"a", "X"}, {"b", "X"}});
  EXPECT_EQ(g.num_sources(), 2u);
  EXPECT_EQ(g.num_targets(), 1u);
  EXPECT_EQ(g.num_edges(), 2u);
}

TEST(Graph, EmptyInput) {
  auto g = graph_of({});
  EXPECT_EQ(g.num_sources(), 0u);
  EXPECT_EQ(g.num_targets(), 0u);
  EXPECT_EQ(g.num_edges(), 0u);
  EXPECT_TRUE(g.empty());
}

TEST(Graph, Fig2Counts) {
  auto g = fig2_graph();
  EXPECT_EQ(g.num_sources(), 5u);
  EXPECT_EQ(g.num_targets(), 3u);
  EXPECT_EQ(g.num_edges(), 15u);
}

TEST(Graph, NeighborsOfTarget) {
  auto g = fig2_graph();
  auto c = *g.find_target("C");
  EXPECT_EQ(labels_of(g, g.neighbors_of_target(NodeId::target(c)), true),
            (std::vector<std::string>{"d", "e", "f", "g", "h"}));

  auto single = graph_of({{"a", "X"}});
  EXPECT_EQ(labels_of(single, single.sources_of(0), true), std::vector<std::string>{"a"});
}

TEST(Graph, IsolatedNodesHaveNoNeighbors) {
  GraphBuilder b;
  b.add_source("lonely");
  b.add_target("alone");
  b.add_edge("a", "X");
  auto g = std::move(b).build();
  EXPECT_TRUE(g.targets_of(*g.find_source("lonely")).empty());
  EXPECT_TRUE(g.sources_of(*g.find_target("alone")).empty());
}

TEST(Graph, NeighborsOfSource) {
  auto g = fig2_graph();
  EXPECT_EQ(labels_of(g, g.neighbors_of_source(NodeId::source(*g.find_source("d"))), false),
            (std::vector<std::string>{"C", "D", "E"}));
  auto two = graph_of({{"a", "X"}, {"a", "Y"}});
  EXPECT_EQ(labels_of(two, two.targets_of(0), false), (std::vector<std::string>{"X", "Y"}));
}

TEST(Graph, LookupErrors) {
  auto g = fig2_graph();
  EXPECT_THROW(g.neighbors_of_target(NodeId::target(3)), LookupError);
  EXPECT_THROW(g.neighbors_of_target(NodeId::source(0)), LookupError);
  EXPECT_THROW(g.neighbors_of_source(NodeId::source(99)), LookupError);
  EXPECT_THROW(g.neighbors_of_source(NodeId::target(0)), LookupError);
  GraphBuilder b;
  EXPECT_THROW(b.add_edge(NodeIndex{0}, NodeIndex{0}), LookupError);
}

TEST(Graph, EmptyLabelIsIngestError) {
  try {
    graph_of({{"a", "X"}, {"", "Y"}});
    FAIL() << "expected IngestError";
  } catch (const IngestError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Graph, Transpose) {
  auto g = fig2_graph();
  auto t = g.transposed();
  EXPECT_EQ(t.num_sources(), 3u);
  EXPECT_EQ(t.num_targets(), 5u);
  EXPECT_EQ(labels_of(t, t.targets_of(*t.find_source("C")), false),
            (std::vector<std::string>{"d", "e", "f", "g", "h"}));
  EXPECT_EQ(t.transposed(), g);
  EXPECT_TRUE(graph_of({}).transposed().empty());
}

TEST(Graph, TransposeSwapsEveryEdge) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = testing::random_graph(7, 5, 0.4, seed);
    auto t = g.transposed();
    ASSERT_EQ(t.num_edges(), g.num_edges());
    for (const Edge& e : g.edges()) EXPECT_TRUE(t.has_edge(e.target, e.source));
  }
}

TEST(Graph, DeterministicInterning) {
  testing::Pairs pairs{{"b", "Y"}, {"a", "X"}, {"b", "X"}, {"c", "Z"}};
  auto g1 = graph_of(pairs);
  auto g2 = graph_of(pairs);
  EXPECT_EQ(g1, g2);
  EXPECT_EQ(g1.source_labels(), (std::vector<std::string>{"b", "a", "c"}));
  EXPECT_EQ(g1.target_labels(), (std::vector<std::string>{"Y", "X", "Z"}));
}

TEST(Graph, AdjacencyIsSortedAndSymmetric) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = testing::random_graph(8, 6, 0.5, seed);
    std::size_t total = 0;
    for (NodeIndex n = 0; n < g.num_sources(); ++n) {
      auto row = g.targets_of(n);
      EXPECT_TRUE(std::is_sorted(row.begin(), row.end()));
      total += row.size();
      for (NodeIndex m : row) {
        auto col = g.sources_of(m);
        EXPECT_TRUE(std::binary_search(col.begin(), col.end(), n));
      }
    }
    EXPECT_EQ(total, g.num_edges());
  }
}

TEST(Graph, BuilderFromGraphKeepsIndices) {
  auto g = fig2_graph();
  GraphBuilder b(g);
  b.add_edge("z", "C");
  auto g2 = std::move(b).build();
  EXPECT_EQ(g2.num_edges(), 16u);
  for (NodeIndex n = 0; n < g.num_sources(); ++n) EXPECT_EQ(g2.source_label(n), g.source_label(n));
}

}  // namespace
}  // namespace stree
