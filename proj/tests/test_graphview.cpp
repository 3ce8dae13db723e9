#include <random>

#include <gtest/gtest.h>

#include "mbgame/graphview.hpp"

using namespace mbgame;

namespace {

// A board on which Breaker opens with all of `pairs` in a single move.
GameState with_breaker_edges(std::size_t n, const std::vector<VertexPair>& pairs) {
  if (pairs.empty()) return GameState(n, {1, 1});
  GameState s(n, BiasSpec{1, static_cast<int>(pairs.size()), Player::Breaker});
  std::vector<EdgeClaim> edges;
  for (auto [u, v] : pairs) edges.push_back(EdgeClaim::make(u, v, Player::Breaker));
  s.claim(Player::Breaker, edges);
  return s;
}

struct RandomView {
  GameState state;
  std::vector<Vertex> active;
  std::vector<VertexPair> non_edges;
};

// n <= 60 vertices, a random active window, random non-edges among it and a
// random Breaker graph on the board.
RandomView random_view(std::mt19937_64& rng) {
  const std::size_t n = 2 + rng() % 59;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double p_active = 0.3 + 0.7 * unit(rng);
  const double p_non = 0.5 * unit(rng);
  const double p_breaker = 0.3 * unit(rng);
  std::vector<Vertex> active;
  for (Vertex v = 0; v < n; ++v)
    if (unit(rng) < p_active) active.push_back(v);
  if (active.empty()) active.push_back(static_cast<Vertex>(rng() % n));
  std::vector<VertexPair> breaker;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (unit(rng) < p_breaker) breaker.emplace_back(u, v);
  std::vector<VertexPair> non;
  for (std::size_t i = 0; i < active.size(); ++i)
    for (std::size_t j = i + 1; j < active.size(); ++j)
      if (unit(rng) < p_non) non.emplace_back(active[i], active[j]);
  return RandomView{with_breaker_edges(n, breaker), active, non};
}

GraphView build(const RandomView& rv) {
  GraphView view(rv.state, rv.active);
  for (auto [u, v] : rv.non_edges) view.add_non_edge(u, v);
  return view;
}

void expect_coherent(const GraphView& view) {
  const ViewRecount r = view.recount();
  std::size_t dmax = 0;
  for (Vertex v : view.active()) {
    ASSERT_EQ(view.comp_degree(v), r.comp_degree.at(v)) << "vertex " << v;
    ASSERT_EQ(view.breaker_degree(v), r.breaker_degree.at(v)) << "vertex " << v;
    dmax = std::max(dmax, r.comp_degree.at(v));
  }
  ASSERT_EQ(view.breaker_edges_inside(), r.breaker_edges_inside);
  ASSERT_EQ(view.stats().d_max, dmax);
  ASSERT_EQ(view.stats().n, view.active().size());
}

bool pairwise_adjacent(const GraphView& view, const std::vector<Vertex>& c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (!view.adjacent(c[i], c[j])) return false;
  return true;
}

}  // namespace

TEST(CompDegree, FreshViewIsZero) {
  GameState s(6, {1, 1});
  GraphView view(s);
  for (Vertex v = 0; v < 6; ++v) EXPECT_EQ(view.comp_degree(v), 0u);
}

TEST(CompDegree, CountsDeletedEdgesAndForgetsDeletedVertices) {
  GameState s(6, {1, 1});
  GraphView view(s);
  view.add_non_edge(0, 1);
  view.add_non_edge(0, 2);
  view.add_non_edge(0, 3);
  EXPECT_EQ(view.comp_degree(0), 3u);
  view.remove_vertex(2);
  EXPECT_EQ(view.comp_degree(0), 2u);
  EXPECT_THROW(view.comp_degree(2), Error);
  try {
    view.comp_degree(2);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotActive);
  }
}

TEST(PruneTouched, Examples) {
  {
    GameState s(5, {1, 1});
    GraphView view(s);
    EXPECT_EQ(view.prune_breaker_touched(), 0u);
  }
  {
    GameState s = with_breaker_edges(5, {{1, 3}});
    GraphView view(s);
    EXPECT_LE(view.prune_breaker_touched(), 2u);
    EXPECT_EQ(view.breaker_edges_inside(), 0u);
  }
  {
    // Vertex 4 sits outside the window but is still part of the graph.
    GameState s = with_breaker_edges(5, {{1, 4}});
    GraphView view(s, std::vector<Vertex>{0, 1, 2, 3});
    const std::vector<Vertex> outside{4};
    EXPECT_EQ(view.prune_breaker_touched(outside), 1u);
    EXPECT_FALSE(view.is_active(1));
  }
  {
    // Anchors inside the window are kept; pairs they share with a non-edge do not count.
    GameState s = with_breaker_edges(5, {{0, 1}, {0, 2}});
    GraphView view(s);
    view.add_non_edge(0, 2);
    const std::vector<Vertex> anchors{0};
    EXPECT_EQ(view.prune_breaker_touched(anchors), 1u);
    EXPECT_TRUE(view.is_active(0));
    EXPECT_FALSE(view.is_active(1));
    EXPECT_TRUE(view.is_active(2));
  }
}

TEST(PruneHighDegree, Examples) {
  GameState empty(6, {1, 1});
  GraphView v0(empty);
  EXPECT_EQ(v0.prune_high_breaker_degree(1), 0u);
  EXPECT_THROW(v0.prune_high_breaker_degree(0), Error);

  GameState star = with_breaker_edges(7, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  GraphView v1(star);
  EXPECT_EQ(v1.prune_high_breaker_degree(5), 1u);
  EXPECT_FALSE(v1.is_active(0));
  EXPECT_EQ(v1.breaker_edges_inside(), 0u);
}

TEST(DropBreakerEdges, Examples) {
  GameState empty(5, {1, 1});
  GraphView v0(empty);
  EXPECT_EQ(v0.drop_breaker_edges(), 0u);
  EXPECT_TRUE(v0.non_edge_list().empty());

  // d_B(0) = q - 1 with q = 4.
  GameState s = with_breaker_edges(6, {{0, 1}, {0, 2}, {0, 3}});
  GraphView v1(s);
  v1.add_non_edge(0, 5);
  const std::size_t before = v1.comp_degree(0);
  EXPECT_EQ(v1.breaker_degree(0), 3u);
  EXPECT_EQ(v1.drop_breaker_edges(), 3u);
  EXPECT_EQ(v1.comp_degree(0), before + 3);
  EXPECT_EQ(v1.breaker_edges_inside(), 0u);
  EXPECT_TRUE(v1.is_pure());
}

TEST(GreedyClique, FullViewTakesEverything) {
  GameState s(5, {1, 1});
  GraphView view(s);
  EXPECT_EQ(view.greedy_clique(), (std::vector<Vertex>{0, 1, 2, 3, 4}));
}

TEST(GreedyClique, TargetStopsEarlyOrReportsShortfall) {
  GameState s(6, {1, 1});
  GraphView view(s);
  EXPECT_EQ(view.greedy_clique(3), (std::vector<Vertex>{0, 1, 2}));
  for (Vertex v = 1; v < 6; ++v) view.add_non_edge(0, v);
  try {
    view.greedy_clique(6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientClique);
    EXPECT_NE(std::string(e.what()).find("reached 1 of 6"), std::string::npos);
  }
}

TEST(GreedyClique, TenVerticesDegreeFour) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    GameState s(10, {1, 1});
    GraphView view(s);
    for (int k = 0; k < 40; ++k) {
      Vertex u = rng() % 10, v = rng() % 10;
      if (u == v || view.is_non_edge(u, v)) continue;
      if (view.comp_degree(u) >= 4 || view.comp_degree(v) >= 4) continue;
      view.add_non_edge(u, v);
    }
    ASSERT_LE(view.stats().d_max, 4u);
    const auto c = view.greedy_clique();
    EXPECT_GE(c.size(), 2u);
    EXPECT_TRUE(pairwise_adjacent(view, c));
  }
}

TEST(GreedyClique, FiveCycleOfNonEdges) {
  GameState s(5, {1, 1});
  GraphView view(s);
  for (Vertex v = 0; v < 5; ++v) view.add_non_edge(v, (v + 1) % 5);
  EXPECT_EQ(view.stats().d_max, 2u);
  const auto c = view.greedy_clique();
  EXPECT_GE(c.size(), 2u);
  EXPECT_TRUE(pairwise_adjacent(view, c));

  // Brute-force maximum clique of the view.
  std::size_t best = 0;
  for (unsigned mask = 1; mask < 32; ++mask) {
    std::vector<Vertex> pick;
    for (Vertex v = 0; v < 5; ++v)
      if (mask & (1U << v)) pick.push_back(v);
    if (pairwise_adjacent(view, pick)) best = std::max(best, pick.size());
  }
  EXPECT_EQ(best, 2u);
  EXPECT_EQ(c.size(), best);
}

TEST(ViewJson, RoundTrip) {
  GameState s = with_breaker_edges(8, {{0, 1}, {2, 5}});
  GraphView view(s, std::vector<Vertex>{0, 1, 2, 4, 5, 7});
  view.add_non_edge(4, 7);
  view.add_non_edge(0, 5);
  const auto j = view.to_json();
  EXPECT_EQ(j.dump(), R"({"active":[0,1,2,4,5,7],"non_edges":[[0,5],[4,7]]})");
  GraphView back = GraphView::from_json(s, j);
  EXPECT_EQ(back.active(), view.active());
  EXPECT_EQ(back.non_edge_list(), view.non_edge_list());
  EXPECT_EQ(back.breaker_edges_inside(), view.breaker_edges_inside());
}

TEST(LazySync, FollowsTheBoard) {
  GameState s(6, {1, 1});
  GraphView view(s, std::vector<Vertex>{0, 1, 2, 3});
  s.claim(Player::Maker, {EdgeClaim::make(0, 1, Player::Maker)});
  s.claim(Player::Breaker, {EdgeClaim::make(2, 3, Player::Breaker)});
  s.claim(Player::Maker, {EdgeClaim::make(0, 4, Player::Maker)});
  s.claim(Player::Breaker, {EdgeClaim::make(3, 5, Player::Breaker)});
  EXPECT_EQ(view.breaker_degree(3), 1u);
  EXPECT_EQ(view.breaker_edges_inside(), 1u);
  EXPECT_FALSE(view.is_pure());
  expect_coherent(view);
}

// Randomized properties over 1000 views.

TEST(ViewProperty, CachesMatchRecountUnderMutation) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    RandomView rv = random_view(rng);
    GraphView view = build(rv);
    expect_coherent(view);
    for (int step = 0; step < 6 && !view.empty(); ++step) {
      const auto& act = view.active();
      switch (rng() % 5) {
        case 0: view.remove_vertex(act[rng() % act.size()]); break;
        case 1:
          if (act.size() >= 2) {
            Vertex u = act[rng() % act.size()], v = act[rng() % act.size()];
            if (u != v) view.add_non_edge(u, v);
          }
          break;
        case 2: view.prune_high_breaker_degree(1 + rng() % 4); break;
        case 3: view.drop_breaker_edges(); break;
        case 4: view.prune_breaker_touched(); break;
      }
      expect_coherent(view);
      if (HasFatalFailure()) return;
    }
  }
}

TEST(ViewProperty, GreedyCliqueBound) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    RandomView rv = random_view(rng);
    GraphView view = build(rv);
    const ViewStats st = view.stats();
    const auto c = view.greedy_clique();
    const std::size_t bound = (st.n + st.d_max) / (st.d_max + 1);
    ASSERT_GE(c.size(), bound) << "n=" << st.n << " d=" << st.d_max;
    ASSERT_TRUE(pairwise_adjacent(view, c));
    ASSERT_EQ(view.greedy_clique(), c);  // deterministic
  }
}

TEST(ViewProperty, PruneChargingBounds) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    RandomView rv = random_view(rng);
    const std::size_t t = 1 + rng() % 6;
    {
      GraphView view = build(rv);
      const std::size_t E = view.breaker_edges_inside();
      const std::size_t deleted = view.prune_high_breaker_degree(t);
      ASSERT_LE(deleted * t, E);
      for (Vertex v : view.active()) ASSERT_LT(view.breaker_degree(v), t);
    }
    {
      GraphView view = build(rv);
      const std::size_t E = view.breaker_edges_inside();
      ASSERT_LE(view.prune_breaker_touched(), 2 * E);
      ASSERT_EQ(view.breaker_edges_inside(), 0u);
    }
    {
      GraphView view = build(rv);
      view.prune_high_breaker_degree(t);
      const std::size_t d = view.stats().d_max;
      view.drop_breaker_edges();
      ASSERT_EQ(view.breaker_edges_inside(), 0u);
      ASSERT_LE(view.stats().d_max, d + t - 1);
    }
  }
}
