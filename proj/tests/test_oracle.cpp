#include <gtest/gtest.h>

#include <map>
#include <random>

#include "mbgame/maker.hpp"
#include "mbgame/oracle.hpp"

using namespace mbgame;

namespace {

// Deliberately plain minimax over a character board, sharing nothing with
// the solver under test. '0' free, 'B' Breaker, 'M' Maker (plain),
// 'F'/'R' Maker oriented low->high / high->low.
class NaiveSolver {
 public:
  NaiveSolver(std::size_t n, BiasSpec bias, std::optional<GoalTournament> goal, std::size_t q)
      : n_(n), bias_(bias), goal_(std::move(goal)), q_(q) {
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) pairs_.emplace_back(u, v);
  }

  // -1 when Breaker wins, else the Maker moves still needed.
  int solve() { return value(std::string(pairs_.size(), '0'), bias_.first_player); }

 private:
  char at(const std::string& s, Vertex u, Vertex v) const {
    for (std::size_t i = 0; i < pairs_.size(); ++i)
      if (pairs_[i] == std::pair<Vertex, Vertex>{std::min(u, v), std::max(u, v)}) return s[i];
    return '?';
  }

  bool maker_arc(const std::string& s, Vertex from, Vertex to) const {
    const char c = at(s, from, to);
    return from < to ? c == 'F' : c == 'R';
  }

  bool won(const std::string& s) const {
    std::vector<Vertex> pick;
    std::function<bool(Vertex)> rec = [&](Vertex next) -> bool {
      const std::size_t want = goal_ ? goal_->q() : q_;
      if (pick.size() == want) return check(s, pick);
      for (Vertex v = next; v < n_; ++v) {
        pick.push_back(v);
        if (rec(v + 1)) return true;
        pick.pop_back();
      }
      return false;
    };
    return rec(0);
  }

  bool check(const std::string& s, std::vector<Vertex> pick) const {
    if (!goal_) {
      for (std::size_t i = 0; i < pick.size(); ++i)
        for (std::size_t j = i + 1; j < pick.size(); ++j)
          if (at(s, pick[i], pick[j]) != 'M') return false;
      return true;
    }
    std::sort(pick.begin(), pick.end());
    do {
      bool ok = true;
      for (std::size_t i = 0; i < pick.size() && ok; ++i)
        for (std::size_t j = 0; j < pick.size() && ok; ++j)
          if (i != j && goal_->arc(i, j)) ok = maker_arc(s, pick[i], pick[j]);
      if (ok) return true;
    } while (std::next_permutation(pick.begin(), pick.end()));
    return false;
  }

  int value(const std::string& s, Player turn) {
    const std::string key = s + (turn == Player::Maker ? 'm' : 'b');
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    int result;
    if (won(s)) {
      result = 0;
    } else {
      std::vector<std::size_t> free;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == '0') free.push_back(i);
      if (free.empty()) {
        result = -1;
      } else {
        const std::size_t k = std::min<std::size_t>(free.size(), static_cast<std::size_t>(bias_.per_move(turn)));
        result = turn == Player::Maker ? -1 : 0;
        std::vector<std::size_t> chosen;
        std::function<bool(std::size_t)> choose = [&](std::size_t from) -> bool {
          if (chosen.size() == k) return explore(s, turn, chosen, 0, result);
          for (std::size_t i = from; i < free.size(); ++i) {
            chosen.push_back(free[i]);
            if (choose(i + 1)) return true;
            chosen.pop_back();
          }
          return false;
        };
        choose(0);
      }
    }
    memo_[key] = result;
    return result;
  }

  // Assigns marks to the chosen pairs (both directions for oriented Maker
  // edges) and folds the child value into `best`. Returns true to stop early.
  bool explore(std::string s, Player turn, const std::vector<std::size_t>& chosen, std::size_t idx, int& best) {
    if (idx == chosen.size()) {
      const int child = value(s, other(turn));
      if (turn == Player::Maker) {
        if (child >= 0 && (best < 0 || child + 1 < best)) best = child + 1;
        return false;
      }
      if (child < 0) {
        best = -1;
        return true;
      }
      best = std::max(best, child);
      return false;
    }
    if (turn == Player::Breaker) {
      s[chosen[idx]] = 'B';
      return explore(s, turn, chosen, idx + 1, best);
    }
    for (char c : goal_ ? std::string("FR") : std::string("M")) {
      s[chosen[idx]] = c;
      if (explore(s, turn, chosen, idx + 1, best)) return true;
    }
    return false;
  }

  std::size_t n_;
  BiasSpec bias_;
  std::optional<GoalTournament> goal_;
  std::size_t q_;
  std::vector<std::pair<Vertex, Vertex>> pairs_;
  std::map<std::string, int> memo_;
};

int as_int(const SolvedPosition& s) { return s.winner == Player::Maker ? *s.min_maker_moves : -1; }

// The same claims with every vertex sent through `perm`.
GameState relabel(const GameState& s, const std::vector<Vertex>& perm) {
  GameState t(s.n(), s.bias(), s.variant());
  for (const MoveRecord& rec : s.transcript()) {
    std::vector<EdgeClaim> edges;
    for (const EdgeClaim& e : rec.edges) {
      std::optional<VertexPair> dir;
      if (e.orientation) dir = VertexPair{perm[e.orientation->first], perm[e.orientation->second]};
      edges.push_back(EdgeClaim::make(perm[e.u], perm[e.v], e.owner, dir));
    }
    t.claim(rec.player, edges);
  }
  return t;
}

GameState random_position(std::size_t n, BiasSpec bias, Variant variant, std::size_t moves, std::mt19937_64& gen) {
  GameState s(n, bias, variant);
  for (std::size_t k = 0; k < moves && s.unclaimed_count() > 1; ++k) {
    const Player p = s.to_move();
    std::vector<EdgeClaim> edges;
    std::set<std::pair<Vertex, Vertex>> used;
    while (edges.size() < s.move_budget()) {
      Vertex u = static_cast<Vertex>(gen() % n), v = static_cast<Vertex>(gen() % n);
      if (u == v || !s.is_unclaimed(u, v) || !used.emplace(std::min(u, v), std::max(u, v)).second) continue;
      std::optional<VertexPair> dir;
      if (variant == Variant::Oriented) dir = VertexPair{u, v};
      edges.push_back(EdgeClaim::make(u, v, p, dir));
    }
    s.claim(p, edges);
  }
  return s;
}

}  // namespace

TEST(CliqueOracle, Fixtures) {
  struct Row {
    std::size_t n, q;
    int m, b;
    Player first;
    int expect;  // -1: Breaker wins
  };
  const Player M = Player::Maker, B = Player::Breaker;
  const Row rows[] = {
      {3, 2, 1, 1, M, 1},  {2, 2, 1, 1, B, -1}, {3, 2, 1, 1, B, 1},  {4, 3, 1, 1, M, -1}, {4, 3, 1, 1, B, -1},
      {5, 3, 1, 1, M, 4},  {5, 3, 1, 1, B, 4},  {6, 3, 1, 1, M, 4},  {6, 3, 1, 1, B, 4},  {6, 4, 1, 1, M, -1},
      {6, 3, 1, 2, M, -1}, {6, 3, 2, 1, M, 2},  {5, 4, 2, 1, M, -1},
  };
  for (const Row& r : rows)
    EXPECT_EQ(as_int(solve_clique_game(r.n, r.q, {r.m, r.b, r.first})), r.expect)
        << "n=" << r.n << " q=" << r.q << " bias " << r.m << ":" << r.b;
}

TEST(CliqueOracle, AgreesWithNaiveMinimax) {
  for (std::size_t n = 2; n <= 5; ++n)
    for (std::size_t q = 2; q <= 4; ++q)
      for (BiasSpec bias : {BiasSpec{1, 1}, BiasSpec{1, 1, Player::Breaker}, BiasSpec{2, 1}, BiasSpec{1, 2}}) {
        NaiveSolver naive(n, bias, std::nullopt, q);
        EXPECT_EQ(as_int(solve_clique_game(n, q, bias)), naive.solve())
            << "n=" << n << " q=" << q << " bias " << bias.maker_edges << ":" << bias.breaker_edges;
      }
}

TEST(CliqueOracle, TrivialTargets) {
  EXPECT_EQ(as_int(solve_clique_game(4, 1)), 0);
  EXPECT_EQ(as_int(solve_clique_game(3, 4)), -1);
}

TEST(CliqueOracle, RelabelingInvariance) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 4 + gen() % 3;
    const BiasSpec bias{1 + static_cast<int>(gen() % 2), 1 + static_cast<int>(gen() % 2)};
    const GameState s = random_position(n, bias, Variant::Plain, gen() % 5, gen);
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    const GameState t = relabel(s, perm);
    EXPECT_EQ(canonical_key(s), canonical_key(t));
    EXPECT_EQ(solve_clique_position(s, 3), solve_clique_position(t, 3));
  }
}

TEST(CliqueOracle, MonotoneInBoardSize) {
  for (std::size_t q = 2; q <= 4; ++q)
    for (Player first : {Player::Maker, Player::Breaker})
      for (std::size_t n = 2; n < 6; ++n)
        if (solve_clique_game(n, q, {1, 1, first}).winner == Player::Maker) {
          EXPECT_EQ(solve_clique_game(n + 1, q, {1, 1, first}).winner, Player::Maker) << n << " " << q;
        }
}

TEST(CliqueOracle, BoardTooLarge) {
  try {
    solve_clique_game(7, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoardTooLarge);
  }
  EXPECT_THROW(canonical_key(GameState(9, {1, 1})), Error);
}

TEST(TournamentOracle, Fixtures) {
  const Player M = Player::Maker, B = Player::Breaker;
  EXPECT_EQ(as_int(solve_tournament_game(4, GoalTournament::transitive(1))), 0);
  EXPECT_EQ(as_int(solve_tournament_game(3, GoalTournament::transitive(2), M)), 1);
  EXPECT_EQ(as_int(solve_tournament_game(3, GoalTournament::transitive(2), B)), 1);
  EXPECT_EQ(as_int(solve_tournament_game(2, GoalTournament::transitive(2), B)), -1);
  EXPECT_EQ(as_int(solve_tournament_game(4, GoalTournament::transitive(3), M)), -1);
  EXPECT_EQ(as_int(solve_tournament_game(5, GoalTournament::transitive(3), M)), 4);
  EXPECT_EQ(as_int(solve_tournament_game(5, GoalTournament::cyclic3(), M)), 4);
  EXPECT_EQ(as_int(solve_tournament_game(5, GoalTournament::transitive(3), B)), 4);
  EXPECT_EQ(as_int(solve_tournament_game(5, GoalTournament::cyclic3(), B)), -1);
}

TEST(TournamentOracle, GoalRelabelingKeepsTheOutcome) {
  // Every labeling of a transitive triangle, and both cyclic ones.
  std::vector<std::size_t> p{0, 1, 2};
  do {
    GoalTournament t(3), c(3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) t.set_arc(p[i], p[j]);
    for (std::size_t i = 0; i < 3; ++i) c.set_arc(p[i], p[(i + 1) % 3]);
    for (Player first : {Player::Maker, Player::Breaker}) {
      EXPECT_EQ(solve_tournament_game(5, t, first), solve_tournament_game(5, GoalTournament::transitive(3), first));
      EXPECT_EQ(solve_tournament_game(5, c, first), solve_tournament_game(5, GoalTournament::cyclic3(), first));
    }
  } while (std::next_permutation(p.begin(), p.end()));
}

TEST(TournamentOracle, AgreesWithNaiveMinimax) {
  GoalTournament back(2);
  back.set_arc(1, 0);
  for (std::size_t n = 2; n <= 4; ++n)
    for (const GoalTournament& goal : {GoalTournament::transitive(2), back, GoalTournament::transitive(3), GoalTournament::cyclic3()})
      for (Player first : {Player::Maker, Player::Breaker}) {
        NaiveSolver naive(n, {1, 1, first}, goal, 0);
        EXPECT_EQ(as_int(solve_tournament_game(n, goal, first)), naive.solve()) << "n=" << n << " q=" << goal.q();
      }
}

TEST(TournamentOracle, BreakerOrientationIsInert) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 30; ++trial) {
    const GameState s = random_position(5, {1, 1}, Variant::Oriented, gen() % 4, gen);
    GameState flipped(5, s.bias(), Variant::Oriented);
    for (const MoveRecord& rec : s.transcript()) {
      std::vector<EdgeClaim> edges = rec.edges;
      for (EdgeClaim& e : edges)
        if (e.owner == Player::Breaker) e.orientation = VertexPair{e.orientation->second, e.orientation->first};
      flipped.claim(rec.player, edges);
    }
    EXPECT_EQ(solve_tournament_position(s, GoalTournament::cyclic3()).winner,
              solve_tournament_position(flipped, GoalTournament::cyclic3()).winner);
  }
}

TEST(TournamentOracle, Rejections) {
  EXPECT_THROW(solve_tournament_game(6, GoalTournament::transitive(2)), Error);
  EXPECT_THROW(solve_tournament_game(5, GoalTournament::transitive(4)), Error);
  EXPECT_THROW(solve_tournament_position(GameState(4, {1, 1}), GoalTournament::transitive(2)), Error);
}

TEST(EngineAgreement, TrivialTournamentPlayStaysWinning) {
  // Every position a winning strategy passes through must be a Maker win.
  GoalTournament back(2);
  back.set_arc(1, 0);
  for (std::size_t n = 2; n <= 5; ++n)
    for (const GoalTournament& goal : {GoalTournament::transitive(1), GoalTournament::transitive(2), back})
      for (AdversaryKind kind : {AdversaryKind::Random, AdversaryKind::GreedySpoiler, AdversaryKind::CliqueBlocker}) {
        GameState s(n, {1, 1}, Variant::Oriented);
        auto br = make_adversary(kind, n);
        Match match(s, *br);
        const TournamentRun run = play_tournament(match, goal);
        ASSERT_TRUE(maker_has_tournament(s, run.mapping, goal));
        const auto final_value = solve_tournament_position(s, goal);
        EXPECT_EQ(final_value.winner, Player::Maker);
        EXPECT_EQ(final_value.min_maker_moves, 0);
        const GameState start(n, {1, 1}, Variant::Oriented);
        EXPECT_EQ(*solve_tournament_position(start, goal).min_maker_moves, static_cast<int>(run.maker_moves));
      }
}
