#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "mbgame/engine.hpp"
#include "mbgame/tournament.hpp"

namespace mbgame {

struct SolvedPosition {
  std::string key;
  Player winner = Player::Breaker;
  std::optional<int> min_maker_moves;  // set iff Maker wins

  friend bool operator==(const SolvedPosition&, const SolvedPosition&) = default;
};

inline constexpr std::size_t kOracleMaxCliqueBoard = 6;
inline constexpr std::size_t kOracleMaxTournamentBoard = 5;

namespace detail {

// Pair (u,v), u<v, of an n-vertex board to its edge index in lexicographic order.
struct EdgeIndex {
  std::size_t n = 0;
  std::vector<std::vector<int>> id;
  std::vector<std::pair<Vertex, Vertex>> ends;

  explicit EdgeIndex(std::size_t n_) : n(n_), id(n_, std::vector<int>(n_, -1)) {
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) {
        id[u][v] = id[v][u] = static_cast<int>(ends.size());
        ends.emplace_back(u, v);
      }
  }
  std::size_t size() const { return ends.size(); }
};

// Exhaustive minimax over atomic moves. Values are the number of further
// Maker moves needed to win against best defence; kLost means Breaker wins.
class MinimaxSolver {
 public:
  static constexpr std::uint8_t kUnknown = 255;
  static constexpr std::uint8_t kLost = 254;

  using GoalTest = std::function<bool(std::uint32_t maker, std::uint32_t forward)>;

  MinimaxSolver(std::size_t edges, bool oriented, BiasSpec bias, GoalTest goal)
      : edges_(edges), oriented_(oriented), bias_(bias), goal_(std::move(goal)) {
    const std::uint64_t base = oriented ? 4 : 3;
    pow_.resize(edges + 1, 1);
    for (std::size_t i = 1; i <= edges; ++i) pow_[i] = pow_[i - 1] * base;
    memo_.assign(pow_[edges] * 2, kUnknown);
    full_ = edges == 32 ? ~0U : ((1U << edges) - 1U);
  }

  std::uint8_t solve(std::uint32_t maker, std::uint32_t forward, std::uint32_t breaker, Player turn) {
    std::uint64_t code = 0;
    for (std::size_t e = 0; e < edges_; ++e) code += digit(maker, forward, breaker, e) * pow_[e];
    return search(maker, forward, breaker, code, turn);
  }

 private:
  std::uint64_t digit(std::uint32_t maker, std::uint32_t forward, std::uint32_t breaker, std::size_t e) const {
    const std::uint32_t bit = 1U << e;
    if (maker & bit) return oriented_ ? ((forward & bit) ? 1 : 2) : 1;
    if (breaker & bit) return oriented_ ? 3 : 2;
    return 0;
  }

  std::uint8_t search(std::uint32_t maker, std::uint32_t forward, std::uint32_t breaker, std::uint64_t code,
                      Player turn) {
    if (goal_(maker, forward)) return 0;
    const std::uint32_t free = full_ & ~(maker | breaker);
    if (free == 0) return kLost;
    std::uint8_t& slot = memo_[code * 2 + (turn == Player::Maker ? 0 : 1)];
    if (slot != kUnknown) return slot;

    std::vector<int> bits;
    for (std::size_t e = 0; e < edges_; ++e)
      if (free & (1U << e)) bits.push_back(static_cast<int>(e));
    const std::size_t k = std::min<std::size_t>(bits.size(), static_cast<std::size_t>(bias_.per_move(turn)));

    std::uint8_t best = turn == Player::Maker ? kLost : 0;
    bool done = false;
    std::vector<int> pick;
    std::function<void(std::size_t)> choose = [&](std::size_t from) {
      if (done) return;
      if (pick.size() == k) {
        if (turn == Player::Maker) {
          maker_variants(maker, forward, breaker, code, pick, best, done);
        } else {
          std::uint32_t nb = breaker;
          std::uint64_t nc = code;
          for (int e : pick) {
            nb |= 1U << e;
            nc += (oriented_ ? 3 : 2) * pow_[e];
          }
          const std::uint8_t v = search(maker, forward, nb, nc, Player::Maker);
          if (v == kLost) {
            best = kLost;
            done = true;
          } else {
            best = std::max(best, v);
          }
        }
        return;
      }
      for (std::size_t i = from; i < bits.size() && bits.size() - i >= k - pick.size(); ++i) {
        pick.push_back(bits[i]);
        choose(i + 1);
        pick.pop_back();
        if (done) return;
      }
    };
    choose(0);
    slot = best;
    return best;
  }

  // Maker's move: every orientation of the chosen edges in oriented games.
  void maker_variants(std::uint32_t maker, std::uint32_t forward, std::uint32_t breaker, std::uint64_t code,
                      const std::vector<int>& pick, std::uint8_t& best, bool& done) {
    const std::uint32_t combos = oriented_ ? (1U << pick.size()) : 1U;
    for (std::uint32_t c = 0; c < combos && !done; ++c) {
      std::uint32_t nm = maker;
      std::uint32_t nf = forward;
      std::uint64_t nc = code;
      for (std::size_t i = 0; i < pick.size(); ++i) {
        const std::uint32_t bit = 1U << pick[i];
        nm |= bit;
        const bool fwd = !oriented_ || ((c >> i) & 1U) == 0;
        if (fwd) nf |= bit;
        nc += (oriented_ ? (fwd ? 1 : 2) : 1) * pow_[pick[i]];
      }
      const std::uint8_t v = search(nm, nf, breaker, nc, Player::Breaker);
      if (v != kLost) {
        best = std::min<std::uint8_t>(best, static_cast<std::uint8_t>(v + 1));
        if (best == 1) done = true;
      }
    }
  }

  std::size_t edges_;
  bool oriented_;
  BiasSpec bias_;
  GoalTest goal_;
  std::vector<std::uint64_t> pow_;
  std::vector<std::uint8_t> memo_;
  std::uint32_t full_ = 0;
};

inline std::vector<std::uint32_t> clique_masks(const EdgeIndex& idx, std::size_t q) {
  std::vector<std::uint32_t> out;
  std::vector<Vertex> pick;
  std::function<void(Vertex)> rec = [&](Vertex from) {
    if (pick.size() == q) {
      std::uint32_t mask = 0;
      for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = i + 1; j < q; ++j) mask |= 1U << idx.id[pick[i]][pick[j]];
      out.push_back(mask);
      return;
    }
    for (Vertex v = from; v < idx.n; ++v) {
      pick.push_back(v);
      rec(v + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

// Each copy of the goal: required Maker edges and which of them run forward.
struct ArcPattern {
  std::uint32_t edges = 0;
  std::uint32_t forward = 0;
};

inline std::vector<ArcPattern> tournament_patterns(const EdgeIndex& idx, const GoalTournament& goal) {
  std::vector<ArcPattern> out;
  const std::size_t q = goal.q();
  std::vector<Vertex> map;
  std::vector<bool> used(idx.n, false);
  std::function<void()> rec = [&]() {
    if (map.size() == q) {
      ArcPattern p;
      for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = i + 1; j < q; ++j) {
          const std::uint32_t bit = 1U << idx.id[map[i]][map[j]];
          p.edges |= bit;
          const Vertex from = goal.arc(i, j) ? map[i] : map[j];
          const Vertex to = goal.arc(i, j) ? map[j] : map[i];
          if (from < to) p.forward |= bit;
        }
      out.push_back(p);
      return;
    }
    for (Vertex v = 0; v < idx.n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      map.push_back(v);
      rec();
      map.pop_back();
      used[v] = false;
    }
  };
  rec();
  return out;
}

inline SolvedPosition to_solved(std::string key, std::uint8_t v) {
  SolvedPosition s;
  s.key = std::move(key);
  if (v == MinimaxSolver::kLost) {
    s.winner = Player::Breaker;
  } else {
    s.winner = Player::Maker;
    s.min_maker_moves = v;
  }
  return s;
}

// Per ordered pair: 0 unclaimed, 1 Maker arc u->v (or plain Maker edge),
// 2 Maker arc v->u, 3 Breaker.
using PairMatrix = std::vector<std::vector<std::uint8_t>>;

inline PairMatrix pair_matrix(const GameState& state) {
  const std::size_t n = state.n();
  PairMatrix a(n, std::vector<std::uint8_t>(n, 0));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v) {
      if (u == v) continue;
      const ClaimInfo* c = state.find(u, v);
      if (c == nullptr) continue;
      if (c->owner == Player::Breaker) {
        a[u][v] = 3;
      } else if (!c->oriented) {
        a[u][v] = 1;
      } else {
        a[u][v] = state.orientation(u, v) == VertexPair{u, v} ? 1 : 2;
      }
    }
  return a;
}

}  // namespace detail

// Relabeling-invariant key of a small position: vertices are grouped by
// their claim signature and the lexicographically least pair string over
// all orderings consistent with the grouping is kept.
inline std::string canonical_key(const GameState& state) {
  const std::size_t n = state.n();
  if (n > 8) throw Error(ErrorCode::BoardTooLarge, "canonical keys are for boards of at most 8 vertices");
  const detail::PairMatrix a = detail::pair_matrix(state);
  std::vector<std::array<int, 4>> sig(n, {0, 0, 0, 0});
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v) ++sig[u][a[u][v]];

  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Vertex x, Vertex y) { return sig[x] != sig[y] ? sig[x] < sig[y] : x < y; });
  std::vector<std::size_t> group_start;
  for (std::size_t i = 0; i < n; ++i)
    if (i == 0 || sig[order[i]] != sig[order[i - 1]]) group_start.push_back(i);
  group_start.push_back(n);

  std::string best;
  std::function<void(std::size_t)> permute = [&](std::size_t g) {
    if (g + 1 == group_start.size()) {
      std::string s;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s.push_back(static_cast<char>('0' + a[order[i]][order[j]]));
      if (best.empty() || s < best) best = s;
      return;
    }
    auto first = order.begin() + static_cast<std::ptrdiff_t>(group_start[g]);
    auto last = order.begin() + static_cast<std::ptrdiff_t>(group_start[g + 1]);
    std::sort(first, last);
    do {
      permute(g + 1);
    } while (std::next_permutation(first, last));
  };
  permute(0);

  std::string key = std::to_string(n) + (state.to_move() == Player::Maker ? "M" : "B") + ":";
  for (std::size_t g = 0; g + 1 < group_start.size(); ++g) {
    const auto& s = sig[order[group_start[g]]];
    key += std::to_string(group_start[g + 1] - group_start[g]) + "x" + std::to_string(s[1]) + "." +
           std::to_string(s[2]) + "." + std::to_string(s[3]) + ";";
  }
  return key + best;
}

// Perfect-play value of the clique game from an arbitrary position.
inline SolvedPosition solve_clique_position(const GameState& state, std::size_t q) {
  const std::size_t n = state.n();
  if (n > kOracleMaxCliqueBoard)
    throw Error(ErrorCode::BoardTooLarge, "the clique oracle handles at most 6 vertices");
  if (q < 1) throw Error(ErrorCode::InvalidGoal, "clique size must be positive");
  const std::string key = canonical_key(state);
  if (q == 1) return detail::to_solved(key, 0);
  if (q > n) return detail::to_solved(key, detail::MinimaxSolver::kLost);

  detail::EdgeIndex idx(n);
  const std::vector<std::uint32_t> targets = detail::clique_masks(idx, q);
  detail::MinimaxSolver solver(idx.size(), false, state.bias(), [&](std::uint32_t maker, std::uint32_t) {
    for (std::uint32_t t : targets)
      if ((maker & t) == t) return true;
    return false;
  });
  std::uint32_t maker = 0;
  std::uint32_t breaker = 0;
  for (std::size_t e = 0; e < idx.size(); ++e) {
    auto [u, v] = idx.ends[e];
    if (state.maker_owns(u, v)) maker |= 1U << e;
    if (state.breaker_owns(u, v)) breaker |= 1U << e;
  }
  return detail::to_solved(key, solver.solve(maker, maker, breaker, state.to_move()));
}

inline SolvedPosition solve_clique_game(std::size_t n, std::size_t q, BiasSpec bias = {}) {
  if (n > kOracleMaxCliqueBoard)
    throw Error(ErrorCode::BoardTooLarge, "the clique oracle handles at most 6 vertices");
  return solve_clique_position(GameState(n, bias, Variant::Plain), q);
}

inline SolvedPosition solve_tournament_position(const GameState& state, const GoalTournament& goal) {
  const std::size_t n = state.n();
  if (n > kOracleMaxTournamentBoard)
    throw Error(ErrorCode::BoardTooLarge, "the tournament oracle handles at most 5 vertices");
  if (goal.q() > 3) throw Error(ErrorCode::BoardTooLarge, "the tournament oracle handles goals of at most 3 vertices");
  if (state.variant() != Variant::Oriented)
    throw Error(ErrorCode::PreconditionViolation, "tournament positions must be oriented");
  goal.validate();
  const std::string key = canonical_key(state);
  if (goal.q() <= 1) return detail::to_solved(key, 0);
  if (goal.q() > n) return detail::to_solved(key, detail::MinimaxSolver::kLost);

  detail::EdgeIndex idx(n);
  const std::vector<detail::ArcPattern> targets = detail::tournament_patterns(idx, goal);
  detail::MinimaxSolver solver(idx.size(), true, state.bias(), [&](std::uint32_t maker, std::uint32_t forward) {
    for (const auto& t : targets)
      if ((maker & t.edges) == t.edges && (forward & t.edges) == t.forward) return true;
    return false;
  });
  std::uint32_t maker = 0;
  std::uint32_t forward = 0;
  std::uint32_t breaker = 0;
  for (std::size_t e = 0; e < idx.size(); ++e) {
    auto [u, v] = idx.ends[e];
    if (state.maker_owns(u, v)) {
      maker |= 1U << e;
      if (state.orientation(u, v) == VertexPair{u, v}) forward |= 1U << e;
    }
    if (state.breaker_owns(u, v)) breaker |= 1U << e;
  }
  return detail::to_solved(key, solver.solve(maker, forward, breaker, state.to_move()));
}

inline SolvedPosition solve_tournament_game(std::size_t n, const GoalTournament& goal,
                                            Player first = Player::Maker, BiasSpec bias = {}) {
  if (n > kOracleMaxTournamentBoard)
    throw Error(ErrorCode::BoardTooLarge, "the tournament oracle handles at most 5 vertices");
  bias.first_player = first;
  return solve_tournament_position(GameState(n, bias, Variant::Oriented), goal);
}

}  // namespace mbgame
