#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mbgame/tournament.hpp"
#include "mbgame/types.hpp"

namespace mbgame {

struct BiasSpec {
  int maker_edges = 1;
  int breaker_edges = 1;
  Player first_player = Player::Maker;

  int per_move(Player p) const { return p == Player::Maker ? maker_edges : breaker_edges; }

  void validate() const {
    if (maker_edges < 1 || breaker_edges < 1)
      throw Error(ErrorCode::InvalidBias, "both biases must be at least 1");
  }

  friend bool operator==(const BiasSpec&, const BiasSpec&) = default;
};

struct EdgeClaim {
  Vertex u = 0;  // u < v after normalization
  Vertex v = 0;
  Player owner = Player::Maker;
  std::optional<VertexPair> orientation;  // (from, to), oriented variant only

  static EdgeClaim make(Vertex a, Vertex b, Player owner,
                        std::optional<VertexPair> dir = std::nullopt) {
    auto [lo, hi] = canonical(a, b);
    return EdgeClaim{lo, hi, owner, dir};
  }

  friend bool operator==(const EdgeClaim&, const EdgeClaim&) = default;
};

struct MoveRecord {
  std::size_t index = 0;
  Player player = Player::Maker;
  std::vector<EdgeClaim> edges;
  std::string phase;

  friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

// Ownership of one claimed pair. `forward` records the orientation relative
// to the canonical (min, max) order.
struct ClaimInfo {
  Player owner = Player::Maker;
  bool oriented = false;
  bool forward = true;

  friend bool operator==(const ClaimInfo&, const ClaimInfo&) = default;
};

// Authoritative board for a biased edge-claiming game on K_n. Moves are
// atomic: one call to claim() is one full move of the player to move.
class GameState {
 public:
  GameState(std::size_t n, BiasSpec bias, Variant variant = Variant::Plain)
      : n_(n), bias_(bias), variant_(variant), to_move_(bias.first_player) {
    if (n < 2) throw Error(ErrorCode::InvalidBoard, "a board needs at least 2 vertices");
    if (n > std::numeric_limits<Vertex>::max())
      throw Error(ErrorCode::InvalidBoard, "board too large for 32-bit vertex ids");
    bias_.validate();
    maker_adj_.resize(n);
    breaker_adj_.resize(n);
  }

  std::size_t n() const { return n_; }
  const BiasSpec& bias() const { return bias_; }
  Variant variant() const { return variant_; }
  Player to_move() const { return to_move_; }

  std::uint64_t total_pairs() const {
    return static_cast<std::uint64_t>(n_) * (n_ - 1) / 2;
  }
  std::uint64_t unclaimed_count() const { return total_pairs() - claims_.size(); }
  bool exhausted() const { return unclaimed_count() == 0; }

  // Number of edges the player to move must claim now.
  std::size_t move_budget() const {
    auto bias = static_cast<std::uint64_t>(bias_.per_move(to_move_));
    return static_cast<std::size_t>(std::min(bias, unclaimed_count()));
  }

  const ClaimInfo* find(Vertex u, Vertex v) const {
    auto it = claims_.find(pair_key(u, v));
    return it == claims_.end() ? nullptr : &it->second;
  }

  std::optional<Player> owner(Vertex u, Vertex v) const {
    const ClaimInfo* c = find(u, v);
    if (c == nullptr) return std::nullopt;
    return c->owner;
  }

  bool is_unclaimed(Vertex u, Vertex v) const { return find(u, v) == nullptr; }
  bool maker_owns(Vertex u, Vertex v) const {
    const ClaimInfo* c = find(u, v);
    return c != nullptr && c->owner == Player::Maker;
  }
  bool breaker_owns(Vertex u, Vertex v) const {
    const ClaimInfo* c = find(u, v);
    return c != nullptr && c->owner == Player::Breaker;
  }

  std::optional<VertexPair> orientation(Vertex u, Vertex v) const {
    const ClaimInfo* c = find(u, v);
    if (c == nullptr || !c->oriented) return std::nullopt;
    auto [lo, hi] = canonical(u, v);
    return c->forward ? VertexPair{lo, hi} : VertexPair{hi, lo};
  }

  // Neighbors in claim order.
  std::span<const Vertex> maker_neighbors(Vertex v) const { return maker_adj_.at(v); }
  std::span<const Vertex> breaker_neighbors(Vertex v) const { return breaker_adj_.at(v); }
  std::size_t claimed_degree(Vertex v) const {
    return maker_adj_[v].size() + breaker_adj_[v].size();
  }

  std::size_t maker_move_count() const { return maker_moves_; }
  std::size_t breaker_move_count() const { return breaker_moves_; }
  std::size_t maker_edge_count() const { return maker_edges_; }
  std::size_t breaker_edge_count() const { return breaker_edges_; }

  const std::vector<MoveRecord>& transcript() const { return transcript_; }

  // Applies one full move. Nothing is modified when validation fails.
  void claim(Player player, std::span<const EdgeClaim> edges, std::string phase = {}) {
    if (unclaimed_count() == 0) throw Error(ErrorCode::GameOver, "every pair is claimed");
    if (player != to_move_)
      throw Error(ErrorCode::OutOfTurn, std::string(to_string(player)) + " moved out of turn");
    const std::size_t budget = move_budget();
    if (edges.size() > budget)
      throw Error(ErrorCode::OverBudget, "move has " + std::to_string(edges.size()) +
                                             " edges, budget is " + std::to_string(budget));
    if (edges.size() < budget)
      throw Error(ErrorCode::UnderBudget, "move has " + std::to_string(edges.size()) +
                                              " edges, budget is " + std::to_string(budget));

    std::vector<EdgeClaim> normalized;
    normalized.reserve(edges.size());
    std::unordered_set<std::uint64_t> seen;
    for (const EdgeClaim& e : edges) {
      if (e.u == e.v || e.u >= n_ || e.v >= n_)
        throw Error(ErrorCode::InvalidEdge,
                    "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") is not a pair of K_n");
      if (e.owner != player)
        throw Error(ErrorCode::InvalidEdge, "edge owner does not match the mover");
      const std::uint64_t key = pair_key(e.u, e.v);
      if (claims_.contains(key) || !seen.insert(key).second)
        throw Error(ErrorCode::DoubleClaim,
                    "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") already claimed");
      if (variant_ == Variant::Oriented) {
        if (!e.orientation)
          throw Error(ErrorCode::MissingOrientation, "oriented game needs a direction per edge");
        auto [from, to] = *e.orientation;
        if (canonical(from, to) != canonical(e.u, e.v) || from == to)
          throw Error(ErrorCode::IllFormedOrientation, "orientation is not a permutation of the endpoints");
      } else if (e.orientation) {
        throw Error(ErrorCode::IllFormedOrientation, "plain game edges carry no orientation");
      }
      normalized.push_back(EdgeClaim::make(e.u, e.v, player, e.orientation));
    }

    for (const EdgeClaim& e : normalized) {
      ClaimInfo info{player, e.orientation.has_value(),
                     !e.orientation || e.orientation->first == e.u};
      claims_.emplace(pair_key(e.u, e.v), info);
      auto& adj = player == Player::Maker ? maker_adj_ : breaker_adj_;
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    if (player == Player::Maker) {
      ++maker_moves_;
      maker_edges_ += normalized.size();
    } else {
      ++breaker_moves_;
      breaker_edges_ += normalized.size();
    }
    transcript_.push_back(MoveRecord{transcript_.size(), player, std::move(normalized), std::move(phase)});
    to_move_ = other(player);
  }

  void claim(Player player, std::initializer_list<EdgeClaim> edges, std::string phase = {}) {
    claim(player, std::span<const EdgeClaim>(edges.begin(), edges.size()), std::move(phase));
  }

  // Equality of the board: size, rules, turn and the exact claims map.
  bool same_board(const GameState& o) const {
    return n_ == o.n_ && bias_ == o.bias_ && variant_ == o.variant_ &&
           to_move_ == o.to_move_ && claims_ == o.claims_;
  }

  friend bool operator==(const GameState& a, const GameState& b) {
    return a.same_board(b) && a.transcript_ == b.transcript_;
  }

 private:
  std::size_t n_;
  BiasSpec bias_;
  Variant variant_;
  Player to_move_;
  std::unordered_map<std::uint64_t, ClaimInfo> claims_;
  std::vector<std::vector<Vertex>> maker_adj_;
  std::vector<std::vector<Vertex>> breaker_adj_;
  std::vector<MoveRecord> transcript_;
  std::size_t maker_moves_ = 0;
  std::size_t breaker_moves_ = 0;
  std::size_t maker_edges_ = 0;
  std::size_t breaker_edges_ = 0;
};

inline GameState new_game(std::size_t n, BiasSpec bias, Variant variant = Variant::Plain) {
  return GameState(n, bias, variant);
}

// Rebuilds a board from its transcript; any rejected move is reported as a
// replay divergence at that move's index.
inline GameState replay(std::span<const MoveRecord> transcript, std::size_t n, BiasSpec bias,
                        Variant variant = Variant::Plain) {
  GameState state(n, bias, variant);
  for (std::size_t i = 0; i < transcript.size(); ++i) {
    const MoveRecord& rec = transcript[i];
    if (rec.index != i)
      throw Error(ErrorCode::ReplayDivergence, "record " + std::to_string(i) + " carries index " +
                                                   std::to_string(rec.index), i);
    try {
      state.claim(rec.player, rec.edges, rec.phase);
    } catch (const Error& e) {
      throw Error(ErrorCode::ReplayDivergence, "move " + std::to_string(i) + ": " + e.what(), i);
    }
  }
  return state;
}

inline bool maker_has_clique(const GameState& state, std::span<const Vertex> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (!state.maker_owns(vertices[i], vertices[j])) return false;
  return true;
}

// mapping[i] is the board vertex playing goal vertex i.
inline bool maker_has_tournament(const GameState& state, std::span<const Vertex> mapping,
                                 const GoalTournament& goal) {
  if (mapping.size() != goal.q()) return false;
  for (std::size_t i = 0; i < mapping.size(); ++i)
    for (std::size_t j = i + 1; j < mapping.size(); ++j)
      if (mapping[i] == mapping[j]) return false;
  for (std::size_t i = 0; i < goal.q(); ++i) {
    for (std::size_t j = 0; j < goal.q(); ++j) {
      if (i == j || !goal.arc(i, j)) continue;
      const ClaimInfo* c = state.find(mapping[i], mapping[j]);
      if (c == nullptr || c->owner != Player::Maker) return false;
      if (state.orientation(mapping[i], mapping[j]) != VertexPair{mapping[i], mapping[j]})
        return false;
    }
  }
  return true;
}

}  // namespace mbgame
