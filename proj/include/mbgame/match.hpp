#pragma once

#include <string>
#include <vector>

#include "mbgame/breaker.hpp"
#include "mbgame/engine.hpp"
#include "mbgame/graphview.hpp"

namespace mbgame {

// Couples a board with a Breaker. Every Maker move is answered immediately
// by the adversary, so a strategy reads as straight-line code and sees
// Breaker's reply before choosing its next move.
class Match {
 public:
  Match(GameState& state, Adversary& breaker) : state_(state), breaker_(breaker) {}

  GameState& state() { return state_; }
  const GameState& state() const { return state_; }
  Adversary& breaker() { return breaker_; }

  // Lets Breaker open when it moves first.
  void open() {
    if (state_.to_move() == Player::Breaker && !state_.exhausted()) breaker_reply();
  }

  std::size_t maker_budget() const {
    return static_cast<std::size_t>(state_.bias().maker_edges);
  }

  void maker_move(const std::vector<EdgeClaim>& edges, const std::string& phase) {
    open();
    state_.claim(Player::Maker, edges, phase);
    if (!state_.exhausted()) breaker_reply();
  }

  // Breaker's most recent move, if it came after Maker's most recent one.
  const MoveRecord* last_breaker_reply() const {
    const auto& t = state_.transcript();
    if (t.empty() || t.back().player != Player::Breaker) return nullptr;
    return &t.back();
  }

  // Builds one Maker move: `useful` edges first, then surplus picks at the
  // working vertex that stay clear of every protected view.
  std::vector<EdgeClaim> pad_move(std::vector<EdgeClaim> useful, Vertex working,
                                  std::initializer_list<const GraphView*> protect) const {
    const std::size_t budget = std::min<std::uint64_t>(maker_budget(), state_.unclaimed_count());
    if (useful.size() > budget)
      throw Error(ErrorCode::InternalAssertion, "strategy proposed more edges than its bias");
    if (useful.size() == budget) return useful;

    std::unordered_set<std::uint64_t> taken;
    for (const EdgeClaim& e : useful) taken.insert(pair_key(e.u, e.v));
    auto guarded = [&](Vertex x) {
      for (const GraphView* g : protect)
        if (g != nullptr && g->is_active(x)) return true;
      return false;
    };
    auto ok = [&](Vertex a, Vertex b) {
      return a != b && state_.is_unclaimed(a, b) && !taken.contains(pair_key(a, b));
    };
    auto push = [&](Vertex a, Vertex b) {
      taken.insert(pair_key(a, b));
      useful.push_back(maker_edge(a, b));
    };

    for (Vertex x = 0; x < state_.n() && useful.size() < budget; ++x)
      if (!guarded(x) && ok(working, x)) push(working, x);
    for (Vertex a = 0; a < state_.n() && useful.size() < budget; ++a) {
      if (guarded(a)) continue;
      for (Vertex b = a + 1; b < state_.n() && useful.size() < budget; ++b)
        if (!guarded(b) && ok(a, b)) push(a, b);
    }
    for (Vertex a = 0; a < state_.n() && useful.size() < budget; ++a)
      for (Vertex b = a + 1; b < state_.n() && useful.size() < budget; ++b)
        if (ok(a, b)) push(a, b);
    return useful;
  }

  // A Maker edge; in oriented games the direction is from -> to.
  EdgeClaim maker_edge(Vertex from, Vertex to) const {
    std::optional<VertexPair> dir;
    if (state_.variant() == Variant::Oriented) dir = VertexPair{from, to};
    return EdgeClaim::make(from, to, Player::Maker, dir);
  }

 private:
  void breaker_reply() {
    const std::size_t budget = state_.move_budget();
    std::vector<EdgeClaim> edges = breaker_.reply(state_, budget);
    state_.claim(Player::Breaker, edges, "breaker/" + breaker_.name());
  }

  GameState& state_;
  Adversary& breaker_;
};

}  // namespace mbgame
