#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mbgame/engine.hpp"

namespace mbgame {

enum class AdversaryKind { Random, GreedySpoiler, CliqueBlocker, Scripted };

inline std::string_view to_string(AdversaryKind k) {
  switch (k) {
    case AdversaryKind::Random: return "random";
    case AdversaryKind::GreedySpoiler: return "greedy_spoiler";
    case AdversaryKind::CliqueBlocker: return "clique_blocker";
    case AdversaryKind::Scripted: return "scripted";
  }
  return "unknown";
}

inline AdversaryKind parse_adversary_kind(std::string_view s) {
  if (s == "random") return AdversaryKind::Random;
  if (s == "greedy_spoiler" || s == "greedy-spoiler" || s == "greedy") return AdversaryKind::GreedySpoiler;
  if (s == "clique_blocker" || s == "clique-blocker" || s == "blocker") return AdversaryKind::CliqueBlocker;
  if (s == "scripted") return AdversaryKind::Scripted;
  throw Error(ErrorCode::InvalidConfig, "unknown breaker kind '" + std::string(s) + "'");
}

struct AdversaryConfig {
  AdversaryKind kind = AdversaryKind::Random;
  std::uint64_t seed = 0;
  std::optional<std::vector<MoveRecord>> script;

  void validate() const {
    if (kind == AdversaryKind::Scripted && !script)
      throw Error(ErrorCode::InvalidConfig, "scripted breaker needs a script");
  }
};

// A Breaker move generator. reply() must return exactly `budget` distinct
// unclaimed pairs owned by Breaker, oriented when the game is.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::vector<EdgeClaim> reply(const GameState& state, std::size_t budget) = 0;
  virtual std::string name() const = 0;
};

namespace detail {

// Unclaimed test that also sees the picks already made for this move.
class PickSet {
 public:
  explicit PickSet(const GameState& s) : state_(s) {}
  bool free(Vertex u, Vertex v) const {
    return u != v && state_.is_unclaimed(u, v) && !picked_.contains(pair_key(u, v));
  }
  void add(Vertex u, Vertex v) {
    picked_.insert(pair_key(u, v));
    ++degree_[u];
    ++degree_[v];
  }
  // Claimed degree of v counting this move's picks.
  std::size_t claimed_degree(Vertex v) const {
    auto it = degree_.find(v);
    return state_.claimed_degree(v) + (it == degree_.end() ? 0 : it->second);
  }
  std::size_t size() const { return picked_.size(); }

 private:
  const GameState& state_;
  std::unordered_set<std::uint64_t> picked_;
  std::unordered_map<Vertex, std::size_t> degree_;
};

inline EdgeClaim breaker_edge(const GameState& state, Vertex a, Vertex b, bool flip = false) {
  std::optional<VertexPair> dir;
  if (state.variant() == Variant::Oriented) {
    auto [lo, hi] = canonical(a, b);
    dir = flip ? VertexPair{hi, lo} : VertexPair{lo, hi};
  }
  return EdgeClaim::make(a, b, Player::Breaker, dir);
}

// Lowest-index unclaimed pairs in lexicographic order, skipping picks.
inline void fill_lowest(const GameState& state, PickSet& picks, std::size_t budget,
                        std::vector<EdgeClaim>& out) {
  for (Vertex u = 0; u < state.n() && out.size() < budget; ++u) {
    if (picks.claimed_degree(u) + 1 >= state.n()) continue;
    for (Vertex v = u + 1; v < state.n() && out.size() < budget; ++v) {
      if (picks.free(u, v)) {
        picks.add(u, v);
        out.push_back(breaker_edge(state, u, v));
      }
    }
  }
}

}  // namespace detail

// Uniformly random unclaimed pairs from a seeded generator.
class RandomBreaker final : public Adversary {
 public:
  explicit RandomBreaker(std::uint64_t seed) : rng_(seed) {}

  std::vector<EdgeClaim> reply(const GameState& state, std::size_t budget) override {
    std::vector<EdgeClaim> out;
    detail::PickSet picks(state);
    const std::uint64_t total = state.total_pairs();
    std::uniform_int_distribution<Vertex> pick_vertex(0, static_cast<Vertex>(state.n() - 1));
    std::bernoulli_distribution coin(0.5);
    while (out.size() < budget) {
      const std::uint64_t free_pairs = state.unclaimed_count() - picks.size();
      if (free_pairs == 0) break;
      Vertex u = 0;
      Vertex v = 0;
      if (free_pairs * 8 >= total) {
        // Dense enough for rejection sampling.
        do {
          u = pick_vertex(rng_);
          v = pick_vertex(rng_);
        } while (!picks.free(u, v));
      } else {
        std::uniform_int_distribution<std::uint64_t> pick_rank(0, free_pairs - 1);
        std::uint64_t rank = pick_rank(rng_);
        bool found = false;
        for (Vertex a = 0; a < state.n() && !found; ++a) {
          for (Vertex b = a + 1; b < state.n(); ++b) {
            if (!picks.free(a, b)) continue;
            if (rank-- == 0) {
              u = a;
              v = b;
              found = true;
              break;
            }
          }
        }
      }
      picks.add(u, v);
      out.push_back(detail::breaker_edge(state, u, v, coin(rng_)));
    }
    return out;
  }

  std::string name() const override { return "random"; }

 private:
  std::mt19937_64 rng_;
};

// Attacks Maker's hubs: the hub is the vertex of largest Maker degree that
// still has an unclaimed pair (ties to the lowest index); its partner is the
// heaviest of the top Maker-degree vertices with a free pair to the hub, or
// else the hub's lowest-index free partner. The cached order and per-hub
// cursors only accelerate this stateless rule.
class GreedySpoiler final : public Adversary {
 public:
  static constexpr std::size_t kHeavyScan = 64;

  std::vector<EdgeClaim> reply(const GameState& state, std::size_t budget) override {
    sync(state);
    std::vector<EdgeClaim> out;
    detail::PickSet picks(state);
    while (out.size() < budget && picks.size() < state.unclaimed_count()) {
      auto [u, v] = next_pair(state, picks);
      picks.add(u, v);
      out.push_back(detail::breaker_edge(state, u, v));
    }
    return out;
  }

  std::string name() const override { return "greedy_spoiler"; }

  // Used by CliqueBlocker's fallback so both share one cache.
  VertexPair next_pair(const GameState& state, detail::PickSet& picks) {
    sync(state);
    const std::size_t full = state.n() - 1;
    for (const auto& [neg_deg, hub] : order_) {
      if (picks.claimed_degree(hub) >= full) continue;
      std::size_t scanned = 0;
      for (const auto& [nd, x] : order_) {
        if (scanned++ >= kHeavyScan) break;
        if (x != hub && picks.free(hub, x)) return canonical(hub, x);
      }
      Vertex& cur = cursor_[hub];
      for (; cur < state.n(); ++cur) {
        if (cur != hub && picks.free(hub, cur)) return canonical(hub, cur);
      }
    }
    throw Error(ErrorCode::GameOver, "no unclaimed pair left");
  }

 private:
  void sync(const GameState& state) {
    const auto& t = state.transcript();
    if (state_ != &state || synced_ > t.size() || degree_.size() != state.n()) {
      state_ = &state;
      synced_ = 0;
      degree_.assign(state.n(), 0);
      order_.clear();
      cursor_.clear();
      for (Vertex v = 0; v < state.n(); ++v) order_.emplace(0, v);
    }
    for (; synced_ < t.size(); ++synced_) {
      const MoveRecord& rec = t[synced_];
      if (rec.player != Player::Maker) continue;
      for (const EdgeClaim& e : rec.edges) {
        bump(e.u);
        bump(e.v);
      }
    }
  }

  void bump(Vertex v) {
    order_.erase({-static_cast<std::int64_t>(degree_[v]), v});
    ++degree_[v];
    order_.emplace(-static_cast<std::int64_t>(degree_[v]), v);
  }

  const GameState* state_ = nullptr;
  std::size_t synced_ = 0;
  std::vector<std::size_t> degree_;
  std::set<std::pair<std::int64_t, Vertex>> order_;
  std::unordered_map<Vertex, Vertex> cursor_;
};

// Plays inside the Maker-neighborhood of the hub touched by Maker's latest
// move: joins the newest leaf to the most recent other leaves of that hub.
// Falls back to GreedySpoiler when no such pair is free.
class CliqueBlocker final : public Adversary {
 public:
  std::vector<EdgeClaim> reply(const GameState& state, std::size_t budget) override {
    std::vector<EdgeClaim> out;
    detail::PickSet picks(state);
    const MoveRecord* last = nullptr;
    for (auto it = state.transcript().rbegin(); it != state.transcript().rend(); ++it) {
      if (it->player == Player::Maker) {
        last = &*it;
        break;
      }
    }
    if (last != nullptr) {
      for (const EdgeClaim& e : last->edges) {
        if (out.size() >= budget) break;
        const std::size_t du = state.maker_neighbors(e.u).size();
        const std::size_t dv = state.maker_neighbors(e.v).size();
        const Vertex hub = (du > dv || (du == dv && e.u < e.v)) ? e.u : e.v;
        const Vertex leaf = hub == e.u ? e.v : e.u;
        auto leaves = state.maker_neighbors(hub);
        const std::size_t scan_limit = 8 * budget + 16;
        std::size_t scanned = 0;
        for (auto it = leaves.rbegin(); it != leaves.rend() && out.size() < budget; ++it) {
          if (scanned++ >= scan_limit) break;
          const Vertex y = *it;
          if (y == leaf || !picks.free(leaf, y)) continue;
          picks.add(leaf, y);
          out.push_back(detail::breaker_edge(state, leaf, y));
        }
      }
    }
    while (out.size() < budget && picks.size() < state.unclaimed_count()) {
      auto [u, v] = fallback_.next_pair(state, picks);
      picks.add(u, v);
      out.push_back(detail::breaker_edge(state, u, v));
    }
    return out;
  }

  std::string name() const override { return "clique_blocker"; }

 private:
  GreedySpoiler fallback_;
};

// Replays a fixed list of moves; pairs that are already taken are skipped,
// and once the script runs dry the lowest-index free pairs are used.
class ScriptedBreaker final : public Adversary {
 public:
  explicit ScriptedBreaker(std::vector<MoveRecord> script) : script_(std::move(script)) {}

  std::vector<EdgeClaim> reply(const GameState& state, std::size_t budget) override {
    std::vector<EdgeClaim> out;
    detail::PickSet picks(state);
    while (out.size() < budget && next_ < script_.size()) {
      const MoveRecord& rec = script_[next_];
      for (; edge_ < rec.edges.size() && out.size() < budget; ++edge_) {
        const EdgeClaim& e = rec.edges[edge_];
        if (e.u >= state.n() || e.v >= state.n() || !picks.free(e.u, e.v)) continue;
        picks.add(e.u, e.v);
        EdgeClaim c = detail::breaker_edge(state, e.u, e.v);
        if (state.variant() == Variant::Oriented && e.orientation) c.orientation = e.orientation;
        out.push_back(c);
      }
      if (edge_ >= rec.edges.size()) {
        ++next_;
        edge_ = 0;
      }
    }
    detail::fill_lowest(state, picks, budget, out);
    return out;
  }

  std::string name() const override { return "scripted"; }

 private:
  std::vector<MoveRecord> script_;
  std::size_t next_ = 0;
  std::size_t edge_ = 0;
};

// Wraps a callable; convenient for purpose-built test adversaries.
class FunctionAdversary final : public Adversary {
 public:
  using Fn = std::function<std::vector<EdgeClaim>(const GameState&, std::size_t)>;
  FunctionAdversary(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}
  std::vector<EdgeClaim> reply(const GameState& state, std::size_t budget) override {
    return fn_(state, budget);
  }
  std::string name() const override { return name_; }

 private:
  std::string name_;
  Fn fn_;
};

inline std::unique_ptr<Adversary> make_adversary(const AdversaryConfig& cfg) {
  cfg.validate();
  switch (cfg.kind) {
    case AdversaryKind::Random: return std::make_unique<RandomBreaker>(cfg.seed);
    case AdversaryKind::GreedySpoiler: return std::make_unique<GreedySpoiler>();
    case AdversaryKind::CliqueBlocker: return std::make_unique<CliqueBlocker>();
    case AdversaryKind::Scripted: return std::make_unique<ScriptedBreaker>(*cfg.script);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown adversary");
}

inline std::unique_ptr<Adversary> make_adversary(AdversaryKind kind, std::uint64_t seed) {
  return make_adversary(AdversaryConfig{kind, seed, std::nullopt});
}

// One-shot forms of the three heuristics.
inline std::vector<EdgeClaim> random_breaker(const GameState& state, std::size_t budget, std::uint64_t seed) {
  return RandomBreaker(seed).reply(state, budget);
}
inline std::vector<EdgeClaim> greedy_spoiler(const GameState& state, std::size_t budget) {
  return GreedySpoiler().reply(state, budget);
}
inline std::vector<EdgeClaim> clique_blocker(const GameState& state, std::size_t budget) {
  return CliqueBlocker().reply(state, budget);
}

}  // namespace mbgame
