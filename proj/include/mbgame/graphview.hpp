#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "mbgame/engine.hpp"

namespace mbgame {

struct ViewStats {
  std::size_t n = 0;
  std::size_t d_max = 0;
  std::size_t breaker_edges_inside = 0;
};

// From-scratch counts used to audit the incremental caches.
struct ViewRecount {
  std::unordered_map<Vertex, std::size_t> comp_degree;
  std::unordered_map<Vertex, std::size_t> breaker_degree;
  std::size_t breaker_edges_inside = 0;
};

// The working graph G of one recursion step: an active vertex window over a
// GameState in which every pair of active vertices is present unless it was
// logically deleted (a non-edge).
//
// d_B counts "live" Breaker edges: Breaker-owned pairs with both endpoints
// active that are not non-edges. The cache follows the base transcript
// lazily, so a view stays correct while the game moves on underneath it.
class GraphView {
 public:
  explicit GraphView(const GameState& base) : base_(&base) {
    init_storage();
    list_.resize(base.n());
    for (Vertex v = 0; v < base.n(); ++v) {
      list_[v] = v;
      mask_[v] = 1;
    }
    count_ = base.n();
    rebuild_breaker_cache();
  }

  GraphView(const GameState& base, std::span<const Vertex> active) : base_(&base) {
    init_storage();
    for (Vertex v : active) {
      if (v >= base.n()) throw Error(ErrorCode::InvalidEdge, "vertex outside the board");
      if (!mask_[v]) {
        mask_[v] = 1;
        list_.push_back(v);
      }
    }
    std::sort(list_.begin(), list_.end());
    count_ = list_.size();
    rebuild_breaker_cache();
  }

  static GraphView from_json(const GameState& base, const nlohmann::json& j) {
    std::vector<Vertex> active = j.at("active").get<std::vector<Vertex>>();
    GraphView view(base, active);
    for (const auto& e : j.at("non_edges")) view.add_non_edge(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
    return view;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["active"] = active();
    auto arr = nlohmann::json::array();
    for (auto [u, v] : non_edge_list()) arr.push_back({u, v});
    j["non_edges"] = std::move(arr);
    return j;
  }

  const GameState& base() const { return *base_; }

  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool is_active(Vertex v) const { return v < mask_.size() && mask_[v] != 0; }

  // Active vertices in ascending order.
  const std::vector<Vertex>& active() const {
    if (list_.size() != count_) {
      std::erase_if(list_, [this](Vertex v) { return !mask_[v]; });
    }
    return list_;
  }

  Vertex first() const {
    if (empty()) throw Error(ErrorCode::NotActive, "view is empty");
    return active().front();
  }

  bool is_non_edge(Vertex u, Vertex v) const {
    auto it = non_adj_.find(u);
    if (it == non_adj_.end()) return false;
    return std::find(it->second.begin(), it->second.end(), v) != it->second.end();
  }

  bool adjacent(Vertex u, Vertex v) const {
    return u != v && is_active(u) && is_active(v) && !is_non_edge(u, v);
  }

  std::span<const Vertex> non_neighbors(Vertex v) const {
    auto it = non_adj_.find(v);
    if (it == non_adj_.end()) return {};
    return it->second;
  }

  std::size_t comp_degree(Vertex v) const {
    require_active(v);
    return non_neighbors(v).size();
  }

  std::size_t breaker_degree(Vertex v) const {
    require_active(v);
    sync();
    return d_breaker_[v];
  }

  std::size_t breaker_edges_inside() const {
    sync();
    return breaker_inside_;
  }

  ViewStats stats() const {
    ViewStats s;
    s.n = count_;
    for (const auto& [v, list] : non_adj_) s.d_max = std::max(s.d_max, list.size());
    s.breaker_edges_inside = breaker_edges_inside();
    return s;
  }

  void add_non_edge(Vertex u, Vertex v) {
    require_active(u);
    require_active(v);
    if (u == v) throw Error(ErrorCode::InvalidEdge, "a vertex is not its own non-neighbor");
    if (is_non_edge(u, v)) return;
    sync();
    if (base_->breaker_owns(u, v)) {
      --d_breaker_[u];
      --d_breaker_[v];
      --breaker_inside_;
    }
    non_adj_[u].push_back(v);
    non_adj_[v].push_back(u);
  }

  void remove_vertex(Vertex v) {
    if (!is_active(v)) return;
    sync();
    for (Vertex u : base_->breaker_neighbors(v)) {
      if (is_active(u) && !is_non_edge(u, v)) {
        --d_breaker_[u];
        --breaker_inside_;
      }
    }
    if (auto it = non_adj_.find(v); it != non_adj_.end()) {
      for (Vertex u : it->second) {
        auto& lst = non_adj_[u];
        std::erase(lst, v);
        if (lst.empty()) non_adj_.erase(u);
      }
      non_adj_.erase(it);
    }
    d_breaker_[v] = 0;
    mask_[v] = 0;
    --count_;
  }

  template <typename Range>
  void remove_vertices(const Range& vs) {
    for (Vertex v : vs) remove_vertex(v);
  }

  // Keeps only the listed vertices (those not active are ignored).
  void restrict_to(std::span<const Vertex> keep) {
    std::vector<std::uint8_t> keep_mask(mask_.size(), 0);
    for (Vertex v : keep)
      if (v < keep_mask.size()) keep_mask[v] = 1;
    std::vector<Vertex> drop;
    for (Vertex v : active())
      if (!keep_mask[v]) drop.push_back(v);
    remove_vertices(drop);
  }

  // Deletes every active vertex incident to a live Breaker edge. `anchors`
  // are vertices of the current graph that must not be deleted themselves:
  // their Breaker edges count whether or not they are in the window (pairs
  // to an inactive anchor carry no non-edge information and always count).
  std::size_t prune_breaker_touched(std::span<const Vertex> anchors = {}) {
    sync();
    std::unordered_set<Vertex> anchor_set(anchors.begin(), anchors.end());
    std::vector<Vertex> doomed;
    for (Vertex v : active()) {
      if (anchor_set.contains(v)) continue;
      for (Vertex u : base_->breaker_neighbors(v)) {
        bool counts = is_active(u) ? !is_non_edge(u, v) : anchor_set.contains(u);
        if (counts) {
          doomed.push_back(v);
          break;
        }
      }
    }
    remove_vertices(doomed);
    return doomed.size();
  }

  // Repeatedly deletes active vertices with d_B >= threshold. Degrees only
  // drop as vertices leave, so one ascending pass reaches the fixed point.
  std::size_t prune_high_breaker_degree(std::size_t threshold) {
    if (threshold < 1) throw Error(ErrorCode::InvalidThreshold, "threshold must be at least 1");
    sync();
    std::vector<Vertex> candidates;
    for (Vertex v : active())
      if (d_breaker_[v] >= threshold) candidates.push_back(v);
    std::size_t deleted = 0;
    for (Vertex v : candidates) {
      if (is_active(v) && d_breaker_[v] >= threshold) {
        remove_vertex(v);
        ++deleted;
      }
    }
    return deleted;
  }

  // Turns every live Breaker edge into a non-edge.
  std::size_t drop_breaker_edges() {
    sync();
    std::vector<VertexPair> live;
    for (Vertex v : active()) {
      if (d_breaker_[v] == 0) continue;
      for (Vertex u : base_->breaker_neighbors(v))
        if (u > v && is_active(u) && !is_non_edge(u, v)) live.emplace_back(v, u);
    }
    for (auto [u, v] : live) add_non_edge(u, v);
    return live.size();
  }

  // Greedy clique: take the lowest remaining vertex, discard its
  // non-neighbors, repeat. Yields at least ceil(n / (d_max + 1)) vertices.
  std::vector<Vertex> greedy_clique(std::optional<std::size_t> target = std::nullopt) const {
    std::vector<Vertex> clique;
    std::unordered_map<Vertex, bool> excluded;
    for (Vertex v : active()) {
      if (target && clique.size() >= *target) break;
      if (excluded.contains(v)) continue;
      clique.push_back(v);
      for (Vertex u : non_neighbors(v)) excluded[u] = true;
    }
    if (target && clique.size() < *target)
      throw Error(ErrorCode::InsufficientClique,
                  "greedy clique reached " + std::to_string(clique.size()) + " of " +
                      std::to_string(*target));
    return clique;
  }

  std::vector<VertexPair> non_edge_list() const {
    std::vector<VertexPair> out;
    for (const auto& [u, list] : non_adj_)
      for (Vertex v : list)
        if (u < v) out.emplace_back(u, v);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Every active pair is unclaimed or a non-edge.
  bool is_pure() const {
    for (Vertex v : active()) {
      for (Vertex u : base_->maker_neighbors(v))
        if (is_active(u) && !is_non_edge(u, v)) return false;
      for (Vertex u : base_->breaker_neighbors(v))
        if (is_active(u) && !is_non_edge(u, v)) return false;
    }
    return true;
  }

  ViewRecount recount() const {
    ViewRecount r;
    const auto& act = active();
    for (Vertex v : act) {
      std::size_t cd = 0;
      std::size_t db = 0;
      for (Vertex u : act) {
        if (u == v) continue;
        bool non_edge = is_non_edge(u, v);
        if (non_edge) ++cd;
        if (!non_edge && base_->breaker_owns(u, v)) ++db;
      }
      r.comp_degree[v] = cd;
      r.breaker_degree[v] = db;
      r.breaker_edges_inside += db;
    }
    r.breaker_edges_inside /= 2;
    return r;
  }

 private:
  void init_storage() {
    mask_.assign(base_->n(), 0);
    d_breaker_.assign(base_->n(), 0);
  }

  void require_active(Vertex v) const {
    if (!is_active(v)) throw Error(ErrorCode::NotActive, "vertex " + std::to_string(v) + " is not active");
  }

  void rebuild_breaker_cache() {
    std::fill(d_breaker_.begin(), d_breaker_.end(), 0);
    breaker_inside_ = 0;
    for (Vertex v : active()) {
      for (Vertex u : base_->breaker_neighbors(v)) {
        if (is_active(u) && !is_non_edge(u, v)) {
          ++d_breaker_[v];
          if (u > v) ++breaker_inside_;
        }
      }
    }
    synced_ = base_->transcript().size();
  }

  void sync() const {
    const auto& t = base_->transcript();
    for (; synced_ < t.size(); ++synced_) {
      const MoveRecord& rec = t[synced_];
      if (rec.player != Player::Breaker) continue;
      for (const EdgeClaim& e : rec.edges) {
        if (is_active(e.u) && is_active(e.v) && !is_non_edge(e.u, e.v)) {
          ++d_breaker_[e.u];
          ++d_breaker_[e.v];
          ++breaker_inside_;
        }
      }
    }
  }

  const GameState* base_;
  std::vector<std::uint8_t> mask_;
  mutable std::vector<Vertex> list_;
  std::size_t count_ = 0;
  std::unordered_map<Vertex, std::vector<Vertex>> non_adj_;
  mutable std::vector<std::uint32_t> d_breaker_;
  mutable std::size_t breaker_inside_ = 0;
  mutable std::size_t synced_ = 0;
};

}  // namespace mbgame
