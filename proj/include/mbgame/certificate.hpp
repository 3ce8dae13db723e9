#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "mbgame/engine.hpp"

namespace mbgame {

enum class RoundKind { Biased, Fast, Tournament };

inline std::string_view to_string(RoundKind k) {
  switch (k) {
    case RoundKind::Biased: return "biased";
    case RoundKind::Fast: return "fast";
    case RoundKind::Tournament: return "tournament";
  }
  return "unknown";
}

inline RoundKind parse_round_kind(std::string_view s) {
  if (s == "biased") return RoundKind::Biased;
  if (s == "fast") return RoundKind::Fast;
  if (s == "tournament") return RoundKind::Tournament;
  throw Error(ErrorCode::ParseError, "unknown certificate kind '" + std::string(s) + "'");
}

// One surviving candidate set of a tournament round. Every member must be a
// Maker neighbor of the processed vertex, oriented away from it iff
// `outgoing`.
struct CandidateSetCertificate {
  std::size_t goal_vertex = 0;
  bool outgoing = true;
  std::vector<Vertex> members;
  std::int64_t min_size = 0;

  friend bool operator==(const CandidateSetCertificate&, const CandidateSetCertificate&) = default;
};

// What one strategy round claims about the board right after it ends.
// `clique` holds v_1..v_m for a biased round and the processed vertex for
// the other kinds. The survivors together with `non_edges` are the view
// handed to the next round.
struct RoundCertificate {
  RoundKind kind = RoundKind::Biased;
  std::size_t level = 0;
  std::size_t start_checkpoint = 0;  // transcript length when the round began
  std::size_t checkpoint = 0;        // transcript length when it ended
  std::vector<Vertex> clique;
  std::vector<Vertex> survivors;
  std::vector<VertexPair> non_edges;
  std::int64_t min_survivors = 0;
  std::size_t max_comp_degree = 0;
  bool breaker_free = true;
  std::size_t maker_moves = 0;
  std::vector<CandidateSetCertificate> sets;

  friend bool operator==(const RoundCertificate&, const RoundCertificate&) = default;
};

inline nlohmann::ordered_json to_json(const RoundCertificate& c) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(c.kind);
  j["level"] = c.level;
  j["start_checkpoint"] = c.start_checkpoint;
  j["checkpoint"] = c.checkpoint;
  j["clique"] = c.clique;
  j["survivors"] = c.survivors;
  auto ne = nlohmann::ordered_json::array();
  for (auto [u, v] : c.non_edges) ne.push_back({u, v});
  j["non_edges"] = std::move(ne);
  j["min_survivors"] = c.min_survivors;
  j["max_comp_degree"] = c.max_comp_degree;
  j["breaker_free"] = c.breaker_free;
  j["maker_moves"] = c.maker_moves;
  if (c.kind == RoundKind::Tournament) {
    auto sets = nlohmann::ordered_json::array();
    for (const auto& s : c.sets) {
      nlohmann::ordered_json sj;
      sj["goal_vertex"] = s.goal_vertex;
      sj["outgoing"] = s.outgoing;
      sj["members"] = s.members;
      sj["min_size"] = s.min_size;
      sets.push_back(std::move(sj));
    }
    j["sets"] = std::move(sets);
  }
  return j;
}

inline RoundCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    RoundCertificate c;
    c.kind = parse_round_kind(j.at("kind").get<std::string>());
    c.level = j.at("level").get<std::size_t>();
    c.start_checkpoint = j.at("start_checkpoint").get<std::size_t>();
    c.checkpoint = j.at("checkpoint").get<std::size_t>();
    c.clique = j.at("clique").get<std::vector<Vertex>>();
    c.survivors = j.at("survivors").get<std::vector<Vertex>>();
    for (const auto& e : j.at("non_edges")) c.non_edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
    c.min_survivors = j.at("min_survivors").get<std::int64_t>();
    c.max_comp_degree = j.at("max_comp_degree").get<std::size_t>();
    c.breaker_free = j.at("breaker_free").get<bool>();
    c.maker_moves = j.at("maker_moves").get<std::size_t>();
    if (j.contains("sets")) {
      for (const auto& sj : j.at("sets")) {
        CandidateSetCertificate s;
        s.goal_vertex = sj.at("goal_vertex").get<std::size_t>();
        s.outgoing = sj.at("outgoing").get<bool>();
        s.members = sj.at("members").get<std::vector<Vertex>>();
        s.min_size = sj.at("min_size").get<std::int64_t>();
        c.sets.push_back(std::move(s));
      }
    }
    return c;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, ex.what());
  }
}

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }

  const CheckResult* find(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// Tests every claim of `cert` against `state`, which must be the board
// exactly at the certificate's checkpoint. Each guarantee is a separate
// check so a single inflated claim is reported on its own.
inline VerifyReport verify_certificate(const GameState& state, const RoundCertificate& cert) {
  VerifyReport report;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    report.checks.push_back(CheckResult{std::move(name), ok, std::move(detail)});
  };

  add("checkpoint", state.transcript().size() == cert.checkpoint && cert.start_checkpoint <= cert.checkpoint,
      "board has " + std::to_string(state.transcript().size()) + " moves, certificate says " +
          std::to_string(cert.checkpoint));

  std::unordered_set<Vertex> surv(cert.survivors.begin(), cert.survivors.end());
  bool in_range = surv.size() == cert.survivors.size();
  for (Vertex v : cert.survivors) in_range = in_range && v < state.n();
  for (Vertex v : cert.clique) in_range = in_range && v < state.n() && !surv.contains(v);
  add("well-formed", in_range, "survivors distinct, on the board and disjoint from the clique");
  if (!in_range) return report;

  // Survivor counts.
  if (cert.kind == RoundKind::Tournament) {
    bool ok = true;
    std::string detail;
    std::size_t total = 0;
    for (const auto& s : cert.sets) {
      total += s.members.size();
      if (static_cast<std::int64_t>(s.members.size()) < s.min_size) {
        ok = false;
        detail += "set u" + std::to_string(s.goal_vertex) + " has " + std::to_string(s.members.size()) +
                  " < " + std::to_string(s.min_size) + "; ";
      }
      for (Vertex v : s.members) ok = ok && surv.contains(v);
    }
    ok = ok && total == cert.survivors.size();
    add("survivor-count", ok, detail);
  } else {
    add("survivor-count", static_cast<std::int64_t>(cert.survivors.size()) >= cert.min_survivors,
        std::to_string(cert.survivors.size()) + " survivors, claimed at least " +
            std::to_string(cert.min_survivors));
  }

  // Maker adjacency inside the clique and from every clique vertex to every survivor.
  {
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < cert.clique.size() && ok; ++i)
      for (std::size_t j = i + 1; j < cert.clique.size() && ok; ++j)
        if (!state.maker_owns(cert.clique[i], cert.clique[j])) {
          ok = false;
          detail = "clique pair (" + std::to_string(cert.clique[i]) + "," + std::to_string(cert.clique[j]) + ")";
        }
    for (Vertex c : cert.clique)
      for (Vertex w : cert.survivors)
        if (ok && !state.maker_owns(c, w)) {
          ok = false;
          detail = "pair (" + std::to_string(c) + "," + std::to_string(w) + ") is not Maker's";
        }
    add("maker-adjacency", ok, detail);
  }

  if (cert.kind == RoundKind::Tournament) {
    bool ok = cert.clique.size() == 1;
    std::string detail;
    if (ok) {
      const Vertex v1 = cert.clique.front();
      for (const auto& s : cert.sets) {
        for (Vertex x : s.members) {
          const VertexPair want = s.outgoing ? VertexPair{v1, x} : VertexPair{x, v1};
          if (state.orientation(v1, x) != want) {
            ok = false;
            detail = "edge (" + std::to_string(v1) + "," + std::to_string(x) + ") has the wrong direction";
          }
        }
      }
    }
    add("orientation", ok, detail);
  }

  // Logical non-edges, and complementary degrees they induce.
  std::unordered_map<Vertex, std::size_t> comp;
  std::unordered_set<std::uint64_t> non_edge_keys;
  bool non_edges_ok = true;
  for (auto [u, v] : cert.non_edges) {
    if (u == v || !surv.contains(u) || !surv.contains(v) || !non_edge_keys.insert(pair_key(u, v)).second) {
      non_edges_ok = false;
      continue;
    }
    ++comp[u];
    ++comp[v];
  }
  {
    std::size_t worst = 0;
    for (const auto& [v, d] : comp) worst = std::max(worst, d);
    add("comp-degree", non_edges_ok && worst <= cert.max_comp_degree,
        "max complementary degree " + std::to_string(worst) + ", claimed at most " +
            std::to_string(cert.max_comp_degree));
  }

  {
    bool ok = cert.breaker_free;
    std::string detail;
    bool pure = true;
    for (Vertex v : cert.survivors) {
      for (Vertex u : state.breaker_neighbors(v))
        if (u > v && surv.contains(u) && !non_edge_keys.contains(pair_key(u, v))) {
          ok = false;
          detail = "Breaker owns (" + std::to_string(v) + "," + std::to_string(u) + ")";
        }
      for (Vertex u : state.maker_neighbors(v))
        if (u > v && surv.contains(u) && !non_edge_keys.contains(pair_key(u, v))) pure = false;
    }
    add("breaker-free", ok, detail);
    add("purity", pure, "survivor pairs are unclaimed or logically deleted");
  }

  {
    std::size_t moves = 0;
    const auto& t = state.transcript();
    for (std::size_t i = cert.start_checkpoint; i < cert.checkpoint && i < t.size(); ++i)
      if (t[i].player == Player::Maker) ++moves;
    add("maker-moves", moves == cert.maker_moves,
        std::to_string(moves) + " Maker moves in the trace, certificate says " + std::to_string(cert.maker_moves));
  }
  return report;
}

}  // namespace mbgame
