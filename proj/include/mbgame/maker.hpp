#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mbgame/certificate.hpp"
#include "mbgame/engine.hpp"
#include "mbgame/graphview.hpp"
#include "mbgame/match.hpp"
#include "mbgame/schedule.hpp"
#include "mbgame/tournament.hpp"

namespace mbgame {

struct BaseCliqueResult {
  std::vector<Vertex> clique;
  RoundCertificate certificate;
};

struct CliqueRun {
  std::vector<Vertex> clique;
  std::vector<RoundCertificate> certificates;
  std::size_t maker_moves = 0;
};

struct Constellation {
  std::vector<Vertex> clique;
  std::vector<Vertex> witnesses;
};

struct ConstellationRun {
  Constellation constellation;
  std::vector<RoundCertificate> certificates;
  std::size_t maker_moves = 0;
};

struct BigCliqueRun {
  std::vector<Vertex> clique;
  Constellation constellation;
  std::size_t residual_q = 0;  // size of the clique built on the witnesses
  std::size_t constellation_moves = 0;
  std::size_t residual_moves = 0;
  std::size_t maker_moves = 0;
  std::vector<RoundCertificate> certificates;
};

struct CandidatePartition {
  std::vector<std::vector<Vertex>> sets;

  std::size_t min_size() const {
    if (sets.empty()) return 0;
    std::size_t s = sets.front().size();
    for (const auto& v : sets) s = std::min(s, v.size());
    return s;
  }

  void validate(const GraphView& view, std::size_t floor = 0) const {
    std::unordered_set<Vertex> seen;
    for (const auto& set : sets) {
      if (set.size() < floor)
        throw Error(ErrorCode::PreconditionViolation, "candidate set below its declared floor");
      for (Vertex v : set) {
        if (!view.is_active(v)) throw Error(ErrorCode::PreconditionViolation, "candidate outside the view");
        if (!seen.insert(v).second) throw Error(ErrorCode::PreconditionViolation, "candidate sets overlap");
      }
    }
  }
};

struct TournamentRound {
  RoundCertificate certificate;
  CandidatePartition next;
};

struct TournamentRun {
  std::vector<Vertex> mapping;  // goal vertex -> board vertex
  std::vector<RoundCertificate> certificates;
  std::size_t maker_moves = 0;
};

inline bool is_constellation(const GameState& state, const Constellation& c) {
  if (!maker_has_clique(state, c.clique)) return false;
  std::unordered_set<Vertex> seen(c.clique.begin(), c.clique.end());
  for (Vertex w : c.witnesses)
    if (!seen.insert(w).second) return false;
  for (Vertex v : c.clique)
    for (Vertex w : c.witnesses)
      if (!state.maker_owns(v, w)) return false;
  for (std::size_t i = 0; i < c.witnesses.size(); ++i)
    for (std::size_t j = i + 1; j < c.witnesses.size(); ++j)
      if (state.breaker_owns(c.witnesses[i], c.witnesses[j])) return false;
  return true;
}

namespace detail {

inline void require_pure(const GraphView& view) {
  if (!view.is_pure()) throw Error(ErrorCode::PreconditionViolation, "view contains claimed pairs");
}

inline std::int64_t floor_i64(const Rational& x) { return to_int64(floor_of(x)); }

// Vertices no claim can have touched once Breaker's pending opening move
// (if any) is in: the lower bound used for feasibility before play starts.
inline std::uint64_t guaranteed_fresh(const GameState& state) {
  std::uint64_t touched = 0;
  for (Vertex v = 0; v < state.n(); ++v) touched += state.claimed_degree(v) > 0;
  if (state.to_move() == Player::Breaker) touched += 2 * static_cast<std::uint64_t>(state.bias().breaker_edges);
  return state.n() - std::min<std::uint64_t>(state.n(), touched);
}

// Lets Breaker open if it is its turn, then returns the untouched vertices.
inline std::vector<Vertex> fresh_vertices(Match& match) {
  match.open();
  const GameState& state = match.state();
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < state.n(); ++v)
    if (state.claimed_degree(v) == 0) keep.push_back(v);
  return keep;
}

inline std::vector<Vertex> base_clique(Match& match, GraphView& X, std::size_t q_target,
                                       const GraphView* protect, const std::string& phase) {
  const GameState& state = match.state();
  const auto b = static_cast<std::uint64_t>(state.bias().breaker_edges);
  std::vector<Vertex> clique;
  for (std::size_t k = q_target; k >= 1; --k) {
    if (X.size() < base_clique_threshold(k, b))
      throw Error(ErrorCode::InternalAssertion, "base clique view shrank below n(" + std::to_string(k) + ")");
    const std::vector<Vertex> act = X.active();
    const Vertex v1 = act.front();
    clique.push_back(v1);
    if (k == 1) break;

    // Claim edges at v1 until its star inside X is exhausted.
    std::size_t ptr = 1;
    while (true) {
      std::vector<EdgeClaim> useful;
      while (useful.size() < match.maker_budget() && ptr < act.size()) {
        Vertex x = act[ptr++];
        if (state.is_unclaimed(v1, x)) useful.push_back(match.maker_edge(v1, x));
      }
      if (useful.empty()) break;
      match.maker_move(match.pad_move(std::move(useful), v1, {protect, &X}), phase);
    }

    std::vector<Vertex> nbrs;
    for (std::size_t i = 1; i < act.size(); ++i)
      if (state.maker_owns(v1, act[i])) nbrs.push_back(act[i]);
    X.restrict_to(nbrs);
    X.prune_high_breaker_degree(2 * b * (b + 1));
    X.drop_breaker_edges();
    const std::vector<Vertex> next = X.greedy_clique();
    X.restrict_to(next);
  }
  return clique;
}

}  // namespace detail

// Builds a Maker K_{q_target} inside `view` by processing its lowest vertex
// and recursing on a greedy clique of the survivors. `protect` is a view
// that surplus Maker edges must avoid.
inline BaseCliqueResult play_base_clique(Match& match, GraphView& view, std::size_t q_target,
                                         const GraphView* protect = nullptr) {
  const GameState& state = match.state();
  const auto b = static_cast<std::uint64_t>(state.bias().breaker_edges);
  if (q_target < 1) throw Error(ErrorCode::PreconditionViolation, "clique target must be positive");
  if (view.size() < base_clique_threshold(q_target, b))
    throw Error(ErrorCode::PreconditionViolation, "view smaller than the base clique threshold");
  detail::require_pure(view);

  match.open();
  BaseCliqueResult out;
  out.certificate.kind = RoundKind::Biased;
  out.certificate.level = 1;
  out.certificate.start_checkpoint = state.transcript().size();
  const std::size_t moves0 = state.maker_move_count();
  out.clique = detail::base_clique(match, view, q_target, protect, "base/K" + std::to_string(q_target));
  out.certificate.clique = out.clique;
  out.certificate.checkpoint = state.transcript().size();
  out.certificate.maker_moves = state.maker_move_count() - moves0;
  return out;
}

// One round of the biased clique strategy: a K_m on the first C greedy
// clique vertices, then m edges to every surviving vertex at once.
inline RoundCertificate play_biased_round(Match& match, GraphView& view, std::uint64_t q, std::size_t level = 0) {
  const GameState& state = match.state();
  const auto m = static_cast<std::uint64_t>(state.bias().maker_edges);
  const auto b = static_cast<std::uint64_t>(state.bias().breaker_edges);
  const ScheduleParams params = ScheduleParams::make(state.n(), m, b, q);
  const ViewStats st = view.stats();
  if (st.n < params.C * (st.d_max + 1))
    throw Error(ErrorCode::PreconditionViolation, "view too small for a biased round: n < C(d+1)");
  detail::require_pure(view);

  match.open();
  RoundCertificate cert;
  cert.kind = RoundKind::Biased;
  cert.level = level;
  cert.start_checkpoint = state.transcript().size();
  const std::size_t moves0 = state.maker_move_count();
  const std::string tag = "biased/L" + std::to_string(level);

  // Round 1
  const std::vector<Vertex> S = view.greedy_clique(params.C);
  GraphView sview(state, S);
  const std::vector<Vertex> clique = detail::base_clique(match, sview, m, &view, tag + "/clique");

  // Round 2: keep common neighbors of the clique untouched by Breaker.
  std::vector<Vertex> doomed;
  for (Vertex c : clique)
    for (Vertex u : view.non_neighbors(c)) doomed.push_back(u);
  view.prune_breaker_touched(S);
  view.remove_vertices(S);
  view.remove_vertices(doomed);

  // Round 3
  const std::vector<Vertex> cand = view.active();
  std::vector<Vertex> joined;
  for (Vertex u : cand) {
    bool free = true;
    for (Vertex c : clique) free = free && state.is_unclaimed(u, c);
    if (!free) continue;
    std::vector<EdgeClaim> edges;
    for (Vertex c : clique) edges.push_back(match.maker_edge(c, u));
    match.maker_move(match.pad_move(std::move(edges), u, {&view}), tag + "/join");
    joined.push_back(u);
  }
  view.restrict_to(joined);

  // Round 4
  view.prune_high_breaker_degree(q);
  view.drop_breaker_edges();

  cert.checkpoint = state.transcript().size();
  cert.clique = clique;
  cert.survivors = view.active();
  cert.non_edges = view.non_edge_list();
  cert.min_survivors = detail::floor_i64(params.survivor_bound(st.n, st.d_max));
  cert.max_comp_degree = st.d_max + q;
  cert.maker_moves = state.maker_move_count() - moves0;
  return cert;
}

// Runs the biased schedule on `view`: q/m - 1 rounds, then the base case.
inline CliqueRun play_biased_clique_on(Match& match, GraphView& view, std::uint64_t q) {
  const GameState& state = match.state();
  const auto m = static_cast<std::uint64_t>(state.bias().maker_edges);
  const auto b = static_cast<std::uint64_t>(state.bias().breaker_edges);
  if (q == 0 || q % m != 0)
    throw Error(ErrorCode::PreconditionViolation,
                "clique size " + std::to_string(q) + " is not a positive multiple of m = " + std::to_string(m));
  const Feasibility f = biased_feasible(view.size(), m, b, q, q / m);
  if (!f.feasible)
    throw Error(ErrorCode::InfeasibleSchedule, "biased schedule infeasible for n = " + std::to_string(view.size()) +
                                                   ", q = " + std::to_string(q));
  detail::require_pure(view);

  match.open();
  CliqueRun run;
  const std::size_t moves0 = state.maker_move_count();
  for (std::uint64_t i = q / m; i >= 2; --i) {
    RoundCertificate cert = play_biased_round(match, view, q, i);
    run.clique.insert(run.clique.end(), cert.clique.begin(), cert.clique.end());
    run.certificates.push_back(std::move(cert));
  }
  const std::uint64_t C = base_clique_threshold(m, b);
  std::vector<Vertex> S;
  try {
    S = view.greedy_clique(C);
  } catch (const Error&) {
    throw Error(ErrorCode::InternalAssertion, "final view lost its base clique");
  }
  GraphView sview(state, S);
  BaseCliqueResult base = play_base_clique(match, sview, m, &view);
  run.clique.insert(run.clique.end(), base.clique.begin(), base.clique.end());
  run.certificates.push_back(std::move(base.certificate));
  run.maker_moves = state.maker_move_count() - moves0;
  if (!maker_has_clique(state, run.clique))
    throw Error(ErrorCode::InternalAssertion, "biased controller finished without a Maker clique");
  return run;
}

inline CliqueRun play_biased_clique(Match& match, std::uint64_t q) {
  const GameState& state = match.state();
  const auto m = static_cast<std::uint64_t>(state.bias().maker_edges);
  const auto b = static_cast<std::uint64_t>(state.bias().breaker_edges);
  if (q == 0 || q % m != 0)
    throw Error(ErrorCode::PreconditionViolation,
                "clique size " + std::to_string(q) + " is not a positive multiple of m = " + std::to_string(m));
  const std::uint64_t n0 = detail::guaranteed_fresh(state);
  if (!biased_feasible(n0, m, b, q, q / m).feasible)
    throw Error(ErrorCode::InfeasibleSchedule,
                "biased schedule infeasible for n = " + std::to_string(n0) + ", q = " + std::to_string(q));
  GraphView view(state, detail::fresh_vertices(match));
  return play_biased_clique_on(match, view, q);
}

// One round of the fast (1:1) strategy: Maker takes half the star of the
// lowest vertex, survivors are its Maker neighbors of low Breaker degree.
inline RoundCertificate play_fast_round(Match& match, GraphView& view, std::uint64_t q, std::size_t level = 0) {
  const GameState& state = match.state();
  if (q < 3) throw Error(ErrorCode::PreconditionViolation, "fast round needs q >= 3");
  if (view.empty()) throw Error(ErrorCode::PreconditionViolation, "fast round on an empty view");
  detail::require_pure(view);
  const ViewStats st = view.stats();

  match.open();
  RoundCertificate cert;
  cert.kind = RoundKind::Fast;
  cert.level = level;
  cert.start_checkpoint = state.transcript().size();
  const std::size_t moves0 = state.maker_move_count();
  const std::string tag = "fast/L" + std::to_string(level);

  const Vertex v1 = view.first();
  const std::vector<Vertex> lost(view.non_neighbors(v1).begin(), view.non_neighbors(v1).end());
  view.remove_vertices(lost);
  const std::vector<Vertex> act = view.active();
  const std::size_t k = act.size() - 1;
  const std::size_t target = (k + 1) / 2;
  std::size_t ptr = 1;
  for (std::size_t made = 0; made < target; ++made) {
    while (ptr < act.size() && !state.is_unclaimed(v1, act[ptr])) ++ptr;
    if (ptr == act.size()) break;
    match.maker_move(match.pad_move({match.maker_edge(v1, act[ptr++])}, v1, {&view}), tag);
  }

  std::vector<Vertex> nbrs;
  for (std::size_t i = 1; i < act.size(); ++i)
    if (state.maker_owns(v1, act[i])) nbrs.push_back(act[i]);
  view.restrict_to(nbrs);
  view.prune_high_breaker_degree(q);
  view.drop_breaker_edges();

  cert.checkpoint = state.transcript().size();
  cert.clique = {v1};
  cert.survivors = view.active();
  cert.non_edges = view.non_edge_list();
  cert.min_survivors =
      detail::floor_i64(Rational(static_cast<std::int64_t>(st.n) - 1 - static_cast<std::int64_t>(st.d_max), 2) -
                        Rational(st.n, q));
  cert.max_comp_degree = st.d_max + q;
  cert.maker_moves = state.maker_move_count() - moves0;
  return cert;
}

inline ConstellationRun play_fast_constellation(Match& match, std::uint64_t q, std::uint64_t r) {
  const GameState& state = match.state();
  if (r < 1) throw Error(ErrorCode::PreconditionViolation, "a constellation needs at least one witness");
  const std::uint64_t n0 = detail::guaranteed_fresh(state);
  if (!fast_feasible(n0, q, r, q).feasible)
    throw Error(ErrorCode::InfeasibleSchedule, "fast schedule infeasible for n = " + std::to_string(n0));
  GraphView view(state, detail::fresh_vertices(match));
  ConstellationRun run;
  const std::size_t moves0 = state.maker_move_count();
  for (std::uint64_t i = q; i >= 1; --i) {
    RoundCertificate cert = play_fast_round(match, view, q, i);
    run.constellation.clique.push_back(cert.clique.front());
    run.certificates.push_back(std::move(cert));
  }
  try {
    run.constellation.witnesses = view.greedy_clique(r);
  } catch (const Error&) {
    throw Error(ErrorCode::InternalAssertion, "fast schedule left fewer than r witnesses");
  }
  run.maker_moves = state.maker_move_count() - moves0;
  if (!is_constellation(state, run.constellation))
    throw Error(ErrorCode::InternalAssertion, "fast controller finished without a constellation");
  return run;
}

// Constellation first, then a clique among the witnesses. The residual
// clique uses the (1:1) biased controller when it is feasible on r vertices
// and otherwise a single witness edge.
inline BigCliqueRun play_fast_big_clique(Match& match, std::uint64_t q_head, std::uint64_t r) {
  const GameState& state = match.state();
  if (state.bias().maker_edges != 1 || state.bias().breaker_edges != 1)
    throw Error(ErrorCode::PreconditionViolation, "the fast strategy is for (1:1) games");
  BigCliqueRun out;
  const std::size_t moves0 = state.maker_move_count();
  ConstellationRun cons = play_fast_constellation(match, q_head, r);
  out.constellation = cons.constellation;
  out.constellation_moves = cons.maker_moves;
  out.certificates = std::move(cons.certificates);
  out.clique = out.constellation.clique;

  const auto& w = out.constellation.witnesses;
  const std::size_t before_residual = state.maker_move_count();
  const std::uint64_t rq = max_feasible_q(r, 1, 1);
  if (rq >= 1) {
    GraphView wview(state, w);
    CliqueRun res = play_biased_clique_on(match, wview, rq);
    out.clique.insert(out.clique.end(), res.clique.begin(), res.clique.end());
    out.residual_q = res.clique.size();
    for (auto& c : res.certificates) out.certificates.push_back(std::move(c));
  } else if (w.size() >= 2) {
    match.maker_move(match.pad_move({match.maker_edge(w[0], w[1])}, w[0], {}), "fast/residual");
    out.clique.push_back(w[0]);
    out.clique.push_back(w[1]);
    out.residual_q = 2;
  } else {
    out.clique.push_back(w[0]);
    out.residual_q = 1;
  }
  out.residual_moves = state.maker_move_count() - before_residual;
  out.maker_moves = state.maker_move_count() - moves0;
  if (!maker_has_clique(state, out.clique))
    throw Error(ErrorCode::InternalAssertion, "composition finished without a Maker clique");
  return out;
}

// One round of the tournament strategy. `first_goal` is the goal vertex
// played by the processed vertex; set i of the partition (i >= 1) holds the
// candidates for goal vertex first_goal + i.
inline TournamentRound play_tournament_round(Match& match, GraphView& view, CandidatePartition partition,
                                             const GoalTournament& goal, std::size_t first_goal, std::uint64_t q,
                                             std::size_t level = 0) {
  const GameState& state = match.state();
  if (q < 3) throw Error(ErrorCode::PreconditionViolation, "tournament round needs q >= 3");
  if (partition.sets.empty() || partition.sets.front().empty())
    throw Error(ErrorCode::PreconditionViolation, "empty candidate partition");
  if (first_goal + partition.sets.size() > goal.q())
    throw Error(ErrorCode::PreconditionViolation, "more candidate sets than goal vertices");
  partition.validate(view);
  detail::require_pure(view);
  const std::size_t r = partition.sets.size();
  const std::size_t n = partition.min_size();
  const std::size_t d = view.stats().d_max;

  match.open();
  TournamentRound out;
  RoundCertificate& cert = out.certificate;
  cert.kind = RoundKind::Tournament;
  cert.level = level;
  cert.start_checkpoint = state.transcript().size();
  const std::size_t moves0 = state.maker_move_count();
  const std::string tag = "tournament/u" + std::to_string(first_goal);

  // Every set is cut to the common size n.
  for (auto& set : partition.sets) {
    std::sort(set.begin(), set.end());
    view.remove_vertices(std::vector<Vertex>(set.begin() + static_cast<std::ptrdiff_t>(n), set.end()));
    set.resize(n);
  }

  // Round 1
  const Vertex v1 = partition.sets.front().front();
  view.remove_vertices(std::vector<Vertex>(partition.sets.front().begin() + 1, partition.sets.front().end()));
  const std::vector<Vertex> lost(view.non_neighbors(v1).begin(), view.non_neighbors(v1).end());
  view.remove_vertices(lost);

  std::vector<std::vector<Vertex>> tilde(r);
  std::unordered_map<Vertex, std::size_t> home;
  for (std::size_t i = 1; i < r; ++i) {
    for (Vertex x : partition.sets[i])
      if (view.is_active(x)) {
        tilde[i].push_back(x);
        home[x] = i;
      }
  }
  std::vector<bool> outgoing(r, true);
  for (std::size_t i = 1; i < r; ++i) outgoing[i] = goal.arc(first_goal, first_goal + i);

  // Round 2: answer Breaker inside the set he just attacked, otherwise
  // cycle through the sets.
  std::vector<std::size_t> ptr(r, 0);
  auto has_free = [&](std::size_t i) {
    while (ptr[i] < tilde[i].size() && !state.is_unclaimed(v1, tilde[i][ptr[i]])) ++ptr[i];
    return ptr[i] < tilde[i].size();
  };
  std::size_t rr = 1;
  while (r > 1) {
    std::size_t target = 0;
    if (const MoveRecord* br = match.last_breaker_reply()) {
      for (const EdgeClaim& e : br->edges) {
        if (e.u != v1 && e.v != v1) continue;
        auto it = home.find(e.u == v1 ? e.v : e.u);
        if (it != home.end() && has_free(it->second)) {
          target = it->second;
          break;
        }
      }
    }
    if (target == 0) {
      for (std::size_t k = 0; k + 1 < r; ++k) {
        const std::size_t i = 1 + (rr - 1 + k) % (r - 1);
        if (has_free(i)) {
          target = i;
          rr = i % (r - 1) + 1;
          break;
        }
      }
    }
    if (target == 0) break;
    const Vertex x = tilde[target][ptr[target]++];
    EdgeClaim e = outgoing[target] ? match.maker_edge(v1, x) : match.maker_edge(x, v1);
    match.maker_move(match.pad_move({e}, v1, {&view}), tag);
  }

  // Round 3
  std::vector<Vertex> keep;
  for (std::size_t i = 1; i < r; ++i)
    for (Vertex x : tilde[i])
      if (state.maker_owns(v1, x)) keep.push_back(x);
  view.restrict_to(keep);
  view.prune_high_breaker_degree(q * q);
  view.drop_breaker_edges();

  cert.checkpoint = state.transcript().size();
  cert.clique = {v1};
  cert.survivors = view.active();
  cert.non_edges = view.non_edge_list();
  cert.max_comp_degree = d + q * q;
  const std::int64_t floor =
      detail::floor_i64(Rational(static_cast<std::int64_t>(n) - static_cast<std::int64_t>(d), 2) -
                        Rational(BigInt(r) * n, BigInt(q) * q));
  for (std::size_t i = 1; i < r; ++i) {
    CandidateSetCertificate s;
    s.goal_vertex = first_goal + i;
    s.outgoing = outgoing[i];
    s.min_size = floor;
    for (Vertex x : tilde[i])
      if (view.is_active(x)) s.members.push_back(x);
    out.next.sets.push_back(s.members);
    cert.sets.push_back(std::move(s));
  }
  cert.min_survivors = std::max<std::int64_t>(0, floor) * static_cast<std::int64_t>(r - 1);
  cert.maker_moves = state.maker_move_count() - moves0;
  return out;
}

inline TournamentRun play_tournament(Match& match, const GoalTournament& goal) {
  GameState& state = match.state();
  goal.validate();
  const std::size_t q = goal.q();
  if (state.variant() != Variant::Oriented)
    throw Error(ErrorCode::PreconditionViolation, "tournament games need the oriented variant");
  TournamentRun run;
  if (q == 0) throw Error(ErrorCode::InvalidGoal, "empty goal tournament");
  if (q == 1) {
    run.mapping = {0};
    return run;
  }
  if (q >= 3 && !tournament_feasible(detail::guaranteed_fresh(state) / q, q, q).feasible)
    throw Error(ErrorCode::InfeasibleSchedule,
                "tournament schedule infeasible for n = " + std::to_string(detail::guaranteed_fresh(state)));

  const std::vector<Vertex> fresh = detail::fresh_vertices(match);
  const std::size_t moves0 = state.maker_move_count();
  if (q == 2) {
    for (Vertex a = 0; a < state.n() && run.mapping.empty(); ++a)
      for (Vertex b = a + 1; b < state.n(); ++b)
        if (state.is_unclaimed(a, b)) {
          run.mapping = {a, b};
          const EdgeClaim e = goal.arc(0, 1) ? match.maker_edge(a, b) : match.maker_edge(b, a);
          match.maker_move(match.pad_move({e}, a, {}), "tournament/direct");
          break;
        }
    if (run.mapping.empty()) throw Error(ErrorCode::InternalAssertion, "no free pair for T_2");
  } else {
    const std::size_t block = fresh.size() / q;
    CandidatePartition part;
    for (std::size_t j = 0; j < q; ++j)
      part.sets.emplace_back(fresh.begin() + static_cast<std::ptrdiff_t>(j * block),
                             fresh.begin() + static_cast<std::ptrdiff_t>((j + 1) * block));
    GraphView view(state, std::span<const Vertex>(fresh.data(), block * q));
    for (std::size_t j = 0; j + 1 < q; ++j) {
      TournamentRound round = play_tournament_round(match, view, std::move(part), goal, j, q, q - j);
      run.mapping.push_back(round.certificate.clique.front());
      run.certificates.push_back(std::move(round.certificate));
      part = std::move(round.next);
      if (part.sets.empty() || part.sets.front().empty())
        throw Error(ErrorCode::InternalAssertion, "a candidate set ran empty");
    }
    run.mapping.push_back(part.sets.front().front());
  }
  run.maker_moves = state.maker_move_count() - moves0;
  if (!maker_has_tournament(state, run.mapping, goal))
    throw Error(ErrorCode::InternalAssertion, "tournament controller finished without the goal");
  return run;
}

}  // namespace mbgame
