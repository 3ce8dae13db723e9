#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <numeric>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "mbgame/breaker.hpp"
#include "mbgame/certificate.hpp"
#include "mbgame/engine.hpp"
#include "mbgame/maker.hpp"
#include "mbgame/match.hpp"
#include "mbgame/schedule.hpp"
#include "mbgame/tournament.hpp"
#include "mbgame/trace.hpp"

namespace mbgame {

enum class GameKind { Biased, Fast, Tournament };

inline std::string_view to_string(GameKind g) {
  switch (g) {
    case GameKind::Biased: return "biased";
    case GameKind::Fast: return "fast";
    case GameKind::Tournament: return "tournament";
  }
  return "unknown";
}

inline GameKind parse_game_kind(std::string_view s) {
  if (s == "biased") return GameKind::Biased;
  if (s == "fast") return GameKind::Fast;
  if (s == "tournament") return GameKind::Tournament;
  throw Error(ErrorCode::InvalidConfig, "unknown game '" + std::string(s) + "'");
}

inline Player parse_player(std::string_view s) {
  if (s == "maker") return Player::Maker;
  if (s == "breaker") return Player::Breaker;
  throw Error(ErrorCode::InvalidConfig, "unknown player '" + std::string(s) + "'");
}

struct ExperimentConfig {
  GameKind game = GameKind::Biased;
  bool compose = false;  // fast game: go on to a big clique on the witnesses
  std::uint64_t n = 0;
  int m = 1;
  int b = 1;
  std::uint64_t q = 0;
  std::uint64_t r = 1;
  std::optional<GoalTournament> goal;  // defaults to the transitive T_q
  AdversaryKind breaker = AdversaryKind::Random;
  std::vector<std::uint64_t> seeds{0};
  std::string trace_dir;
  std::string out_csv;
  bool check_invariants = false;
  bool timing = false;
  Player first_player = Player::Maker;
  unsigned workers = 0;  // 0: hardware concurrency

  BiasSpec bias() const { return BiasSpec{m, b, first_player}; }

  GoalTournament goal_or_default() const { return goal ? *goal : GoalTournament::transitive(q); }

  void validate() const {
    if (n < 2) throw Error(ErrorCode::InvalidConfig, "board needs at least 2 vertices");
    bias().validate();
    if (seeds.empty()) throw Error(ErrorCode::InvalidConfig, "no seeds");
    if (breaker == AdversaryKind::Scripted)
      throw Error(ErrorCode::InvalidConfig, "scripted breakers are not available from a config");
    switch (game) {
      case GameKind::Biased:
        if (q == 0) throw Error(ErrorCode::InvalidConfig, "biased game needs q");
        break;
      case GameKind::Fast:
        if (m != 1 || b != 1) throw Error(ErrorCode::InvalidConfig, "fast game is (1:1)");
        if (q == 0 || r == 0) throw Error(ErrorCode::InvalidConfig, "fast game needs q and r");
        break;
      case GameKind::Tournament:
        if (goal) {
          goal->validate();
          if (q != 0 && q != goal->q()) throw Error(ErrorCode::InvalidConfig, "q disagrees with the goal file");
        } else if (q == 0) {
          throw Error(ErrorCode::InvalidConfig, "tournament game needs q or a goal");
        }
        break;
    }
  }

  // Keys mirror the command-line flags.
  static ExperimentConfig from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    try {
      if (j.contains("game")) c.game = parse_game_kind(j.at("game").get<std::string>());
      c.compose = j.value("compose", c.compose);
      c.n = j.value("n", c.n);
      c.m = j.value("m", c.m);
      c.b = j.value("b", c.b);
      c.q = j.value("q", c.q);
      c.r = j.value("r", c.r);
      if (j.contains("goal")) {
        std::ifstream in(j.at("goal").get<std::string>());
        if (!in) throw Error(ErrorCode::InvalidConfig, "cannot read goal file");
        c.goal = GoalTournament::parse(in);
      }
      if (j.contains("breaker")) c.breaker = parse_adversary_kind(j.at("breaker").get<std::string>());
      if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
      if (j.contains("seed")) c.seeds = {j.at("seed").get<std::uint64_t>()};
      c.trace_dir = j.value("trace", c.trace_dir);
      c.out_csv = j.value("out", c.out_csv);
      c.check_invariants = j.value("check_invariants", c.check_invariants);
      c.timing = j.value("timing", c.timing);
      if (j.contains("first_player")) c.first_player = parse_player(j.at("first_player").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidConfig, e.what());
    }
    return c;
  }
};

struct ResultRow {
  std::string game;
  std::uint64_t n = 0;
  int m = 1;
  int b = 1;
  std::uint64_t q = 0;
  std::uint64_t r = 0;
  std::string breaker;
  std::uint64_t seed = 0;
  std::string outcome;  // win, fail, or an error code
  std::uint64_t achieved_q = 0;
  std::uint64_t maker_moves = 0;
  std::uint64_t certificates = 0;
  std::string check = "skipped";  // pass, fail, skipped
  std::optional<double> wall_ms;
  std::string detail;

  bool ok() const { return outcome == "win" && check != "fail"; }

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

// Everything one seed produced, including the board, so callers can audit it.
struct SeedRun {
  ResultRow row;
  std::optional<GameState> state;
  std::vector<RoundCertificate> certificates;
  std::vector<Vertex> structure;  // clique vertices or goal mapping
  std::optional<Constellation> constellation;
};

inline nlohmann::ordered_json game_header(const ExperimentConfig& cfg, const GameState& state) {
  nlohmann::ordered_json h;
  h["game"] = to_string(cfg.game);
  h["n"] = state.n();
  h["m"] = state.bias().maker_edges;
  h["b"] = state.bias().breaker_edges;
  h["first_player"] = to_string(state.bias().first_player);
  h["variant"] = to_string(state.variant());
  return h;
}

struct GameHeader {
  std::size_t n = 0;
  BiasSpec bias;
  Variant variant = Variant::Plain;
};

inline GameHeader parse_game_header(const nlohmann::json& j) {
  try {
    GameHeader h;
    h.n = j.at("n").get<std::size_t>();
    h.bias.maker_edges = j.at("m").get<int>();
    h.bias.breaker_edges = j.at("b").get<int>();
    h.bias.first_player = parse_player(j.value("first_player", std::string("maker")));
    h.variant = j.value("variant", std::string("plain")) == "oriented" ? Variant::Oriented : Variant::Plain;
    return h;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

// Replays `transcript` once and verifies each certificate at its checkpoint.
inline std::vector<VerifyReport> verify_all(std::span<const MoveRecord> transcript, const GameHeader& header,
                                            std::span<const RoundCertificate> certs) {
  std::vector<std::size_t> order(certs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return certs[a].checkpoint < certs[b].checkpoint; });
  std::vector<VerifyReport> reports(certs.size());
  GameState state(header.n, header.bias, header.variant);
  std::size_t applied = 0;
  for (std::size_t k : order) {
    const std::size_t target = std::min(certs[k].checkpoint, transcript.size());
    for (; applied < target; ++applied) {
      const MoveRecord& rec = transcript[applied];
      try {
        state.claim(rec.player, rec.edges, rec.phase);
      } catch (const Error& e) {
        throw Error(ErrorCode::ReplayDivergence, "move " + std::to_string(applied) + ": " + e.what(), applied);
      }
    }
    reports[k] = verify_certificate(state, certs[k]);
  }
  return reports;
}

inline VerifyReport run_verify_round(std::span<const MoveRecord> transcript, const GameHeader& header,
                                     const RoundCertificate& cert) {
  return verify_all(transcript, header, std::span<const RoundCertificate>(&cert, 1)).front();
}

inline SeedRun run_seed(const ExperimentConfig& cfg, std::uint64_t seed) {
  SeedRun out;
  ResultRow& row = out.row;
  row.game = std::string(to_string(cfg.game)) + (cfg.compose && cfg.game == GameKind::Fast ? "+compose" : "");
  row.n = cfg.n;
  row.m = cfg.m;
  row.b = cfg.b;
  row.q = cfg.game == GameKind::Tournament ? cfg.goal_or_default().q() : cfg.q;
  row.r = cfg.game == GameKind::Fast ? cfg.r : 0;
  row.breaker = std::string(to_string(cfg.breaker));
  row.seed = seed;

  const auto t0 = std::chrono::steady_clock::now();
  const Variant variant = cfg.game == GameKind::Tournament ? Variant::Oriented : Variant::Plain;
  try {
    out.state.emplace(cfg.n, cfg.bias(), variant);
  } catch (const Error& e) {
    row.outcome = std::string(to_string(e.code()));
    row.detail = e.what();
    return out;
  }
  GameState& state = *out.state;
  auto adversary = make_adversary(AdversaryConfig{cfg.breaker, seed, std::nullopt});
  Match match(state, *adversary);

  bool structure_ok = false;
  try {
    switch (cfg.game) {
      case GameKind::Biased: {
        CliqueRun run = play_biased_clique(match, cfg.q);
        out.structure = run.clique;
        out.certificates = std::move(run.certificates);
        structure_ok = maker_has_clique(state, out.structure);
        break;
      }
      case GameKind::Fast: {
        if (cfg.compose) {
          BigCliqueRun run = play_fast_big_clique(match, cfg.q, cfg.r);
          out.structure = run.clique;
          out.constellation = run.constellation;
          out.certificates = std::move(run.certificates);
          structure_ok = maker_has_clique(state, out.structure) && is_constellation(state, run.constellation) &&
                         run.maker_moves == state.maker_move_count();
        } else {
          ConstellationRun run = play_fast_constellation(match, cfg.q, cfg.r);
          out.structure = run.constellation.clique;
          out.constellation = run.constellation;
          out.certificates = std::move(run.certificates);
          structure_ok = is_constellation(state, run.constellation) && run.maker_moves <= cfg.n;
        }
        break;
      }
      case GameKind::Tournament: {
        const GoalTournament goal = cfg.goal_or_default();
        TournamentRun run = play_tournament(match, goal);
        out.structure = run.mapping;
        out.certificates = std::move(run.certificates);
        structure_ok = maker_has_tournament(state, out.structure, goal);
        break;
      }
    }
    row.outcome = structure_ok ? "win" : "fail";
    row.achieved_q = structure_ok ? out.structure.size() : 0;
  } catch (const Error& e) {
    row.outcome = std::string(to_string(e.code()));
    row.detail = e.what();
  }
  row.maker_moves = state.maker_move_count();
  row.certificates = out.certificates.size();

  if (cfg.check_invariants && row.outcome == "win") {
    const GameHeader header{state.n(), state.bias(), state.variant()};
    bool pass = true;
    try {
      for (const VerifyReport& rep : verify_all(state.transcript(), header, out.certificates)) {
        for (const CheckResult& c : rep.checks)
          if (!c.passed) {
            pass = false;
            if (row.detail.empty()) row.detail = c.name + ": " + c.detail;
          }
      }
      GameState replayed = replay(state.transcript(), state.n(), state.bias(), state.variant());
      pass = pass && replayed.same_board(state);
    } catch (const Error& e) {
      pass = false;
      row.detail = e.what();
    }
    row.check = pass ? "pass" : "fail";
  }

  if (!cfg.trace_dir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.trace_dir);
    const std::string stem = (fs::path(cfg.trace_dir) / (row.game + "_seed" + std::to_string(seed))).string();
    std::ofstream trace(stem + ".ndjson");
    write_ndjson(trace, state.transcript());
    nlohmann::ordered_json certs;
    certs["header"] = game_header(cfg, state);
    certs["structure"] = out.structure;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : out.certificates) arr.push_back(to_json(c));
    certs["certificates"] = std::move(arr);
    std::ofstream(stem + ".certs.json") << certs.dump(1) << "\n";
  }

  if (cfg.timing)
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

// One row per seed, in seed order regardless of which worker finished first.
inline std::vector<ResultRow> run_simulate(const ExperimentConfig& cfg) {
  cfg.validate();
  unsigned workers = cfg.workers != 0 ? cfg.workers : std::max(1U, std::thread::hardware_concurrency());
  std::vector<ResultRow> rows(cfg.seeds.size());
  for (std::size_t start = 0; start < cfg.seeds.size(); start += workers) {
    std::vector<std::future<ResultRow>> batch;
    const std::size_t end = std::min<std::size_t>(cfg.seeds.size(), start + workers);
    for (std::size_t i = start; i < end; ++i)
      batch.push_back(std::async(std::launch::async, [&cfg, seed = cfg.seeds[i]] { return run_seed(cfg, seed).row; }));
    for (std::size_t i = start; i < end; ++i) rows[i] = batch[i - start].get();
  }
  return rows;
}

// ---------------------------------------------------------------------------
// CSV

inline const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> cols{"game",    "n",           "m",           "b",            "q",
                                             "r",       "breaker",     "seed",        "outcome",      "achieved_q",
                                             "maker_moves", "certificates", "check", "detail"};
  return cols;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

inline std::string format_ms(double ms) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << ms;
  return s.str();
}

inline std::string emit_csv(const std::vector<ResultRow>& rows) {
  const bool timed = std::any_of(rows.begin(), rows.end(), [](const ResultRow& r) { return r.wall_ms.has_value(); });
  std::ostringstream out;
  for (std::size_t i = 0; i < result_columns().size(); ++i) out << (i ? "," : "") << result_columns()[i];
  if (timed) out << ",wall_ms";
  out << "\n";
  for (const ResultRow& r : rows) {
    out << csv_escape(r.game) << ',' << r.n << ',' << r.m << ',' << r.b << ',' << r.q << ',' << r.r << ','
        << csv_escape(r.breaker) << ',' << r.seed << ',' << csv_escape(r.outcome) << ',' << r.achieved_q << ','
        << r.maker_moves << ',' << r.certificates << ',' << r.check << ',' << csv_escape(r.detail);
    if (timed) out << ',' << (r.wall_ms ? format_ms(*r.wall_ms) : "");
    out << "\n";
  }
  return out.str();
}

inline std::vector<ResultRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) return {};
  const auto header = csv_split(line);
  const bool timed = header.size() == result_columns().size() + 1;
  if (header.size() < result_columns().size() ||
      !std::equal(result_columns().begin(), result_columns().end(), header.begin()))
    throw Error(ErrorCode::ParseError, "unexpected CSV header");
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = csv_split(line);
    if (f.size() != header.size()) throw Error(ErrorCode::ParseError, "CSV row has " + std::to_string(f.size()) + " fields");
    try {
      ResultRow r;
      r.game = f[0];
      r.n = std::stoull(f[1]);
      r.m = std::stoi(f[2]);
      r.b = std::stoi(f[3]);
      r.q = std::stoull(f[4]);
      r.r = std::stoull(f[5]);
      r.breaker = f[6];
      r.seed = std::stoull(f[7]);
      r.outcome = f[8];
      r.achieved_q = std::stoull(f[9]);
      r.maker_moves = std::stoull(f[10]);
      r.certificates = std::stoull(f[11]);
      r.check = f[12];
      r.detail = f[13];
      if (timed && !f[14].empty()) r.wall_ms = std::stod(f[14]);
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ParseError, "bad number in CSV row");
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Threshold table

struct ThresholdRow {
  std::uint64_t n = 0;
  int m = 1;
  int b = 1;
  std::optional<double> eq_q_biased;
  std::optional<double> f;
  std::optional<double> g;
  std::uint64_t max_feasible_q = 0;
  double biased_coefficient = 0;
  double g_coefficient = 0;
  bool coefficient_exceeds_g = false;  // m/log(b+1) > 2/log((m+b)/m)
};

inline std::vector<ThresholdRow> run_thresholds(const std::vector<std::uint64_t>& ns, int m, int b) {
  BiasSpec{m, b}.validate();
  std::vector<ThresholdRow> rows;
  auto guarded = [](auto fn) -> std::optional<double> {
    try {
      return fn();
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  for (std::uint64_t n : ns) {
    ThresholdRow r;
    r.n = n;
    r.m = m;
    r.b = b;
    const auto N = static_cast<double>(n);
    r.eq_q_biased = guarded([&] { return eq_q_biased(N, m, b); });
    r.f = guarded([&] { return f_formula(N); });
    r.g = guarded([&] { return g_formula(N, m, b); });
    r.max_feasible_q = max_feasible_q(n, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(b));
    r.biased_coefficient = biased_coefficient(m, b);
    r.g_coefficient = g_coefficient(m, b);
    r.coefficient_exceeds_g = r.biased_coefficient > r.g_coefficient;
    rows.push_back(r);
  }
  return rows;
}

inline std::string emit_thresholds_csv(const std::vector<ThresholdRow>& rows) {
  auto num = [](const std::optional<double>& v) { return v ? format_ms(*v) : std::string(); };
  std::ostringstream out;
  out << "n,m,b,log2_n,eq_q_biased,f,g,max_feasible_q,biased_coefficient,g_coefficient,coefficient_exceeds_g\n";
  for (const ThresholdRow& r : rows) {
    out << r.n << ',' << r.m << ',' << r.b << ',' << format_ms(std::log2(static_cast<double>(r.n))) << ','
        << num(r.eq_q_biased) << ',' << num(r.f) << ',' << num(r.g) << ',' << r.max_feasible_q << ','
        << format_ms(r.biased_coefficient) << ',' << format_ms(r.g_coefficient) << ','
        << (r.coefficient_exceeds_g ? "yes" : "no") << "\n";
  }
  return out.str();
}

}  // namespace mbgame
