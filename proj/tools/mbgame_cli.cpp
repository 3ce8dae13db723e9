#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mbgame/mbgame.hpp"

using namespace mbgame;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + path);
  out << text;
}

struct SimulateFlags {
  std::string config;
  std::string game;
  bool compose = false;
  std::uint64_t n = 0, q = 0, r = 0;
  int m = 0, b = 0;
  std::string goal, breaker, trace, out, first_player;
  std::uint64_t seed = 0;
  std::uint64_t seeds = 0;
  bool check = false, timing = false;
  unsigned workers = 0;
};

int simulate(const SimulateFlags& f, const CLI::App& sub) {
  ExperimentConfig cfg;
  if (!f.config.empty()) cfg = ExperimentConfig::from_json(nlohmann::json::parse(slurp(f.config)));
  auto given = [&](const char* name) { return sub.count(name) > 0; };
  if (given("--game")) cfg.game = parse_game_kind(f.game);
  if (given("--compose")) cfg.compose = true;
  if (given("--n")) cfg.n = f.n;
  if (given("--m")) cfg.m = f.m;
  if (given("--b")) cfg.b = f.b;
  if (given("--q")) cfg.q = f.q;
  if (given("--r")) cfg.r = f.r;
  if (given("--goal")) {
    std::ifstream in(f.goal);
    if (!in) throw Error(ErrorCode::InvalidConfig, "cannot read goal file " + f.goal);
    cfg.goal = GoalTournament::parse(in);
  }
  if (given("--breaker")) cfg.breaker = parse_adversary_kind(f.breaker);
  if (given("--seed")) cfg.seeds = {f.seed};
  if (given("--seeds")) {
    cfg.seeds.clear();
    const std::uint64_t base = given("--seed") ? f.seed : 0;
    for (std::uint64_t i = 0; i < f.seeds; ++i) cfg.seeds.push_back(base + i);
  }
  if (given("--trace")) cfg.trace_dir = f.trace;
  if (given("--out")) cfg.out_csv = f.out;
  if (given("--check-invariants")) cfg.check_invariants = true;
  if (given("--timing")) cfg.timing = true;
  if (given("--first-player")) cfg.first_player = parse_player(f.first_player);
  if (given("--workers")) cfg.workers = f.workers;

  const std::vector<ResultRow> rows = run_simulate(cfg);
  write_or_print(cfg.out_csv, emit_csv(rows));
  bool ok = true;
  for (const auto& r : rows) {
    if (!r.ok()) {
      ok = false;
      std::cerr << "seed " << r.seed << ": " << r.outcome << (r.detail.empty() ? "" : " (" + r.detail + ")") << "\n";
    }
  }
  return ok ? 0 : 1;
}

int verify_round(const std::string& trace_path, const std::string& certs_path, int index) {
  std::ifstream trace_in(trace_path);
  if (!trace_in) throw Error(ErrorCode::InvalidConfig, "cannot open " + trace_path);
  const std::vector<MoveRecord> transcript = read_ndjson(trace_in);
  const nlohmann::json doc = nlohmann::json::parse(slurp(certs_path));
  const GameHeader header = parse_game_header(doc.at("header"));

  std::vector<RoundCertificate> certs;
  std::vector<std::size_t> labels;
  const auto& arr = doc.at("certificates");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (index >= 0 && static_cast<std::size_t>(index) != i) continue;
    certs.push_back(certificate_from_json(arr.at(i)));
    labels.push_back(i);
  }
  if (index >= 0 && certs.empty()) throw Error(ErrorCode::InvalidConfig, "no certificate at that index");

  const auto reports = verify_all(transcript, header, certs);
  bool ok = true;
  for (std::size_t k = 0; k < reports.size(); ++k) {
    for (const CheckResult& c : reports[k].checks) {
      std::cout << "certificate " << labels[k] << " " << c.name << ": " << (c.passed ? "pass" : "FAIL");
      if (!c.passed && !c.detail.empty()) std::cout << " (" << c.detail << ")";
      std::cout << "\n";
    }
    ok = ok && reports[k].passed();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maker/Breaker strategy simulator"};
  app.require_subcommand(1);

  SimulateFlags sf;
  auto* sim = app.add_subcommand("simulate", "play a strategy against a Breaker over a set of seeds");
  sim->add_option("--config", sf.config, "JSON config; flags override it");
  sim->add_option("--game", sf.game, "biased | fast | tournament");
  sim->add_flag("--compose", sf.compose, "fast game: build the big clique on the witnesses");
  sim->add_option("--n", sf.n, "board size N");
  sim->add_option("--m", sf.m, "Maker bias");
  sim->add_option("--b", sf.b, "Breaker bias");
  sim->add_option("--q", sf.q, "target clique / constellation / tournament size");
  sim->add_option("--r", sf.r, "number of witnesses (fast game)");
  sim->add_option("--goal", sf.goal, "goal tournament file");
  sim->add_option("--breaker", sf.breaker, "random | greedy_spoiler | clique_blocker");
  sim->add_option("--seed", sf.seed, "single seed, or first seed with --seeds");
  sim->add_option("--seeds", sf.seeds, "number of consecutive seeds");
  sim->add_option("--trace", sf.trace, "directory for NDJSON traces and certificates");
  sim->add_option("--out", sf.out, "CSV output (stdout if omitted)");
  sim->add_flag("--check-invariants", sf.check, "verify every certificate against the replayed trace");
  sim->add_flag("--timing", sf.timing, "add a wall_ms column");
  sim->add_option("--first-player", sf.first_player, "maker | breaker");
  sim->add_option("--workers", sf.workers, "parallel seeds (default: all cores)");

  std::string vtrace, vcerts;
  int vindex = -1;
  auto* ver = app.add_subcommand("verify-round", "check round certificates against a trace");
  ver->add_option("--trace", vtrace, "NDJSON trace")->required();
  ver->add_option("--certificate", vcerts, "certificate file written next to the trace")->required();
  ver->add_option("--index", vindex, "only this certificate");

  std::vector<std::uint64_t> tn;
  std::string tlog2;
  int tm = 1, tb = 1;
  std::string tout;
  auto* thr = app.add_subcommand("thresholds", "tabulate threshold formulas and the feasible q");
  thr->add_option("--n", tn, "board sizes");
  thr->add_option("--log2", tlog2, "range lo:hi of exponents, N = 2^k");
  thr->add_option("--m", tm, "Maker bias");
  thr->add_option("--b", tb, "Breaker bias");
  thr->add_option("--out", tout, "CSV output (stdout if omitted)");

  std::string ogame = "clique", ogoal, ofirst = "maker";
  std::size_t on = 4, oq = 3;
  int om = 1, ob = 1;
  auto* ora = app.add_subcommand("oracle", "solve a tiny game exactly");
  ora->add_option("--game", ogame, "clique | tournament");
  ora->add_option("--n", on, "board size (at most 6, or 5 for tournaments)");
  ora->add_option("--q", oq, "clique size, or transitive tournament size without --goal");
  ora->add_option("--m", om, "Maker bias");
  ora->add_option("--b", ob, "Breaker bias");
  ora->add_option("--goal", ogoal, "goal tournament file");
  ora->add_option("--first-player", ofirst, "maker | breaker");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) return simulate(sf, *sim);
    if (*ver) return verify_round(vtrace, vcerts, vindex);
    if (*thr) {
      std::vector<std::uint64_t> ns = tn;
      if (!tlog2.empty()) {
        const auto colon = tlog2.find(':');
        if (colon == std::string::npos) throw Error(ErrorCode::InvalidConfig, "--log2 wants lo:hi");
        const int lo = std::stoi(tlog2.substr(0, colon));
        const int hi = std::stoi(tlog2.substr(colon + 1));
        if (lo < 0 || hi > 63) throw Error(ErrorCode::InvalidConfig, "--log2 exponents must lie in [0, 63]");
        for (int k = lo; k <= hi; ++k) ns.push_back(std::uint64_t{1} << k);
      }
      write_or_print(tout, emit_thresholds_csv(run_thresholds(ns, tm, tb)));
      return 0;
    }
    if (*ora) {
      BiasSpec bias{om, ob, parse_player(ofirst)};
      nlohmann::ordered_json out;
      nlohmann::ordered_json params;
      params["game"] = ogame;
      params["n"] = on;
      params["m"] = om;
      params["b"] = ob;
      params["first_player"] = ofirst;
      SolvedPosition s;
      if (ogame == "clique") {
        params["q"] = oq;
        s = solve_clique_game(on, oq, bias);
      } else if (ogame == "tournament") {
        GoalTournament goal = GoalTournament::transitive(oq);
        if (!ogoal.empty()) goal = GoalTournament::parse(slurp(ogoal));
        params["goal"] = goal.to_string();
        s = solve_tournament_game(on, goal, bias.first_player, bias);
      } else {
        throw Error(ErrorCode::InvalidConfig, "oracle game must be clique or tournament");
      }
      out["params"] = params;
      out["winner"] = to_string(s.winner);
      out["min_moves"] = s.min_maker_moves ? nlohmann::ordered_json(*s.min_maker_moves) : nlohmann::ordered_json();
      out["key"] = s.key;
      std::cout << out.dump() << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
