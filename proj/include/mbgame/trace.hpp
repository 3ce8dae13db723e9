#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mbgame/engine.hpp"

namespace mbgame {

// One NDJSON line per move:
//   {"i":0,"p":"M","edges":[[u,v],...],"dir":[[from,to],...],"phase":"..."}
// "dir" is present only when the move carries orientations.
inline nlohmann::ordered_json record_to_json(const MoveRecord& rec) {
  nlohmann::ordered_json j;
  j["i"] = rec.index;
  j["p"] = rec.player == Player::Maker ? "M" : "B";
  auto edges = nlohmann::ordered_json::array();
  bool oriented = !rec.edges.empty();
  for (const EdgeClaim& e : rec.edges) {
    edges.push_back({e.u, e.v});
    oriented = oriented && e.orientation.has_value();
  }
  j["edges"] = std::move(edges);
  if (oriented) {
    auto dir = nlohmann::ordered_json::array();
    for (const EdgeClaim& e : rec.edges) dir.push_back({e.orientation->first, e.orientation->second});
    j["dir"] = std::move(dir);
  }
  j["phase"] = rec.phase;
  return j;
}

inline MoveRecord record_from_json(const nlohmann::json& j) {
  try {
    MoveRecord rec;
    rec.index = j.at("i").get<std::size_t>();
    const std::string p = j.at("p").get<std::string>();
    if (p != "M" && p != "B") throw Error(ErrorCode::ParseError, "player must be \"M\" or \"B\"");
    rec.player = p == "M" ? Player::Maker : Player::Breaker;
    const auto& edges = j.at("edges");
    const nlohmann::json* dir = j.contains("dir") ? &j.at("dir") : nullptr;
    if (dir != nullptr && dir->size() != edges.size())
      throw Error(ErrorCode::ParseError, "\"dir\" and \"edges\" differ in length");
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const auto& e = edges.at(k);
      if (e.size() != 2) throw Error(ErrorCode::ParseError, "edge must be a pair");
      std::optional<VertexPair> orient;
      if (dir != nullptr) {
        const auto& d = dir->at(k);
        if (d.size() != 2) throw Error(ErrorCode::ParseError, "direction must be a pair");
        orient = VertexPair{d.at(0).get<Vertex>(), d.at(1).get<Vertex>()};
      }
      rec.edges.push_back(EdgeClaim::make(e.at(0).get<Vertex>(), e.at(1).get<Vertex>(), rec.player, orient));
    }
    rec.phase = j.value("phase", std::string{});
    return rec;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, ex.what());
  }
}

inline void write_ndjson(std::ostream& out, std::span<const MoveRecord> transcript) {
  for (const MoveRecord& rec : transcript) out << record_to_json(rec).dump() << '\n';
}

inline std::string to_ndjson(std::span<const MoveRecord> transcript) {
  std::ostringstream out;
  write_ndjson(out, transcript);
  return out.str();
}

inline std::vector<MoveRecord> read_ndjson(std::istream& in) {
  std::vector<MoveRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& ex) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + ex.what());
    }
    out.push_back(record_from_json(j));
  }
  return out;
}

inline std::vector<MoveRecord> from_ndjson(const std::string& text) {
  std::istringstream in(text);
  return read_ndjson(in);
}

}  // namespace mbgame
