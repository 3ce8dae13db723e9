#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace mbgame {

using Vertex = std::uint32_t;
using VertexPair = std::pair<Vertex, Vertex>;

enum class Player : std::uint8_t { Maker, Breaker };
enum class Variant : std::uint8_t { Plain, Oriented };

inline constexpr Player other(Player p) {
  return p == Player::Maker ? Player::Breaker : Player::Maker;
}

inline constexpr std::string_view to_string(Player p) {
  return p == Player::Maker ? "maker" : "breaker";
}

inline constexpr std::string_view to_string(Variant v) {
  return v == Variant::Plain ? "plain" : "oriented";
}

enum class ErrorCode {
  InvalidBoard,
  InvalidBias,
  InvalidEdge,
  OutOfTurn,
  DoubleClaim,
  OverBudget,
  UnderBudget,
  MissingOrientation,
  IllFormedOrientation,
  GameOver,
  ReplayDivergence,
  NotActive,
  InvalidThreshold,
  InsufficientClique,
  PreconditionViolation,
  SingularSchedule,
  InfeasibleSchedule,
  Overflow,
  DomainError,
  BoardTooLarge,
  InvalidGoal,
  InvalidConfig,
  ParseError,
  InternalAssertion,
};

inline constexpr std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidBoard: return "invalid-board";
    case ErrorCode::InvalidBias: return "invalid-bias";
    case ErrorCode::InvalidEdge: return "invalid-edge";
    case ErrorCode::OutOfTurn: return "out-of-turn";
    case ErrorCode::DoubleClaim: return "double-claim";
    case ErrorCode::OverBudget: return "over-budget";
    case ErrorCode::UnderBudget: return "under-budget";
    case ErrorCode::MissingOrientation: return "missing-orientation";
    case ErrorCode::IllFormedOrientation: return "ill-formed-orientation";
    case ErrorCode::GameOver: return "game-over";
    case ErrorCode::ReplayDivergence: return "replay-divergence";
    case ErrorCode::NotActive: return "not-active";
    case ErrorCode::InvalidThreshold: return "invalid-threshold";
    case ErrorCode::InsufficientClique: return "insufficient-clique";
    case ErrorCode::PreconditionViolation: return "precondition-violation";
    case ErrorCode::SingularSchedule: return "singular-schedule";
    case ErrorCode::InfeasibleSchedule: return "infeasible-schedule";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::DomainError: return "domain-error";
    case ErrorCode::BoardTooLarge: return "board-too-large";
    case ErrorCode::InvalidGoal: return "invalid-goal";
    case ErrorCode::InvalidConfig: return "invalid-config";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::InternalAssertion: return "internal-assertion";
  }
  return "unknown";
}

// Every failure in the library surfaces as an Error carrying a code; the
// optional index locates the offending move for replay divergences.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

inline constexpr VertexPair canonical(Vertex u, Vertex v) {
  return u < v ? VertexPair{u, v} : VertexPair{v, u};
}

inline constexpr std::uint64_t pair_key(Vertex u, Vertex v) {
  auto [a, b] = canonical(u, v);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace mbgame
