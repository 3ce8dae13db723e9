#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "mbgame/types.hpp"

namespace mbgame {

// The goal tournament T_q on goal vertices 0..q-1. arc(i, j) is true iff the
// goal orients the pair as i -> j.
class GoalTournament {
 public:
  GoalTournament() = default;

  explicit GoalTournament(std::size_t q) : q_(q), beats_(q * q, 0) {}

  static GoalTournament transitive(std::size_t q) {
    GoalTournament t(q);
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = i + 1; j < q; ++j) t.set_arc(i, j);
    return t;
  }

  // 0 -> 1 -> 2 -> 0
  static GoalTournament cyclic3() {
    GoalTournament t(3);
    t.set_arc(0, 1);
    t.set_arc(1, 2);
    t.set_arc(2, 0);
    return t;
  }

  std::size_t q() const { return q_; }

  bool arc(std::size_t from, std::size_t to) const {
    return beats_[from * q_ + to] != 0;
  }

  void set_arc(std::size_t from, std::size_t to) {
    if (from >= q_ || to >= q_ || from == to)
      throw Error(ErrorCode::InvalidGoal, "arc endpoints out of range");
    beats_[from * q_ + to] = 1;
    beats_[to * q_ + from] = 0;
  }

  // Exactly one arc per pair.
  void validate() const {
    for (std::size_t i = 0; i < q_; ++i) {
      if (beats_[i * q_ + i] != 0)
        throw Error(ErrorCode::InvalidGoal, "loop at goal vertex " + std::to_string(i));
      for (std::size_t j = i + 1; j < q_; ++j) {
        if (arc(i, j) == arc(j, i))
          throw Error(ErrorCode::InvalidGoal,
                      "pair (" + std::to_string(i) + "," + std::to_string(j) +
                          ") is not oriented exactly once");
      }
    }
  }

  // The goal obtained by renaming goal vertex i to perm[i].
  GoalTournament relabeled(const std::vector<std::size_t>& perm) const {
    GoalTournament t(q_);
    for (std::size_t i = 0; i < q_; ++i)
      for (std::size_t j = 0; j < q_; ++j)
        if (i != j && arc(i, j)) t.set_arc(perm[i], perm[j]);
    return t;
  }

  // File format: first line q, then q rows of q characters over {0,1,-}
  // with '-' on the diagonal and '1' at (i,j) iff i -> j.
  static GoalTournament parse(std::istream& in) {
    std::size_t q = 0;
    if (!(in >> q) || q == 0)
      throw Error(ErrorCode::ParseError, "goal file must start with a positive q");
    GoalTournament t(q);
    for (std::size_t i = 0; i < q; ++i) {
      std::string row;
      if (!(in >> row) || row.size() != q)
        throw Error(ErrorCode::ParseError, "goal row " + std::to_string(i) + " must have " +
                                               std::to_string(q) + " characters");
      for (std::size_t j = 0; j < q; ++j) {
        char c = row[j];
        if (i == j) {
          if (c != '-') throw Error(ErrorCode::InvalidGoal, "diagonal entry must be '-'");
          continue;
        }
        if (c == '1')
          t.beats_[i * q + j] = 1;
        else if (c != '0')
          throw Error(ErrorCode::ParseError, std::string("unexpected character '") + c + "'");
      }
    }
    t.validate();
    return t;
  }

  static GoalTournament parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
  }

  std::string to_string() const {
    std::string out = std::to_string(q_) + "\n";
    for (std::size_t i = 0; i < q_; ++i) {
      for (std::size_t j = 0; j < q_; ++j) out += i == j ? '-' : (arc(i, j) ? '1' : '0');
      out += '\n';
    }
    return out;
  }

  friend bool operator==(const GoalTournament&, const GoalTournament&) = default;

 private:
  std::size_t q_ = 0;
  std::vector<std::uint8_t> beats_;
};

}  // namespace mbgame
