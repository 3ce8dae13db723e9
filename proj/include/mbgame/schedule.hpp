#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "mbgame/types.hpp"

namespace mbgame {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt floor_of(const Rational& x) {
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  BigInt q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

inline BigInt ceil_of(const Rational& x) { return -floor_of(-x); }

inline std::int64_t to_int64(const BigInt& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorCode::Overflow, "value does not fit in 64 bits");
  return static_cast<std::int64_t>(x);
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline Rational pow_rational(const Rational& base, std::uint64_t exp) {
  Rational result = 1;
  Rational b = base;
  while (exp > 0) {
    if (exp & 1U) result *= b;
    b *= b;
    exp >>= 1U;
  }
  return result;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    throw Error(ErrorCode::Overflow, "schedule value exceeds 64 bits");
  return a * b;
}

// n(q,1,b): board size on which Maker builds K_q in a (1:b) game by
// processing one vertex and recursing on a greedy clique of its survivors.
//   n(1) = 1,  n(q) = 5 b^2 (b+1)^2 n(q-1) + 1
inline std::uint64_t base_clique_threshold(std::uint64_t q, std::uint64_t b) {
  if (q < 1 || b < 1) throw Error(ErrorCode::DomainError, "q and b must be positive");
  const std::uint64_t factor = checked_mul(checked_mul(5, b * b), (b + 1) * (b + 1));
  std::uint64_t n = 1;
  for (std::uint64_t i = 2; i <= q; ++i) {
    n = checked_mul(factor, n);
    if (n == std::numeric_limits<std::uint64_t>::max())
      throw Error(ErrorCode::Overflow, "schedule value exceeds 64 bits");
    n += 1;
  }
  return n;
}

inline std::uint64_t binom2(std::uint64_t c) { return c * (c - (c > 0 ? 1 : 0)) / 2; }

// Recursion bookkeeping for the biased clique controller.
struct ScheduleParams {
  std::uint64_t N = 0;
  std::uint64_t m = 1;
  std::uint64_t b = 1;
  std::uint64_t q = 0;
  std::uint64_t C = 1;
  Rational c1;
  Rational c2;
  Rational shrink_denominator;

  static ScheduleParams make(std::uint64_t N, std::uint64_t m, std::uint64_t b, std::uint64_t q) {
    if (m < 1 || b < 1) throw Error(ErrorCode::DomainError, "bias must be positive");
    if (q <= b * (b + 1))
      throw Error(ErrorCode::SingularSchedule,
                  "q = " + std::to_string(q) + " must exceed b(b+1) = " + std::to_string(b * (b + 1)));
    ScheduleParams p;
    p.N = N;
    p.m = m;
    p.b = b;
    p.q = q;
    p.C = base_clique_threshold(m, b);
    p.c1 = Rational(m, b + 1);
    p.c2 = Rational(BigInt(p.C) + 2 * BigInt(b) * BigInt(binom2(p.C)), BigInt(b + 1));
    p.shrink_denominator = Rational(b + 1) + Rational(b * (b + 1) * (b + 1), q - b * (b + 1));
    return p;
  }

  // Survivor guarantee of one biased round on a view with n vertices and
  // complementary degree at most d:
  //   n' = (n - C - m d - 2b C(C,2)) / (b+1) - b n / q
  Rational survivor_bound(std::uint64_t n, std::uint64_t d) const {
    BigInt head = BigInt(n) - BigInt(C) - BigInt(m) * BigInt(d) - 2 * BigInt(b) * BigInt(binom2(C));
    return Rational(head, BigInt(b + 1)) - Rational(BigInt(b) * BigInt(n), BigInt(q));
  }

  // The same quantity in closed form: n / shrink_denominator - (c1 d + c2).
  Rational survivor_bound_closed(std::uint64_t n, std::uint64_t d) const {
    return Rational(n) / shrink_denominator - (c1 * Rational(d) + c2);
  }
};

struct Feasibility {
  bool feasible = false;
  Rational lhs;     // left-hand side of the condition
  Rational rhs;     // right-hand side
  Rational margin;  // lhs - rhs

  double margin_approx() const { return to_double(margin); }
};

//   n / r^i - i (c1 q^2 + c2) >= C (q^2 + 1)
// with r the survivor-bound shrink denominator.
inline Feasibility biased_feasible(std::uint64_t N, std::uint64_t m, std::uint64_t b, std::uint64_t q,
                                   std::uint64_t i) {
  const ScheduleParams p = ScheduleParams::make(N, m, b, q);
  Feasibility f;
  if (i == 0) {
    f.feasible = true;
    f.lhs = Rational(N);
    f.rhs = 0;
    f.margin = f.lhs;
    return f;
  }
  const Rational q2(BigInt(q) * q);
  f.lhs = Rational(N) / pow_rational(p.shrink_denominator, i) - Rational(i) * (p.c1 * q2 + p.c2);
  f.rhs = Rational(p.C) * (q2 + 1);
  f.margin = f.lhs - f.rhs;
  f.feasible = f.margin >= 0;
  return f;
}

// Largest multiple q of m with q > b(b+1) whose full schedule is feasible on
// K_N; 0 if none.
inline std::uint64_t max_feasible_q(std::uint64_t N, std::uint64_t m, std::uint64_t b) {
  std::uint64_t C = 0;
  try {
    C = base_clique_threshold(m, b);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Overflow) return 0;  // no 64-bit board reaches C
    throw;
  }
  if (N < C) return 0;
  // r >= b+1 and the right-hand side grows with q, so nothing beyond
  // (b+1)^(q/m) > N / C can be feasible.
  const double levels = std::log(static_cast<double>(N) / static_cast<double>(C)) /
                        std::log(static_cast<double>(b + 1));
  const std::uint64_t q_cap = m * (static_cast<std::uint64_t>(levels) + 2);
  std::uint64_t best = 0;
  std::uint64_t q = (b * (b + 1) / m + 1) * m;
  for (; q <= q_cap; q += m) {
    if (biased_feasible(N, m, b, q, q / m).feasible) best = q;
  }
  return best;
}

inline Rational fast_ratio(std::uint64_t q) {
  // 2 + 4/(q-2)
  return Rational(2) + Rational(4, q - 2);
}

//   n / (2 + 4/(q-2))^i - i q^2 >= r (q^2 + 1)
inline Feasibility fast_feasible(std::uint64_t n, std::uint64_t q, std::uint64_t r, std::uint64_t i) {
  if (q < 3) throw Error(ErrorCode::SingularSchedule, "fast schedule needs q >= 3");
  const Rational q2(BigInt(q) * q);
  Feasibility f;
  f.lhs = Rational(n) / pow_rational(fast_ratio(q), i) - Rational(i) * q2;
  f.rhs = Rational(r) * (q2 + 1);
  f.margin = f.lhs - f.rhs;
  f.feasible = f.margin >= 0;
  return f;
}

// Smallest board on which the full fast schedule (i = q) is feasible.
inline std::uint64_t min_fast_board(std::uint64_t q, std::uint64_t r) {
  const Rational q2(BigInt(q) * q);
  const Rational need = pow_rational(fast_ratio(q), q) * (Rational(r) * (q2 + 1) + Rational(q) * q2);
  return static_cast<std::uint64_t>(ceil_of(need));
}

//   n / (2 + 4/(q-2))^i - i q^3 >= 1
inline Feasibility tournament_feasible(std::uint64_t n, std::uint64_t q, std::uint64_t i) {
  if (q < 3) throw Error(ErrorCode::SingularSchedule, "tournament schedule needs q >= 3");
  const Rational q3(BigInt(q) * q * q);
  Feasibility f;
  f.lhs = Rational(n) / pow_rational(fast_ratio(q), i) - Rational(i) * q3;
  f.rhs = 1;
  f.margin = f.lhs - f.rhs;
  f.feasible = f.margin >= 0;
  return f;
}

// ---------------------------------------------------------------------------
// Closed-form thresholds, for reporting. log is binary throughout.

inline void require_loglog_domain(double N) {
  if (!(N >= 4.0)) throw Error(ErrorCode::DomainError, "formula needs N >= 4");
}

// (m / log(b+1)) (log N - 5 log log N)
inline double eq_q_biased(double N, double m, double b) {
  require_loglog_domain(N);
  if (m < 1 || b < 1) throw Error(ErrorCode::DomainError, "bias must be positive");
  const double lg = std::log2(N);
  return m / std::log2(b + 1) * (lg - 5.0 * std::log2(lg));
}

// log N - 6 log log N
inline double eq_q_tournament(double N) {
  require_loglog_domain(N);
  const double lg = std::log2(N);
  return lg - 6.0 * std::log2(lg);
}

// 2 log N - 2 log log N + 2 log e - 3
inline double f_formula(double N) {
  require_loglog_domain(N);
  const double lg = std::log2(N);
  return 2.0 * lg - 2.0 * std::log2(lg) + 2.0 * std::log2(std::exp(1.0)) - 3.0;
}

// Conjectured biased threshold without its o(1) term; c = (m+b)/m and, for
// m > b, c0 = m/(m-b).
inline double g_formula(double N, double m, double b) {
  if (m < 1 || b < 1) throw Error(ErrorCode::DomainError, "bias must be positive");
  const double c = (m + b) / m;
  const double log_c = std::log2(c);
  const double logc_N = std::log2(N) / log_c;
  if (!(logc_N > 1.0)) throw Error(ErrorCode::DomainError, "log_c log_c N undefined for this N");
  double value = 2.0 / (std::log2(m + b) - std::log2(m)) * std::log2(N) -
                 2.0 * (std::log2(logc_N) / log_c) + 2.0 * (std::log2(std::exp(1.0)) / log_c) -
                 2.0 * (1.0 / log_c) - 1.0;
  if (m > b) {
    const double c0 = m / (m - b);
    value += 2.0 * log_c / std::log2(c0);
  }
  return value;
}

// Leading coefficients of log N in the two thresholds.
inline double biased_coefficient(double m, double b) { return m / std::log2(b + 1); }
inline double g_coefficient(double m, double b) { return 2.0 / (std::log2(m + b) - std::log2(m)); }

}  // namespace mbgame
