#ifndef TREEFOL_GAME_HPP
#define TREEFOL_GAME_HPP

#include <cassert>
#include <compare>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "treefol/term.hpp"

namespace treefol {

// Two-partner game on pairs (i, j), i ≥ 0, j ∈ {0,1}:
//   j = 0:          the player must replace i by i-1 (no move from (0,0));
//   j = 1, i odd:   replace i by i+1, or j by 0;
//   j = 1, i even:  replace i by i+1 and j by 0, or just i by i+1.
// The first player who cannot keep i non-negative loses.
struct GamePos {
  int i;
  int j;
  auto operator<=>(const GamePos&) const = default;
};

inline std::vector<GamePos> game_moves(const GamePos& p) {
  if (p.j == 0) {
    if (p.i == 0) return {};
    return {GamePos{p.i - 1, 0}};
  }
  if (p.i % 2 == 1) return {GamePos{p.i + 1, 1}, GamePos{p.i, 0}};
  return {GamePos{p.i + 1, 0}, GamePos{p.i + 1, 1}};
}

// Positions from which the mover can force a win within at most k of
// their own moves:
//   W_0 = ∅,
//   W_m = { p : ∃ p→q such that every q→r has r ∈ W_{m-1} }.
// A k-winning start has i ≤ 2k (each round changes i by at most 2 and the
// losing end is (0,0)), so any position with i beyond the bound is
// correctly treated as non-winning as long as i_bound ≥ 2k; we require
// i_bound ≥ 2k+2 so the two-step lookahead p→q→r stays inside the table.
inline std::set<GamePos> k_winning_positions(int k, int i_bound) {
  if (k < 1) throw std::invalid_argument("k_winning_positions: k must be >= 1");
  if (i_bound < 2 * k + 2) throw std::invalid_argument("k_winning_positions: i_bound < 2k+2");
  std::set<GamePos> w;
  for (int round = 1; round <= k; ++round) {
    std::set<GamePos> next = w;  // monotone in k
    for (int i = 0; i <= i_bound; ++i) {
      for (int j = 0; j <= 1; ++j) {
        GamePos p{i, j};
        if (next.count(p)) continue;
        for (const GamePos& q : game_moves(p)) {
          bool all = true;
          for (const GamePos& r : game_moves(q))
            if (!w.count(r)) {
              all = false;
              break;
            }
          if (all) {
            next.insert(p);
            break;
          }
        }
      }
    }
    w = std::move(next);
  }
  return w;
}

// Symbols of the tree encoding of game positions.
struct GameSymbols {
  FunctionSymbol zero{"0", 0};
  FunctionSymbol one{"1", 0};
  FunctionSymbol f{"f", 1};
  FunctionSymbol g{"g", 1};
  FunctionSymbol c{"c", 2};
};

// bar(i): (fg)^{i/2}(0) for even i, g(bar(i-1)) for odd i.
inline Term encode_counter(const GameSymbols& sy, int i) {
  assert(i >= 0);
  if (i == 0) return Term(sy.zero, {});
  if (i % 2 == 1) return Term(sy.g, {encode_counter(sy, i - 1)});
  return Term(sy.f, {Term(sy.g, {encode_counter(sy, i - 2)})});
}

// (i, j) ↦ c(bar(i), j).
inline Term encode_position(const GameSymbols& sy, int i, int j) {
  assert(j == 0 || j == 1);
  return Term(sy.c, {encode_counter(sy, i), Term(j == 0 ? sy.zero : sy.one, {})});
}

inline std::optional<int> decode_counter(const GameSymbols& sy, const Term& t) {
  if (t.is_var()) return std::nullopt;
  if (t.sym() == sy.zero) return 0;
  if (t.sym() == sy.g) {
    auto d = decode_counter(sy, t.args()[0]);
    if (!d || *d % 2 != 0) return std::nullopt;
    return *d + 1;
  }
  if (t.sym() == sy.f) {
    const Term& s = t.args()[0];
    if (s.is_var() || s.sym() != sy.g) return std::nullopt;
    auto d = decode_counter(sy, s.args()[0]);
    if (!d || *d % 2 != 0) return std::nullopt;
    return *d + 2;
  }
  return std::nullopt;
}

// Partial inverse of encode_position.
inline std::optional<GamePos> decode_position(const GameSymbols& sy, const Term& t) {
  if (t.is_var() || t.sym() != sy.c) return std::nullopt;
  auto i = decode_counter(sy, t.args()[0]);
  if (!i) return std::nullopt;
  const Term& jt = t.args()[1];
  if (jt.is_var()) return std::nullopt;
  if (jt.sym() == sy.zero) return GamePos{*i, 0};
  if (jt.sym() == sy.one) return GamePos{*i, 1};
  return std::nullopt;
}

}  // namespace treefol

#endif
