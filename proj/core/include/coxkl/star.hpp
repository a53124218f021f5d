#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "coxkl/heaps.hpp"

namespace coxkl {

// A generalized star operation: one step along the left or right
// {s,t}-string through an element, toward the short end (Lower) or the long
// end (Upper). Defined only for 3 <= m(s,t) < infinity.
enum class StarDirection { Lower, Upper };

struct StarMove {
  std::pair<Gen, Gen> pair;
  Side side = Side::Left;
  StarDirection dir = StarDirection::Lower;
};

// The string neighbor of w under the move, or nullopt when w is not on an
// {s,t}-string (parabolic part e or the longest element of W_I) or the
// neighbor falls off the string's end. Lower steps shorten the element by
// exactly one letter, upper steps lengthen it by one. Fully commutative
// inputs are handled entirely through their heaps, so they work far beyond
// the word-length budget; other inputs go through the word engine. Throws
// std::invalid_argument when m(s,t) is 2 or infinite.
std::optional<Word> star_op(const WordContext& ctx, const Word& w,
                            const StarMove& move);

// True when the canonical word of w is a product of distinct pairwise
// commuting generators (the empty product counts).
bool is_commuting_product(const diagram::CoxeterSystem& sys, const Word& w);

struct ReductionStep {
  StarMove move;
  Word word;  // canonical word reached by the move
};

struct ReductionPath {
  Word start;
  std::vector<ReductionStep> steps;
  const Word& terminal() const { return steps.empty() ? start : steps.back().word; }
};

// Breadth-first search over lower star moves only (both sides, every pair
// with finite m >= 3), stopping at the first element that is a product of
// pairwise commuting generators. Moves are tried left side first, pairs in
// lex order, so the returned shortest path is deterministic. Returns nullopt
// when the search space is exhausted without a terminal (proven absence);
// throws BudgetExceeded when max_steps cut the search short or the visited
// set outgrew the closure budget. max_steps < 0 means l(w), which can never
// truncate.
std::optional<ReductionPath> star_reduce(const WordContext& ctx, const Word& w,
                                         int max_steps = -1);

// [{move: {pair, side, dir}, word}, ...] with generator names and word text.
nlohmann::json reduction_path_json(const diagram::CoxeterSystem& sys,
                                   const ReductionPath& path);

}  // namespace coxkl
