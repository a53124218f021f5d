#pragma once

#include <cstdint>
#include <vector>

#include "coxkl/words.hpp"

namespace coxkl {

// A fully enumerated finite Coxeter group with dense index-based tables:
// multiplication by generators, inverses, descent sets, and Bruhat order.
// Element indices follow the (length, lex) order of canonical words, so
// index 0 is the identity and lengths are nondecreasing in the index.
//
// Everything is precomputed at construction; all queries are O(1) reads,
// so instances are safe to share across threads.
class FiniteGroup {
 public:
  // Enumerates the whole group by closing under right multiplication.
  // Throws std::invalid_argument when the diagram is not recognized as
  // finite, BudgetExceeded when the order exceeds the group budget. The
  // enumeration count is checked against the structural order formula.
  static FiniteGroup enumerate(const WordContext& ctx);

  int size() const { return static_cast<int>(words_.size()); }
  const Word& word(int i) const { return words_[i]; }
  int length(int i) const { return static_cast<int>(words_[i].size()); }

  // Index of a canonical word, -1 when absent (e.g. non-canonical input).
  int index_of(const Word& canonical) const;

  // Index of s*w (Left) or w*s (Right).
  int mult(int i, Gen s, Side side) const {
    return side == Side::Left ? lmult_[idx(i, s)] : rmult_[idx(i, s)];
  }
  int inverse(int i) const { return inverse_[i]; }

  bool descent(int i, Gen s, Side side) const {
    return length(mult(i, s, side)) < length(i);
  }
  // Descent generators in ascending order.
  std::vector<Gen> descents(int i, Side side) const;

  // Bruhat order.
  bool leq(int i, int j) const { return leq_[i * size() + j] != 0; }

 private:
  FiniteGroup() = default;
  int idx(int i, Gen s) const { return i * rank_ + s; }

  int rank_ = 0;
  std::vector<Word> words_;
  std::vector<int> lmult_, rmult_;  // size() x rank
  std::vector<int> inverse_;
  std::vector<uint8_t> leq_;  // size() x size(), row = smaller element
};

}  // namespace coxkl
