#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "coxkl/words.hpp"

namespace coxkl {

// Heap of a word: the poset on letter positions generated by i < j with
// non-commuting (or equal) labels, closed transitively. Positions are 0-based
// in memory and 1-based in every serialized form. Reachability lives in
// 64-bit masks, which caps heap size at 64 letters; that is far above every
// configured word budget and is enforced explicitly.
struct Heap {
  int size = 0;
  Word labels;                               // position -> generator
  std::vector<std::pair<int, int>> covers;   // (lower, upper), position order
  std::vector<std::uint64_t> below, above;   // strict down/up sets per position
  std::vector<int> levels;                   // lattice-embedding heights from 1

  bool leq(int i, int j) const {  // i strictly precedes j
    return (below[static_cast<size_t>(j)] >> i) & 1u;
  }
};

Heap build_heap(const diagram::CoxeterSystem& sys, const Word& w);

// Both halves of the no-braid criterion on the heap of w: no covering
// relation with equal labels, and no convex alternating {s,t}-chain of length
// m(s,t) >= 3. Passing certifies at once that w is reduced and that the
// element it represents is fully commutative; no canonicalization happens, so
// this is safe far beyond the word-length budget.
bool fc_criterion(const diagram::CoxeterSystem& sys, const Word& w);

// FC test for a word already known (or checked here) to be reduced. Throws
// std::invalid_argument when w is not reduced; the reducedness check runs
// only in the criterion-failed branch, so FC inputs stay budget-free.
bool is_fully_commutative(const WordContext& ctx, const Word& w);

// Lex-least reduced word of an FC element: the greedy label-minimal linear
// extension of its heap. Agrees with WordContext::canonical_form on FC input
// but costs O(q^2). Throws std::invalid_argument unless fc_criterion holds.
Word heap_canonical_form(const diagram::CoxeterSystem& sys, const Word& w);

// Descent letters of an FC word read off the heap: labels of minimal
// elements (Left) or maximal elements (Right), ascending. The word must pass
// fc_criterion; that is the caller's burden here (no recheck).
std::vector<Gen> fc_descents(const Heap& h, Side side);
// Position of the minimal/maximal element labeled s, -1 if s is not a
// descent. Erasing that position from the word multiplies by s on that side.
int fc_descent_position(const Heap& h, Gen s, Side side);

// Maximum antichain via minimum chain cover (bipartite matching on the
// strict order); the witness antichain comes from the matching's vertex
// cover. Positions in the witness are 0-based and ascending.
struct NValue {
  int n = 0;
  std::vector<int> antichain;
};
NValue n_value(const Heap& h);
// Convenience overload for an FC word; throws unless fc_criterion holds.
NValue n_value(const diagram::CoxeterSystem& sys, const Word& w);

// All FC elements of length <= max_len as canonical words, ordered by length
// then lexicographically. BFS over left multiplication; every prefix of an
// FC element is FC, so the frontier is complete. Throws BudgetExceeded when
// max_len exceeds the word budget or the count exceeds the FC budget.
std::vector<Word> enumerate_fc(const diagram::CoxeterSystem& sys, int max_len,
                               const Budgets& budgets = Budgets{});

// Size of the commutation class of a reduced word (BFS over m=2 swaps only).
// Throws BudgetExceeded when the class outgrows the closure budget.
long long commutation_class_size(const diagram::CoxeterSystem& sys, const Word& w,
                                 const Budgets& budgets = Budgets{});

// Open s-interval between two consecutive occurrences lo < hi of the label s:
// the positions strictly between them in heap order. Keyed by consecutive
// pairs in the s-column, ascending.
struct OpenInterval {
  int lo = 0, hi = 0;           // the bounding s-labeled positions
  std::uint64_t between = 0;    // strict interior as a position mask
};
std::vector<OpenInterval> open_intervals(const Heap& h, Gen s);

// Rendering: rows are levels (highest first), columns generators in
// declaration order. JSON: {size, labels, covers, levels}, 1-based positions.
std::string heap_ascii(const diagram::CoxeterSystem& sys, const Heap& h);
nlohmann::json heap_json(const diagram::CoxeterSystem& sys, const Heap& h);

}  // namespace coxkl
