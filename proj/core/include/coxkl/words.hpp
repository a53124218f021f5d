#pragma once

#include <map>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coxkl/budgets.hpp"
#include "coxkl/diagram.hpp"

namespace coxkl {

// Letters are generator indices of a fixed CoxeterSystem; a Word is a string
// over them. Elements are represented by their canonical word: the lex-least
// reduced word under declaration order. Canonicity is a property, not a
// separate type; functions that require it say so.
using Gen = int;
using Word = std::vector<Gen>;

enum class Side { Left, Right };

// Text form is whitespace-separated generator names: "a b c a b".
Word parse_word(const diagram::CoxeterSystem& sys, const std::string& text);
std::string word_text(const diagram::CoxeterSystem& sys, const Word& w);

// The unique length-additive factorization of w with respect to the rank-2
// parabolic W_I, I = {s,t}: left side w = parabolic * transversal, right side
// w = transversal * parabolic. Both parts are canonical words.
struct CosetDecomposition {
  Side side;
  std::pair<Gen, Gen> pair;  // s < t
  Word parabolic;
  Word transversal;
};

// Word-problem engine for one Coxeter system. Canonicalization is Tits'
// procedure: braid-move closure by BFS, restarting after every adjacent-equal
// deletion, then the lex minimum of the final closure. Exponential in the
// worst case, which is why every entry point enforces the word-length budget;
// a memo keyed by word keeps repeated desk-scale queries cheap.
//
// Methods are const and safe to call from several threads; the memo is
// guarded by a mutex.
class WordContext {
 public:
  explicit WordContext(diagram::CoxeterSystem sys, Budgets budgets = Budgets{});

  const diagram::CoxeterSystem& system() const { return sys_; }
  const Budgets& budgets() const { return budgets_; }

  // Canonical reduced word of the element w represents. Throws BudgetExceeded
  // when the input length or the braid-closure size leaves the configured
  // desk scale, std::invalid_argument on letters outside the system.
  Word canonical_form(const Word& w) const;

  bool is_reduced(const Word& w) const;

  // Canonical form of the concatenation. Both inputs and the concatenation
  // must fit the length budget.
  Word product(const Word& a, const Word& b) const;

  // Canonical form of s*x (Left) or x*s (Right).
  Word mult(const Word& x, Gen s, Side side) const;

  // Canonical form of x^-1 (the reversed word canonicalized).
  Word inverse(const Word& x) const;

  // Descents of a canonical word x: generators s with l(sx) < l(x) (Left)
  // or l(xs) < l(x) (Right). Ascending generator order.
  std::vector<Gen> descent_set(const Word& x, Side side) const;

  // Subword-property test on canonical words.
  bool bruhat_leq(const Word& x, const Word& y) const;

  // All elements <= y (inclusive), as sorted canonical words, by
  // canonicalizing every subword of y. Requires l(y) within the interval
  // budget.
  std::vector<Word> bruhat_interval(const Word& y) const;

  // Greedy descent stripping on the chosen side. I = {s,t}, s != t.
  CosetDecomposition coset_decompose(const Word& w, std::pair<Gen, Gen> I,
                                     Side side) const;

 private:
  void check_letters(const Word& w) const;
  void check_length(const Word& w) const;
  // One BFS layer of Tits' algorithm: the full braid closure of w, or the
  // closure truncated at the first word exhibiting an adjacent equal pair
  // (returned separately so the caller can delete and restart).
  struct ClosureResult {
    std::set<Word> closure;
    bool found_deletion = false;
    Word after_deletion;
  };
  ClosureResult braid_closure(const Word& w) const;

  diagram::CoxeterSystem sys_;
  Budgets budgets_;
  mutable std::mutex memo_mutex_;
  mutable std::map<Word, Word> canon_memo_;
};

}  // namespace coxkl
