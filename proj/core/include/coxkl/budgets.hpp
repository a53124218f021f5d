#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coxkl {

// Everything here is exact arithmetic, so the only way a computation fails is
// by outgrowing desk scale. Budgets make that failure mode explicit: each
// expensive routine checks its cap and throws BudgetExceeded instead of
// grinding on. Defaults suit interactive use; the COXKL_BUDGET_* environment
// variables override them process-wide.
struct Budgets {
  // Longest input word the braid-closure canonicalizer accepts. Words that
  // pass the heap-based fully-commutative test bypass this cap (they are
  // canonicalized without enumerating the closure) up to the heap limit of
  // 64 letters.
  int max_word_length = 24;

  // Longest source word for Bruhat interval enumeration (and hence for
  // Kazhdan-Lusztig polynomial queries, which enumerate [e, y]).
  int max_interval_length = 14;

  // Cap on the number of words a single braid-closure enumeration may visit.
  std::size_t max_closure = 2'000'000;

  // Cap for full group enumeration (a-value tables, cells).
  std::size_t max_group_order = 1200;

  // Cap for enumerate_fc and similar breadth-first element searches.
  std::size_t max_fc_elements = 2'000'000;

  // Reads COXKL_BUDGET_WORD_LEN, COXKL_BUDGET_INTERVAL_LEN,
  // COXKL_BUDGET_CLOSURE, COXKL_BUDGET_GROUP_ORDER, COXKL_BUDGET_FC_COUNT.
  static Budgets from_env();
};

// Thrown when a budget above is hit. what() names the budget and the cap.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what_arg)
      : std::runtime_error(what_arg) {}
};

}  // namespace coxkl
