#include "coxkl/budgets.hpp"

#include <cstdlib>

namespace coxkl {

namespace {

long long env_ll(const char* name, long long fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  long long v = std::strtoll(raw, &end, 10);
  if (end == raw || *end != '\0' || v <= 0) return fallback;
  return v;
}

}  // namespace

Budgets Budgets::from_env() {
  Budgets b;
  b.max_word_length =
      static_cast<int>(env_ll("COXKL_BUDGET_WORD_LEN", b.max_word_length));
  b.max_interval_length = static_cast<int>(
      env_ll("COXKL_BUDGET_INTERVAL_LEN", b.max_interval_length));
  b.max_closure = static_cast<std::size_t>(
      env_ll("COXKL_BUDGET_CLOSURE", static_cast<long long>(b.max_closure)));
  b.max_group_order = static_cast<std::size_t>(env_ll(
      "COXKL_BUDGET_GROUP_ORDER", static_cast<long long>(b.max_group_order)));
  b.max_fc_elements = static_cast<std::size_t>(env_ll(
      "COXKL_BUDGET_FC_COUNT", static_cast<long long>(b.max_fc_elements)));
  return b;
}

}  // namespace coxkl
