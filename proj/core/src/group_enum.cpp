#include "coxkl/group_enum.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "coxkl/diagram.hpp"

namespace coxkl {

FiniteGroup FiniteGroup::enumerate(const WordContext& ctx) {
  const auto& sys = ctx.system();
  auto order = diagram::finite_order(sys);
  if (!order)
    throw std::invalid_argument(
        "group enumeration needs a diagram of recognized finite type");
  if (*order > ctx.budgets().max_group_order)
    throw BudgetExceeded("group order " + std::to_string(*order) +
                         " exceeds budget " +
                         std::to_string(ctx.budgets().max_group_order));

  FiniteGroup g;
  g.rank_ = sys.rank();

  // BFS by length; sorting each level keeps indices in (length, lex) order
  std::map<Word, int> index;
  index.emplace(Word{}, 0);
  g.words_.push_back({});
  std::vector<Word> level{Word{}};
  while (!level.empty()) {
    std::vector<Word> next;
    for (const Word& w : level)
      for (Gen s = 0; s < g.rank_; ++s) {
        Word u = ctx.mult(w, s, Side::Right);
        if (u.size() > w.size() && !index.count(u)) {
          index.emplace(u, 0);
          next.push_back(u);
        }
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    for (Word& w : next) {
      index[w] = static_cast<int>(g.words_.size());
      g.words_.push_back(std::move(w));
    }
    level.assign(g.words_.end() - static_cast<long>(next.size()),
                 g.words_.end());
  }
  int n = g.size();
  if (static_cast<unsigned long long>(n) != *order)
    throw std::logic_error("group enumeration disagrees with the order formula");

  g.lmult_.resize(static_cast<size_t>(n) * g.rank_);
  g.rmult_.resize(static_cast<size_t>(n) * g.rank_);
  g.inverse_.resize(n);
  for (int i = 0; i < n; ++i) {
    for (Gen s = 0; s < g.rank_; ++s) {
      g.lmult_[g.idx(i, s)] = index.at(ctx.mult(g.words_[i], s, Side::Left));
      g.rmult_[g.idx(i, s)] = index.at(ctx.mult(g.words_[i], s, Side::Right));
    }
    g.inverse_[i] = index.at(ctx.inverse(g.words_[i]));
  }

  // Bruhat down-sets, bottom up: with v = sy < y, the elements below y are
  // those below v together with their left s-multiples.
  g.leq_.assign(static_cast<size_t>(n) * n, 0);
  g.leq_[0] = 1;  // e <= e; identity row fills in as tops are processed
  for (int j = 1; j < n; ++j) {
    Gen s = 0;
    while (!g.descent(j, s, Side::Left)) ++s;
    int v = g.mult(j, s, Side::Left);
    for (int i = 0; i < n; ++i)
      if (g.leq_[static_cast<size_t>(i) * n + v]) {
        g.leq_[static_cast<size_t>(i) * n + j] = 1;
        g.leq_[static_cast<size_t>(g.mult(i, s, Side::Left)) * n + j] = 1;
      }
  }
  return g;
}

int FiniteGroup::index_of(const Word& canonical) const {
  auto it = std::lower_bound(
      words_.begin(), words_.end(), canonical, [](const Word& a, const Word& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
      });
  if (it == words_.end() || *it != canonical) return -1;
  return static_cast<int>(it - words_.begin());
}

std::vector<Gen> FiniteGroup::descents(int i, Side side) const {
  std::vector<Gen> out;
  for (Gen s = 0; s < rank_; ++s)
    if (descent(i, s, side)) out.push_back(s);
  return out;
}

}  // namespace coxkl
