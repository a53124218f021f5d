#include "coxkl/heaps.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

namespace coxkl {

using diagram::CoxeterSystem;
using diagram::kInfinity;

namespace {

constexpr std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

void check_word(const CoxeterSystem& sys, const Word& w) {
  if (w.size() > 64)
    throw BudgetExceeded("heap size " + std::to_string(w.size()) +
                         " exceeds the 64-position reachability masks");
  for (Gen s : w)
    if (s < 0 || s >= sys.rank())
      throw std::invalid_argument("letter index " + std::to_string(s) +
                                  " outside the system");
}

}  // namespace

Heap build_heap(const CoxeterSystem& sys, const Word& w) {
  check_word(sys, w);
  const int q = static_cast<int>(w.size());
  Heap h;
  h.size = q;
  h.labels = w;
  h.below.assign(static_cast<size_t>(q), 0);
  h.above.assign(static_cast<size_t>(q), 0);
  h.levels.assign(static_cast<size_t>(q), 1);

  for (int j = 0; j < q; ++j)
    for (int i = 0; i < j; ++i)
      if (sys.m(w[static_cast<size_t>(i)], w[static_cast<size_t>(j)]) != 2) {
        h.below[static_cast<size_t>(j)] |= h.below[static_cast<size_t>(i)] | bit(i);
        if (h.levels[static_cast<size_t>(i)] + 1 > h.levels[static_cast<size_t>(j)])
          h.levels[static_cast<size_t>(j)] = h.levels[static_cast<size_t>(i)] + 1;
      }
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < j; ++i)
      if (h.leq(i, j)) h.above[static_cast<size_t>(i)] |= bit(j);

  for (int j = 0; j < q; ++j)
    for (int i = 0; i < j; ++i)
      if (h.leq(i, j) && (h.above[static_cast<size_t>(i)] & h.below[static_cast<size_t>(j)]) == 0)
        h.covers.emplace_back(i, j);

  return h;
}

bool fc_criterion(const CoxeterSystem& sys, const Word& w) {
  Heap h = build_heap(sys, w);
  const int q = h.size;

  // positions per column, ascending
  std::vector<std::vector<int>> column(static_cast<size_t>(sys.rank()));
  for (int i = 0; i < q; ++i) column[static_cast<size_t>(w[static_cast<size_t>(i)])].push_back(i);

  // no covering relation between equal labels: only consecutive occurrences
  // in a column can cover
  for (const auto& col : column)
    for (size_t k = 0; k + 1 < col.size(); ++k) {
      int i = col[k], j = col[k + 1];
      if ((h.above[static_cast<size_t>(i)] & h.below[static_cast<size_t>(j)]) == 0) return false;
    }

  // no convex alternating {s,t}-chain of length m(s,t): all positions labeled
  // s or t form a chain in the heap, so candidate chains are windows of
  // consecutive members (skipping a member in between breaks convexity)
  for (int s = 0; s < sys.rank(); ++s)
    for (int t = s + 1; t < sys.rank(); ++t) {
      int m = sys.m(s, t);
      if (m < 3 || m == kInfinity) continue;
      std::vector<int> merged;
      std::merge(column[static_cast<size_t>(s)].begin(), column[static_cast<size_t>(s)].end(),
                 column[static_cast<size_t>(t)].begin(), column[static_cast<size_t>(t)].end(),
                 std::back_inserter(merged));
      if (static_cast<int>(merged.size()) < m) continue;
      for (size_t start = 0; start + static_cast<size_t>(m) <= merged.size(); ++start) {
        bool alternating = true;
        std::uint64_t chain_mask = 0;
        for (int k = 0; k < m; ++k) {
          int pos = merged[start + static_cast<size_t>(k)];
          chain_mask |= bit(pos);
          if (k >= 1) {
            int prev = merged[start + static_cast<size_t>(k) - 1];
            if (w[static_cast<size_t>(pos)] == w[static_cast<size_t>(prev)]) {
              alternating = false;
              break;
            }
          }
        }
        if (!alternating) continue;
        int first = merged[start], last = merged[start + static_cast<size_t>(m) - 1];
        std::uint64_t strictly_between =
            h.above[static_cast<size_t>(first)] & h.below[static_cast<size_t>(last)];
        if ((strictly_between & ~chain_mask) == 0) return false;
      }
    }

  return true;
}

bool is_fully_commutative(const WordContext& ctx, const Word& w) {
  if (fc_criterion(ctx.system(), w)) return true;
  if (!ctx.is_reduced(w)) throw std::invalid_argument("word is not reduced");
  return false;
}

Word heap_canonical_form(const CoxeterSystem& sys, const Word& w) {
  if (!fc_criterion(sys, w))
    throw std::invalid_argument(
        "not a reduced word of a fully commutative element");
  Heap h = build_heap(sys, w);
  const int q = h.size;
  std::uint64_t remaining = q == 64 ? ~std::uint64_t{0} : (bit(q) - 1);
  Word out;
  out.reserve(static_cast<size_t>(q));
  while (remaining) {
    int best = -1;
    for (int i = 0; i < q; ++i) {
      if (!((remaining >> i) & 1u)) continue;
      if ((h.below[static_cast<size_t>(i)] & remaining) != 0) continue;  // not minimal
      if (best < 0 || w[static_cast<size_t>(i)] < w[static_cast<size_t>(best)]) best = i;
    }
    out.push_back(w[static_cast<size_t>(best)]);
    remaining &= ~bit(best);
  }
  return out;
}

std::vector<Gen> fc_descents(const Heap& h, Side side) {
  std::set<Gen> found;
  for (int i = 0; i < h.size; ++i) {
    std::uint64_t blockers =
        side == Side::Left ? h.below[static_cast<size_t>(i)] : h.above[static_cast<size_t>(i)];
    if (blockers == 0) found.insert(h.labels[static_cast<size_t>(i)]);
  }
  return {found.begin(), found.end()};
}

int fc_descent_position(const Heap& h, Gen s, Side side) {
  for (int i = 0; i < h.size; ++i) {
    if (h.labels[static_cast<size_t>(i)] != s) continue;
    std::uint64_t blockers =
        side == Side::Left ? h.below[static_cast<size_t>(i)] : h.above[static_cast<size_t>(i)];
    if (blockers == 0) return i;
  }
  return -1;
}

NValue n_value(const Heap& h) {
  const int q = h.size;
  std::vector<int> match_l(static_cast<size_t>(q), -1), match_r(static_cast<size_t>(q), -1);
  std::vector<bool> visited;
  std::function<bool(int)> augment = [&](int i) {
    for (int j = 0; j < q; ++j) {
      if (!h.leq(i, j) || visited[static_cast<size_t>(j)]) continue;
      visited[static_cast<size_t>(j)] = true;
      if (match_r[static_cast<size_t>(j)] < 0 || augment(match_r[static_cast<size_t>(j)])) {
        match_l[static_cast<size_t>(i)] = j;
        match_r[static_cast<size_t>(j)] = i;
        return true;
      }
    }
    return false;
  };
  int matching = 0;
  for (int i = 0; i < q; ++i) {
    visited.assign(static_cast<size_t>(q), false);
    if (augment(i)) ++matching;
  }

  // Koenig alternating reachability from unmatched left vertices; the
  // positions with left copy reachable and right copy unreachable avoid the
  // minimum vertex cover on both sides, so they form the witness antichain.
  std::vector<bool> zl(static_cast<size_t>(q), false), zr(static_cast<size_t>(q), false);
  std::deque<int> queue;
  for (int i = 0; i < q; ++i)
    if (match_l[static_cast<size_t>(i)] < 0) {
      zl[static_cast<size_t>(i)] = true;
      queue.push_back(i);
    }
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (int j = 0; j < q; ++j) {
      if (!h.leq(i, j) || zr[static_cast<size_t>(j)]) continue;
      zr[static_cast<size_t>(j)] = true;
      int next = match_r[static_cast<size_t>(j)];
      if (next >= 0 && !zl[static_cast<size_t>(next)]) {
        zl[static_cast<size_t>(next)] = true;
        queue.push_back(next);
      }
    }
  }

  NValue out;
  out.n = q - matching;
  for (int i = 0; i < q; ++i)
    if (zl[static_cast<size_t>(i)] && !zr[static_cast<size_t>(i)]) out.antichain.push_back(i);
  return out;
}

NValue n_value(const CoxeterSystem& sys, const Word& w) {
  if (!fc_criterion(sys, w))
    throw std::invalid_argument(
        "not a reduced word of a fully commutative element");
  return n_value(build_heap(sys, w));
}

std::vector<Word> enumerate_fc(const CoxeterSystem& sys, int max_len,
                               const Budgets& budgets) {
  if (max_len > budgets.max_word_length)
    throw BudgetExceeded("enumeration length " + std::to_string(max_len) +
                         " exceeds budget " +
                         std::to_string(budgets.max_word_length));
  std::set<Word> all;
  all.insert(Word{});
  std::vector<Word> frontier{Word{}};
  for (int len = 1; len <= max_len && !frontier.empty(); ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (Gen s = 0; s < sys.rank(); ++s) {
        Word u;
        u.reserve(w.size() + 1);
        u.push_back(s);
        u.insert(u.end(), w.begin(), w.end());
        if (!fc_criterion(sys, u)) continue;
        Word canon = heap_canonical_form(sys, u);
        if (all.insert(canon).second) {
          if (all.size() > static_cast<size_t>(budgets.max_fc_elements))
            throw BudgetExceeded("FC element count exceeds budget " +
                                 std::to_string(budgets.max_fc_elements));
          next.push_back(std::move(canon));
        }
      }
    frontier = std::move(next);
  }
  std::vector<Word> out(all.begin(), all.end());
  std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

long long commutation_class_size(const CoxeterSystem& sys, const Word& w,
                                 const Budgets& budgets) {
  check_word(sys, w);
  std::set<Word> seen{w};
  std::deque<Word> queue{w};
  while (!queue.empty()) {
    Word u = std::move(queue.front());
    queue.pop_front();
    for (size_t i = 0; i + 1 < u.size(); ++i) {
      if (sys.m(u[i], u[i + 1]) != 2) continue;
      Word v = u;
      std::swap(v[i], v[i + 1]);
      if (!seen.insert(v).second) continue;
      if (seen.size() > static_cast<size_t>(budgets.max_closure))
        throw BudgetExceeded("commutation class exceeds budget " +
                             std::to_string(budgets.max_closure));
      queue.push_back(v);
    }
  }
  return static_cast<long long>(seen.size());
}

std::vector<OpenInterval> open_intervals(const Heap& h, Gen s) {
  std::vector<int> col;
  for (int i = 0; i < h.size; ++i)
    if (h.labels[static_cast<size_t>(i)] == s) col.push_back(i);
  std::vector<OpenInterval> out;
  for (size_t k = 0; k + 1 < col.size(); ++k) {
    OpenInterval iv;
    iv.lo = col[k];
    iv.hi = col[k + 1];
    iv.between = h.above[static_cast<size_t>(iv.lo)] & h.below[static_cast<size_t>(iv.hi)];
    out.push_back(iv);
  }
  return out;
}

std::string heap_ascii(const CoxeterSystem& sys, const Heap& h) {
  if (h.size == 0) return "(empty heap)\n";
  size_t cell = 1;
  for (int g = 0; g < sys.rank(); ++g) cell = std::max(cell, sys.name(g).size());
  int max_level = 0;
  for (int lvl : h.levels) max_level = std::max(max_level, lvl);

  std::string out;
  for (int level = max_level; level >= 1; --level) {
    std::string line;
    for (int g = 0; g < sys.rank(); ++g) {
      std::string entry(cell, '.');
      for (int i = 0; i < h.size; ++i)
        if (h.labels[static_cast<size_t>(i)] == g && h.levels[static_cast<size_t>(i)] == level) {
          entry = sys.name(g);
          entry.resize(cell, ' ');
          break;
        }
      if (g) line += ' ';
      line += entry;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  }
  return out;
}

nlohmann::json heap_json(const CoxeterSystem& sys, const Heap& h) {
  nlohmann::json labels = nlohmann::json::array();
  for (Gen s : h.labels) labels.push_back(sys.name(s));
  nlohmann::json covers = nlohmann::json::array();
  for (auto [i, j] : h.covers) covers.push_back({i + 1, j + 1});
  return nlohmann::json{{"size", h.size},
                        {"labels", labels},
                        {"covers", covers},
                        {"levels", h.levels}};
}

}  // namespace coxkl
