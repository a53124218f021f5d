#include "coxkl/words.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace coxkl {

using diagram::CoxeterSystem;
using diagram::kInfinity;

Word parse_word(const CoxeterSystem& sys, const std::string& text) {
  Word out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    int s = sys.index_of(token);
    if (s < 0) throw std::invalid_argument("unknown generator '" + token + "'");
    out.push_back(s);
  }
  return out;
}

std::string word_text(const CoxeterSystem& sys, const Word& w) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += sys.name(w[i]);
  }
  return out;
}

WordContext::WordContext(CoxeterSystem sys, Budgets budgets)
    : sys_(std::move(sys)), budgets_(budgets) {}

void WordContext::check_letters(const Word& w) const {
  for (Gen s : w)
    if (s < 0 || s >= sys_.rank())
      throw std::invalid_argument("letter index " + std::to_string(s) +
                                  " outside the system");
}

void WordContext::check_length(const Word& w) const {
  if (static_cast<int>(w.size()) > budgets_.max_word_length)
    throw BudgetExceeded("word length " + std::to_string(w.size()) +
                         " exceeds budget " +
                         std::to_string(budgets_.max_word_length));
}

namespace {

// Remove adjacent equal pairs until none remain; each removal shortens the
// word by 2, so this is the cheap part of Tits' deletion step.
void strip_adjacent_equal(Word& w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] == w[i + 1]) {
        w.erase(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + 2);
        changed = true;
        break;
      }
  }
}

bool has_adjacent_equal(const Word& w, size_t* at) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == w[i + 1]) {
      *at = i;
      return true;
    }
  return false;
}

}  // namespace

WordContext::ClosureResult WordContext::braid_closure(const Word& w) const {
  ClosureResult result;
  result.closure.insert(w);
  std::deque<Word> queue{w};
  while (!queue.empty()) {
    Word u = std::move(queue.front());
    queue.pop_front();
    for (size_t i = 0; i + 1 < u.size(); ++i) {
      Gen s = u[i], t = u[i + 1];
      if (s == t) continue;
      int m = sys_.m(s, t);
      if (m == kInfinity || i + static_cast<size_t>(m) > u.size()) continue;
      bool alternating = true;
      for (int k = 0; k < m; ++k)
        if (u[i + static_cast<size_t>(k)] != (k % 2 == 0 ? s : t)) {
          alternating = false;
          break;
        }
      if (!alternating) continue;
      Word v = u;
      for (int k = 0; k < m; ++k) v[i + static_cast<size_t>(k)] = (k % 2 == 0 ? t : s);
      if (!result.closure.insert(v).second) continue;
      if (result.closure.size() > static_cast<size_t>(budgets_.max_closure))
        throw BudgetExceeded("braid closure exceeds budget " +
                             std::to_string(budgets_.max_closure));
      size_t at = 0;
      if (has_adjacent_equal(v, &at)) {
        result.found_deletion = true;
        result.after_deletion = v;
        result.after_deletion.erase(
            result.after_deletion.begin() + static_cast<long>(at),
            result.after_deletion.begin() + static_cast<long>(at) + 2);
        return result;
      }
      queue.push_back(v);
    }
  }
  return result;
}

Word WordContext::canonical_form(const Word& w) const {
  check_letters(w);
  check_length(w);
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = canon_memo_.find(w);
    if (it != canon_memo_.end()) return it->second;
  }

  // Every intermediate below represents the same group element as w, so all
  // of them share the final memo entry.
  std::vector<Word> stages{w};
  Word cur = w;
  strip_adjacent_equal(cur);
  for (;;) {
    {
      std::lock_guard<std::mutex> lock(memo_mutex_);
      auto it = canon_memo_.find(cur);
      if (it != canon_memo_.end()) {
        cur = it->second;
        break;
      }
    }
    stages.push_back(cur);
    ClosureResult r = braid_closure(cur);
    if (r.found_deletion) {
      cur = std::move(r.after_deletion);
      strip_adjacent_equal(cur);
      continue;
    }
    cur = *r.closure.begin();
    break;
  }

  std::lock_guard<std::mutex> lock(memo_mutex_);
  for (const Word& stage : stages) canon_memo_[stage] = cur;
  canon_memo_[cur] = cur;
  return cur;
}

bool WordContext::is_reduced(const Word& w) const {
  return canonical_form(w).size() == w.size();
}

Word WordContext::product(const Word& a, const Word& b) const {
  Word concat = a;
  concat.insert(concat.end(), b.begin(), b.end());
  return canonical_form(concat);
}

Word WordContext::mult(const Word& x, Gen s, Side side) const {
  Word w;
  w.reserve(x.size() + 1);
  if (side == Side::Left) {
    w.push_back(s);
    w.insert(w.end(), x.begin(), x.end());
  } else {
    w = x;
    w.push_back(s);
  }
  return canonical_form(w);
}

Word WordContext::inverse(const Word& x) const {
  Word rev(x.rbegin(), x.rend());
  return canonical_form(rev);
}

std::vector<Gen> WordContext::descent_set(const Word& x, Side side) const {
  std::vector<Gen> out;
  for (Gen s = 0; s < sys_.rank(); ++s)
    if (mult(x, s, side).size() < x.size()) out.push_back(s);
  return out;
}

bool WordContext::bruhat_leq(const Word& x, const Word& y) const {
  if (x.size() > y.size()) return false;
  if (x.empty()) return true;
  if (x.size() == y.size()) return x == y;
  if (static_cast<int>(y.size()) > budgets_.max_interval_length)
    throw BudgetExceeded("bruhat_leq source length " + std::to_string(y.size()) +
                         " exceeds budget " +
                         std::to_string(budgets_.max_interval_length));

  // Subword property: x <= y iff some length-l(x) subword of any one reduced
  // word of y represents x. Walk index combinations in lex order.
  const size_t n = y.size(), k = x.size();
  std::vector<size_t> idx(k);
  for (size_t i = 0; i < k; ++i) idx[i] = i;
  Word sub(k);
  for (;;) {
    for (size_t i = 0; i < k; ++i) sub[i] = y[idx[i]];
    if (canonical_form(sub) == x) return true;
    // next combination
    size_t i = k;
    while (i > 0) {
      --i;
      if (idx[i] != i + n - k) {
        ++idx[i];
        for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return false;
    }
    if (k == 0) return false;
  }
}

std::vector<Word> WordContext::bruhat_interval(const Word& y) const {
  if (static_cast<int>(y.size()) > budgets_.max_interval_length)
    throw BudgetExceeded("bruhat_interval source length " +
                         std::to_string(y.size()) + " exceeds budget " +
                         std::to_string(budgets_.max_interval_length));
  check_letters(y);
  std::set<Word> seen;
  const size_t n = y.size();
  for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
    Word sub;
    for (size_t i = 0; i < n; ++i)
      if (mask & (size_t{1} << i)) sub.push_back(y[i]);
    seen.insert(canonical_form(sub));
  }
  return {seen.begin(), seen.end()};
}

CosetDecomposition WordContext::coset_decompose(const Word& w,
                                                std::pair<Gen, Gen> I,
                                                Side side) const {
  if (I.first == I.second)
    throw std::invalid_argument("parabolic pair must be two distinct generators");
  check_letters({I.first, I.second});
  if (I.first > I.second) std::swap(I.first, I.second);

  Word cur = canonical_form(w);
  Word strip_order;
  for (;;) {
    bool stripped = false;
    for (Gen s : {I.first, I.second}) {
      Word cand = mult(cur, s, side);
      if (cand.size() < cur.size()) {
        strip_order.push_back(s);
        cur = std::move(cand);
        stripped = true;
        break;
      }
    }
    if (!stripped) break;
  }

  // Left: w = strip_order[0] strip_order[1] ... * cur.
  // Right: w = cur * ... strip_order[1] strip_order[0].
  Word para = strip_order;
  if (side == Side::Right) std::reverse(para.begin(), para.end());
  return CosetDecomposition{side, I, canonical_form(para), cur};
}

}  // namespace coxkl
