#include "coxkl/star.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace coxkl {

using diagram::CoxeterSystem;
using diagram::kInfinity;

namespace {

// normalized pair plus the bond weight; star operations only exist for
// finite m >= 3
std::pair<std::pair<Gen, Gen>, int> validate_move(const CoxeterSystem& sys,
                                                  const StarMove& move) {
  auto [s, t] = move.pair;
  if (s > t) std::swap(s, t);
  if (s < 0 || t >= sys.rank() || s == t)
    throw std::invalid_argument("star move needs two distinct generators");
  int m = sys.m(s, t);
  if (m < 3 || m == kInfinity)
    throw std::invalid_argument("star operations need 3 <= m(s,t) < infinity");
  return {{s, t}, m};
}

// Coset stripping for a fully commutative word without canonicalization:
// descents are heap extrema and each strip erases one letter, preserving
// full commutativity of the remainder.
struct Strip {
  Word parabolic;
  Word rest;
};

Strip fc_strip(const CoxeterSystem& sys, Word cur, Gen s, Gen t, Side side) {
  Word order;
  for (;;) {
    Heap h = build_heap(sys, cur);
    int pos = fc_descent_position(h, s, side);
    Gen got = s;
    if (pos < 0) {
      pos = fc_descent_position(h, t, side);
      got = t;
    }
    if (pos < 0) break;
    order.push_back(got);
    cur.erase(cur.begin() + pos);
  }
  if (side == Side::Right) std::reverse(order.begin(), order.end());
  return {std::move(order), std::move(cur)};
}

}  // namespace

std::optional<Word> star_op(const WordContext& ctx, const Word& w,
                            const StarMove& move) {
  const CoxeterSystem& sys = ctx.system();
  auto [pair, m] = validate_move(sys, move);
  auto [s, t] = pair;

  Word u, rest;
  bool fc = fc_criterion(sys, w);
  if (fc) {
    Strip strip = fc_strip(sys, w, s, t, move.side);
    u = std::move(strip.parabolic);
    rest = std::move(strip.rest);
  } else {
    CosetDecomposition d = ctx.coset_decompose(w, {s, t}, move.side);
    u = std::move(d.parabolic);
    rest = std::move(d.transversal);
  }

  int len = static_cast<int>(u.size());
  if (len == 0 || len == m) return std::nullopt;  // not on a string

  // the string's family letter sits at the far end of u; the near end grows
  // and shrinks
  if (move.dir == StarDirection::Lower) {
    if (len < 2) return std::nullopt;  // already at the short end
    if (move.side == Side::Right)
      u.pop_back();
    else
      u.erase(u.begin());
  } else {
    if (len > m - 2) return std::nullopt;  // the long end is w0(I), off-string
    if (move.side == Side::Right)
      u.push_back(u.back() == s ? t : s);
    else
      u.insert(u.begin(), u.front() == s ? t : s);
  }

  Word combined;
  if (move.side == Side::Left) {
    combined = std::move(u);
    combined.insert(combined.end(), rest.begin(), rest.end());
  } else {
    combined = std::move(rest);
    combined.insert(combined.end(), u.begin(), u.end());
  }
  if (fc_criterion(sys, combined)) return heap_canonical_form(sys, combined);
  return ctx.canonical_form(combined);
}

bool is_commuting_product(const CoxeterSystem& sys, const Word& w) {
  for (size_t i = 0; i < w.size(); ++i)
    for (size_t j = i + 1; j < w.size(); ++j)
      if (sys.m(w[i], w[j]) != 2) return false;
  return true;
}

std::optional<ReductionPath> star_reduce(const WordContext& ctx, const Word& w,
                                         int max_steps) {
  const CoxeterSystem& sys = ctx.system();
  Word start =
      fc_criterion(sys, w) ? heap_canonical_form(sys, w) : ctx.canonical_form(w);
  if (max_steps < 0) max_steps = static_cast<int>(start.size());

  std::vector<StarMove> moves;
  for (Side side : {Side::Left, Side::Right})
    for (Gen s = 0; s < sys.rank(); ++s)
      for (Gen t = s + 1; t < sys.rank(); ++t) {
        int m = sys.m(s, t);
        if (m >= 3 && m != kInfinity)
          moves.push_back(StarMove{{s, t}, side, StarDirection::Lower});
      }

  auto make_path = [&](const Word& terminal,
                       const std::map<Word, std::pair<Word, StarMove>>& parent) {
    ReductionPath path;
    path.start = start;
    Word cur = terminal;
    std::vector<ReductionStep> reversed;
    while (cur != start) {
      const auto& [from, move] = parent.at(cur);
      reversed.push_back(ReductionStep{move, cur});
      cur = from;
    }
    path.steps.assign(reversed.rbegin(), reversed.rend());
    return path;
  };

  if (is_commuting_product(sys, start)) return ReductionPath{start, {}};

  std::set<Word> visited{start};
  std::map<Word, std::pair<Word, StarMove>> parent;
  std::deque<Word> layer{start};
  bool truncated = false;
  for (int depth = 0; !layer.empty(); ++depth) {
    std::deque<Word> next;
    for (const Word& node : layer)
      for (const StarMove& move : moves) {
        std::optional<Word> succ = star_op(ctx, node, move);
        if (!succ || visited.count(*succ)) continue;
        if (depth >= max_steps) {
          truncated = true;  // an unexplored successor exists beyond budget
          continue;
        }
        visited.insert(*succ);
        if (visited.size() > ctx.budgets().max_closure)
          throw BudgetExceeded("star reduction visited set exceeds budget " +
                               std::to_string(ctx.budgets().max_closure));
        parent.emplace(*succ, std::make_pair(node, move));
        if (is_commuting_product(sys, *succ)) return make_path(*succ, parent);
        next.push_back(std::move(*succ));
      }
    layer = std::move(next);
  }
  if (truncated)
    throw BudgetExceeded("star reduction search truncated after " +
                         std::to_string(max_steps) + " steps");
  return std::nullopt;
}

nlohmann::json reduction_path_json(const CoxeterSystem& sys,
                                   const ReductionPath& path) {
  nlohmann::json out = nlohmann::json::array();
  for (const ReductionStep& step : path.steps) {
    auto [s, t] = step.move.pair;
    nlohmann::json move{
        {"pair", {sys.name(s), sys.name(t)}},
        {"side", step.move.side == Side::Left ? "left" : "right"},
        {"dir", step.move.dir == StarDirection::Lower ? "lower" : "upper"}};
    out.push_back({{"move", move}, {"word", word_text(sys, step.word)}});
  }
  return out;
}

}  // namespace coxkl
