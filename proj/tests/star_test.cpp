#include "coxkl/star.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <doctest.h>
#include <json.hpp>

using coxkl::BudgetExceeded;
using coxkl::Budgets;
using coxkl::ReductionPath;
using coxkl::Side;
using coxkl::StarDirection;
using coxkl::StarMove;
using coxkl::Word;
using coxkl::WordContext;
using coxkl::enumerate_fc;
using coxkl::fc_criterion;
using coxkl::is_commuting_product;
using coxkl::n_value;
using coxkl::parse_word;
using coxkl::reduction_path_json;
using coxkl::star_op;
using coxkl::star_reduce;
using coxkl::diagram::CoxeterSystem;

namespace {

CoxeterSystem a2() { return CoxeterSystem({"a", "b"}, {{0, 1, 3}}); }
CoxeterSystem a3() { return CoxeterSystem({"a", "b", "c"}, {{0, 1, 3}, {1, 2, 3}}); }
CoxeterSystem b3() { return CoxeterSystem({"a", "b", "c"}, {{0, 1, 4}, {1, 2, 3}}); }
// a-3-b-4-c with a,c commuting; the system of the worked length-5 example
CoxeterSystem abc34() {
  return CoxeterSystem({"a", "b", "c"}, {{0, 1, 3}, {1, 2, 4}});
}
// v0-5-v1-3-v2-4-v3: strong bonds at both ends of a path
CoxeterSystem bonds54_n2() {
  return CoxeterSystem({"v0", "v1", "v2", "v3"}, {{0, 1, 5}, {1, 2, 3}, {2, 3, 4}});
}
// v0-5-v1-4-v2: the same family one vertex shorter
CoxeterSystem bonds54_n1() {
  return CoxeterSystem({"v0", "v1", "v2"}, {{0, 1, 5}, {1, 2, 4}});
}
// a-3-v0-4-v1-4-v2: a path whose two 4-bonds avoid the extreme vertices
CoxeterSystem inner4s_n1() {
  return CoxeterSystem({"a", "v0", "v1", "v2"}, {{0, 1, 3}, {1, 2, 4}, {2, 3, 4}});
}

Word W(const CoxeterSystem& sys, const std::string& text) { return parse_word(sys, text); }

std::vector<std::pair<coxkl::Gen, coxkl::Gen>> string_pairs(const CoxeterSystem& sys) {
  std::vector<std::pair<coxkl::Gen, coxkl::Gen>> out;
  for (int s = 0; s < sys.rank(); ++s)
    for (int t = s + 1; t < sys.rank(); ++t) {
      int m = sys.m(s, t);
      if (m >= 3 && m != coxkl::diagram::kInfinity) out.emplace_back(s, t);
    }
  return out;
}

// Every element of a finite system, as canonical words, by closing under
// right multiplication.
std::vector<Word> all_elements(const WordContext& ctx) {
  std::set<Word> seen{Word{}};
  std::vector<Word> frontier{Word{}};
  while (!frontier.empty()) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (int s = 0; s < ctx.system().rank(); ++s) {
        Word u = ctx.mult(w, s, Side::Right);
        if (seen.insert(u).second) next.push_back(u);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

// Replays a reduction path move by move and checks every step is a defined
// lower star application shortening by one.
void check_path_replay(const WordContext& ctx, const ReductionPath& path) {
  Word cur = path.start;
  for (const coxkl::ReductionStep& step : path.steps) {
    CHECK(step.move.dir == StarDirection::Lower);
    std::optional<Word> next = star_op(ctx, cur, step.move);
    REQUIRE(next.has_value());
    CHECK(*next == step.word);
    CHECK(next->size() == cur.size() - 1);
    cur = *next;
  }
  CHECK(cur == path.terminal());
  CHECK(is_commuting_product(ctx.system(), path.terminal()));
}

}  // namespace

TEST_CASE("star moves on the worked length-five element") {
  CoxeterSystem sys = abc34();
  WordContext ctx(sys);
  Word x = ctx.canonical_form(W(sys, "a b c a b"));

  // right lower with respect to {a,b} steps down to the length-four element
  auto down = star_op(ctx, x, StarMove{{0, 1}, Side::Right, StarDirection::Lower});
  REQUIRE(down.has_value());
  CHECK(*down == ctx.canonical_form(W(sys, "a b c a")));

  // the right {a,b}-parabolic part has length 2 = m-1, so no room upward
  CHECK_FALSE(star_op(ctx, x, StarMove{{0, 1}, Side::Right, StarDirection::Upper})
                  .has_value());

  // on the left the {a,b}-parabolic part is the full dihedral longest
  // element: x is not on any left {a,b}-string
  CHECK_FALSE(star_op(ctx, x, StarMove{{0, 1}, Side::Left, StarDirection::Lower})
                  .has_value());
  CHECK_FALSE(star_op(ctx, x, StarMove{{0, 1}, Side::Left, StarDirection::Upper})
                  .has_value());

  // left upper with respect to {b,c} prepends the missing bond letter
  auto up = star_op(ctx, x, StarMove{{1, 2}, Side::Left, StarDirection::Upper});
  REQUIRE(up.has_value());
  CHECK(*up == ctx.canonical_form(W(sys, "c b a b c b")));

  // right {b,c}-parabolic part is bcb, one short of the full dihedral: the
  // upper neighbor would leave the string, but the lower one exists
  CHECK_FALSE(star_op(ctx, x, StarMove{{1, 2}, Side::Right, StarDirection::Upper})
                  .has_value());
  auto down_bc = star_op(ctx, x, StarMove{{1, 2}, Side::Right, StarDirection::Lower});
  REQUIRE(down_bc.has_value());
  CHECK(*down_bc == ctx.canonical_form(W(sys, "b a b c")));

  // left {b,c}-parabolic part is the single letter b: nothing below it
  CHECK_FALSE(star_op(ctx, x, StarMove{{1, 2}, Side::Left, StarDirection::Lower})
                  .has_value());
}

TEST_CASE("star moves reject pairs without a usable bond") {
  CoxeterSystem sys = abc34();
  WordContext ctx(sys);
  Word w = W(sys, "a b");
  CHECK_THROWS_AS(
      star_op(ctx, w, StarMove{{0, 2}, Side::Left, StarDirection::Lower}),
      std::invalid_argument);  // m(a,c) = 2
  CHECK_THROWS_AS(
      star_op(ctx, w, StarMove{{1, 1}, Side::Left, StarDirection::Lower}),
      std::invalid_argument);

  CoxeterSystem inf({"a", "b"}, {{0, 1, coxkl::diagram::kInfinity}});
  WordContext ictx(inf);
  CHECK_THROWS_AS(
      star_op(ictx, W(inf, "a"), StarMove{{0, 1}, Side::Left, StarDirection::Lower}),
      std::invalid_argument);
}

TEST_CASE("opposite star moves are mutually inverse") {
  for (const CoxeterSystem& sys : {a3(), b3()}) {
    WordContext ctx(sys);
    for (const Word& w : all_elements(ctx)) {
      if (w.size() > 8) continue;
      for (auto pair : string_pairs(sys))
        for (Side side : {Side::Left, Side::Right}) {
          auto down = star_op(ctx, w, StarMove{pair, side, StarDirection::Lower});
          if (down) {
            CHECK(down->size() == w.size() - 1);
            auto back =
                star_op(ctx, *down, StarMove{pair, side, StarDirection::Upper});
            REQUIRE(back.has_value());
            CHECK(*back == w);
          }
          auto up = star_op(ctx, w, StarMove{pair, side, StarDirection::Upper});
          if (up) {
            CHECK(up->size() == w.size() + 1);
            auto back =
                star_op(ctx, *up, StarMove{pair, side, StarDirection::Lower});
            REQUIRE(back.has_value());
            CHECK(*back == w);
          }
        }
    }
  }
}

TEST_CASE("heap fast path agrees with the generic coset engine") {
  CoxeterSystem sys = b3();
  WordContext ctx(sys);
  for (const Word& w : enumerate_fc(sys, 8))
    for (auto pair : string_pairs(sys))
      for (Side side : {Side::Left, Side::Right})
        for (StarDirection dir : {StarDirection::Lower, StarDirection::Upper}) {
          // reference value straight from the word engine: decompose, move
          // along the string, recombine
          auto [s, t] = pair;
          coxkl::CosetDecomposition d = ctx.coset_decompose(w, pair, side);
          Word u = d.parabolic;
          int m = sys.m(s, t);
          std::optional<Word> expected;
          int len = static_cast<int>(u.size());
          if (len > 0 && len < m) {
            bool ok = true;
            if (dir == StarDirection::Lower) {
              if (len < 2)
                ok = false;
              else if (side == Side::Right)
                u.pop_back();
              else
                u.erase(u.begin());
            } else {
              if (len > m - 2)
                ok = false;
              else if (side == Side::Right)
                u.push_back(u.back() == s ? t : s);
              else
                u.insert(u.begin(), u.front() == s ? t : s);
            }
            if (ok)
              expected = side == Side::Left ? ctx.product(u, d.transversal)
                                            : ctx.product(d.transversal, u);
          }
          CHECK(star_op(ctx, w, StarMove{pair, side, dir}) == expected);
        }
}

TEST_CASE("lower star moves preserve full commutativity and width") {
  CoxeterSystem sys = bonds54_n1();
  WordContext ctx(sys);
  for (const Word& w : enumerate_fc(sys, 10)) {
    if (w.empty()) continue;
    int n = n_value(sys, w).n;
    for (auto pair : string_pairs(sys))
      for (Side side : {Side::Left, Side::Right}) {
        auto down = star_op(ctx, w, StarMove{pair, side, StarDirection::Lower});
        if (!down) continue;
        CHECK(down->size() == w.size() - 1);
        REQUIRE(fc_criterion(sys, *down));
        CHECK(n_value(sys, *down).n == n);
      }
  }
}

TEST_CASE("commuting product recognition") {
  CoxeterSystem sys = abc34();
  CHECK(is_commuting_product(sys, {}));
  CHECK(is_commuting_product(sys, W(sys, "a c")));
  CHECK_FALSE(is_commuting_product(sys, W(sys, "a b")));
  CHECK_FALSE(is_commuting_product(sys, W(sys, "a a")));
  CHECK_FALSE(is_commuting_product(sys, W(sys, "a c b")));
}

TEST_CASE("star reduction of already-commuting input is an empty path") {
  CoxeterSystem sys = abc34();
  WordContext ctx(sys);
  auto path = star_reduce(ctx, W(sys, "a c"));
  REQUIRE(path.has_value());
  CHECK(path->steps.empty());
  CHECK(path->start == ctx.canonical_form(W(sys, "a c")));
  CHECK(path->terminal() == path->start);
}

TEST_CASE("star reduction explores left moves first") {
  CoxeterSystem sys = a2();
  WordContext ctx(sys);
  auto path = star_reduce(ctx, W(sys, "a b"));
  REQUIRE(path.has_value());
  REQUIRE(path->steps.size() == 1);
  // both sides could shorten "ab"; the search tries the left move first
  CHECK(path->steps[0].move.side == Side::Left);
  CHECK(path->steps[0].move.pair == std::pair<coxkl::Gen, coxkl::Gen>{0, 1});
  CHECK(path->steps[0].word == Word{1});
  check_path_replay(ctx, *path);

  // the longest element sits at the top of its only string: no lower move
  // applies, so the search exhausts and reports absence
  CHECK_FALSE(star_reduce(ctx, W(sys, "a b a")).has_value());
}

TEST_CASE("star reduction reaches the commuting pair across two strong bonds") {
  CoxeterSystem sys = bonds54_n2();
  WordContext ctx(sys);
  Word w = W(sys, "v0 v3 v2 v1 v0 v1 v2");
  REQUIRE(fc_criterion(sys, w));

  auto path = star_reduce(ctx, w);
  REQUIRE(path.has_value());
  CHECK(path->steps.size() == 5);
  CHECK(path->terminal() == ctx.canonical_form(W(sys, "v2 v0")));
  check_path_replay(ctx, *path);

  // too small a step budget: the search is cut off, which is an error state
  // distinct from proven absence
  CHECK_THROWS_AS(star_reduce(ctx, w, 2), BudgetExceeded);
}

TEST_CASE("star reduction strips the inner-bond witness to two letters") {
  CoxeterSystem sys = inner4s_n1();
  WordContext ctx(sys);
  Word w = W(sys, "a v1 v0 v1 v2 v1 v0 v1 v2 v1");
  REQUIRE(fc_criterion(sys, w));

  auto path = star_reduce(ctx, w);
  REQUIRE(path.has_value());
  CHECK(path->steps.size() == 8);
  CHECK(path->terminal().size() == 2);
  check_path_replay(ctx, *path);
}

TEST_CASE("reduction paths serialize with moves and words") {
  CoxeterSystem sys = a2();
  WordContext ctx(sys);
  auto path = star_reduce(ctx, W(sys, "a b"));
  REQUIRE(path.has_value());
  nlohmann::json j = reduction_path_json(sys, *path);
  nlohmann::json want = nlohmann::json::parse(
      R"([{"move":{"pair":["a","b"],"side":"left","dir":"lower"},"word":"b"}])");
  CHECK(j == want);

  auto empty_path = star_reduce(ctx, Word{});
  REQUIRE(empty_path.has_value());
  CHECK(reduction_path_json(sys, *empty_path) == nlohmann::json::array());
}
