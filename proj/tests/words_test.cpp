#include "coxkl/words.hpp"

#include <random>
#include <set>
#include <stdexcept>

#include <doctest.h>

#include "oracles.hpp"

using coxkl::Budgets;
using coxkl::BudgetExceeded;
using coxkl::Side;
using coxkl::Word;
using coxkl::WordContext;
using coxkl::parse_word;
using coxkl::word_text;
using coxkl::diagram::CoxeterSystem;

namespace {

CoxeterSystem a2() { return CoxeterSystem({"a", "b"}, {{0, 1, 3}}); }
CoxeterSystem a3() { return CoxeterSystem({"a", "b", "c"}, {{0, 1, 3}, {1, 2, 3}}); }
CoxeterSystem b2() { return CoxeterSystem({"a", "b"}, {{0, 1, 4}}); }
CoxeterSystem b3() { return CoxeterSystem({"a", "b", "c"}, {{0, 1, 4}, {1, 2, 3}}); }
// the running example: m(a,b)=3, m(b,c)=4, m(a,c)=2
CoxeterSystem ex32() { return CoxeterSystem({"a", "b", "c"}, {{0, 1, 3}, {1, 2, 4}}); }

Word W(const CoxeterSystem& sys, const std::string& text) { return parse_word(sys, text); }

// Test-local braid rewriting, independent of the library's closure code.
std::vector<Word> single_braid_moves(const CoxeterSystem& sys, const Word& w) {
  std::vector<Word> out;
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    int s = w[i], t = w[i + 1];
    if (s == t) continue;
    int m = sys.m(s, t);
    if (m == coxkl::diagram::kInfinity || i + static_cast<size_t>(m) > w.size()) continue;
    bool alt = true;
    for (int k = 0; k < m; ++k)
      if (w[i + static_cast<size_t>(k)] != (k % 2 == 0 ? s : t)) alt = false;
    if (!alt) continue;
    Word v = w;
    for (int k = 0; k < m; ++k) v[i + static_cast<size_t>(k)] = (k % 2 == 0 ? t : s);
    out.push_back(v);
  }
  return out;
}

// Fixed-point braid closure of a word, again independent of the library.
std::set<Word> closure_oracle(const CoxeterSystem& sys, const Word& w) {
  std::set<Word> seen{w};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const Word& u : std::set<Word>(seen))
      for (const Word& v : single_braid_moves(sys, u))
        if (seen.insert(v).second) grew = true;
  }
  return seen;
}

}  // namespace

TEST_CASE("words: text parsing and formatting") {
  CoxeterSystem sys = ex32();
  CHECK(parse_word(sys, "a b c a b") == Word{0, 1, 2, 0, 1});
  CHECK(parse_word(sys, "  a    c ") == Word{0, 2});
  CHECK(parse_word(sys, "") == Word{});
  CHECK(word_text(sys, Word{0, 1, 2, 0, 1}) == "a b c a b");
  CHECK(word_text(sys, Word{}) == "");
  CHECK_THROWS_AS(parse_word(sys, "a d"), std::invalid_argument);
}

TEST_CASE("words: canonical form small cases") {
  WordContext ctx(a2());
  CHECK(ctx.canonical_form(W(a2(), "b a b")) == W(a2(), "a b a"));
  CHECK(ctx.canonical_form(W(a2(), "a a")) == Word{});
  CHECK(ctx.canonical_form(Word{}) == Word{});
  CHECK(ctx.canonical_form(W(a2(), "a b a b")) == W(a2(), "b a"));
  CHECK(ctx.canonical_form(W(a2(), "b a")) == W(a2(), "b a"));
  CHECK_THROWS_AS(ctx.canonical_form(Word{0, 5}), std::invalid_argument);
}

TEST_CASE("words: canonical form of the running example") {
  CoxeterSystem sys = ex32();
  WordContext ctx(sys);
  Word w = W(sys, "a b c a b");

  // independent closure of the input: it is reduced (uniform lengths) and its
  // lex-least member is "a b a c b", not the input itself
  std::set<Word> cls = closure_oracle(sys, w);
  CHECK(cls.size() == 3);
  for (const Word& u : cls) CHECK(u.size() == w.size());
  CHECK(*cls.begin() == W(sys, "a b a c b"));

  CHECK(ctx.canonical_form(w) == W(sys, "a b a c b"));
  CHECK(ctx.is_reduced(w));
}

TEST_CASE("words: is_reduced") {
  WordContext ctx(a2());
  CHECK(ctx.is_reduced(W(a2(), "a b a")));
  CHECK(!ctx.is_reduced(W(a2(), "a b a b")));
  CHECK(ctx.is_reduced(Word{}));
}

TEST_CASE("words: product, mult, inverse") {
  WordContext ctx(a2());
  CHECK(ctx.product(W(a2(), "a b"), W(a2(), "a")) == W(a2(), "a b a"));
  CHECK(ctx.product(W(a2(), "a"), W(a2(), "a")) == Word{});
  CHECK(ctx.mult(W(a2(), "a b"), 0, Side::Left) == W(a2(), "b"));
  CHECK(ctx.mult(W(a2(), "a b"), 0, Side::Right) == W(a2(), "a b a"));
  CHECK(ctx.inverse(W(a2(), "a b")) == W(a2(), "b a"));
  CHECK(ctx.inverse(W(a2(), "a b a")) == W(a2(), "a b a"));
  CHECK(ctx.inverse(Word{}) == Word{});
}

TEST_CASE("words: descent sets") {
  WordContext ctx(a2());
  CHECK(ctx.descent_set(W(a2(), "a b a"), Side::Left) == std::vector<int>{0, 1});
  CHECK(ctx.descent_set(W(a2(), "a b a"), Side::Right) == std::vector<int>{0, 1});
  CHECK(ctx.descent_set(W(a2(), "a b"), Side::Left) == std::vector<int>{0});
  CHECK(ctx.descent_set(W(a2(), "a b"), Side::Right) == std::vector<int>{1});
  CHECK(ctx.descent_set(Word{}, Side::Left).empty());
}

TEST_CASE("words: budget enforcement") {
  Budgets tight;
  tight.max_word_length = 4;
  WordContext ctx(a3(), tight);
  CHECK_THROWS_AS(ctx.canonical_form(W(a3(), "a b a b a")), BudgetExceeded);

  Budgets tiny_closure;
  tiny_closure.max_closure = 5;
  WordContext ctx2(a3(), tiny_closure);
  // the longest element of A3 has 16 reduced words, so its closure overflows
  CHECK_THROWS_AS(ctx2.canonical_form(W(a3(), "a b a c b a")), BudgetExceeded);

  Budgets tiny_interval;
  tiny_interval.max_interval_length = 3;
  WordContext ctx3(a3(), tiny_interval);
  CHECK_THROWS_AS(ctx3.bruhat_interval(W(a3(), "a b a c")), BudgetExceeded);
  CHECK_THROWS_AS(ctx3.bruhat_leq(W(a3(), "a"), W(a3(), "a b a c")), BudgetExceeded);
}

TEST_CASE("words: bruhat comparisons, small cases") {
  WordContext ctx(a2());
  CHECK(ctx.bruhat_leq(Word{}, W(a2(), "a b a")));
  CHECK(ctx.bruhat_leq(Word{}, Word{}));
  // "a" is not a literal subword of "b a b", but it is of the braid partner
  CHECK(ctx.bruhat_leq(W(a2(), "a"), ctx.canonical_form(W(a2(), "b a b"))));
  CHECK(!ctx.bruhat_leq(W(a2(), "a b a"), W(a2(), "a b")));
  CHECK(!ctx.bruhat_leq(W(a2(), "a b"), W(a2(), "b a")));
  CHECK(ctx.bruhat_leq(W(a2(), "a b"), W(a2(), "a b")));
}

TEST_CASE("words: bruhat order agrees with concrete group models") {
  struct Case {
    CoxeterSystem sys;
    oracles::Model model;
    size_t order;
  };
  Case cases[] = {
      {a2(), oracles::symmetric_group_model(2), 6},
      {a3(), oracles::symmetric_group_model(3), 24},
      {b2(), oracles::signed_model(2), 8},
  };
  for (const Case& c : cases) {
    WordContext ctx(c.sys);
    oracles::Enumeration en = oracles::enumerate_group(c.model);
    REQUIRE(en.shortest.size() == c.order);

    // model element -> canonical word; all distinct
    std::map<oracles::State, Word> canon;
    std::set<Word> distinct;
    for (const auto& [st, mw] : en.shortest) {
      canon[st] = ctx.canonical_form(mw);
      CHECK(canon[st].size() == mw.size());
      distinct.insert(canon[st]);
    }
    CHECK(distinct.size() == c.order);

    for (const auto& [xs, xw] : en.shortest)
      for (const auto& [ys, yw] : en.shortest) {
        bool expect = oracles::oracle_bruhat_leq(c.model, xs, yw);
        CHECK(ctx.bruhat_leq(canon.at(xs), canon.at(ys)) == expect);
      }
  }
}

TEST_CASE("words: bruhat intervals") {
  WordContext ctx(a2());
  auto iv = ctx.bruhat_interval(W(a2(), "a b"));
  CHECK(iv == std::vector<Word>{Word{}, W(a2(), "a"), W(a2(), "a b"), W(a2(), "b")});
  CHECK(ctx.bruhat_interval(W(a2(), "a b a")).size() == 6);

  CoxeterSystem sys = ex32();
  WordContext ctx2(sys);
  auto iv2 = ctx2.bruhat_interval(W(sys, "a c"));
  CHECK(iv2 == std::vector<Word>{Word{}, W(sys, "a"), W(sys, "a c"), W(sys, "c")});

  // the interval below the longest element is the whole group
  oracles::Enumeration en = oracles::enumerate_group(oracles::symmetric_group_model(3));
  Word top;
  for (const auto& [st, mw] : en.shortest)
    if (mw.size() > top.size()) top = mw;
  WordContext ctx3(a3());
  CHECK(ctx3.bruhat_interval(ctx3.canonical_form(top)).size() == 24);
}

TEST_CASE("words: coset decomposition of the running example") {
  CoxeterSystem sys = ex32();
  WordContext ctx(sys);
  Word w = W(sys, "a b c a b");

  auto left = ctx.coset_decompose(w, {0, 1}, Side::Left);
  CHECK(left.parabolic == W(sys, "a b a"));
  CHECK(left.transversal == W(sys, "c b"));

  auto right = ctx.coset_decompose(w, {1, 2}, Side::Right);
  CHECK(right.parabolic == W(sys, "b c b"));
  CHECK(right.transversal == W(sys, "b a"));

  auto id_left = ctx.coset_decompose(Word{}, {0, 1}, Side::Left);
  CHECK(id_left.parabolic == Word{});
  CHECK(id_left.transversal == Word{});

  CHECK_THROWS_AS(ctx.coset_decompose(w, {1, 1}, Side::Left), std::invalid_argument);
}

TEST_CASE("words: coset decomposition properties over a whole group") {
  WordContext ctx(a3());
  auto all = ctx.bruhat_interval(ctx.canonical_form(W(a3(), "a b a c b a")));
  REQUIRE(all.size() == 24);
  std::pair<int, int> pairs[] = {{0, 1}, {0, 2}, {1, 2}};
  for (const Word& x : all)
    for (auto I : pairs)
      for (Side side : {Side::Left, Side::Right}) {
        auto d = ctx.coset_decompose(x, I, side);
        // length additivity
        CHECK(d.parabolic.size() + d.transversal.size() == x.size());
        // parabolic part uses only letters of I
        for (int s : d.parabolic) CHECK((s == I.first || s == I.second));
        // transversal has no descent in I on the decomposition side
        for (int s : ctx.descent_set(d.transversal, side))
          CHECK(s != I.first);
        for (int s : ctx.descent_set(d.transversal, side))
          CHECK(s != I.second);
        // recombination
        Word back = side == Side::Left ? ctx.product(d.parabolic, d.transversal)
                                       : ctx.product(d.transversal, d.parabolic);
        CHECK(back == x);
      }
}

TEST_CASE("words: canonical form is constant on braid classes and idempotent") {
  std::mt19937 rng(12345);
  for (const CoxeterSystem& sys : {a3(), b3()}) {
    WordContext ctx(sys);
    std::uniform_int_distribution<int> len_dist(0, 10);
    std::uniform_int_distribution<int> gen_dist(0, sys.rank() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      Word w(static_cast<size_t>(len_dist(rng)));
      for (int& s : w) s = gen_dist(rng);
      Word c = ctx.canonical_form(w);
      CHECK(ctx.canonical_form(c) == c);

      // wander a few braid moves away; the canonical form must not change
      Word u = w;
      for (int hop = 0; hop < 5; ++hop) {
        auto moves = single_braid_moves(sys, u);
        if (moves.empty()) break;
        u = moves[static_cast<size_t>(rng()) % moves.size()];
      }
      CHECK(ctx.canonical_form(u) == c);
    }
  }
}
