#include "coxkl/heaps.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <doctest.h>

using coxkl::Budgets;
using coxkl::BudgetExceeded;
using coxkl::Heap;
using coxkl::NValue;
using coxkl::Side;
using coxkl::Word;
using coxkl::WordContext;
using coxkl::build_heap;
using coxkl::commutation_class_size;
using coxkl::enumerate_fc;
using coxkl::fc_criterion;
using coxkl::fc_descent_position;
using coxkl::fc_descents;
using coxkl::heap_ascii;
using coxkl::heap_canonical_form;
using coxkl::heap_json;
using coxkl::is_fully_commutative;
using coxkl::n_value;
using coxkl::open_intervals;
using coxkl::parse_word;
using coxkl::diagram::CoxeterSystem;

namespace {

CoxeterSystem a2() { return CoxeterSystem({"a", "b"}, {{0, 1, 3}}); }
CoxeterSystem a3() { return CoxeterSystem({"a", "b", "c"}, {{0, 1, 3}, {1, 2, 3}}); }
CoxeterSystem b3() { return CoxeterSystem({"a", "b", "c"}, {{0, 1, 4}, {1, 2, 3}}); }
CoxeterSystem h3() { return CoxeterSystem({"a", "b", "c"}, {{0, 1, 5}, {1, 2, 3}}); }
// the 4-chain of Figure 2: a-4-b-3-c-3-d
CoxeterSystem fig2() {
  return CoxeterSystem({"a", "b", "c", "d"}, {{0, 1, 4}, {1, 2, 3}, {2, 3, 3}});
}
// two strong bonds on a path: a-4-b-4-c
CoxeterSystem two4s() { return CoxeterSystem({"a", "b", "c"}, {{0, 1, 4}, {1, 2, 4}}); }
CoxeterSystem triangle() {
  return CoxeterSystem({"a", "b", "c"}, {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}});
}
CoxeterSystem free3() { return CoxeterSystem({"a", "b", "c"}, {}); }

Word W(const CoxeterSystem& sys, const std::string& text) { return parse_word(sys, text); }

// Test-local FC oracle: BFS the braid closure and look for a contiguous
// sts... factor of full length m(s,t) in any member.
std::set<Word> braid_closure_oracle(const CoxeterSystem& sys, const Word& w) {
  std::set<Word> seen{w};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const Word& u : std::set<Word>(seen)) {
      for (size_t i = 0; i + 1 < u.size(); ++i) {
        int s = u[i], t = u[i + 1];
        if (s == t) continue;
        int m = sys.m(s, t);
        if (m == coxkl::diagram::kInfinity || i + static_cast<size_t>(m) > u.size()) continue;
        bool alt = true;
        for (int k = 0; k < m; ++k)
          if (u[i + static_cast<size_t>(k)] != (k % 2 == 0 ? s : t)) alt = false;
        if (!alt) continue;
        Word v = u;
        for (int k = 0; k < m; ++k) v[i + static_cast<size_t>(k)] = (k % 2 == 0 ? t : s);
        if (seen.insert(v).second) grew = true;
      }
    }
  }
  return seen;
}

bool fc_oracle_reduced_word(const CoxeterSystem& sys, const Word& w) {
  for (const Word& u : braid_closure_oracle(sys, w))
    for (size_t i = 0; i + 1 < u.size(); ++i) {
      int s = u[i], t = u[i + 1];
      if (s == t) continue;
      int m = sys.m(s, t);
      if (m == coxkl::diagram::kInfinity || m < 3 || i + static_cast<size_t>(m) > u.size())
        continue;
      bool alt = true;
      for (int k = 0; k < m; ++k)
        if (u[i + static_cast<size_t>(k)] != (k % 2 == 0 ? s : t)) alt = false;
      if (alt) return false;
    }
  return true;
}

int brute_max_antichain(const Heap& h) {
  REQUIRE(h.size < 20);
  int best = 0;
  for (unsigned mask = 0; mask < (1u << h.size); ++mask) {
    bool ok = true;
    int count = 0;
    for (int i = 0; i < h.size && ok; ++i) {
      if (!((mask >> i) & 1u)) continue;
      ++count;
      for (int j = i + 1; j < h.size && ok; ++j)
        if (((mask >> j) & 1u) && (h.leq(i, j) || h.leq(j, i))) ok = false;
    }
    if (ok) best = std::max(best, count);
  }
  return best;
}

void check_antichain_witness(const Heap& h, const NValue& nv) {
  CHECK(static_cast<int>(nv.antichain.size()) == nv.n);
  for (size_t x = 0; x < nv.antichain.size(); ++x)
    for (size_t y = x + 1; y < nv.antichain.size(); ++y) {
      CHECK(nv.antichain[x] < nv.antichain[y]);
      CHECK(!h.leq(nv.antichain[x], nv.antichain[y]));
      CHECK(!h.leq(nv.antichain[y], nv.antichain[x]));
    }
}

// extraction order of the greedy lex-least linear extension
std::vector<int> greedy_extension_order(const Heap& h) {
  std::vector<int> order;
  std::uint64_t remaining =
      h.size == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << h.size) - 1);
  while (remaining) {
    int best = -1;
    for (int i = 0; i < h.size; ++i) {
      if (!((remaining >> i) & 1u)) continue;
      if ((h.below[static_cast<size_t>(i)] & remaining) != 0) continue;
      if (best < 0 || h.labels[static_cast<size_t>(i)] < h.labels[static_cast<size_t>(best)])
        best = i;
    }
    order.push_back(best);
    remaining &= ~(std::uint64_t{1} << best);
  }
  return order;
}

// all reduced words of length <= max_len, by DFS with the prefix property
void reduced_words_upto(const WordContext& ctx, Word& cur, int max_len,
                        std::vector<Word>& out) {
  out.push_back(cur);
  if (static_cast<int>(cur.size()) == max_len) return;
  for (int s = 0; s < ctx.system().rank(); ++s) {
    cur.push_back(s);
    if (ctx.is_reduced(cur)) reduced_words_upto(ctx, cur, max_len, out);
    cur.pop_back();
  }
}

}  // namespace

TEST_CASE("heaps: construction matches the worked 6-letter example") {
  CoxeterSystem sys = fig2();
  Heap h = build_heap(sys, W(sys, "a b c a b d"));
  CHECK(h.size == 6);
  CHECK(h.covers == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}, {2, 5}});
  CHECK(h.levels == std::vector<int>{1, 2, 3, 3, 4, 4});
  CHECK(h.leq(0, 5));   // a before d through b, c
  CHECK(!h.leq(3, 5));  // the second a is incomparable to d
  CHECK(!h.leq(2, 3));  // c and the second a commute

  Heap two = build_heap(sys, W(sys, "a c"));
  CHECK(two.covers.empty());
  CHECK(two.levels == std::vector<int>{1, 1});

  Heap rep = build_heap(sys, W(sys, "a a"));
  CHECK(rep.covers == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(rep.levels == std::vector<int>{1, 2});

  CHECK_THROWS_AS(build_heap(sys, Word{9}), std::invalid_argument);
  CHECK_THROWS_AS(build_heap(sys, Word(65, 0)), BudgetExceeded);
}

TEST_CASE("heaps: commutativity criterion") {
  CHECK(fc_criterion(fig2(), W(fig2(), "a b c a b d")));
  CHECK(!fc_criterion(a2(), W(a2(), "a b a")));
  CHECK(fc_criterion(two4s(), W(two4s(), "a c b")));
  CHECK(fc_criterion(two4s(), W(two4s(), "a c b a c b")));
  CHECK(!fc_criterion(a2(), W(a2(), "a a")));
  CHECK(fc_criterion(a3(), Word{}));

  WordContext ctx(a2());
  CHECK(!is_fully_commutative(ctx, W(a2(), "a b a")));
  CHECK(is_fully_commutative(ctx, W(a2(), "a b")));
  CHECK_THROWS_AS(is_fully_commutative(ctx, W(a2(), "a a")), std::invalid_argument);
  CHECK_THROWS_AS(is_fully_commutative(ctx, W(a2(), "a b a b")), std::invalid_argument);
}

TEST_CASE("heaps: criterion agrees with the braid-closure oracle") {
  for (const CoxeterSystem& sys : {a3(), b3(), h3()}) {
    WordContext ctx(sys);
    std::vector<Word> reduced;
    Word cur;
    reduced_words_upto(ctx, cur, 8, reduced);
    for (const Word& w : reduced)
      CHECK(fc_criterion(sys, w) == fc_oracle_reduced_word(sys, w));
  }
}

TEST_CASE("heaps: canonical form via heap agrees with the word engine") {
  for (const CoxeterSystem& sys : {a3(), b3()}) {
    WordContext ctx(sys);
    for (const Word& w : enumerate_fc(sys, 8)) {
      CHECK(heap_canonical_form(sys, w) == w);
      CHECK(ctx.canonical_form(w) == w);
    }
  }
  // members of one commutation class all canonicalize identically
  CoxeterSystem sys = fig2();
  Word base = W(sys, "a b c a b d");
  Word canon = heap_canonical_form(sys, base);
  std::set<Word> cls = braid_closure_oracle(sys, base);
  CHECK(cls.size() == static_cast<size_t>(commutation_class_size(sys, base)));
  for (const Word& u : cls) CHECK(heap_canonical_form(sys, u) == canon);

  CHECK_THROWS_AS(heap_canonical_form(a2(), W(a2(), "a b a")), std::invalid_argument);
}

TEST_CASE("heaps: heaps of one element are isomorphic as labeled posets") {
  for (const CoxeterSystem& sys : {a3(), b3()}) {
    for (const Word& w : enumerate_fc(sys, 8)) {
      Heap hc = build_heap(sys, w);
      for (const Word& u : braid_closure_oracle(sys, w)) {
        Heap hu = build_heap(sys, u);
        std::vector<int> order = greedy_extension_order(hu);
        REQUIRE(order.size() == w.size());
        for (size_t k = 0; k < order.size(); ++k)
          CHECK(hu.labels[static_cast<size_t>(order[k])] == hc.labels[k]);
        for (size_t k = 0; k < order.size(); ++k)
          for (size_t l = 0; l < order.size(); ++l)
            CHECK(hu.leq(order[k], order[l]) == hc.leq(static_cast<int>(k), static_cast<int>(l)));
      }
    }
  }
}

TEST_CASE("heaps: descents from heap extrema match the word engine") {
  for (const CoxeterSystem& sys : {a3(), b3()}) {
    WordContext ctx(sys);
    for (const Word& w : enumerate_fc(sys, 8)) {
      Heap h = build_heap(sys, w);
      for (Side side : {Side::Left, Side::Right}) {
        CHECK(fc_descents(h, side) == ctx.descent_set(w, side));
        for (int s = 0; s < sys.rank(); ++s) {
          int pos = fc_descent_position(h, s, side);
          std::vector<int> ds = ctx.descent_set(w, side);
          bool is_descent = std::find(ds.begin(), ds.end(), s) != ds.end();
          CHECK((pos >= 0) == is_descent);
          if (pos >= 0) {
            Word erased = w;
            erased.erase(erased.begin() + pos);
            CHECK(ctx.canonical_form(erased) == ctx.mult(w, s, side));
          }
        }
      }
    }
  }
}

TEST_CASE("heaps: maximum antichain values") {
  CoxeterSystem sys = two4s();
  NValue nv = n_value(sys, W(sys, "a c b a c b"));
  CHECK(nv.n == 2);
  check_antichain_witness(build_heap(sys, W(sys, "a c b a c b")), nv);

  CHECK(n_value(free3(), W(free3(), "a b c")).n == 3);
  CHECK(n_value(fig2(), W(fig2(), "a b c a b d")).n == 2);
  CHECK(n_value(a3(), Word{}).n == 0);

  CHECK_THROWS_AS(n_value(a2(), W(a2(), "a b a")), std::invalid_argument);
}

TEST_CASE("heaps: antichain maximization agrees with subset brute force") {
  for (const CoxeterSystem& sys : {a3(), b3(), two4s(), fig2()}) {
    for (const Word& w : enumerate_fc(sys, 8)) {
      Heap h = build_heap(sys, w);
      NValue nv = n_value(h);
      CHECK(nv.n == brute_max_antichain(h));
      check_antichain_witness(h, nv);
    }
  }
}

TEST_CASE("heaps: FC enumeration") {
  auto a3_fc = enumerate_fc(a3(), 6);
  CHECK(a3_fc.size() == 14);

  // oracle count: filter the whole 24-element group
  WordContext ctx(a3());
  auto all = ctx.bruhat_interval(ctx.canonical_form(W(a3(), "a b a c b a")));
  REQUIRE(all.size() == 24);
  std::set<Word> expected;
  for (const Word& w : all)
    if (is_fully_commutative(ctx, w)) expected.insert(w);
  CHECK(expected.size() == 14);
  CHECK(std::set<Word>(a3_fc.begin(), a3_fc.end()) == expected);

  CoxeterSystem a1({"a"}, {});
  auto a1_fc = enumerate_fc(a1, 10);
  CHECK(a1_fc == std::vector<Word>{Word{}, Word{0}});

  // in a complete diagram nothing commutes, so FC heaps are chains
  for (const Word& w : enumerate_fc(triangle(), 5)) CHECK(n_value(triangle(), w).n <= 1);

  // ordering: by length, then lexicographic
  for (size_t i = 0; i + 1 < a3_fc.size(); ++i) {
    bool ordered = a3_fc[i].size() < a3_fc[i + 1].size() ||
                   (a3_fc[i].size() == a3_fc[i + 1].size() && a3_fc[i] < a3_fc[i + 1]);
    CHECK(ordered);
  }

  Budgets tight;
  tight.max_fc_elements = 5;
  CHECK_THROWS_AS(enumerate_fc(a3(), 6, tight), BudgetExceeded);
  Budgets tiny_len;
  CHECK_THROWS_AS(enumerate_fc(a3(), tiny_len.max_word_length + 1, tiny_len), BudgetExceeded);
}

TEST_CASE("heaps: commutation class sizes") {
  CoxeterSystem sys = fig2();
  CHECK(commutation_class_size(sys, W(sys, "a c")) == 2);   // m(a,c)=2
  CHECK(commutation_class_size(sys, W(sys, "a b")) == 1);   // m(a,b)=4
  CHECK(commutation_class_size(a2(), W(a2(), "a b")) == 1);

  Budgets tight;
  tight.max_closure = 1;
  CHECK_THROWS_AS(commutation_class_size(sys, W(sys, "a c"), tight), BudgetExceeded);
}

TEST_CASE("heaps: open intervals between equal labels") {
  CoxeterSystem sys = fig2();
  Heap h = build_heap(sys, W(sys, "a b c a b d"));

  auto a_ivs = open_intervals(h, 0);
  REQUIRE(a_ivs.size() == 1);
  CHECK(a_ivs[0].lo == 0);
  CHECK(a_ivs[0].hi == 3);
  CHECK(a_ivs[0].between == (std::uint64_t{1} << 1));  // just the first b

  auto b_ivs = open_intervals(h, 1);
  REQUIRE(b_ivs.size() == 1);
  CHECK(b_ivs[0].between == ((std::uint64_t{1} << 2) | (std::uint64_t{1} << 3)));

  CHECK(open_intervals(h, 3).empty());  // single d
}

TEST_CASE("heaps: rendering") {
  CoxeterSystem sys = fig2();
  Heap h = build_heap(sys, W(sys, "a b c a b d"));
  CHECK(heap_ascii(sys, h) ==
        ". b . d\n"
        "a . c .\n"
        ". b . .\n"
        "a . . .\n");
  CHECK(heap_ascii(sys, build_heap(sys, Word{})) == "(empty heap)\n");

  nlohmann::json j = heap_json(sys, h);
  CHECK(j["size"] == 6);
  CHECK(j["labels"] == nlohmann::json({"a", "b", "c", "a", "b", "d"}));
  CHECK(j["covers"] == nlohmann::json({{1, 2}, {2, 3}, {2, 4}, {3, 5}, {4, 5}, {3, 6}}));
  CHECK(j["levels"] == nlohmann::json({1, 2, 3, 3, 4, 4}));
}
