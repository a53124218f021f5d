#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "coxkl/group_enum.hpp"
#include "coxkl/laurent.hpp"
#include "coxkl/words.hpp"

namespace coxkl {

// An element of the Hecke algebra in coordinates over the standard basis
// {T_w}: canonical word -> coefficient. Zero coefficients are not stored.
using HeckeElement = std::map<Word, LaurentPoly>;

// How an a-value was certified.
enum class AValueMethod {
  FiniteBruteForce,    // full structure-constant table of a finite group
  ShiHeap,             // fully commutative element of a (affine) Weyl group
  StarReducibleHeap,   // fully commutative element of a listed star-reducible
                       // group
  Unknown,
};

struct CertifiedAValue {
  std::optional<int> value;  // empty exactly when method == Unknown
  AValueMethod method = AValueMethod::Unknown;
};

// Enumerator name, e.g. "ShiHeap".
std::string to_string(AValueMethod method);

// Cells of a finite group. Each cell is a sorted list of canonical words;
// cells are sorted by their least element in (length, lex) order. The order
// sets hold pairs (i, j), i != j, meaning cell i lies weakly below cell j in
// the corresponding preorder (left: i <=_L j, etc.).
struct CellPartition {
  std::vector<std::vector<Word>> left, right, two_sided;
  std::set<std::pair<int, int>> left_order, right_order, two_sided_order;
};

// Exact Kazhdan-Lusztig arithmetic for one Coxeter system: KL polynomials
// and mu-coefficients over Bruhat intervals, T- and C-basis products, and,
// for enumerable finite groups, the full structure-constant table with
// a-values and cells.
//
// Two engines coexist. Interval-scoped queries (kl_polynomial, mu, c_basis,
// c_product_*) work in any system and are bounded by the interval budget on
// the top element's length. Whole-group queries (a_value_finite, cells) run
// on a lazily built FiniteGroup and are bounded by the group-order budget
// instead, so they handle longest elements beyond the interval budget.
//
// All queries are const and memoized behind one mutex; concurrent use is
// safe, recomputation races are benign by idempotence.
class KLContext {
 public:
  explicit KLContext(diagram::CoxeterSystem sys, Budgets budgets = Budgets{});

  const WordContext& words() const { return ctx_; }
  const diagram::CoxeterSystem& system() const { return ctx_.system(); }

  // p_{x,y}: the coefficient of T_x in C_y. Zero when x is not below y.
  // Throws BudgetExceeded when l(y) exceeds the interval budget.
  LaurentPoly kl_polynomial(const Word& x, const Word& y) const;

  // Coefficient of v^-1 in p_{x,y}.
  long long mu(const Word& x, const Word& y) const;

  // {w: 1} as a Hecke element.
  HeckeElement t_basis(const Word& w) const;

  // Product in T-coordinates, by the quadratic relation
  // T_s^2 = 1 + (v - v^-1) T_s extended along reduced words.
  HeckeElement t_multiply(const HeckeElement& a, const HeckeElement& b) const;

  // C_y in T-coordinates: sum of p_{x,y} T_x over x <= y.
  HeckeElement c_basis(const Word& y) const;

  // Expansion of C_s * C_y (or C_y * C_s) in the C-basis; only nonzero
  // coordinates appear.
  std::map<Word, LaurentPoly> c_product_left(Gen s, const Word& y) const;
  std::map<Word, LaurentPoly> c_product_right(const Word& y, Gen s) const;

  // The enumerated group behind the whole-group queries. Throws
  // std::invalid_argument when the diagram is not of recognized finite type,
  // BudgetExceeded when the order exceeds the group budget.
  const FiniteGroup& group() const;

  // a(w) over the full structure-constant table: the maximum v-degree of
  // h_{x,y,w} over all pairs, where C_x C_y = sum of h_{x,y,z} C_z.
  int a_value_finite(const Word& w) const;

  // a(w) with a justification: brute force when the group is enumerable,
  // else the heap width n(w) when w is fully commutative and the diagram is
  // a (affine) Weyl or listed star-reducible habitat, else Unknown.
  CertifiedAValue a_value_certified(const Word& w) const;

  // Left, right, and two-sided cells of an enumerable finite group.
  const CellPartition& cells() const;

  // Checks mu(x,y) = mu(*x,*y) for the simply-laced star operation: I must
  // carry m = 3, x and y must lie on I-strings on the given side and in
  // distinct cosets of W_I (x y^-1, resp. x^-1 y, outside W_I). Throws
  // std::invalid_argument when the preconditions fail.
  bool verify_star_mu_transport(const Word& x, const Word& y,
                                std::pair<Gen, Gen> I, Side side) const;

  // Checks mu(lower(x),y) + mu(upper(x),y) = mu(x,lower(y)) + mu(x,upper(y))
  // with undefined neighbors contributing 0. I needs 3 <= m < infinity; x, y
  // must lie on I-strings on the given side with different descent traces
  // L(x) n I != L(y) n I (right side: R). Throws std::invalid_argument when
  // the preconditions fail.
  bool verify_star_recurrence(const Word& x, const Word& y,
                              std::pair<Gen, Gen> I, Side side) const;

 private:
  struct FiniteEngine;
  // Data the recursion reuses across every x below the same top y: the
  // chosen descent, the shortened top, and the correction terms.
  struct TopData {
    Gen s = 0;
    Word u;  // s * y, one letter shorter
    // (z, mu-in-q of (z, u)) over z < u with sz < z and nonzero coefficient
    std::vector<std::pair<Word, long long>> corrections;
  };

  const FiniteEngine& engine() const;
  const TopData& top_data(const Word& y) const;
  long long mu_sym(const Word& x, const Word& y) const;
  // Classical-normalization polynomial in q; recursion documented in kl.cpp.
  LaurentPoly classical(const Word& x, const Word& y) const;

  WordContext ctx_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<Word, Word>, LaurentPoly> classical_memo_;
  mutable std::map<Word, TopData> top_memo_;
  mutable std::shared_ptr<const FiniteEngine> engine_;
};

}  // namespace coxkl
