#include "coxkl/kl.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "coxkl/diagram.hpp"
#include "coxkl/heaps.hpp"
#include "coxkl/star.hpp"

namespace coxkl {

namespace {

// v - v^-1, the defect term of the quadratic relation
const LaurentPoly& defect() {
  static const LaurentPoly d =
      LaurentPoly::monomial(1, 1) + LaurentPoly::monomial(-1, -1);
  return d;
}

const LaurentPoly& v_plus_vinv() {
  static const LaurentPoly p =
      LaurentPoly::monomial(1, 1) + LaurentPoly::monomial(1, -1);
  return p;
}

void prune_zeros(HeckeElement& h) {
  for (auto it = h.begin(); it != h.end();)
    it = it->second.is_zero() ? h.erase(it) : std::next(it);
}

// Strongly connected components by Kosaraju's two passes, iteratively to
// keep the stack flat on the full group graph. Returns (count, component id
// per vertex).
std::pair<int, std::vector<int>> scc(const std::vector<std::vector<int>>& adj) {
  int n = static_cast<int>(adj.size());
  std::vector<std::vector<int>> radj(n);
  for (int u = 0; u < n; ++u)
    for (int w : adj[u]) radj[w].push_back(u);

  std::vector<char> seen(n, 0);
  std::vector<int> post;
  post.reserve(n);
  for (int r = 0; r < n; ++r) {
    if (seen[r]) continue;
    std::vector<std::pair<int, size_t>> stack{{r, 0}};
    seen[r] = 1;
    while (!stack.empty()) {
      auto& [u, k] = stack.back();
      if (k < adj[u].size()) {
        int w = adj[u][k++];
        if (!seen[w]) {
          seen[w] = 1;
          stack.emplace_back(w, 0);
        }
      } else {
        post.push_back(u);
        stack.pop_back();
      }
    }
  }

  std::vector<int> comp(n, -1);
  int count = 0;
  for (int idx = n - 1; idx >= 0; --idx) {
    int r = post[idx];
    if (comp[r] >= 0) continue;
    std::vector<int> stack{r};
    comp[r] = count;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : radj[u])
        if (comp[w] < 0) {
          comp[w] = count;
          stack.push_back(w);
        }
    }
    ++count;
  }
  return {count, std::move(comp)};
}

}  // namespace

KLContext::KLContext(diagram::CoxeterSystem sys, Budgets budgets)
    : ctx_(std::move(sys), budgets) {}

// Everything the recursion needs about one top element y: the first left
// descent s, the shortened top u = sy, and the correction list of z < u
// with sz < z whose q-form mu coefficient is nonzero. One interval
// enumeration per distinct top instead of one per (x, y) pair.
const KLContext::TopData& KLContext::top_data(const Word& y) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = top_memo_.find(y);
    if (it != top_memo_.end()) return it->second;
  }
  TopData data;
  data.s = ctx_.descent_set(y, Side::Left).front();
  data.u = ctx_.mult(y, data.s, Side::Left);
  for (const Word& z : ctx_.bruhat_interval(data.u)) {
    if (z == data.u) continue;
    if (ctx_.mult(z, data.s, Side::Left).size() >= z.size()) continue;
    int diff = static_cast<int>(data.u.size()) - static_cast<int>(z.size());
    if (diff % 2 == 0) continue;
    long long m = classical(z, data.u).coeff((diff - 1) / 2);
    if (m != 0) data.corrections.emplace_back(z, m);
  }
  std::lock_guard<std::mutex> lock(mutex_);
  return top_memo_.emplace(y, std::move(data)).first->second;
}

// Classical-normalization polynomial P_{x,y} in q (exponent = q-degree).
// With s a left descent of y and u = sy,
//   P_{x,y} = q^{1-c} P_{sx,u} + q^c P_{x,u}
//             - sum over x <= z < u with sz < z of
//               mu_q(z,u) q^{(l(y)-l(z))/2} P_{x,z},
// where c = 1 exactly when sx < x and mu_q(z,u) is the coefficient of
// q^{(l(u)-l(z)-1)/2} in P_{z,u}. The value used everywhere else is the
// rescaling P(v^2) v^{l(x)-l(y)}. Incomparable pairs memoize a zero so the
// subword walk runs once per pair.
LaurentPoly KLContext::classical(const Word& x, const Word& y) const {
  if (x == y) return LaurentPoly(1);
  if (x.size() >= y.size()) return LaurentPoly();
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = classical_memo_.find({x, y});
    if (it != classical_memo_.end()) return it->second;
  }
  LaurentPoly out;
  if (ctx_.bruhat_leq(x, y)) {
    const TopData& top = top_data(y);
    Word sx = ctx_.mult(x, top.s, Side::Left);
    bool c = sx.size() < x.size();
    out = classical(sx, top.u).shifted(c ? 0 : 1) +
          classical(x, top.u).shifted(c ? 1 : 0);
    for (const auto& [z, m] : top.corrections) {
      int shift = (static_cast<int>(y.size()) - static_cast<int>(z.size())) / 2;
      out -= classical(x, z).shifted(shift) * m;
    }
  }
  std::lock_guard<std::mutex> lock(mutex_);
  return classical_memo_.emplace(std::make_pair(x, y), std::move(out))
      .first->second;
}

LaurentPoly KLContext::kl_polynomial(const Word& x, const Word& y) const {
  Word cx = ctx_.canonical_form(x);
  Word cy = ctx_.canonical_form(y);
  if (static_cast<int>(cy.size()) > ctx_.budgets().max_interval_length)
    throw BudgetExceeded("kl polynomial: top element length " +
                         std::to_string(cy.size()) +
                         " exceeds the interval budget " +
                         std::to_string(ctx_.budgets().max_interval_length));
  if (!ctx_.bruhat_leq(cx, cy)) return LaurentPoly();
  return classical(cx, cy).stretched(2).shifted(static_cast<int>(cx.size()) -
                                                static_cast<int>(cy.size()));
}

long long KLContext::mu(const Word& x, const Word& y) const {
  return kl_polynomial(x, y).coeff(-1);
}

// The string identities read mu on whichever order is comparable.
long long KLContext::mu_sym(const Word& x, const Word& y) const {
  return x.size() < y.size() ? mu(x, y) : mu(y, x);
}

HeckeElement KLContext::t_basis(const Word& w) const {
  return {{ctx_.canonical_form(w), LaurentPoly(1)}};
}

HeckeElement KLContext::t_multiply(const HeckeElement& a,
                                   const HeckeElement& b) const {
  HeckeElement rhs;
  for (const auto& [w, c] : b)
    if (!c.is_zero()) rhs[ctx_.canonical_form(w)] += c;
  HeckeElement out;
  for (const auto& [w0, c] : a) {
    if (c.is_zero()) continue;
    Word w = ctx_.canonical_form(w0);
    HeckeElement cur = rhs;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      HeckeElement next;
      for (const auto& [u, q] : cur) {
        Word su = ctx_.mult(u, *it, Side::Left);
        next[su] += q;
        if (su.size() < u.size()) next[u] += defect() * q;
      }
      cur = std::move(next);
    }
    for (const auto& [u, q] : cur) out[u] += q * c;
  }
  prune_zeros(out);
  return out;
}

HeckeElement KLContext::c_basis(const Word& y) const {
  Word cy = ctx_.canonical_form(y);
  HeckeElement out;
  for (const Word& x : ctx_.bruhat_interval(cy)) {
    LaurentPoly p = kl_polynomial(x, cy);
    if (!p.is_zero()) out.emplace(x, std::move(p));
  }
  return out;
}

std::map<Word, LaurentPoly> KLContext::c_product_left(Gen s,
                                                      const Word& y) const {
  if (s < 0 || s >= system().rank())
    throw std::invalid_argument("generator index out of range");
  Word cy = ctx_.canonical_form(y);
  std::map<Word, LaurentPoly> out;
  Word sy = ctx_.mult(cy, s, Side::Left);
  if (sy.size() < cy.size()) {
    out.emplace(cy, v_plus_vinv());
    return out;
  }
  out.emplace(sy, LaurentPoly(1));
  for (const Word& x : ctx_.bruhat_interval(cy)) {
    if (x == cy) continue;
    if (ctx_.mult(x, s, Side::Left).size() >= x.size()) continue;
    long long m = mu(x, cy);
    if (m != 0) out.emplace(x, LaurentPoly(m));
  }
  return out;
}

std::map<Word, LaurentPoly> KLContext::c_product_right(const Word& y,
                                                       Gen s) const {
  if (s < 0 || s >= system().rank())
    throw std::invalid_argument("generator index out of range");
  Word cy = ctx_.canonical_form(y);
  std::map<Word, LaurentPoly> out;
  Word ys = ctx_.mult(cy, s, Side::Right);
  if (ys.size() < cy.size()) {
    out.emplace(cy, v_plus_vinv());
    return out;
  }
  out.emplace(ys, LaurentPoly(1));
  for (const Word& x : ctx_.bruhat_interval(cy)) {
    if (x == cy) continue;
    if (ctx_.mult(x, s, Side::Right).size() >= x.size()) continue;
    // the right-handed coefficient mu(x^-1, y^-1) equals mu(x, y)
    long long m = mu(x, cy);
    if (m != 0) out.emplace(x, LaurentPoly(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Whole-group engine.

struct KLContext::FiniteEngine {
  explicit FiniteEngine(FiniteGroup g) : group(std::move(g)) {}

  FiniteGroup group;
  // P[j][i] = classical P_{i,j}; zero when i is not below j
  std::vector<std::vector<LaurentPoly>> P;
  std::vector<long long> mu_table;  // i * n + j, paper-normalization mu(i,j)
  std::vector<int> a;
  CellPartition cells;

  long long mu_at(int i, int j) const {
    return mu_table[static_cast<size_t>(i) * group.size() + j];
  }
};

const KLContext::FiniteEngine& KLContext::engine() const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (engine_) return *engine_;

  auto e = std::make_shared<FiniteEngine>(FiniteGroup::enumerate(ctx_));
  const FiniteGroup& G = e->group;
  int n = G.size();
  int rank = system().rank();

  // classical polynomials bottom-up; tops come in nondecreasing length, so
  // every reference (top u = sj, correction tops z) is already filled
  e->P.assign(n, {});
  e->P[0].assign(n, LaurentPoly());
  e->P[0][0] = LaurentPoly(1);
  for (int j = 1; j < n; ++j) {
    auto& row = e->P[j];
    row.assign(n, LaurentPoly());
    Gen s = G.descents(j, Side::Left).front();
    int u = G.mult(j, s, Side::Left);
    std::vector<std::pair<int, long long>> corrections;
    for (int z = 0; z < n; ++z) {
      if (z == u || !G.leq(z, u) || !G.descent(z, s, Side::Left)) continue;
      int diff = G.length(u) - G.length(z);
      if (diff % 2 == 0) continue;
      long long m = e->P[u][z].coeff((diff - 1) / 2);
      if (m != 0) corrections.emplace_back(z, m);
    }
    for (int i = 0; i < n; ++i) {
      if (!G.leq(i, j)) continue;
      if (i == j) {
        row[i] = LaurentPoly(1);
        continue;
      }
      int si = G.mult(i, s, Side::Left);
      bool c = G.length(si) < G.length(i);
      LaurentPoly out = e->P[u][si].shifted(c ? 0 : 1) +
                        e->P[u][i].shifted(c ? 1 : 0);
      for (const auto& [z, m] : corrections) {
        if (!G.leq(i, z)) continue;
        out -= e->P[z][i].shifted((G.length(j) - G.length(z)) / 2) * m;
      }
      row[i] = std::move(out);
    }
  }
  e->mu_table.assign(static_cast<size_t>(n) * n, 0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (i == j || !G.leq(i, j)) continue;
      int diff = G.length(j) - G.length(i);
      if (diff % 2 == 0) continue;
      e->mu_table[static_cast<size_t>(i) * n + j] =
          e->P[j][i].coeff((diff - 1) / 2);
    }

  // C-basis columns in the paper normalization
  std::vector<std::vector<std::pair<int, LaurentPoly>>> C(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (G.leq(i, j))
        C[j].emplace_back(
            i, e->P[j][i].stretched(2).shifted(G.length(i) - G.length(j)));

  // structure constants: for each y build T_u * C_y for all u along the
  // first-letter recursion, combine into C_x * C_y, then change basis by
  // back-substitution from the top index down (C_w = T_w + shorter terms)
  e->a.assign(n, 0);
  for (int y = 0; y < n; ++y) {
    std::vector<std::map<int, LaurentPoly>> tcol(n);
    for (const auto& [i, p] : C[y]) tcol[0][i] = p;
    for (int t = 1; t < n; ++t) {
      Gen s = G.word(t).front();
      const auto& base = tcol[G.mult(t, s, Side::Left)];
      auto& out = tcol[t];
      for (const auto& [w, q] : base) {
        int sw = G.mult(w, s, Side::Left);
        out[sw] += q;
        if (G.length(sw) < G.length(w)) out[w] += defect() * q;
      }
    }
    for (int x = 0; x < n; ++x) {
      std::map<int, LaurentPoly> f;
      for (const auto& [t, pt] : C[x])
        for (const auto& [w, q] : tcol[t]) f[w] += pt * q;
      while (!f.empty()) {
        auto top = std::prev(f.end());
        int w = top->first;
        LaurentPoly h = std::move(top->second);
        f.erase(top);
        if (h.is_zero()) continue;
        for (const auto& [i, p] : C[w]) {
          if (i == w) continue;
          f[i] -= h * p;
        }
        e->a[w] = std::max(e->a[w], h.max_exponent());
      }
    }
  }

  // preorder arcs x -> y; mutual reachability classes are the cells
  auto build_arcs = [&](Side side) {
    std::vector<std::vector<int>> adj(n);
    for (int y = 0; y < n; ++y) {
      for (Gen s = 0; s < rank; ++s) {
        int x = G.mult(y, s, side);
        if (G.length(x) > G.length(y)) adj[x].push_back(y);
      }
      for (int x = 0; x < n; ++x) {
        if (x == y || !G.leq(x, y) || e->mu_at(x, y) == 0) continue;
        bool contained = true;
        for (Gen s = 0; s < rank && contained; ++s)
          if (G.descent(x, s, side) && !G.descent(y, s, side))
            contained = false;
        if (!contained) adj[x].push_back(y);
      }
    }
    return adj;
  };

  auto make_cells = [&](const std::vector<std::vector<int>>& adj,
                        std::vector<std::vector<Word>>& cells_out,
                        std::set<std::pair<int, int>>& order_out) {
    auto [count, comp] = scc(adj);
    std::vector<std::vector<int>> members(count);
    for (int i = 0; i < n; ++i) members[comp[i]].push_back(i);
    std::vector<int> by_least(count);
    std::iota(by_least.begin(), by_least.end(), 0);
    std::sort(by_least.begin(), by_least.end(), [&](int a, int b) {
      return members[a].front() < members[b].front();
    });
    std::vector<int> new_id(count);
    for (int k = 0; k < count; ++k) new_id[by_least[k]] = k;

    cells_out.assign(count, {});
    for (int k = 0; k < count; ++k)
      for (int i : members[by_least[k]]) cells_out[k].push_back(G.word(i));

    std::vector<std::set<int>> cadj(count);
    for (int x = 0; x < n; ++x)
      for (int y : adj[x])
        if (comp[x] != comp[y]) cadj[new_id[comp[x]]].insert(new_id[comp[y]]);
    for (int c = 0; c < count; ++c) {
      std::vector<char> seen(count, 0);
      std::vector<int> stack(cadj[c].begin(), cadj[c].end());
      for (int w : stack) seen[w] = 1;
      while (!stack.empty()) {
        int w = stack.back();
        stack.pop_back();
        order_out.emplace(c, w);
        for (int z : cadj[w])
          if (!seen[z]) {
            seen[z] = 1;
            stack.push_back(z);
          }
      }
    }
  };

  auto arcs_left = build_arcs(Side::Left);
  auto arcs_right = build_arcs(Side::Right);
  make_cells(arcs_left, e->cells.left, e->cells.left_order);
  make_cells(arcs_right, e->cells.right, e->cells.right_order);
  std::vector<std::vector<int>> arcs_both(n);
  for (int x = 0; x < n; ++x) {
    arcs_both[x] = arcs_left[x];
    arcs_both[x].insert(arcs_both[x].end(), arcs_right[x].begin(),
                        arcs_right[x].end());
  }
  make_cells(arcs_both, e->cells.two_sided, e->cells.two_sided_order);

  engine_ = std::move(e);
  return *engine_;
}

const FiniteGroup& KLContext::group() const { return engine().group; }

int KLContext::a_value_finite(const Word& w) const {
  const FiniteEngine& e = engine();
  int i = e.group.index_of(ctx_.canonical_form(w));
  if (i < 0) throw std::logic_error("canonical word missing from the group");
  return e.a[i];
}

std::string to_string(AValueMethod method) {
  switch (method) {
    case AValueMethod::FiniteBruteForce:
      return "FiniteBruteForce";
    case AValueMethod::ShiHeap:
      return "ShiHeap";
    case AValueMethod::StarReducibleHeap:
      return "StarReducibleHeap";
    case AValueMethod::Unknown:
      break;
  }
  return "Unknown";
}

CertifiedAValue KLContext::a_value_certified(const Word& w) const {
  const auto& sys = system();
  auto order = diagram::finite_order(sys);
  if (order && *order <= ctx_.budgets().max_group_order)
    return {a_value_finite(w), AValueMethod::FiniteBruteForce};
  Word cw = w;
  bool fc = fc_criterion(sys, cw);
  if (!fc && static_cast<int>(w.size()) <= ctx_.budgets().max_word_length) {
    cw = ctx_.canonical_form(w);
    fc = fc_criterion(sys, cw);
  }
  if (fc) {
    if (diagram::all_components_weyl_or_affine(sys))
      return {n_value(sys, cw).n, AValueMethod::ShiHeap};
    if (diagram::is_listed_star_reducible(sys))
      return {n_value(sys, cw).n, AValueMethod::StarReducibleHeap};
  }
  return {};
}

const CellPartition& KLContext::cells() const { return engine().cells; }

bool KLContext::verify_star_mu_transport(const Word& x, const Word& y,
                                         std::pair<Gen, Gen> I,
                                         Side side) const {
  auto [s, t] = I;
  if (s > t) std::swap(s, t);
  if (s < 0 || t >= system().rank() || s == t || system().m(s, t) != 3)
    throw std::invalid_argument(
        "mu transport needs a generator pair with m = 3");
  Word cx = ctx_.canonical_form(x);
  Word cy = ctx_.canonical_form(y);
  for (const Word* w : {&cx, &cy}) {
    size_t len = ctx_.coset_decompose(*w, {s, t}, side).parabolic.size();
    if (len == 0 || len >= 3)
      throw std::invalid_argument("both elements must lie on strings");
  }
  Word ratio = side == Side::Left ? ctx_.product(cx, ctx_.inverse(cy))
                                  : ctx_.product(ctx_.inverse(cx), cy);
  bool same_coset = true;
  for (Gen g : ratio)
    if (g != s && g != t) same_coset = false;
  if (same_coset)
    throw std::invalid_argument(
        "elements lie in the same coset of the dihedral parabolic");
  // for m = 3 exactly one neighbor exists on each string
  auto star = [&](const Word& w) {
    auto down = star_op(ctx_, w, StarMove{{s, t}, side, StarDirection::Lower});
    if (down) return *down;
    return *star_op(ctx_, w, StarMove{{s, t}, side, StarDirection::Upper});
  };
  return mu_sym(cx, cy) == mu_sym(star(cx), star(cy));
}

bool KLContext::verify_star_recurrence(const Word& x, const Word& y,
                                       std::pair<Gen, Gen> I, Side side) const {
  auto [s, t] = I;
  if (s > t) std::swap(s, t);
  if (s < 0 || t >= system().rank() || s == t)
    throw std::invalid_argument("recurrence needs two distinct generators");
  int m = system().m(s, t);
  if (m < 3 || m == diagram::kInfinity)
    throw std::invalid_argument("recurrence needs 3 <= m < infinity");
  Word cx = ctx_.canonical_form(x);
  Word cy = ctx_.canonical_form(y);
  for (const Word* w : {&cx, &cy}) {
    size_t len = ctx_.coset_decompose(*w, {s, t}, side).parabolic.size();
    if (len == 0 || len >= static_cast<size_t>(m))
      throw std::invalid_argument("both elements must lie on strings");
  }
  auto trace = [&](const Word& w) {
    int bits = 0;
    for (Gen g : ctx_.descent_set(w, side)) {
      if (g == s) bits |= 1;
      if (g == t) bits |= 2;
    }
    return bits;
  };
  if (trace(cx) == trace(cy))
    throw std::invalid_argument(
        "descent traces on the pair coincide; the recurrence needs them to "
        "differ");
  auto lower = [&](const Word& w) {
    return star_op(ctx_, w, StarMove{{s, t}, side, StarDirection::Lower});
  };
  auto upper = [&](const Word& w) {
    return star_op(ctx_, w, StarMove{{s, t}, side, StarDirection::Upper});
  };
  auto term = [&](const std::optional<Word>& a, const std::optional<Word>& b) {
    return a && b ? mu_sym(*a, *b) : 0;
  };
  std::optional<Word> ox(cx), oy(cy);
  return term(lower(cx), oy) + term(upper(cx), oy) ==
         term(ox, lower(cy)) + term(ox, upper(cy));
}

}  // namespace coxkl
