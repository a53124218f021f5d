#include "coxkl/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coxkl/diagram.hpp"
#include "coxkl/group_enum.hpp"
#include "coxkl/heaps.hpp"
#include "coxkl/kl.hpp"
#include "coxkl/star.hpp"
#include "coxkl/witnesses.hpp"
#include "coxkl/words.hpp"

namespace coxkl {

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const SuiteCheck& c) { return c.pass; });
}

int SuiteResult::failed_count() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(),
                                        [](const SuiteCheck& c) { return !c.pass; }));
}

namespace {

using diagram::CoxeterSystem;
using diagram::Weight;
using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void add(SuiteResult& r, std::string name, bool pass, std::string detail = "") {
  r.checks.push_back({std::move(name), pass, pass ? std::string{} : std::move(detail)});
}

void add_runtime(SuiteResult& r, const std::string& what, double seconds, double limit) {
  add(r, what + " within " + std::to_string(static_cast<int>(limit)) + " s",
      seconds < limit, "took " + std::to_string(seconds) + " s");
}

// Path v0 - v1 - ... with the given bond list.
CoxeterSystem path_sys(const std::vector<Weight>& bonds) {
  std::vector<std::string> names;
  for (size_t i = 0; i <= bonds.size(); ++i) names.push_back("v" + std::to_string(i));
  std::vector<std::tuple<int, int, Weight>> edges;
  for (size_t i = 0; i < bonds.size(); ++i)
    edges.emplace_back(static_cast<int>(i), static_cast<int>(i) + 1, bonds[i]);
  return CoxeterSystem(names, edges);
}

CoxeterSystem a2() { return CoxeterSystem({"a", "b"}, {{0, 1, 3}}); }
CoxeterSystem b2() { return CoxeterSystem({"a", "b"}, {{0, 1, 4}}); }
CoxeterSystem a3() { return CoxeterSystem({"a", "b", "c"}, {{0, 1, 3}, {1, 2, 3}}); }
CoxeterSystem b3() { return CoxeterSystem({"a", "b", "c"}, {{0, 1, 4}, {1, 2, 3}}); }

bool gen_subset(const std::vector<Gen>& outer, const std::vector<Gen>& inner) {
  return std::includes(inner.begin(), inner.end(), outer.begin(), outer.end());
}

// ---- exact a-values on the four smallest habitats --------------------------

void suite_a_ground_truths(SuiteResult& r, const Budgets& budgets) {
  struct Case {
    const char* label;
    CoxeterSystem sys;
    int w0_len;
    double limit;
  };
  const Case cases[] = {
      {"A2", a2(), 3, 60.0},
      {"B2", b2(), 4, 60.0},
      {"A3", a3(), 6, 60.0},
      {"B3", b3(), 9, 600.0},
  };
  for (const Case& c : cases) {
    KLContext kl(c.sys, budgets);
    Clock::time_point t0 = Clock::now();
    int a_e = kl.a_value_finite({});  // forces the full h-table
    double dt = since(t0);
    std::string label = c.label;
    add(r, label + ": a(e) = 0", a_e == 0, "got " + std::to_string(a_e));

    bool gens_ok = true;
    std::string detail;
    for (int s = 0; s < c.sys.rank(); ++s) {
      int a_s = kl.a_value_finite({s});
      if (a_s != 1 && gens_ok) {
        gens_ok = false;
        detail = "a(" + c.sys.name(s) + ") = " + std::to_string(a_s);
      }
    }
    add(r, label + ": a(s) = 1 for every generator", gens_ok, detail);

    const FiniteGroup& G = kl.group();
    const Word& w0 = G.word(G.size() - 1);
    int a_w0 = kl.a_value_finite(w0);
    add(r, label + ": a(w0) = l(w0) = " + std::to_string(c.w0_len),
        static_cast<int>(w0.size()) == c.w0_len && a_w0 == c.w0_len,
        "l(w0) = " + std::to_string(w0.size()) + ", a(w0) = " + std::to_string(a_w0));
    add_runtime(r, label + ": full h-table", dt, c.limit);

    if (label == "A3") {
      int a_pair = kl.a_value_finite(parse_word(c.sys, "a c"));
      add(r, "A3: a = 2 on the commuting generator pair", a_pair == 2,
          "a(ac) = " + std::to_string(a_pair));
    }
  }
}

// ---- a = 1 elements are the unique-reduced-word elements -------------------

void suite_subregular_cell(SuiteResult& r, const Budgets& budgets) {
  const std::pair<const char*, CoxeterSystem> cases[] = {{"A3", a3()}, {"B3", b3()}};
  for (const auto& [label, sys] : cases) {
    KLContext kl(sys, budgets);
    const FiniteGroup& G = kl.group();
    // reduced-word counts by descent recursion; indices ascend with length
    std::vector<long long> nwords(static_cast<size_t>(G.size()), 0);
    nwords[0] = 1;
    for (int i = 1; i < G.size(); ++i)
      for (Gen s : G.descents(i, Side::Right))
        nwords[static_cast<size_t>(i)] +=
            nwords[static_cast<size_t>(G.mult(i, s, Side::Right))];

    bool ok = true;
    std::string detail;
    int members = 0;
    for (int i = 0; i < G.size(); ++i) {
      bool unique = i != 0 && nwords[static_cast<size_t>(i)] == 1;
      bool a_one = kl.a_value_finite(G.word(i)) == 1;
      if (a_one) ++members;
      if (unique != a_one && ok) {
        ok = false;
        detail = "mismatch at " + word_text(sys, G.word(i));
      }
    }
    add(r, std::string(label) + ": a = 1 exactly on the non-identity unique-reduced-word elements",
        ok && members > 0, detail);
  }
}

// ---- a equals heap width on fully commutative elements ---------------------

void suite_shi_a_equals_n(SuiteResult& r, const Budgets& budgets) {
  const std::tuple<const char*, CoxeterSystem, int> cases[] = {
      {"A3", a3(), 6}, {"B3", b3(), 9}};
  for (const auto& [label, sys, w0_len] : cases) {
    KLContext kl(sys, budgets);
    std::vector<Word> fc = enumerate_fc(sys, w0_len, budgets);
    if (std::string(label) == "A3")
      add(r, "A3: exactly 14 fully commutative elements", fc.size() == 14,
          "got " + std::to_string(fc.size()));
    bool ok = true;
    std::string detail;
    for (const Word& w : fc) {
      int a = kl.a_value_finite(w);
      int n = n_value(sys, w).n;
      if (a != n && ok) {
        ok = false;
        detail = word_text(sys, w) + ": a = " + std::to_string(a) +
                 ", n = " + std::to_string(n);
      }
    }
    add(r, std::string(label) + ": a = n on every fully commutative element", ok, detail);
  }
}

// ---- exhaustive mu identities over A3 ---------------------------------------

void suite_mu_machinery(SuiteResult& r, const Budgets& budgets) {
  Clock::time_point t0 = Clock::now();
  CoxeterSystem sys = a3();
  KLContext kl(sys, budgets);
  const FiniteGroup& G = kl.group();
  const std::pair<Gen, Gen> strings[] = {{0, 1}, {1, 2}};

  {
    long applicable = 0;
    bool ok = true;
    std::string detail;
    for (auto I : strings)
      for (Side side : {Side::Left, Side::Right})
        for (int i = 0; i < G.size(); ++i)
          for (int j = 0; j < G.size(); ++j) {
            bool holds;
            try {
              holds = kl.verify_star_mu_transport(G.word(i), G.word(j), I, side);
            } catch (const std::invalid_argument&) {
              continue;
            }
            ++applicable;
            if (!holds && ok) {
              ok = false;
              detail = word_text(sys, G.word(i)) + " / " + word_text(sys, G.word(j));
            }
          }
    add(r, "mu is invariant under star transport on every applicable pair",
        ok && applicable > 0, detail);
  }

  {
    long applicable = 0;
    bool ok = true;
    std::string detail;
    for (auto I : strings)
      for (Side side : {Side::Left, Side::Right})
        for (int i = 0; i < G.size(); ++i)
          for (int j = 0; j < G.size(); ++j) {
            bool holds;
            try {
              holds = kl.verify_star_recurrence(G.word(i), G.word(j), I, side);
            } catch (const std::invalid_argument&) {
              continue;
            }
            ++applicable;
            if (!holds && ok) {
              ok = false;
              detail = word_text(sys, G.word(i)) + " / " + word_text(sys, G.word(j));
            }
          }
    add(r, "string-neighbor mu sums balance on every applicable pair",
        ok && applicable > 0, detail);
  }

  {
    bool ok = true;
    std::string detail;
    for (int i = 0; i < G.size() && ok; ++i)
      for (int j = 0; j < G.size(); ++j)
        if (kl.mu(G.word(i), G.word(j)) !=
            kl.mu(G.word(G.inverse(i)), G.word(G.inverse(j)))) {
          ok = false;
          detail = word_text(sys, G.word(i)) + " / " + word_text(sys, G.word(j));
          break;
        }
    add(r, "mu is invariant under inversion", ok, detail);
  }

  {
    bool ok = true;
    std::string detail;
    for (int j = 0; j < G.size() && ok; ++j)
      for (int i = 0; i < G.size(); ++i) {
        if (i == j || !G.leq(i, j)) continue;
        LaurentPoly p = kl.kl_polynomial(G.word(i), G.word(j));
        int lead = G.length(i) - G.length(j);
        if (p.min_exponent() != lead || p.coeff(lead) != 1 || p.max_exponent() > -1) {
          ok = false;
          detail = word_text(sys, G.word(i)) + " <= " + word_text(sys, G.word(j));
          break;
        }
      }
    add(r, "p_{x,y} is monic at degree l(x) - l(y) and stays below degree 0", ok, detail);
  }

  {
    long extremal = 0;
    bool ok = true;
    std::string detail;
    for (int i = 0; i < G.size(); ++i)
      for (int j = 0; j < G.size(); ++j) {
        if (G.length(i) >= G.length(j) - 1) continue;
        bool left_out = !gen_subset(G.descents(j, Side::Left), G.descents(i, Side::Left));
        bool right_out =
            !gen_subset(G.descents(j, Side::Right), G.descents(i, Side::Right));
        if (!left_out && !right_out) continue;
        ++extremal;
        if (kl.mu(G.word(i), G.word(j)) != 0 && ok) {
          ok = false;
          detail = word_text(sys, G.word(i)) + " / " + word_text(sys, G.word(j));
        }
      }
    add(r, "mu vanishes on descent-extremal pairs", ok && extremal > 0, detail);
  }

  add_runtime(r, "exhaustive A3 sweep", since(t0), 300.0);
}

// ---- cell partitions of the smallest groups --------------------------------

void suite_cell_partitions(SuiteResult& r, const Budgets& budgets) {
  CoxeterSystem sys = a2();
  KLContext kl(sys, budgets);
  const CellPartition& cp = kl.cells();
  auto w = [&sys](const char* text) { return parse_word(sys, text); };

  std::vector<std::vector<Word>> left{
      {Word{}}, {w("a"), w("b a")}, {w("b"), w("a b")}, {w("a b a")}};
  add(r, "A2: left cells are {e}, {a, ba}, {b, ab}, {aba}", cp.left == left);

  std::vector<std::vector<Word>> both{
      {Word{}}, {w("a"), w("b"), w("a b"), w("b a")}, {w("a b a")}};
  add(r, "A2: two-sided cells are {e}, {a, b, ab, ba}, {aba}", cp.two_sided == both);

  KLContext kl3(a3(), budgets);
  const CellPartition& cp3 = kl3.cells();
  bool ok = true;
  std::string detail;
  for (const auto& cell : cp3.two_sided) {
    int a0 = kl3.a_value_finite(cell.front());
    for (const Word& x : cell)
      if (kl3.a_value_finite(x) != a0 && ok) {
        ok = false;
        detail = "cell of " + word_text(kl3.system(), cell.front());
      }
  }
  add(r, "A3: a is constant on every two-sided cell", ok, detail);
}

// ---- witness families at desk scale -----------------------------------------

void suite_witness_sweep(SuiteResult& r, const Budgets& budgets) {
  Clock::time_point t0 = Clock::now();
  for (const std::string& id : witness_family_ids()) {
    WitnessFamily fam = make_witness_family(id);
    const CoxeterSystem& sys = fam.system();
    bool ok = true;
    std::string detail;
    for (int k = 1; k <= 5 && ok; ++k) {
      Word w = fam.word(k);
      if (!fc_criterion(sys, w)) {
        WordContext words(sys, budgets);
        ok = false;
        detail = "k = " + std::to_string(k) +
                 (words.is_reduced(w) ? ": not fully commutative" : ": not reduced");
      } else if (n_value(sys, w).n != 2) {
        ok = false;
        detail = "k = " + std::to_string(k) + ": width " +
                 std::to_string(n_value(sys, w).n);
      }
    }
    add(r, id + ": words k = 1..5 reduced, fully commutative, width 2", ok, detail);
  }

  for (const char* id : {"affine_B", "affine_C3", "affine_C4", "two_branches", "affine_E6"}) {
    WitnessFamily fam = make_witness_family(id);
    KLContext kl(fam.system(), budgets);
    bool ok = true;
    std::string detail;
    for (int k = 1; k <= 5 && ok; ++k) {
      CertifiedAValue cav = kl.a_value_certified(fam.word(k));
      if (!cav.value || *cav.value != 2 || cav.method != AValueMethod::ShiHeap) {
        ok = false;
        detail = "k = " + std::to_string(k) + ": got " +
                 (cav.value ? std::to_string(*cav.value) : std::string("none")) +
                 " via " + to_string(cav.method);
      }
    }
    add(r, std::string(id) + ": certified a = 2 via ShiHeap for k = 1..5", ok, detail);
  }

  add_runtime(r, "all families", since(t0), 60.0);
}

// ---- star-reduction certificates --------------------------------------------

void suite_star_certificates(SuiteResult& r, const Budgets& budgets) {
  struct Cfg {
    std::string label;
    WitnessFamily fam;
  };
  const Cfg cfgs[] = {
      {"two_strong_bonds (n=1)", make_witness_family("two_strong_bonds")},
      {"two_strong_bonds (n=2)", make_witness_family("two_strong_bonds", {{"n", 2}})},
      {"nonextreme_4s (n=1)", make_witness_family("nonextreme_4s")},
  };
  for (const Cfg& cfg : cfgs) {
    bool ok = true;
    std::string detail;
    for (int k = 1; k <= 3 && ok; ++k) {
      Certificate cert = certify(cfg.fam, k, budgets);
      if (!cert.passed() || !cert.path.has_value()) {
        ok = false;
        detail = "k = " + std::to_string(k);
        for (const auto& c : cert.checks)
          if (!c.pass) detail += ": " + c.name + " failed";
      }
    }
    add(r, cfg.label + ": reduction paths to commuting pairs for k = 1..3", ok, detail);
  }
}

// ---- mu-chain certificates ---------------------------------------------------

void suite_mu_certificates(SuiteResult& r, const Budgets& budgets) {
  {
    WitnessFamily fam = make_witness_family("strength_6");
    Clock::time_point t0 = Clock::now();
    Certificate cert = certify(fam, 0, budgets);
    double dt = since(t0);
    add(r, "strength_6 (k=0): certificate passes with mu = 1 exactly", cert.passed());
    const MuTable& t = *cert.mu_table;
    add(r, "strength_6 (k=0): [3,1] = 0, [1,3] = 0, [2,2] = [1,1], [2,4] = [4,2] = 1",
        t.at({3, 1}) == 0 && t.at({1, 3}) == 0 && t.at({2, 2}) == t.at({1, 1}) &&
            t.at({2, 4}) == 1 && t.at({4, 2}) == 1);
    add_runtime(r, "strength_6 certificate", dt, 120.0);
  }

  for (const char* id : {"middle_5", "small_5", "large_5"}) {
    WitnessFamily fam = make_witness_family(id);
    Clock::time_point t0 = Clock::now();
    Certificate cert = certify(fam, 0, budgets);
    double dt = since(t0);
    const MuTable& t = *cert.mu_table;
    add(r, std::string(id) + " (k=0): certificate passes with [1,4] = [4,1] = 1",
        cert.passed() && t.at({1, 4}) == 1 && t.at({4, 1}) == 1);
    add_runtime(r, std::string(id) + " certificate", dt, 120.0);
  }
}

// ---- classification golden table --------------------------------------------

void suite_classification_table(SuiteResult& r, const Budgets&) {
  struct Row {
    std::string label;
    CoxeterSystem sys;
    bool finite;
  };
  std::vector<Row> rows;
  auto row = [&rows](std::string label, CoxeterSystem sys, bool finite) {
    rows.push_back({std::move(label), std::move(sys), finite});
  };

  row("A1", CoxeterSystem({"a"}, {}), true);
  row("A2", a2(), true);
  row("A3", a3(), true);
  row("A5", path_sys({3, 3, 3, 3}), true);
  row("B2", b2(), true);
  row("B3", b3(), true);
  row("B4", path_sys({4, 3, 3}), true);
  row("C~5", path_sys({4, 3, 3, 4}), true);
  row("C~6", path_sys({4, 3, 3, 3, 4}), true);
  row("4-4 path", path_sys({4, 4}), false);
  row("4-3-4 path", path_sys({4, 3, 4}), false);
  row("E(1,1) star", CoxeterSystem({"a", "b", "c", "z"},
                                   {{0, 3, 3}, {1, 3, 3}, {2, 3, 3}}),
      true);
  row("E(1,3)",
      CoxeterSystem({"a", "b", "z", "c", "d", "e"},
                    {{0, 2, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}}),
      true);
  row("E(2,4)",
      CoxeterSystem({"a", "p", "q", "z", "c", "d", "e", "f"},
                    {{0, 3, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3},
                     {5, 6, 3}, {6, 7, 3}}),
      true);
  row("E(3,3)",
      CoxeterSystem({"a", "b", "c", "d", "e", "f", "g", "h"},
                    {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3},
                     {5, 6, 3}, {3, 7, 3}}),
      true);
  row("E(3,4)",
      CoxeterSystem({"a", "b", "c", "z", "d", "e", "f", "g", "h"},
                    {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3},
                     {5, 6, 3}, {6, 7, 3}, {3, 8, 3}}),
      true);
  row("F4", path_sys({3, 4, 3}), true);
  row("F5", path_sys({3, 4, 3, 3}), true);
  row("H3", path_sys({5, 3}), true);
  row("H4", path_sys({5, 3, 3}), true);
  row("I2(5)", path_sys({5}), true);
  row("I2(7)", path_sys({7}), true);
  row("I2(inf)", CoxeterSystem({"a", "b"}, {{0, 1, diagram::kInfinity}}), true);
  row("K3", CoxeterSystem({"a", "b", "c"}, {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}}), true);
  row("K3 mixed weights",
      CoxeterSystem({"a", "b", "c"}, {{0, 1, 3}, {1, 2, 4}, {0, 2, 5}}), true);
  row("K4", CoxeterSystem({"a", "b", "c", "d"},
                          {{0, 1, 3}, {0, 2, 3}, {0, 3, 3}, {1, 2, 3}, {1, 3, 3}, {2, 3, 3}}),
      true);
  row("K4 mixed weights",
      CoxeterSystem({"a", "b", "c", "d"},
                    {{0, 1, 4}, {0, 2, 3}, {0, 3, 6}, {1, 2, 3}, {1, 3, 3}, {2, 3, 5}}),
      true);
  row("square cycle",
      CoxeterSystem({"a", "b", "c", "d"}, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {0, 3, 3}}),
      false);
  row("pentagon cycle",
      CoxeterSystem({"a", "b", "c", "d", "e"},
                    {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {0, 4, 3}}),
      false);
  row("degree-4 star",
      CoxeterSystem({"a", "b", "c", "d", "z"},
                    {{0, 4, 3}, {1, 4, 3}, {2, 4, 3}, {3, 4, 3}}),
      false);
  row("E~6",
      CoxeterSystem({"a", "b", "c", "d", "e", "f", "g"},
                    {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {2, 5, 3}, {5, 6, 3}}),
      false);
  row("3-3-4-3-3 path", path_sys({3, 3, 4, 3, 3}), false);
  row("6-3 path", path_sys({6, 3}), false);
  row("3-5-3 path", path_sys({3, 5, 3}), false);
  row("5-bond star",
      CoxeterSystem({"a", "b", "c", "d"}, {{0, 2, 3}, {1, 2, 3}, {2, 3, 5}}), false);
  row("5-3-4 path", path_sys({5, 3, 4}), false);
  row("3-4-4 path", path_sys({3, 4, 4}), false);
  row("A2 + A2",
      CoxeterSystem({"a", "b", "c", "d"}, {{0, 1, 3}, {2, 3, 3}}), true);
  row("A2 + C~5",
      CoxeterSystem({"a", "b", "p", "q", "s", "t", "u"},
                    {{0, 1, 3}, {2, 3, 4}, {3, 4, 3}, {4, 5, 3}, {5, 6, 4}}),
      false);
  row("B3 + B4",
      CoxeterSystem({"a", "b", "c", "p", "q", "r", "s"},
                    {{0, 1, 4}, {1, 2, 3}, {3, 4, 4}, {4, 5, 3}, {5, 6, 3}}),
      true);

  add(r, "table covers at least 30 diagrams", rows.size() >= 30,
      "got " + std::to_string(rows.size()));
  for (const Row& x : rows) {
    bool got = diagram::classify_a2_finite(x.sys).verdict;
    add(r, x.label + (x.finite ? ": a(2)-finite" : ": a(2)-infinite"), got == x.finite,
        std::string("classified ") + (got ? "finite" : "infinite"));
  }
}

// ---- interval structure over the affine E7 habitat ---------------------------

void suite_affine_e7_intervals(SuiteResult& r, const Budgets& budgets) {
  Clock::time_point t0 = Clock::now();
  CoxeterSystem sys({"a", "b", "c", "d", "e", "f", "g", "h"},
                    {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3},
                     {5, 6, 3}, {3, 7, 3}});
  const Gen gc = 2, gd = 3, ge = 4, gh = 7;

  std::vector<Word> population;
  for (const Word& w : enumerate_fc(sys, 16, budgets))
    if (n_value(sys, w).n <= 2) population.push_back(w);
  add(r, "population: FC elements of length <= 16 and width <= 2",
      !population.empty(), "empty");

  long sandwich_bad = 0, d_bad = 0, h_bad = 0, count_bad = 0;
  std::string sandwich_w, d_w, h_w, count_w;
  for (const Word& w : population) {
    Heap heap = build_heap(sys, w);

    if (std::count(w.begin(), w.end(), gh) > 2 && count_bad++ == 0) count_w = word_text(sys, w);

    for (const OpenInterval& iv : open_intervals(heap, gh)) {
      int ds = 0;
      for (int p = 0; p < heap.size; ++p)
        if ((iv.between >> p) & 1u && w[static_cast<size_t>(p)] == gd) ++ds;
      if (ds != 2 && h_bad++ == 0) h_w = word_text(sys, w);
    }

    for (const OpenInterval& iv : open_intervals(heap, gd)) {
      std::vector<Gen> fork;
      for (int p = 0; p < heap.size; ++p) {
        if (!((iv.between >> p) & 1u)) continue;
        Gen g = w[static_cast<size_t>(p)];
        if (g == gc || g == ge || g == gh) fork.push_back(g);
      }
      if ((fork.size() != 2 || fork[0] == fork[1]) && d_bad++ == 0) d_w = word_text(sys, w);
    }

    // on path-shaped supports, every open interval sandwiches exactly two
    // neighbors of its label, with distinct labels
    std::set<Gen> support(w.begin(), w.end());
    int fork_degree = static_cast<int>(support.count(gc) + support.count(ge) +
                                       support.count(gh));
    if (!support.count(gd) || fork_degree <= 2) {
      for (Gen s : support)
        for (const OpenInterval& iv : open_intervals(heap, s)) {
          std::vector<Gen> near;
          for (int p = 0; p < heap.size; ++p)
            if ((iv.between >> p) & 1u && sys.adjacent(s, w[static_cast<size_t>(p)]))
              near.push_back(w[static_cast<size_t>(p)]);
          if ((near.size() != 2 || near[0] == near[1]) && sandwich_bad++ == 0)
            sandwich_w = word_text(sys, w);
        }
    }
  }

  add(r, "path supports: open intervals sandwich two distinct neighbors",
      sandwich_bad == 0, std::to_string(sandwich_bad) + " violations, first at " + sandwich_w);
  add(r, "open d-intervals carry exactly two of c, e, h with distinct labels",
      d_bad == 0, std::to_string(d_bad) + " violations, first at " + d_w);
  add(r, "open h-intervals carry exactly two occurrences of d", h_bad == 0,
      std::to_string(h_bad) + " violations, first at " + h_w);
  add(r, "no element carries three or more occurrences of h", count_bad == 0,
      std::to_string(count_bad) + " violations, first at " + count_w);
  add_runtime(r, "bounded structural sweep", since(t0), 600.0);
}

// ---- complete graphs force chain heaps ---------------------------------------

void suite_complete_graph_chains(SuiteResult& r, const Budgets& budgets) {
  const std::pair<const char*, CoxeterSystem> cases[] = {
      {"K3", CoxeterSystem({"a", "b", "c"}, {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}})},
      {"K4", CoxeterSystem({"a", "b", "c", "d"},
                           {{0, 1, 3}, {0, 2, 3}, {0, 3, 3}, {1, 2, 3}, {1, 3, 3}, {2, 3, 3}})},
  };
  for (const auto& [label, sys] : cases) {
    std::vector<Word> fc = enumerate_fc(sys, 12, budgets);
    bool ok = fc.size() > 1;
    std::string detail = "empty enumeration";
    for (const Word& w : fc) {
      if (w.empty()) continue;
      if (n_value(sys, w).n != 1) {
        ok = false;
        detail = word_text(sys, w) + " has width " + std::to_string(n_value(sys, w).n);
        break;
      }
    }
    add(r, std::string(label) + ": every FC element through length 12 has a chain heap",
        ok, detail);
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "a_ground_truths",      "subregular_cell",  "shi_a_equals_n",
      "mu_machinery",         "cell_partitions",  "witness_sweep",
      "star_certificates",    "mu_certificates",  "classification_table",
      "affine_E7_intervals",  "complete_graph_chains",
  };
  return names;
}

SuiteResult run_suite(const std::string& name, const Budgets& budgets) {
  SuiteResult r;
  r.suite = name;
  Clock::time_point t0 = Clock::now();
  if (name == "a_ground_truths") {
    suite_a_ground_truths(r, budgets);
  } else if (name == "subregular_cell") {
    suite_subregular_cell(r, budgets);
  } else if (name == "shi_a_equals_n") {
    suite_shi_a_equals_n(r, budgets);
  } else if (name == "mu_machinery") {
    suite_mu_machinery(r, budgets);
  } else if (name == "cell_partitions") {
    suite_cell_partitions(r, budgets);
  } else if (name == "witness_sweep") {
    suite_witness_sweep(r, budgets);
  } else if (name == "star_certificates") {
    suite_star_certificates(r, budgets);
  } else if (name == "mu_certificates") {
    suite_mu_certificates(r, budgets);
  } else if (name == "classification_table") {
    suite_classification_table(r, budgets);
  } else if (name == "affine_E7_intervals") {
    suite_affine_e7_intervals(r, budgets);
  } else if (name == "complete_graph_chains") {
    suite_complete_graph_chains(r, budgets);
  } else {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }
  r.seconds = since(t0);
  return r;
}

nlohmann::json suite_result_json(const SuiteResult& r) {
  nlohmann::json doc;
  doc["suite"] = r.suite;
  doc["pass"] = r.passed();
  doc["seconds"] = r.seconds;
  auto checks = nlohmann::json::array();
  for (const SuiteCheck& c : r.checks) {
    nlohmann::json entry = {{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) entry["detail"] = c.detail;
    checks.push_back(std::move(entry));
  }
  doc["checks"] = std::move(checks);
  return doc;
}

}  // namespace coxkl
