#include "coxkl/witnesses.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>

#include "coxkl/heaps.hpp"
#include "coxkl/kl.hpp"

namespace coxkl {

namespace {

using diagram::CoxeterSystem;
using diagram::Weight;

std::map<std::string, int> resolve_params(const std::string& id,
                                          std::map<std::string, int> defaults,
                                          const std::map<std::string, int>& given) {
  for (const auto& [key, value] : given) {
    auto it = defaults.find(key);
    if (it == defaults.end())
      throw std::invalid_argument("witness family '" + id + "' has no parameter '" + key + "'");
    it->second = value;
  }
  return defaults;
}

void require(const std::string& id, bool ok, const std::string& condition) {
  if (!ok) throw std::invalid_argument("witness family '" + id + "' needs " + condition);
}

std::vector<std::string> with_v_names(std::vector<std::string> head, int lo, int hi) {
  for (int i = lo; i <= hi; ++i) head.push_back("v" + std::to_string(i));
  return head;
}

// Generator indices base+lo .. base+hi, stepping toward hi from either side.
Word run(int base, int lo, int hi) {
  Word out;
  int step = lo <= hi ? 1 : -1;
  for (int i = lo;; i += step) {
    out.push_back(base + i);
    if (i == hi) break;
  }
  return out;
}

Word join(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Word alternating(Gen first, Gen second, int len) {
  Word out;
  for (int i = 0; i < len; ++i) out.push_back(i % 2 == 0 ? first : second);
  return out;
}

}  // namespace

const std::vector<std::string>& witness_family_ids() {
  static const std::vector<std::string> ids = {
      "cycle_v",     "cycle_pair", "affine_B",         "affine_C3",
      "affine_C4",   "two_branches", "affine_E6",      "affine_F5",
      "two_strong_bonds", "nonextreme_4s", "strength_6", "middle_5",
      "small_5",     "large_5",
  };
  return ids;
}

WitnessFamily make_witness_family(const std::string& id,
                                  const std::map<std::string, int>& params) {
  WitnessFamily fam;
  fam.id_ = id;

  if (id == "affine_B") {
    // a and b fork into v0; path v0..vn, last bond strength 4.
    fam.params_ = resolve_params(id, {{"n", 1}}, params);
    int n = fam.params_.at("n");
    require(id, n >= 1, "n >= 1");
    std::vector<std::tuple<int, int, Weight>> edges = {{0, 2, 3}, {1, 2, 3}};
    for (int i = 0; i < n; ++i) edges.emplace_back(2 + i, 3 + i, i == n - 1 ? 4 : 3);
    fam.sys_ = CoxeterSystem(with_v_names({"a", "b"}, 0, n), edges);
    fam.method_ = WitnessMethod::HeapN;
    // a b, up the path, back down short of the top
    fam.blocks_ = {join(join({0, 1}, run(2, 0, n)), run(2, n - 1, 0))};
  } else if (id == "affine_C3") {
    fam.params_ = resolve_params(id, {}, params);
    fam.sys_ = CoxeterSystem({"a", "b", "c"}, {{0, 1, 4}, {1, 2, 4}});
    fam.method_ = WitnessMethod::HeapN;
    fam.blocks_ = {parse_word(fam.sys_, "a c b")};
  } else if (id == "affine_C4") {
    fam.params_ = resolve_params(id, {}, params);
    fam.sys_ = CoxeterSystem({"a", "b", "c", "d"}, {{0, 1, 4}, {1, 2, 3}, {2, 3, 4}});
    fam.method_ = WitnessMethod::HeapN;
    fam.blocks_ = {parse_word(fam.sys_, "a c b d")};
  } else if (id == "two_branches") {
    // a, b fork into v1; path v1..vn; c, d fork out of vn.
    fam.params_ = resolve_params(id, {{"n", 1}}, params);
    int n = fam.params_.at("n");
    require(id, n >= 1, "n >= 1");
    auto names = with_v_names({"a", "b"}, 1, n);
    names.push_back("c");
    names.push_back("d");
    int c = n + 2, d = n + 3;
    std::vector<std::tuple<int, int, Weight>> edges = {{0, 2, 3}, {1, 2, 3}};
    for (int i = 1; i < n; ++i) edges.emplace_back(1 + i, 2 + i, 3);
    edges.emplace_back(n + 1, c, 3);
    edges.emplace_back(n + 1, d, 3);
    fam.sys_ = CoxeterSystem(names, edges);
    fam.method_ = WitnessMethod::HeapN;
    fam.prefix_ = {0, 1};
    // up the path, c d, back down, a b
    fam.blocks_ = {join(join(join(run(1, 1, n), {c, d}), run(1, n, 1)), {0, 1})};
  } else if (id == "affine_E6") {
    fam.params_ = resolve_params(id, {}, params);
    fam.sys_ = CoxeterSystem({"a", "b", "c", "d", "e", "f", "g"},
                             {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {2, 5, 3}, {5, 6, 3}});
    fam.method_ = WitnessMethod::HeapN;
    fam.blocks_ = {parse_word(fam.sys_, "a c b f c g d f e c d b")};
  } else if (id == "affine_F5") {
    fam.params_ = resolve_params(id, {}, params);
    fam.sys_ = CoxeterSystem({"a", "b", "c", "d", "e", "f"},
                             {{0, 1, 3}, {1, 2, 3}, {2, 3, 4}, {3, 4, 3}, {4, 5, 3}});
    fam.method_ = WitnessMethod::HeapN;
    fam.blocks_ = {parse_word(fam.sys_, "b d a c b d c e d f c e")};
  } else if (id == "cycle_v") {
    // square v1..v4 plus a pendant v attached to v1
    fam.params_ = resolve_params(id, {}, params);
    fam.sys_ = CoxeterSystem({"v", "v1", "v2", "v3", "v4"},
                             {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 1, 3}});
    fam.method_ = WitnessMethod::StarReduction;
    fam.prefix_ = parse_word(fam.sys_, "v v3");
    fam.blocks_ = {parse_word(fam.sys_, "v4 v1 v2 v3")};
  } else if (id == "cycle_pair") {
    fam.params_ = resolve_params(id, {}, params);
    fam.sys_ = CoxeterSystem({"v1", "v2", "v3", "v4"},
                             {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 0, 3}});
    fam.method_ = WitnessMethod::StarReduction;
    fam.prefix_ = parse_word(fam.sys_, "v1 v3");
    fam.blocks_ = {parse_word(fam.sys_, "v4 v1 v2 v3")};
  } else if (id == "two_strong_bonds") {
    // path v0..v(n+1), strength m1 at the front, m2 at the back, 3 between
    fam.params_ = resolve_params(id, {{"n", 1}, {"m1", 5}, {"m2", 4}}, params);
    int n = fam.params_.at("n"), m1 = fam.params_.at("m1"), m2 = fam.params_.at("m2");
    require(id, n >= 1, "n >= 1");
    require(id, m1 >= 5, "m1 >= 5");
    require(id, m2 >= 4, "m2 >= 4");
    std::vector<std::tuple<int, int, Weight>> edges = {{0, 1, m1}};
    for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1, 3);
    edges.emplace_back(n, n + 1, m2);
    fam.sys_ = CoxeterSystem(with_v_names({}, 0, n + 1), edges);
    fam.method_ = WitnessMethod::StarReduction;
    fam.prefix_ = {0};
    // top, down to v0, back up short of the top
    fam.blocks_ = {join(run(0, n + 1, 0), run(0, 1, n))};
  } else if (id == "nonextreme_4s") {
    // a - v0 =4= v1 - ... - vn =4= v(n+1), plain bonds elsewhere
    fam.params_ = resolve_params(id, {{"n", 1}}, params);
    int n = fam.params_.at("n");
    require(id, n >= 1, "n >= 1");
    std::vector<std::tuple<int, int, Weight>> edges = {{0, 1, 3}, {1, 2, 4}};
    for (int i = 1; i < n; ++i) edges.emplace_back(1 + i, 2 + i, 3);
    edges.emplace_back(n + 1, n + 2, 4);
    fam.sys_ = CoxeterSystem(with_v_names({"a"}, 0, n + 1), edges);
    fam.method_ = WitnessMethod::StarReduction;
    fam.prefix_ = {0, 2};  // a v1
    // v0, up to v(n+1), back down to v1
    fam.blocks_ = {join(join({1}, run(1, 1, n + 1)), run(1, n, 1))};
  } else if (id == "strength_6") {
    fam.params_ = resolve_params(id, {{"m", 6}}, params);
    int m = fam.params_.at("m");
    require(id, m >= 6, "m >= 6");
    fam.sys_ = CoxeterSystem({"a", "b", "c"}, {{0, 1, m}, {1, 2, 3}});
    fam.method_ = WitnessMethod::MuChain;
    fam.blocks_ = {parse_word(fam.sys_, "c a b a b")};
  } else if (id == "middle_5") {
    fam.params_ = resolve_params(id, {}, params);
    fam.sys_ = CoxeterSystem({"a", "b", "c", "d"}, {{0, 1, 3}, {1, 2, 5}, {2, 3, 3}});
    fam.method_ = WitnessMethod::MuChain;
    fam.blocks_ = {parse_word(fam.sys_, "a c b c"), parse_word(fam.sys_, "b d c b")};
  } else if (id == "small_5") {
    fam.params_ = resolve_params(id, {}, params);
    fam.sys_ = CoxeterSystem({"a", "b", "c", "d"}, {{0, 2, 3}, {1, 2, 3}, {2, 3, 5}});
    fam.method_ = WitnessMethod::MuChain;
    fam.blocks_ = {parse_word(fam.sys_, "a b c d c"), parse_word(fam.sys_, "b d c d c")};
  } else if (id == "large_5") {
    // a, b fork into v0; path v0..vn, last bond strength 5
    fam.params_ = resolve_params(id, {{"n", 2}}, params);
    int n = fam.params_.at("n");
    require(id, n >= 2, "n >= 2");
    std::vector<std::tuple<int, int, Weight>> edges = {{0, 2, 3}, {1, 2, 3}};
    for (int i = 0; i < n; ++i) edges.emplace_back(2 + i, 3 + i, i == n - 1 ? 5 : 3);
    fam.sys_ = CoxeterSystem(with_v_names({"a", "b"}, 0, n), edges);
    fam.method_ = WitnessMethod::MuChain;
    fam.blocks_ = {join(join({0, 1}, run(2, 0, n)), {2 + n - 1}),
                   join({2 + n - 2, 2 + n, 2 + n - 1, 2 + n}, run(2, n - 1, 0))};
  } else {
    throw std::invalid_argument("unknown witness family '" + id + "'");
  }
  return fam;
}

Word WitnessFamily::word(int k) const {
  if (k < 0) throw std::invalid_argument("witness words need k >= 0");
  Word out = prefix_;
  for (int i = 0; i < k; ++i) {
    const Word& block = blocks_[static_cast<size_t>(i) % blocks_.size()];
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

bool Certificate::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CertificateCheck& c) { return c.pass; });
}

namespace {

// The mu claim for a chain family at a given k, together with the two stems
// whose rank-2 string extensions x_i = x_stem * (alternating letters)^i,
// y_j = y_stem * (...)^j span the supporting coefficient grid.
struct MuSetup {
  Word x_claim, y_claim;
  bool exact = false;  // claim mu == 1, otherwise mu >= 1
  Word x_stem, y_stem;
  Gen x_first = 0, x_second = 0;
  Gen y_first = 0, y_second = 0;
  int grid_max = 4;
};

MuSetup mu_setup(const WitnessFamily& fam, int k) {
  const std::string& id = fam.id();
  MuSetup ms;
  Word wk = fam.word(k);
  Word wk1 = fam.word(k + 1);
  Word wk2 = fam.word(k + 2);
  bool even = k % 2 == 0;
  if (id == "strength_6") {
    // generators a=0, b=1, c=2; strings run inside {a, b}
    ms.exact = true;
    ms.grid_max = 5;
    ms.x_claim = join(wk, {2, 0});
    ms.y_claim = join(wk2, {0});
    ms.x_stem = join(wk, {2});
    ms.y_stem = join(wk1, {2});
    ms.x_first = ms.y_first = 0;
    ms.x_second = ms.y_second = 1;
  } else if (id == "middle_5") {
    // a=0, b=1, c=2, d=3; strings run inside {b, c}
    if (even) {
      ms.x_claim = join(wk, {0, 2});
      ms.y_claim = join(wk2, {2});
      ms.x_stem = join(wk, {0});
      ms.x_first = 2, ms.x_second = 1;
      ms.y_stem = join(wk1, {3});
      ms.y_first = 1, ms.y_second = 2;
    } else {
      ms.x_claim = join(wk, {1, 3});
      ms.y_claim = join(wk2, {1});
      ms.x_stem = join(wk, {3});
      ms.x_first = 1, ms.x_second = 2;
      ms.y_stem = join(wk1, {0});
      ms.y_first = 2, ms.y_second = 1;
    }
  } else if (id == "small_5") {
    // a=0, b=1, c=2, d=3; strings run inside {c, d}
    if (even) {
      ms.x_claim = join(wk, {0, 1});
      ms.y_claim = join(wk2, {0});
      ms.x_stem = join(wk, {0, 1});
      ms.x_first = 2, ms.x_second = 3;
      ms.y_stem = join(wk1, {1});
      ms.y_first = 3, ms.y_second = 2;
    } else {
      ms.x_claim = join(wk, {1, 3});
      ms.y_claim = join(wk2, {3});
      ms.x_stem = join(wk, {1});
      ms.x_first = 3, ms.x_second = 2;
      ms.y_stem = join(wk1, {0, 1});
      ms.y_first = 2, ms.y_second = 3;
    }
  } else if (id == "large_5") {
    // a=0, b=1, v_i=2+i; strings run inside the top pair {v(n-1), vn}
    int n = fam.params().at("n");
    Gen low = 2 + n - 2, mid = 2 + n - 1, top = 2 + n;
    Word fork_stem = join({0, 1}, run(2, 0, n - 2));  // a b v0 .. v(n-2)
    if (even) {
      ms.x_claim = join(wk, {0, 1});
      ms.y_claim = join(wk2, {0});
      ms.x_stem = join(wk, fork_stem);
      ms.x_first = mid, ms.x_second = top;
      ms.y_stem = join(wk1, {low});
      ms.y_first = top, ms.y_second = mid;
    } else {
      ms.x_claim = join(wk, {low, top});
      ms.y_claim = join(wk2, {top});
      ms.x_stem = join(wk, {low});
      ms.x_first = top, ms.x_second = mid;
      ms.y_stem = join(wk1, fork_stem);
      ms.y_first = mid, ms.y_second = top;
    }
  } else {
    throw std::invalid_argument("witness family '" + id + "' carries no mu chain");
  }
  return ms;
}

MuTable grid_mu_table(const KLContext& kl, const MuSetup& ms) {
  std::vector<Word> xs, ys;
  for (int i = 0; i <= ms.grid_max; ++i) {
    xs.push_back(join(ms.x_stem, alternating(ms.x_first, ms.x_second, i)));
    ys.push_back(join(ms.y_stem, alternating(ms.y_first, ms.y_second, i)));
  }
  MuTable table;
  for (int i = 0; i <= ms.grid_max; ++i)
    for (int j = 0; j <= ms.grid_max; ++j) {
      const Word& x = xs[static_cast<size_t>(i)];
      const Word& y = ys[static_cast<size_t>(j)];
      table[{i, j}] = x.size() < y.size() ? kl.mu(x, y) : kl.mu(y, x);
    }
  return table;
}

// Replays the linear relations between grid entries that pin the claimed
// coefficient down to the single known-nonzero corner.
void add_mu_checks(Certificate& cert, const MuTable& table, long long claim, int grid_max) {
  auto at = [&table](int i, int j) { return table.at({i, j}); };
  auto add = [&cert](const std::string& name, long long lhs, long long rhs) {
    cert.checks.push_back({name, rhs, lhs, lhs == rhs});
  };
  if (grid_max == 5) {
    add("[3,1] == 0", at(3, 1), 0);
    add("[2,2] == [1,1]", at(2, 2), at(1, 1));
    add("[1,3] == 0", at(1, 3), 0);
    add("[3,3] == [2,4] + [2,2]", at(3, 3), at(2, 4) + at(2, 2));
    add("[3,3] == [4,2] + [2,2]", at(3, 3), at(4, 2) + at(2, 2));
    add("[2,4] == [4,2]", at(2, 4), at(4, 2));
    add("[1,5] == [2,4]", at(1, 5), at(2, 4));
    add("[4,2] == 1", at(4, 2), 1);
    add("mu == [1,5]", claim, at(1, 5));
  } else {
    add("[1,4] + [3,4] == [2,3]", at(1, 4) + at(3, 4), at(2, 3));
    add("[2,3] + [4,3] == [3,2] + [3,4]", at(2, 3) + at(4, 3), at(3, 2) + at(3, 4));
    add("[3,2] == [4,1] + [4,3]", at(3, 2), at(4, 1) + at(4, 3));
    add("[1,4] == [4,1]", at(1, 4), at(4, 1));
    add("[4,1] == 1", at(4, 1), 1);
    add("mu == [1,4]", claim, at(1, 4));
  }
}

}  // namespace

Certificate certify(const WitnessFamily& fam, int k, const Budgets& budgets) {
  Certificate cert;
  cert.family = fam.id();
  cert.params = fam.params();
  cert.k = k;
  const auto& sys = fam.system();
  Word w = fam.word(k);

  auto add = [&cert](std::string name, nlohmann::json expected, nlohmann::json actual) {
    bool pass = expected == actual;
    cert.checks.push_back({std::move(name), std::move(expected), std::move(actual), pass});
  };

  if (fam.method() != WitnessMethod::MuChain) {
    // The word criterion passing certifies reduced and fully commutative at
    // once; when it fails on a reduced word the element is not FC.
    bool fc = fc_criterion(sys, w);
    bool reduced = fc;
    if (!fc) {
      WordContext words(sys, budgets);
      reduced = words.is_reduced(w);
    }
    add("is_reduced", true, reduced);
    add("is_fully_commutative", true, fc);
    int width = n_value(build_heap(sys, w)).n;
    add("n_value", 2, width);
  }

  if (fam.method() == WitnessMethod::HeapN) {
    KLContext kl(sys, budgets);
    CertifiedAValue cav = kl.a_value_certified(w);
    add("a_value_certified", 2,
        cav.value ? nlohmann::json(*cav.value) : nlohmann::json());
    std::string want = fam.id() == "affine_F5" ? "StarReducibleHeap" : "ShiHeap";
    add("a_value_method", want, to_string(cav.method));
  } else if (fam.method() == WitnessMethod::StarReduction) {
    WordContext words(sys, budgets);
    auto path = star_reduce(words, w);
    add("reduction_path_found", true, path.has_value());
    if (path) {
      const Word& t = path->terminal();
      bool commuting = is_commuting_product(sys, t);
      add("terminal_commuting_product", true, commuting);
      // a-value of a product of pairwise commuting generators is its size
      add("a_of_terminal", 2,
          commuting ? nlohmann::json(static_cast<int>(t.size())) : nlohmann::json());
      cert.path = std::move(*path);
    }
  } else {
    MuSetup ms = mu_setup(fam, k);
    KLContext kl(sys, budgets);
    long long claim = kl.mu(ms.x_claim, ms.y_claim);
    std::string name =
        "mu(" + word_text(sys, ms.x_claim) + ", " + word_text(sys, ms.y_claim) + ")";
    if (ms.exact)
      cert.checks.push_back({name, 1, claim, claim == 1});
    else
      cert.checks.push_back({name, ">= 1", claim, claim >= 1});
    MuTable table = grid_mu_table(kl, ms);
    add_mu_checks(cert, table, claim, ms.grid_max);
    cert.mu_table = std::move(table);
  }
  return cert;
}

MuTable step_mu_table(const WitnessFamily& fam, int k, const Budgets& budgets) {
  if (fam.method() != WitnessMethod::MuChain)
    throw std::invalid_argument("witness family '" + fam.id() + "' carries no mu chain");
  MuSetup ms = mu_setup(fam, k);
  KLContext kl(fam.system(), budgets);
  return grid_mu_table(kl, ms);
}

nlohmann::json certificate_json(const WitnessFamily& fam, const Certificate& cert) {
  nlohmann::json doc;
  doc["family"] = cert.family;
  doc["params"] = cert.params;
  doc["k"] = cert.k;
  doc["pass"] = cert.passed();
  auto checks = nlohmann::json::array();
  for (const auto& c : cert.checks)
    checks.push_back(
        {{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
  doc["checks"] = std::move(checks);
  if (cert.path) doc["path"] = reduction_path_json(fam.system(), *cert.path);
  if (cert.mu_table) {
    auto rows = nlohmann::json::array();
    for (const auto& [ij, mu] : *cert.mu_table)
      rows.push_back({{"i", ij.first}, {"j", ij.second}, {"mu", mu}});
    doc["mu_table"] = std::move(rows);
  }
  return doc;
}

}  // namespace coxkl
