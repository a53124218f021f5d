#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "coxkl/budgets.hpp"
#include "coxkl/diagram.hpp"
#include "coxkl/star.hpp"
#include "coxkl/words.hpp"

namespace coxkl {

// How a family's a = 2 claim is certified at finite k: heap width on a
// recognized system (HeapN), a star-reduction path ending at a commuting
// pair (StarReduction), or a mu-coefficient chain along rank-2 strings
// (MuChain).
enum class WitnessMethod { HeapN, StarReduction, MuChain };

// One forbidden-pattern family: a fixed diagram plus a word sequence
// k -> w(k) of a-value-2 elements whose lengths grow with k. Any group
// whose diagram contains the pattern therefore has infinitely many a = 2
// elements; certify() checks the finite-k claims that argument rests on.
//
// Words are assembled as w(k) = prefix, then k blocks; families with two
// blocks alternate them starting with the first.
class WitnessFamily {
 public:
  const std::string& id() const { return id_; }
  const std::map<std::string, int>& params() const { return params_; }
  const diagram::CoxeterSystem& system() const { return sys_; }
  WitnessMethod method() const { return method_; }

  // The family's word at parameter k >= 0 (k < 0 throws
  // std::invalid_argument). w(0) is the bare prefix; the certified claims
  // follow each family's own k range, so a below-range k can yield a word
  // whose certificate fails honestly.
  Word word(int k) const;

 private:
  friend WitnessFamily make_witness_family(const std::string&,
                                           const std::map<std::string, int>&);
  WitnessFamily() = default;

  std::string id_;
  std::map<std::string, int> params_;
  diagram::CoxeterSystem sys_;
  WitnessMethod method_ = WitnessMethod::HeapN;
  Word prefix_;
  std::vector<Word> blocks_;
};

// Families by id, with defaults giving the smallest admissible system:
//   affine_B(n = 1)                      fork a,b -> v0, path to vn, last bond 4
//   affine_C3                            a -4- b -4- c
//   affine_C4                            a -4- b - c -4- d
//   two_branches(n = 1)                  forks a,b and c,d joined by a path
//   affine_E6                            five-path with a two-vertex branch
//   affine_F5                            six-path with the middle bond 4
//   cycle_v                              square cycle plus a pendant vertex
//   cycle_pair                           square cycle, two opposite vertices
//   two_strong_bonds(n = 1, m1 = 5, m2 = 4)  path with heavy bonds at both ends
//   nonextreme_4s(n = 1)                 path with interior bonds 4, one leaf
//   strength_6(m = 6)                    a -m- b - c
//   middle_5                             a - b -5- c - d
//   small_5                              fork a,b -> c -5- d
//   large_5(n = 2)                       fork a,b -> v0, path to vn, last bond 5
// Unknown ids, unknown parameter names, and parameters outside each
// family's side conditions throw std::invalid_argument.
WitnessFamily make_witness_family(
    const std::string& id, const std::map<std::string, int>& params = {});

const std::vector<std::string>& witness_family_ids();

// One verified claim. expected/actual are JSON scalars so integer, boolean,
// and descriptive results all render uniformly.
struct CertificateCheck {
  std::string name;
  nlohmann::json expected;
  nlohmann::json actual;
  bool pass = false;
};

// mu values indexed by string-position pairs [i, j], as produced by
// step_mu_table.
using MuTable = std::map<std::pair<int, int>, long long>;

struct Certificate {
  std::string family;
  std::map<std::string, int> params;
  int k = 0;
  std::vector<CertificateCheck> checks;
  std::optional<ReductionPath> path;  // StarReduction families
  std::optional<MuTable> mu_table;    // MuChain families
  bool passed() const;
};

// Runs the family's verification method on word(k) and reports every check,
// passing or not; a failed claim never throws. All families check reduced,
// fully commutative, and heap width 2. HeapN families additionally record
// the certified a-value when the diagram is recognized; StarReduction
// families search for a lower-star path to a two-letter commuting product;
// MuChain families compute the claimed mu value and replay the supporting
// [i, j] identities. Throws BudgetExceeded when k pushes a word or Bruhat
// interval past the configured budgets.
Certificate certify(const WitnessFamily& fam, int k,
                    const Budgets& budgets = Budgets{});

// The [i, j] = mu(x_i, y_j) grid a MuChain family's argument manipulates:
// x_i extends the x stem by the alternating parabolic word of length i,
// y_j analogously, with stems and letters chosen per family and k parity.
// Entries are computed by direct mu evaluation, reading the pair in whichever
// order is length-increasing. Throws std::invalid_argument for non-MuChain
// families, BudgetExceeded when the grid leaves the interval budget.
MuTable step_mu_table(const WitnessFamily& fam, int k,
                      const Budgets& budgets = Budgets{});

// {family, params, k, pass, checks: [{name, expected, actual, pass}],
//  path?, mu_table?}
nlohmann::json certificate_json(const WitnessFamily& fam,
                                const Certificate& cert);

}  // namespace coxkl
