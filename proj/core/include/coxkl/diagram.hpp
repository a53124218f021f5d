#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <json.hpp>

namespace coxkl::diagram {

// Bond weight m(s,t) of a generator pair. By convention m(s,s) = 1 and
// m(s,t) = 2 when the pair shares no edge; kInfinity encodes m = infinity.
// Storing infinity as INT_MAX keeps comparisons like m >= 5 natural.
using Weight = int;
inline constexpr Weight kInfinity = std::numeric_limits<int>::max();

// A Coxeter system presented by its diagram: an ordered generator list plus
// symmetric weights on unordered pairs. Generator order is declaration order
// and is the order used for canonical (lex-least) words downstream.
class CoxeterSystem {
 public:
  CoxeterSystem() = default;

  // Validates and builds. Edge list entries are (i, j, m) with i, j generator
  // indices and m >= 3 (or kInfinity). Throws std::invalid_argument on
  // self-edges, duplicate pairs, or weights < 3.
  CoxeterSystem(std::vector<std::string> generators,
                const std::vector<std::tuple<int, int, Weight>>& edges);

  int rank() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& generator_names() const { return names_; }
  const std::string& name(int s) const { return names_[s]; }

  // Index of a named generator, -1 if unknown.
  int index_of(std::string_view name) const;

  Weight m(int s, int t) const {
    return s == t ? 1 : weights_[s * rank() + t];
  }
  bool adjacent(int s, int t) const { return s != t && m(s, t) >= 3; }

  std::vector<int> neighbors(int s) const;
  int degree(int s) const;
  std::vector<std::tuple<int, int, Weight>> edges() const;

 private:
  std::vector<std::string> names_;
  std::vector<Weight> weights_;  // dense rank x rank, 2 off-edges
};

// JSON form: {"generators": ["a", ...], "edges": [["a","b",3], ["b","c","inf"]]}
// Throws std::invalid_argument with a descriptive message on malformed input,
// duplicate generators, unknown edge endpoints, self-edges, weights < 3, or a
// pair listed twice (in either order).
CoxeterSystem parse_diagram(const std::string& json_text);
CoxeterSystem parse_diagram(const nlohmann::json& doc);
nlohmann::json diagram_json(const CoxeterSystem& sys);

// Vertex sets of connected components (indices ascending, components ordered
// by smallest member). An edge here means m >= 3; infinity counts.
std::vector<std::vector<int>> connected_components(const CoxeterSystem& sys);

// True when the diagram contains a simple cycle of length >= 3. Weights are
// irrelevant beyond edge/non-edge.
bool has_cycle(const CoxeterSystem& sys);

// True when every pair of distinct generators is joined (any weights >= 3).
bool is_complete(const CoxeterSystem& sys);

// Subsystem induced on the given vertices (kept in the given order).
CoxeterSystem induced_subsystem(const CoxeterSystem& sys,
                                const std::vector<int>& vertices);

// ---------------------------------------------------------------------------
// Shape recognition for connected diagrams.

enum class ShapeKind {
  A,         // path, all bonds 3 (n >= 1)
  B,         // path, one bond 4 at an extreme position (n >= 2)
  CTilde,    // path, bonds 4 at both extremes, 3 between (n >= 5)
  E,         // tree of 3-bonds, one trivalent vertex, branch sizes 1, q, r
  F,         // path, one bond 4 between positions 2 and 3 (n >= 4)
  H,         // path, one bond 5 at an extreme position (n >= 3)
  I2,        // two vertices, bond m with 5 <= m <= infinity
  Complete,  // every pair joined, any weights (>= 3 vertices)
  Other,
};

struct ShapeTag {
  ShapeKind kind = ShapeKind::Other;
  int n = 0;       // vertex count
  int q = 0;       // E branch sizes, q <= r
  int r = 0;
  Weight m = 0;    // I2 bond

  bool operator==(const ShapeTag&) const = default;
  std::string to_string() const;
  nlohmann::json to_json() const;
};

// Recognizes the shape of a connected diagram, with the two-vertex
// normalization m=3 -> A2, m=4 -> B2, m>=5 -> I2(m). Complete is only
// reported for >= 3 vertices; cyclic non-complete and unrecognized trees
// come back as Other. Pre: sys connected and nonempty.
ShapeTag recognize_shape(const CoxeterSystem& sys);

// ---------------------------------------------------------------------------
// Classification of the a(2)-finiteness of W by diagram shape.

// A concrete forbidden configuration located inside the diagram: the witness
// family it instantiates plus a role -> generator-name assignment.
struct ForbiddenMatch {
  std::string family;
  std::vector<std::pair<std::string, std::string>> mapping;
  nlohmann::json to_json() const;
};

// Searches the fixed detector list (affine_B, affine_C3, affine_C4,
// two_branches, affine_E6, affine_F5, two_strong_bonds, nonextreme_4s,
// strength_6, middle_5, small_5, large_5, then the cycle conditions) and
// returns the first match, scanning vertices in ascending order. Returns
// nullopt when no detector fires; in particular on every diagram whose group
// has finitely many a = 2 elements.
std::optional<ForbiddenMatch> find_forbidden_subgraph(const CoxeterSystem& sys);

struct ComponentReport {
  std::vector<std::string> generators;
  ShapeTag shape;
  bool cyclic = false;
};

struct Classification {
  bool verdict = false;
  std::vector<ComponentReport> components;
  std::optional<ForbiddenMatch> forbidden;
  std::string reason;
  nlohmann::json to_json() const;
};

// Does W have finitely many elements of a-value 2?  Connected diagrams:
// cyclic ones qualify exactly when complete; acyclic ones exactly when the
// shape is in the catalog (A, B, CTilde, E, F, H, I2). Disconnected
// diagrams qualify exactly when every component has one of those shapes with
// CTilde excluded.
Classification classify_a2_finite(const CoxeterSystem& sys);

// Does W have finitely many elements of a-value 1?  Per component: the
// diagram is a tree with at most one bond of weight > 3.
Classification classify_a1_finite(const CoxeterSystem& sys);

// ---------------------------------------------------------------------------
// Lie-theoretic diagram classes, used to certify a = n via heaps.

enum class LieClass { FiniteWeyl, AffineWeyl, NotWeyl };

// Classifies one connected diagram against the crystallographic catalogs:
// finite Weyl A, B/C, D, E6..E8, F4, G2; affine A~ (cycle of 3-bonds or the
// infinite bond on two vertices), B~, C~, D~, E~6..E~8, F~4, G~2.
LieClass lie_class(const CoxeterSystem& sys);

// True when every connected component is a finite Weyl or affine Weyl
// diagram (so the a = n identity for fully commutative elements applies).
bool all_components_weyl_or_affine(const CoxeterSystem& sys);

// Built-in list of diagrams whose groups are known to be star reducible and
// are used here as witness habitats: currently the six-vertex path with the
// single 4-bond in the middle (bonds 3,3,4,3,3).
bool is_listed_star_reducible(const CoxeterSystem& sys);

// Order of W when every component has a recognized finite shape (A, B, D and
// the exceptional trees, F4, H3, H4, I2(m)); nullopt otherwise. Saturates at
// ULLONG_MAX instead of overflowing. The empty diagram has order 1.
std::optional<unsigned long long> finite_order(const CoxeterSystem& sys);

}  // namespace coxkl::diagram
