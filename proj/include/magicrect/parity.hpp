// Symbolic parity engine: scenarios describe intersections of images of
// signed projector sums over abstract index pools. Three rules (support
// propagation, a product law over constraint subsets, conditioning case
// splits) either force the intersection to {0} or produce a satisfying
// sign assignment. A seeded numeric realization corroborates verdicts
// at concrete dimensions.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>

#include "magicrect/setup.hpp"

namespace magicrect {

struct MalformedScenario : Error {
  using Error::Error;
};
struct RealizationFailure : Error {
  using Error::Error;
};

// One pool's part of a term: the claimed indices and the sign the
// parity operator assigns to them.
struct Claim {
  std::set<std::string> indices;
  int sign = 1;
};

// A term is a composite block: the intersection of its claims' images.
using Term = std::map<std::string, Claim>;

// A constraint is the image of the sum of its terms; the candidate
// intersection space H_s lies inside every constraint's image.
struct ParityScenario {
  std::string name;
  std::map<std::string, std::vector<std::string>> pools;
  std::vector<std::vector<Term>> constraints;
};

// Throws MalformedScenario on unknown pools, out-of-pool indices, signs
// outside {+1,-1}, or an index claimed with both signs in one constraint.
void validate_scenario(const ParityScenario& s);

enum class Verdict { Contradiction, NoContradiction };

struct Certificate {
  Verdict verdict = Verdict::NoContradiction;
  std::string trace;  // which rule fired, or why none did
  // Satisfying data when no contradiction was found:
  std::map<std::string, std::string> assignment;  // pool -> index
  std::vector<int> chosen_terms;                  // per constraint
};

Certificate certify_scenario(const ParityScenario& s, int depth = 3);

// Satisfying assignment search only (no rules); nullopt when even that
// fails.
std::optional<Certificate> find_witness(const ParityScenario& s);

struct Coloring {
  int n = 0;
  // Per column constraint j: the row-pool element labels colored green
  // (the term whose first-row sign is +1).
  std::vector<std::vector<std::string>> green;
  // Green-count parity per row pool, shared by all its elements.
  std::array<int, 2> row_green_parity = {0, 0};
};

struct TwoByNResult {
  Certificate cert;
  Coloring coloring;  // meaningful when the verdict is Contradiction
  // For even n: a perfect deterministic strategy instead.
  std::vector<std::vector<int>> alice_table, bob_table;
  double classical_value = 0.0;
};

// Odd n: Contradiction with the coloring witness (product over columns
// of the row-0 parity operators is +I, of the row-1 ones is -I, yet
// they agree on H_s). Even n: NoContradiction plus a perfect classical
// table. Throws MalformedScenario for n < 1.
TwoByNResult certify_2xn_odd(int n);

// Column canonical form of the 2xn game as a scenario (pools: the two
// row families; one constraint per column).
ParityScenario scenario_2xn(int n);

// Seeded random projector realization of the pools; returns the numeric
// intersection of the constraint images. When a witness assignment is
// given, frames are rotated so one shared unit vector lies in every
// assigned index's block (the returned flag reports whether that vector
// landed in H_s).
struct NumericHs {
  Subspace hs;
  bool witness_realized = false;
};
NumericHs numeric_hs(const ParityScenario& s, Eigen::Index dim, uint64_t seed,
                     const std::map<std::string, std::string>* witness = nullptr,
                     Tolerance tol = {});

struct CatalogEntry {
  std::string name;
  ParityScenario scenario;
  // True when the constraint encoding was derived mechanically from the
  // setup's cell structure rather than transcribed from a worked form.
  bool reconstructed = false;
};

// The seven built-in reduced-3x3 scenarios, every one of which
// certifies Contradiction.
std::vector<CatalogEntry> builtin_scenarios();

// All sign decorations of a built-in sketch entry (verdicts must agree
// across them); empty for entries not generated from a sketch.
std::vector<ParityScenario> decoration_variants(const std::string& name);

}  // namespace magicrect
