// Magic rectangle game instances and quantum strategies: the winning
// predicate, correlations p(a,b|x,y), the winning value, and a
// brute-force deterministic oracle. Questions are 0-based: Alice gets a
// row x in [0,m), answers n signs multiplying to +1; Bob gets a column
// y in [0,n), answers m signs multiplying to -1; they win iff
// additionally a[y] == b[x].
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "magicrect/linalg.hpp"

namespace magicrect {

struct LengthMismatch : Error {
  using Error::Error;
};
struct InvalidStrategy : Error {
  using Error::Error;
};
struct TooLarge : Error {
  using Error::Error;
};

struct GameSpec {
  int m = 0;
  int n = 0;
  Eigen::MatrixXd mu;  // m x n question distribution

  static GameSpec uniform(int m, int n);
};

struct OutcomeTuple {
  std::vector<int> signs;  // entries in {+1, -1}

  int product() const;
  bool operator==(const OutcomeTuple& o) const { return signs == o.signs; }
  bool operator<(const OutcomeTuple& o) const { return signs < o.signs; }
};

// All sign tuples of the given length with the given product,
// lexicographic with +1 before -1.
std::vector<OutcomeTuple> valid_tuples(int length, int target_product);

struct Strategy {
  StateVector state;
  // alice[x] / bob[y]: PVM elements over the stored outcome support
  std::vector<std::vector<std::pair<OutcomeTuple, CMat>>> alice;
  std::vector<std::vector<std::pair<OutcomeTuple, CMat>>> bob;
};

bool predicate(const OutcomeTuple& a, const OutcomeTuple& b, int x, int y);

// Throws InvalidStrategy if PVM invariants (hermitian idempotent,
// mutually orthogonal, complete over stored support) fail beyond tol.
void validate_strategy(const GameSpec& g, const Strategy& s, Tolerance tol = {});

// <psi| E_{a|x} (x) F_{b|y} |psi>, clamped to [0,1].
double correlation(const Strategy& s, const OutcomeTuple& a,
                   const OutcomeTuple& b, int x, int y, Tolerance tol = {});

double game_value(const GameSpec& g, const Strategy& s, Tolerance tol = {});

bool is_perfect(const GameSpec& g, const Strategy& s, Tolerance tol = {});

// Maximum winning probability over deterministic strategies.
double classical_oracle(const GameSpec& g);

// Same value as an exact reduced fraction; requires the uniform
// question distribution.
std::pair<std::int64_t, std::int64_t> classical_oracle_exact(const GameSpec& g);

// Best deterministic tables (rows of A multiply to +1, columns of B to
// -1) realizing classical_oracle; A is m x n, B is m x n.
struct ClassicalTables {
  std::vector<std::vector<int>> a;
  std::vector<std::vector<int>> b;
  std::int64_t agreements = 0;  // cells where a and b agree
};
ClassicalTables classical_oracle_tables(const GameSpec& g);

// Quarter-turn of a strategy for games with both sides odd: players
// swap roles, every outcome sign flips, and the state's tensor factors
// swap. The resulting strategy plays the transposed game with the same
// winning value.
std::pair<GameSpec, Strategy> rotate_game_90(const GameSpec& g,
                                             const Strategy& s);

}  // namespace magicrect
