// Operator setups: projector pools per row/column tied to index-set
// families, the P/Q parity projectors they generate, observable tables,
// and the reduction move (zeroing pool elements) with its validity
// restrictions.
#pragma once

#include <utility>

#include "magicrect/index_sets.hpp"

namespace magicrect {

struct InvalidPool : Error {
  using Error::Error;
};
struct ConstraintViolation : Error {
  using Error::Error;
};
struct RuleViolation : Error {
  using Error::Error;
};
struct InvalidSetup : Error {
  using Error::Error;
};

struct PoolRealization {
  IndexSetFamily family;
  std::vector<CMat> ops;      // pool order; zero matrix when reduced
  std::vector<char> reduced;  // 1 = mapped to the zero operator

  int live_count() const;
};

struct OperatorSetup {
  GameSpec game;
  Eigen::Index dim_a = 0;
  Eigen::Index dim_b = 0;
  std::vector<PoolRealization> rows;  // m pools on dim_a
  std::vector<PoolRealization> cols;  // n pools on dim_b

  // Sum of row-i pool projectors whose sign at column j is delta.
  CMat parity_p(int i, int delta, int j) const;
  // Sum of column-j pool projectors whose sign at row i is delta.
  CMat parity_q(int j, int delta, int i) const;
  bool maximal() const;
  // True when every pool's live projectors sum to the identity.
  bool realized(Tolerance tol = {}) const;
};

// Builds a setup from per-pool projector lists aligned with the
// semantic index families (rows: product +1, columns: product -1).
// Zero matrices are recorded as reduced. Throws InvalidPool when live
// entries are not mutually orthogonal projectors summing to identity.
OperatorSetup realize_setup(const GameSpec& g, Eigen::Index dim_a,
                            Eigen::Index dim_b,
                            const std::vector<std::vector<CMat>>& row_ops,
                            const std::vector<std::vector<CMat>>& col_ops,
                            Tolerance tol = {});

struct ObservableCell {
  CMat op;
  bool degenerate = false;  // some sign class of the cell died out
  int identity_sign = 0;    // +1/-1 when the observable is that multiple of I
};

struct ObservableTable {
  int m = 0, n = 0;
  std::vector<ObservableCell> a;  // row-major m*n
  std::vector<ObservableCell> b;

  ObservableCell& at_a(int i, int j) { return a[size_t(i) * n + j]; }
  ObservableCell& at_b(int i, int j) { return b[size_t(i) * n + j]; }
  const ObservableCell& at_a(int i, int j) const { return a[size_t(i) * n + j]; }
  const ObservableCell& at_b(int i, int j) const { return b[size_t(i) * n + j]; }
};

// O^A_{ij} = sum_k sign_k(j) E_k over the live row-i pool, and the
// column analogue for B. Verifies row/column commutativity and the
// product constraints (rows of A to +I, columns of B to -I) whenever
// the setup is realized.
ObservableTable observables_from_setup(const OperatorSetup& s, Tolerance tol = {});

struct Victim {
  bool row_side = true;
  int pool = 0;  // row index i or column index j
  int id = 0;    // element within the pool
};

// Zeroes the victims if the three reduction restrictions hold:
//  1. no observable becomes zero (every pool keeps a live element),
//  2. a cell's P half and Q half may only become empty together,
//  3. the kept elements still support every observable of their pool.
// Throws RuleViolation naming the restriction otherwise.
OperatorSetup reduce(const OperatorSetup& s, const std::vector<Victim>& victims);

// The standard 3x3 two-qubit-pair construction: a perfect strategy on
// 4 (x) 4 together with its maximal operator setup.
std::pair<OperatorSetup, Strategy> mermin_peres_fixture();

// Reads a setup off a strategy's PVMs (outcomes matched against the
// semantic families; missing outcomes become reduced entries).
OperatorSetup setup_from_strategy(const GameSpec& g, const Strategy& s,
                                  Tolerance tol = {});

}  // namespace magicrect
