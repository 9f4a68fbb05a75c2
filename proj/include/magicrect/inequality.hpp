// Bell-type rectangle inequality for two tables of commuting
// involutions: the sum of cell correlations, plus Alice's product
// expectations, minus Bob's.
#pragma once

#include "magicrect/setup.hpp"

namespace magicrect {

struct InequalityInput {
  StateVector state;
  // tables.a: involutions commuting within each row; tables.b:
  // involutions commuting within each column. Product constraints are
  // not required.
  ObservableTable tables;
};

struct InequalityBreakdown {
  double correlations = 0.0;  // sum over cells of <O^A_ij (x) O^B_ij>
  double products_a = 0.0;    // sum of Alice product-term expectations
  double products_b = 0.0;    // sum of Bob product-term expectations
  double total = 0.0;         // correlations + products_a - products_b
  std::vector<double> per_cell;  // row-major m*n
  std::vector<double> per_a;     // one entry per Alice product term
  std::vector<double> per_b;     // one entry per Bob product term
};

// Default convention: Alice terms are row products, Bob terms are
// column products (the convention under which perfect strategies of a
// 3x3 game reach 15). printed_form swaps the two placements (Alice
// column products, Bob row products).
InequalityBreakdown inequality_report(const InequalityInput& in,
                                      bool printed_form = false,
                                      Tolerance tol = {});

double inequality_value(const InequalityInput& in, bool printed_form = false,
                        Tolerance tol = {});

// Observable tables read off a strategy's PVMs, paired with its state.
InequalityInput inequality_from_strategy(const GameSpec& g, const Strategy& s,
                                         Tolerance tol = {});

}  // namespace magicrect
