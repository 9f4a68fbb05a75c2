// Combinatorial index-set families: for each pool element k and each
// position j, a sign Delta_j(k), with every element's sign product
// fixed (+1 for row families, -1 for column families). Two builders:
// the recursive doubling construction (primed/unprimed lineage) and a
// direct semantic enumeration of valid outcome tuples; a checker
// exhibits the bijection between them.
#pragma once

#include <string>
#include <vector>

#include "magicrect/game.hpp"

namespace magicrect {

struct IndexSetFamily {
  int arity = 0;           // positions per element
  int target_product = 1;  // +1 for rows, -1 for columns
  int generation = 0;      // number of doubling steps applied
  std::vector<std::string> labels;      // lineage tags, pool order
  std::vector<std::vector<int>> signs;  // [element][position] in {+1,-1}

  int pool_size() const { return int(labels.size()); }
  // 0-based element ids k with sign delta at the given position.
  std::vector<int> set_of(int delta, int position) const;
};

// Doubling recursion from the two-element base family.
IndexSetFamily build_index_sets(int arity, int target_product = 1);

// Elements are the valid outcome tuples themselves (arity >= 1).
IndexSetFamily semantic_index_sets(int arity, int target_product);

struct BijectionReport {
  bool ok = false;
  // mapping[k] = semantic element with the same sign vector as
  // recursion element k; -1 where no match exists
  std::vector<int> mapping;
  std::string detail;
};

BijectionReport check_recursion_matches_semantics(int arity);

}  // namespace magicrect
