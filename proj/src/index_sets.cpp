#include "magicrect/index_sets.hpp"

#include <algorithm>

namespace magicrect {

std::vector<int> IndexSetFamily::set_of(int delta, int position) const {
  std::vector<int> out;
  for (int k = 0; k < pool_size(); ++k)
    if (signs[k][position] == delta) out.push_back(k);
  return out;
}

IndexSetFamily build_index_sets(int arity, int target_product) {
  if (arity < 2)
    throw DimensionMismatch("build_index_sets: arity must be at least 2");
  IndexSetFamily fam;
  fam.arity = 2;
  fam.target_product = target_product;
  fam.generation = 0;
  fam.labels = {"1", "2"};
  if (target_product == 1)
    fam.signs = {{1, 1}, {-1, -1}};
  else
    fam.signs = {{1, -1}, {-1, 1}};
  while (fam.arity < arity) {
    IndexSetFamily next;
    next.arity = fam.arity + 1;
    next.target_product = fam.target_product;
    next.generation = fam.generation + 1;
    // unprimed copy: new position carries +1
    for (int k = 0; k < fam.pool_size(); ++k) {
      next.labels.push_back(fam.labels[k] + "u");
      auto s = fam.signs[k];
      s.push_back(1);
      next.signs.push_back(std::move(s));
    }
    // primed copy: position-1 halves swapped, new position carries -1
    for (int k = 0; k < fam.pool_size(); ++k) {
      next.labels.push_back(fam.labels[k] + "p");
      auto s = fam.signs[k];
      s[0] = -s[0];
      s.push_back(-1);
      next.signs.push_back(std::move(s));
    }
    fam = std::move(next);
  }
  return fam;
}

IndexSetFamily semantic_index_sets(int arity, int target_product) {
  if (arity < 1)
    throw DimensionMismatch("semantic_index_sets: arity must be at least 1");
  IndexSetFamily fam;
  fam.arity = arity;
  fam.target_product = target_product;
  fam.generation = 0;
  for (const OutcomeTuple& t : valid_tuples(arity, target_product)) {
    std::string label;
    for (int s : t.signs) label += (s == 1 ? '+' : '-');
    fam.labels.push_back(std::move(label));
    fam.signs.push_back(t.signs);
  }
  return fam;
}

BijectionReport check_recursion_matches_semantics(int arity) {
  const IndexSetFamily rec = build_index_sets(arity, 1);
  const IndexSetFamily sem = semantic_index_sets(arity, 1);
  BijectionReport rep;
  rep.mapping.assign(rec.pool_size(), -1);
  if (rec.pool_size() != sem.pool_size()) {
    rep.detail = "pool sizes differ";
    return rep;
  }
  std::vector<bool> used(sem.pool_size(), false);
  for (int k = 0; k < rec.pool_size(); ++k) {
    for (int l = 0; l < sem.pool_size(); ++l) {
      if (!used[l] && rec.signs[k] == sem.signs[l]) {
        rep.mapping[k] = l;
        used[l] = true;
        break;
      }
    }
    if (rep.mapping[k] < 0) {
      rep.detail = "recursion element " + rec.labels[k] +
                   " has no semantic partner";
      return rep;
    }
  }
  rep.ok = true;
  return rep;
}

}  // namespace magicrect
