#include "magicrect/parity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace magicrect {

namespace {

struct ContradictionFound {
  std::string trace;
};

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "}";
  return os.str();
}

using Support = std::map<std::string, std::set<std::string>>;

// ---- rule 1: support propagation to fixpoint ----------------------------

bool covers_all_terms(const std::vector<Term>& con, const std::string& p) {
  for (const Term& t : con) {
    if (!t.count(p)) return false;
  }
  return !con.empty();
}

void prune(ParityScenario& sc) {
  Support support;
  for (const auto& [p, labels] : sc.pools) {
    support[p] = std::set<std::string>(labels.begin(), labels.end());
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [p, sup] : support) {
      for (size_t ci = 0; ci < sc.constraints.size(); ++ci) {
        const auto& con = sc.constraints[ci];
        if (con.empty()) {
          throw ContradictionFound{"constraint " + std::to_string(ci) +
                                   " is empty"};
        }
        if (!covers_all_terms(con, p)) continue;
        std::set<std::string> cover;
        for (const Term& t : con) {
          const auto& c = t.at(p).indices;
          cover.insert(c.begin(), c.end());
        }
        size_t before = sup.size();
        std::set<std::string> kept;
        std::set_intersection(sup.begin(), sup.end(), cover.begin(),
                              cover.end(), std::inserter(kept, kept.end()));
        if (kept.size() != before) {
          sup = std::move(kept);
          changed = true;
        }
      }
    }
    for (size_t ci = 0; ci < sc.constraints.size(); ++ci) {
      std::vector<Term> keep;
      for (const Term& t : sc.constraints[ci]) {
        Term nt;
        bool dead = false;
        for (const auto& [p, claim] : t) {
          std::set<std::string> c2;
          const auto& sup = support.at(p);
          std::set_intersection(claim.indices.begin(), claim.indices.end(),
                                sup.begin(), sup.end(),
                                std::inserter(c2, c2.end()));
          if (c2.empty()) {
            dead = true;
            break;
          }
          nt[p] = Claim{std::move(c2), claim.sign};
        }
        if (!dead) keep.push_back(std::move(nt));
      }
      if (keep.size() != sc.constraints[ci].size()) changed = true;
      if (keep.empty()) {
        throw ContradictionFound{"constraint " + std::to_string(ci) +
                                 " emptied by support propagation"};
      }
      sc.constraints[ci] = std::move(keep);
    }
  }
  for (auto& [p, labels] : sc.pools) {
    labels.assign(support[p].begin(), support[p].end());
  }
}

// ---- rule 2: product law over constraint subsets -------------------------

bool full_coverer(const std::vector<Term>& con, const std::string& p) {
  if (!covers_all_terms(con, p)) return false;
  std::set<std::string> seen;
  for (const Term& t : con) {
    for (const std::string& k : t.at(p).indices) {
      if (!seen.insert(k).second) return false;  // overlapping claims
    }
  }
  return true;
}

struct UsableConstraint {
  int ci = 0;
  int rho = 1;
  std::vector<int> sp, sq;  // sign per support index of p / q
};

void for_each_subset(int count, const std::function<bool(const std::vector<int>&)>& f) {
  // by size, then lexicographic; stop early when f returns true
  std::vector<int> idx;
  std::function<bool(int, int)> rec = [&](int start, int need) {
    if (need == 0) return f(idx);
    for (int i = start; i <= count - need; ++i) {
      idx.push_back(i);
      if (rec(i + 1, need - 1)) return true;
      idx.pop_back();
    }
    return false;
  };
  for (int r = 2; r <= count; ++r) {
    if (rec(0, r)) return;
  }
}

void product_law(const ParityScenario& sc) {
  std::vector<std::string> names;
  for (const auto& [p, _] : sc.pools) names.push_back(p);
  for (size_t a = 0; a < names.size(); ++a) {
    for (size_t b = a + 1; b < names.size(); ++b) {
      const std::string& p = names[a];
      const std::string& q = names[b];
      std::map<std::string, int> pid, qid;
      for (const std::string& k : sc.pools.at(p)) pid[k] = int(pid.size());
      for (const std::string& k : sc.pools.at(q)) qid[k] = int(qid.size());
      std::vector<UsableConstraint> usable;
      for (size_t ci = 0; ci < sc.constraints.size(); ++ci) {
        const auto& con = sc.constraints[ci];
        if (!full_coverer(con, p) || !full_coverer(con, q)) continue;
        UsableConstraint u;
        u.ci = int(ci);
        u.sp.assign(pid.size(), 0);
        u.sq.assign(qid.size(), 0);
        bool rho_set = false, ok = true;
        for (const Term& t : con) {
          int r = t.at(p).sign * t.at(q).sign;
          if (!rho_set) {
            u.rho = r;
            rho_set = true;
          } else if (r != u.rho) {
            ok = false;
            break;
          }
          for (const std::string& k : t.at(p).indices) u.sp[pid[k]] = t.at(p).sign;
          for (const std::string& k : t.at(q).indices) u.sq[qid[k]] = t.at(q).sign;
        }
        if (!ok) continue;
        // support must be fully claimed (prune guarantees this)
        for (int s : u.sp) ok &= (s != 0);
        for (int s : u.sq) ok &= (s != 0);
        if (ok) usable.push_back(std::move(u));
      }
      if (usable.size() < 2) continue;
      auto eps = [&](const std::vector<int>& subset, bool left) {
        size_t sz = left ? pid.size() : qid.size();
        int common = 0;
        for (size_t k = 0; k < sz; ++k) {
          int prod = 1;
          for (int si : subset) {
            const UsableConstraint& u = usable[size_t(si)];
            prod *= left ? u.sp[k] : u.sq[k];
          }
          if (common == 0) common = prod;
          else if (prod != common) return 0;
        }
        return common;
      };
      for_each_subset(int(usable.size()), [&](const std::vector<int>& subset) {
        int ep = eps(subset, true);
        if (ep == 0) return false;
        int eq = eps(subset, false);
        if (eq == 0) return false;
        int rho = 1;
        std::vector<int> cis;
        for (int si : subset) {
          rho *= usable[size_t(si)].rho;
          cis.push_back(usable[size_t(si)].ci);
        }
        if (ep != rho * eq) {
          std::ostringstream os;
          os << "product law on pools (" << p << "," << q << "), constraints "
             << join_ints(cis) << ": eps_p=" << ep << " eps_q=" << eq
             << " rho=" << rho;
          throw ContradictionFound{os.str()};
        }
        return false;
      });
    }
  }
}

// ---- rule 3: conditioning case split --------------------------------------

std::vector<std::string> conditionable_pools(const ParityScenario& sc) {
  std::vector<std::string> out;
  for (const auto& [p, _] : sc.pools) {
    bool ok = true, any = false;
    for (const auto& con : sc.constraints) {
      int claimed = 0;
      for (const Term& t : con) claimed += t.count(p) ? 1 : 0;
      if (claimed != 0 && claimed != int(con.size())) {
        ok = false;
        break;
      }
      if (claimed == int(con.size()) && !con.empty()) any = true;
    }
    if (ok && any) out.push_back(p);
  }
  return out;
}

std::vector<std::vector<std::string>> atoms_of(const ParityScenario& sc,
                                               const std::string& p) {
  std::map<std::vector<int>, std::vector<std::string>> pattern;
  for (const std::string& k : sc.pools.at(p)) {
    std::vector<int> key;
    for (const auto& con : sc.constraints) {
      for (size_t ti = 0; ti < con.size(); ++ti) {
        auto it = con[ti].find(p);
        if (it != con[ti].end() && it->second.indices.count(k)) {
          key.push_back(int(ti));
        }
      }
      key.push_back(-1);
    }
    pattern[key].push_back(k);
  }
  std::vector<std::vector<std::string>> out;
  for (auto& [_, v] : pattern) out.push_back(std::move(v));
  return out;
}

ParityScenario condition(const ParityScenario& sc, const std::string& p,
                         const std::vector<std::string>& atom_v) {
  std::set<std::string> atom(atom_v.begin(), atom_v.end());
  ParityScenario out = sc;
  for (auto& con : out.constraints) {
    if (!covers_all_terms(con, p)) continue;
    std::vector<Term> kept;
    for (Term& t : con) {
      const auto& claim = t.at(p).indices;
      if (std::includes(claim.begin(), claim.end(), atom.begin(), atom.end())) {
        t[p].indices = atom;
        kept.push_back(std::move(t));
      }
    }
    con = std::move(kept);
  }
  return out;
}

// ---- witness search --------------------------------------------------------

std::optional<Certificate> witness_impl(const ParityScenario& sc) {
  Support start;
  for (const auto& [p, labels] : sc.pools) {
    start[p] = std::set<std::string>(labels.begin(), labels.end());
  }
  std::vector<int> chosen;
  std::function<std::optional<Support>(size_t, const Support&)> rec =
      [&](size_t ci, const Support& sets) -> std::optional<Support> {
    if (ci == sc.constraints.size()) return sets;
    const auto& con = sc.constraints[ci];
    for (size_t ti = 0; ti < con.size(); ++ti) {
      Support ns = sets;
      bool ok = true;
      for (const auto& [p, claim] : con[ti]) {
        std::set<std::string> inter;
        std::set_intersection(ns[p].begin(), ns[p].end(),
                              claim.indices.begin(), claim.indices.end(),
                              std::inserter(inter, inter.end()));
        if (inter.empty()) {
          ok = false;
          break;
        }
        ns[p] = std::move(inter);
      }
      if (!ok) continue;
      chosen.push_back(int(ti));
      auto r = rec(ci + 1, ns);
      if (r) return r;
      chosen.pop_back();
    }
    return std::nullopt;
  };
  auto r = rec(0, start);
  if (!r) return std::nullopt;
  Certificate c;
  c.verdict = Verdict::NoContradiction;
  c.trace = "satisfying assignment found";
  for (const auto& [p, s] : *r) c.assignment[p] = *s.begin();
  c.chosen_terms = chosen;
  return c;
}

Certificate certify_impl(ParityScenario sc, int depth) {
  try {
    prune(sc);
    product_law(sc);
  } catch (const ContradictionFound& e) {
    Certificate c;
    c.verdict = Verdict::Contradiction;
    c.trace = e.trace;
    return c;
  }
  if (depth > 0) {
    for (const std::string& p : conditionable_pools(sc)) {
      auto atoms = atoms_of(sc, p);
      bool all_bad = !atoms.empty();
      for (const auto& atom : atoms) {
        Certificate sub = certify_impl(condition(sc, p, atom), depth - 1);
        if (sub.verdict != Verdict::Contradiction) {
          all_bad = false;
          break;
        }
      }
      if (all_bad) {
        Certificate c;
        c.verdict = Verdict::Contradiction;
        c.trace = "case split on pool " + p + ": all " +
                  std::to_string(atoms.size()) + " atoms contradict";
        return c;
      }
    }
  }
  auto w = witness_impl(sc);
  if (w) return *w;
  Certificate c;
  c.verdict = Verdict::NoContradiction;
  c.trace = "no rule fired; no satisfying assignment found";
  return c;
}

}  // namespace

void validate_scenario(const ParityScenario& s) {
  for (const auto& [p, labels] : s.pools) {
    std::set<std::string> seen;
    if (labels.empty()) {
      throw MalformedScenario("pool " + p + " is empty");
    }
    for (const auto& l : labels) {
      if (!seen.insert(l).second) {
        throw MalformedScenario("pool " + p + " repeats index " + l);
      }
    }
  }
  for (size_t ci = 0; ci < s.constraints.size(); ++ci) {
    std::map<std::string, std::map<std::string, int>> signs_seen;
    for (const Term& t : s.constraints[ci]) {
      if (t.empty()) {
        throw MalformedScenario("constraint " + std::to_string(ci) +
                                " has a term with no claims");
      }
      for (const auto& [p, claim] : t) {
        auto pool = s.pools.find(p);
        if (pool == s.pools.end()) {
          throw MalformedScenario("constraint " + std::to_string(ci) +
                                  " references unknown pool " + p);
        }
        if (claim.sign != 1 && claim.sign != -1) {
          throw MalformedScenario("constraint " + std::to_string(ci) +
                                  " uses a sign outside {+1,-1}");
        }
        if (claim.indices.empty()) {
          throw MalformedScenario("constraint " + std::to_string(ci) +
                                  " has an empty claim on pool " + p);
        }
        for (const std::string& k : claim.indices) {
          if (std::find(pool->second.begin(), pool->second.end(), k) ==
              pool->second.end()) {
            throw MalformedScenario("constraint " + std::to_string(ci) +
                                    " claims index " + k + " outside pool " + p);
          }
          auto [it, fresh] = signs_seen[p].insert({k, claim.sign});
          if (!fresh && it->second != claim.sign) {
            throw MalformedScenario("constraint " + std::to_string(ci) +
                                    " assigns both signs to index " + k);
          }
        }
      }
    }
  }
}

Certificate certify_scenario(const ParityScenario& s, int depth) {
  validate_scenario(s);
  Certificate c = certify_impl(s, depth);
  if (c.trace == "satisfying assignment found") {
    // the search ran on the pruned scenario; re-anchor the chosen terms
    // to the caller's numbering (pruning may drop terms)
    c.chosen_terms.clear();
    for (const auto& con : s.constraints) {
      int pick = -1;
      for (size_t ti = 0; ti < con.size() && pick < 0; ++ti) {
        bool sat = true;
        for (const auto& [p, claim] : con[ti])
          sat = sat && claim.indices.count(c.assignment.at(p)) > 0;
        if (sat) pick = int(ti);
      }
      c.chosen_terms.push_back(pick);
    }
  }
  return c;
}

std::optional<Certificate> find_witness(const ParityScenario& s) {
  validate_scenario(s);
  return witness_impl(s);
}

// ---- scenario generators ---------------------------------------------------

namespace {

// label -> sign vector, for all tuples with the given product
std::vector<std::pair<std::string, std::vector<int>>> semantic_family_labeled(
    int arity, int target, const std::string& prefix) {
  std::vector<std::pair<std::string, std::vector<int>>> out;
  int idx = 1;
  for (const OutcomeTuple& t : valid_tuples(arity, target)) {
    out.push_back({prefix + std::to_string(idx), t.signs});
    ++idx;
  }
  return out;
}

using Family = std::vector<std::pair<std::string, std::vector<int>>>;

ParityScenario row_canonical(const std::vector<Family>& rowv,
                             const std::vector<Family>& colv,
                             const std::string& name) {
  ParityScenario sc;
  sc.name = name;
  for (size_t j = 0; j < colv.size(); ++j) {
    std::vector<std::string> labels;
    for (const auto& [l, _] : colv[j]) labels.push_back(l);
    std::sort(labels.begin(), labels.end());
    sc.pools["col" + std::to_string(j)] = labels;
  }
  for (size_t i = 0; i < rowv.size(); ++i) {
    std::vector<Term> con;
    for (const auto& [k, vec] : rowv[i]) {
      (void)k;
      Term t;
      bool zero = false;  // an empty claim makes the whole block zero
      for (size_t j = 0; j < colv.size(); ++j) {
        int delta = vec[j];
        Claim c;
        c.sign = delta;
        for (const auto& [l, w] : colv[j]) {
          if (w[i] == delta) c.indices.insert(l);
        }
        zero = zero || c.indices.empty();
        t["col" + std::to_string(j)] = std::move(c);
      }
      if (!zero) con.push_back(std::move(t));
    }
    sc.constraints.push_back(std::move(con));
  }
  return sc;
}

ParityScenario col_canonical(const std::vector<Family>& rowv,
                             const std::vector<Family>& colv,
                             const std::string& name) {
  ParityScenario sc;
  sc.name = name;
  for (size_t i = 0; i < rowv.size(); ++i) {
    std::vector<std::string> labels;
    for (const auto& [k, _] : rowv[i]) labels.push_back(k);
    std::sort(labels.begin(), labels.end());
    sc.pools["row" + std::to_string(i)] = labels;
  }
  for (size_t j = 0; j < colv.size(); ++j) {
    std::vector<Term> con;
    for (const auto& [l, vec] : colv[j]) {
      (void)l;
      Term t;
      bool zero = false;  // an empty claim makes the whole block zero
      for (size_t i = 0; i < rowv.size(); ++i) {
        int delta = vec[i];
        Claim c;
        c.sign = delta;
        for (const auto& [k, w] : rowv[i]) {
          if (w[j] == delta) c.indices.insert(k);
        }
        zero = zero || c.indices.empty();
        t["row" + std::to_string(i)] = std::move(c);
      }
      if (!zero) con.push_back(std::move(t));
    }
    sc.constraints.push_back(std::move(con));
  }
  return sc;
}

// --- setup sketches: halves of each cell pairing, sign left open -----------

struct Halves {
  std::vector<std::string> plus, minus;
};
struct SketchCell {
  Halves row, col;
};
struct Sketch {
  int m = 0, n = 0;
  std::vector<std::vector<std::string>> row_pools, col_pools;
  std::vector<std::vector<SketchCell>> cells;  // [i][j]
  std::string name;
};

SketchCell vac(const std::vector<std::string>& rp,
               const std::vector<std::string>& cp) {
  return SketchCell{Halves{rp, {}}, Halves{cp, {}}};
}

SketchCell pair_cell(std::vector<std::string> rp, std::vector<std::string> rm,
                     std::vector<std::string> cp, std::vector<std::string> cm) {
  return SketchCell{Halves{std::move(rp), std::move(rm)},
                    Halves{std::move(cp), std::move(cm)}};
}

Sketch sk_minimal() {
  Sketch sk;
  sk.m = 2;
  sk.n = 3;
  sk.name = "minimal";
  sk.row_pools = {{"E1", "E2"}, {"Ea", "Eb"}};
  sk.col_pools = {{"F1", "F2"}, {"Fa", "Fb"}, {"Fm"}};
  sk.cells = {
      {pair_cell({"E1"}, {"E2"}, {"F1"}, {"F2"}),
       pair_cell({"E1"}, {"E2"}, {"Fa"}, {"Fb"}), vac(sk.row_pools[0], sk.col_pools[2])},
      {pair_cell({"Ea"}, {"Eb"}, {"F2"}, {"F1"}),
       pair_cell({"Ea"}, {"Eb"}, {"Fa"}, {"Fb"}), vac(sk.row_pools[1], sk.col_pools[2])},
  };
  return sk;
}

Sketch sk_identity_column() {
  Sketch sk;
  sk.m = 3;
  sk.n = 3;
  sk.name = "identity-column";
  sk.row_pools = {{"E1", "E2"}, {"Ega", "Egb"}, {"Ea", "Eb"}};
  sk.col_pools = {{"F1", "F2", "F3", "F4"}, {"Fm"}, {"Fga", "Fgb", "Fge", "Fgz"}};
  sk.cells = {
      {pair_cell({"E1"}, {"E2"}, {"F1", "F2"}, {"F3", "F4"}),
       vac(sk.row_pools[0], sk.col_pools[1]),
       pair_cell({"E1"}, {"E2"}, {"Fga", "Fgb"}, {"Fge", "Fgz"})},
      {pair_cell({"Ega"}, {"Egb"}, {"F2", "F4"}, {"F1", "F3"}),
       vac(sk.row_pools[1], sk.col_pools[1]),
       pair_cell({"Ega"}, {"Egb"}, {"Fga", "Fge"}, {"Fgb", "Fgz"})},
      {pair_cell({"Ea"}, {"Eb"}, {"F1", "F4"}, {"F2", "F3"}),
       vac(sk.row_pools[2], sk.col_pools[1]),
       pair_cell({"Ea"}, {"Eb"}, {"Fga", "Fgz"}, {"Fgb", "Fge"})},
  };
  return sk;
}

Sketch sk_identity_diagonal() {
  Sketch sk;
  sk.m = 3;
  sk.n = 3;
  sk.name = "identity-diagonal";
  sk.row_pools = {{"E1", "E2"}, {"Ea", "Eb"}, {"Ega", "Egb"}};
  sk.col_pools = {{"F1", "F2"}, {"Fa", "Fb"}, {"Fga", "Fgb"}};
  sk.cells = {
      {pair_cell({"E1"}, {"E2"}, {"F1"}, {"F2"}),
       pair_cell({"E1"}, {"E2"}, {"Fa"}, {"Fb"}),
       vac(sk.row_pools[0], sk.col_pools[2])},
      {vac(sk.row_pools[1], sk.col_pools[0]),
       pair_cell({"Ea"}, {"Eb"}, {"Fb"}, {"Fa"}),
       pair_cell({"Ea"}, {"Eb"}, {"Fga"}, {"Fgb"})},
      {pair_cell({"Ega"}, {"Egb"}, {"F1"}, {"F2"}),
       vac(sk.row_pools[2], sk.col_pools[1]),
       pair_cell({"Ega"}, {"Egb"}, {"Fga"}, {"Fgb"})},
  };
  return sk;
}

Sketch sk_two_identity_cells() {
  Sketch sk;
  sk.m = 3;
  sk.n = 3;
  sk.name = "two-identity-cells";
  sk.row_pools = {{"E1", "E2"}, {"Ea", "Eb"}, {"Ega", "Egb", "Ege", "Egz"}};
  sk.col_pools = {{"F1", "F2"}, {"Fa", "Fb", "Fc", "Fd"}, {"Fga", "Fgb"}};
  sk.cells = {
      {pair_cell({"E1"}, {"E2"}, {"F1"}, {"F2"}),
       pair_cell({"E1"}, {"E2"}, {"Fa", "Fb"}, {"Fc", "Fd"}),
       vac(sk.row_pools[0], sk.col_pools[2])},
      {vac(sk.row_pools[1], sk.col_pools[0]),
       pair_cell({"Ea"}, {"Eb"}, {"Fa", "Fc"}, {"Fb", "Fd"}),
       pair_cell({"Ea"}, {"Eb"}, {"Fga"}, {"Fgb"})},
      {pair_cell({"Ega", "Egb"}, {"Ege", "Egz"}, {"F1"}, {"F2"}),
       pair_cell({"Ega", "Ege"}, {"Egb", "Egz"}, {"Fb", "Fc"}, {"Fa", "Fd"}),
       pair_cell({"Ega", "Egz"}, {"Egb", "Ege"}, {"Fga"}, {"Fgb"})},
  };
  return sk;
}

Sketch sk_one_identity_cell() {
  Sketch sk;
  sk.m = 3;
  sk.n = 3;
  sk.name = "one-identity-cell";
  sk.row_pools = {{"E1", "E2"},
                  {"Ea", "Eb", "Ec", "Ed"},
                  {"Ega", "Egb", "Ege", "Egz"}};
  sk.col_pools = {{"F1", "F2"},
                  {"Fa", "Fb", "Fc", "Fd"},
                  {"Fga", "Fgb", "Fge", "Fgz"}};
  sk.cells = {
      {vac(sk.row_pools[0], sk.col_pools[0]),
       pair_cell({"E1"}, {"E2"}, {"Fa", "Fb"}, {"Fc", "Fd"}),
       pair_cell({"E1"}, {"E2"}, {"Fga", "Fgb"}, {"Fge", "Fgz"})},
      {pair_cell({"Ea", "Eb"}, {"Ec", "Ed"}, {"F2"}, {"F1"}),
       pair_cell({"Eb", "Ed"}, {"Ea", "Ec"}, {"Fa", "Fc"}, {"Fb", "Fd"}),
       pair_cell({"Eb", "Ec"}, {"Ea", "Ed"}, {"Fga", "Fge"}, {"Fgb", "Fgz"})},
      {pair_cell({"Ege", "Egz"}, {"Ega", "Egb"}, {"F2"}, {"F1"}),
       pair_cell({"Egb", "Egz"}, {"Ega", "Ege"}, {"Fa", "Fd"}, {"Fb", "Fc"}),
       pair_cell({"Egb", "Ege"}, {"Ega", "Egz"}, {"Fga", "Fgz"}, {"Fgb", "Fge"})},
  };
  return sk;
}

bool in_plus_half(const Halves& h, const std::string& label) {
  return std::find(h.plus.begin(), h.plus.end(), label) != h.plus.end();
}

// Brute force the half signs: sigma(i,j) is the sign carried by each
// cell's first half; row element products must be +1, column -1.
std::vector<std::vector<int>> solve_decorations(const Sketch& sk) {
  int cells = sk.m * sk.n;
  std::vector<std::vector<int>> sols;
  for (int bits = 0; bits < (1 << cells); ++bits) {
    std::vector<int> sigma(static_cast<size_t>(cells));
    for (int c = 0; c < cells; ++c) sigma[size_t(c)] = (bits >> c) & 1 ? 1 : -1;
    auto rsign = [&](int i, const std::string& k, int j) {
      int s = sigma[size_t(i * sk.n + j)];
      return in_plus_half(sk.cells[size_t(i)][size_t(j)].row, k) ? s : -s;
    };
    auto csign = [&](int j, const std::string& l, int i) {
      int s = sigma[size_t(i * sk.n + j)];
      return in_plus_half(sk.cells[size_t(i)][size_t(j)].col, l) ? s : -s;
    };
    bool ok = true;
    for (int i = 0; ok && i < sk.m; ++i) {
      for (const std::string& k : sk.row_pools[size_t(i)]) {
        int prod = 1;
        for (int j = 0; j < sk.n; ++j) prod *= rsign(i, k, j);
        if (prod != 1) {
          ok = false;
          break;
        }
      }
    }
    for (int j = 0; ok && j < sk.n; ++j) {
      for (const std::string& l : sk.col_pools[size_t(j)]) {
        int prod = 1;
        for (int i = 0; i < sk.m; ++i) prod *= csign(j, l, i);
        if (prod != -1) {
          ok = false;
          break;
        }
      }
    }
    if (ok) sols.push_back(std::move(sigma));
  }
  return sols;
}

std::pair<std::vector<Family>, std::vector<Family>> families_from_sketch(
    const Sketch& sk, const std::vector<int>& sigma) {
  std::vector<Family> rowv, colv;
  for (int i = 0; i < sk.m; ++i) {
    Family f;
    for (const std::string& k : sk.row_pools[size_t(i)]) {
      std::vector<int> vec;
      for (int j = 0; j < sk.n; ++j) {
        int s = sigma[size_t(i * sk.n + j)];
        vec.push_back(in_plus_half(sk.cells[size_t(i)][size_t(j)].row, k) ? s : -s);
      }
      f.push_back({k, std::move(vec)});
    }
    rowv.push_back(std::move(f));
  }
  for (int j = 0; j < sk.n; ++j) {
    Family f;
    for (const std::string& l : sk.col_pools[size_t(j)]) {
      std::vector<int> vec;
      for (int i = 0; i < sk.m; ++i) {
        int s = sigma[size_t(i * sk.n + j)];
        vec.push_back(in_plus_half(sk.cells[size_t(i)][size_t(j)].col, l) ? s : -s);
      }
      f.push_back({l, std::move(vec)});
    }
    colv.push_back(std::move(f));
  }
  return {rowv, colv};
}

std::vector<Sketch> all_sketches() {
  return {sk_minimal(), sk_identity_column(), sk_identity_diagonal(),
          sk_two_identity_cells(), sk_one_identity_cell()};
}

std::pair<std::vector<Family>, std::vector<Family>> maximal_families_33() {
  std::vector<Family> rows, cols;
  for (int i = 0; i < 3; ++i) {
    rows.push_back(
        semantic_family_labeled(3, +1, "E" + std::to_string(i) + "_"));
  }
  for (int j = 0; j < 3; ++j) {
    cols.push_back(
        semantic_family_labeled(3, -1, "F" + std::to_string(j) + "_"));
  }
  return {rows, cols};
}

ParityScenario scenario_drop_one_projector() {
  auto [rows, cols] = maximal_families_33();
  cols[0].pop_back();  // one column pool loses its last element
  return row_canonical(rows, cols, "drop-one-projector");
}

ParityScenario scenario_three_projector_row() {
  auto [rows, cols] = maximal_families_33();
  rows[0].pop_back();
  return row_canonical(rows, cols, "three-projector-row");
}

}  // namespace

ParityScenario scenario_2xn(int n) {
  if (n < 1) throw MalformedScenario("scenario_2xn: n must be at least 1");
  std::vector<Family> rows, cols;
  for (int i = 0; i < 2; ++i) {
    rows.push_back(
        semantic_family_labeled(n, +1, "E" + std::to_string(i) + "_"));
  }
  for (int j = 0; j < n; ++j) {
    cols.push_back(
        semantic_family_labeled(2, -1, "F" + std::to_string(j) + "_"));
  }
  return col_canonical(rows, cols, "2x" + std::to_string(n));
}

std::vector<CatalogEntry> builtin_scenarios() {
  std::vector<CatalogEntry> out;
  std::map<std::string, bool> reconstructed = {
      {"minimal", false},          {"identity-column", false},
      {"identity-diagonal", true}, {"two-identity-cells", true},
      {"one-identity-cell", true},
  };
  for (const Sketch& sk : all_sketches()) {
    auto sols = solve_decorations(sk);
    if (sols.empty()) {
      throw MalformedScenario("sketch " + sk.name + " admits no decoration");
    }
    auto [rowv, colv] = families_from_sketch(sk, sols.front());
    out.push_back(
        {sk.name, row_canonical(rowv, colv, sk.name), reconstructed[sk.name]});
  }
  out.push_back({"drop-one-projector", scenario_drop_one_projector(), false});
  out.push_back({"three-projector-row", scenario_three_projector_row(), true});
  return out;
}

std::vector<ParityScenario> decoration_variants(const std::string& name) {
  for (const Sketch& sk : all_sketches()) {
    if (sk.name != name) continue;
    std::vector<ParityScenario> out;
    for (const auto& sigma : solve_decorations(sk)) {
      auto [rowv, colv] = families_from_sketch(sk, sigma);
      out.push_back(row_canonical(rowv, colv, name));
    }
    return out;
  }
  return {};
}

TwoByNResult certify_2xn_odd(int n) {
  if (n < 1) throw MalformedScenario("certify_2xn_odd: n must be at least 1");
  TwoByNResult r;
  ParityScenario sc = scenario_2xn(n);
  r.cert = certify_scenario(sc, 0);
  if (n % 2 == 0) {
    // even width: perfect classical strategy exists, no parity obstacle
    GameSpec g = GameSpec::uniform(2, n);
    ClassicalTables tables = classical_oracle_tables(g);
    r.alice_table = tables.a;
    r.bob_table = tables.b;
    r.classical_value = double(tables.agreements) / double(2 * n);
    return r;
  }
  // coloring witness: per column, the term whose first-row sign is +1
  r.coloring.n = n;
  Family row_fams[2] = {semantic_family_labeled(n, +1, "E0_"),
                        semantic_family_labeled(n, +1, "E1_")};
  std::map<std::string, int> greens;
  for (int j = 0; j < n; ++j) {
    std::vector<std::string> g;
    for (int i = 0; i < 2; ++i) {
      int want = (i == 0) ? +1 : -1;  // green term pairs row0(+) with row1(-)
      for (const auto& [k, vec] : row_fams[i]) {
        if (vec[size_t(j)] == want) {
          g.push_back(k);
          ++greens[k];
        }
      }
    }
    r.coloring.green.push_back(std::move(g));
  }
  for (int i = 0; i < 2; ++i) {
    int parity = -1;
    for (const auto& [k, _] : row_fams[i]) {
      int p = greens[k] % 2;
      if (parity == -1) parity = p;
      else if (parity != p) {
        throw MalformedScenario("coloring parity is not constant across row " +
                                std::to_string(i));
      }
    }
    r.coloring.row_green_parity[size_t(i)] = parity;
  }
  return r;
}

// ---- numeric corroboration --------------------------------------------------

namespace {

// Rotates frame so its column k0 becomes psi (reflection, then a phase).
void aim_column(CMat& frame, Eigen::Index k0, const CVec& psi) {
  CVec u = frame.col(k0);
  cplx ph = u.dot(psi);  // conj(u) . psi
  double a = std::abs(ph);
  cplx phase = a > 1e-12 ? ph / a : cplx(1.0, 0.0);
  CVec target = psi * std::conj(phase);
  CVec w = target - u;
  double wn = w.norm();
  if (wn > 1e-12) {
    w /= wn;
    frame -= 2.0 * (w * (w.adjoint() * frame));
    frame.col(k0) *= phase;
  } else {
    frame.col(k0) = psi;
  }
}

}  // namespace

NumericHs numeric_hs(const ParityScenario& s, Eigen::Index dim, uint64_t seed,
                     const std::map<std::string, std::string>* witness,
                     Tolerance tol) {
  validate_scenario(s);
  if (dim <= 0) throw RealizationFailure("dimension must be positive");
  Rng rng(seed);
  CVec psi;
  if (witness) {
    psi = gaussian_vector(dim, rng);
    psi.normalize();
  }
  std::map<std::string, std::map<std::string, CMat>> real;
  for (const auto& [p, labels] : s.pools) {
    Eigen::Index count = Eigen::Index(labels.size());
    std::vector<Eigen::Index> ranks(static_cast<size_t>(count));
    for (Eigen::Index i = 0; i < count; ++i) {
      ranks[size_t(i)] = dim / count + (i < dim % count ? 1 : 0);
    }
    CMat frame = haar_unitary(dim, rng);
    if (witness) {
      auto it = witness->find(p);
      if (it == witness->end()) {
        throw RealizationFailure("witness lacks an assignment for pool " + p);
      }
      auto li = std::find(labels.begin(), labels.end(), it->second);
      if (li == labels.end()) {
        throw RealizationFailure("witness index " + it->second +
                                 " is not in pool " + p);
      }
      size_t wi = size_t(li - labels.begin());
      if (ranks[wi] == 0) {
        size_t big = size_t(std::max_element(ranks.begin(), ranks.end()) -
                            ranks.begin());
        std::swap(ranks[wi], ranks[big]);
      }
      Eigen::Index k0 = 0;
      for (size_t i = 0; i < wi; ++i) k0 += ranks[i];
      aim_column(frame, k0, psi);
    }
    std::map<std::string, CMat> blocks;
    Eigen::Index pos = 0;
    for (size_t i = 0; i < labels.size(); ++i) {
      CMat cols = frame.middleCols(pos, ranks[i]);
      blocks[labels[i]] = cols * cols.adjoint();
      pos += ranks[i];
    }
    real[p] = std::move(blocks);
  }

  std::vector<Subspace> con_spaces;
  for (const auto& con : s.constraints) {
    std::vector<Subspace> term_spaces;
    for (const Term& t : con) {
      std::vector<Subspace> claim_images;
      for (const auto& [p, claim] : t) {
        CMat sum = CMat::Zero(dim, dim);
        for (const std::string& lab : claim.indices) sum += real[p][lab];
        claim_images.push_back(image(sum, tol));
      }
      Subspace ts = intersect(claim_images, tol);
      if (ts.dim() > 0) term_spaces.push_back(std::move(ts));
    }
    if (term_spaces.empty()) {
      NumericHs out;
      out.hs = Subspace::zero(dim);
      out.witness_realized = false;
      return out;
    }
    con_spaces.push_back(span_union(term_spaces, tol));
  }
  NumericHs out;
  out.hs = con_spaces.empty() ? Subspace::full(dim) : intersect(con_spaces, tol);
  if (witness && out.hs.dim() > 0) {
    out.witness_realized = distance(out.hs, psi) < 1e-7;
  }
  return out;
}

}  // namespace magicrect
