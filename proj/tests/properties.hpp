// Seeded property harness shared by the standalone property runner and
// the acceptance binary. Every property draws at least 200 cases.
#pragma once

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "magicrect/integrate.hpp"
#include "magicrect/serialize.hpp"

namespace proptest {

using namespace magicrect;

struct Outcome {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;
};

namespace detail {

inline void fail(Outcome& o, const std::string& what) {
  ++o.failures;
  if (o.first_failure.empty()) o.first_failure = what;
}

struct SharedFixtures {
  GameSpec game;
  Strategy strategy;                 // the 3x3 fixture
  OperatorSetup setup;               // its maximal setup
  Strategy combined;                 // fixture (+) rotated fixture, equal weights
  OperatorSetup combined_setup;
  CanonicalSpace combined_space;

  SharedFixtures() {
    auto [s0, st0] = mermin_peres_fixture();
    game = s0.game;
    setup = std::move(s0);
    strategy = std::move(st0);
    Rng rng(42);
    Strategy rotated =
        rotate_solution(strategy, CMat::Identity(4, 4), haar_unitary(4, rng));
    IntegrationPlan plan;
    plan.game = game;
    plan.inputs = {{strategy, std::sqrt(0.5)}, {rotated, std::sqrt(0.5)}};
    combined = integrate(plan);
    combined_setup = setup_from_strategy(game, combined);
    combined_space = canonical_space(combined_setup);
  }
};

inline const SharedFixtures& shared() {
  static SharedFixtures f;
  return f;
}

// local rotations never change the winning value
inline Outcome prop_rotation_invariance() {
  Outcome o{"rotation invariance of the value"};
  const SharedFixtures& f = shared();
  Rng rng(101);
  for (int c = 0; c < 200; ++c) {
    ++o.cases;
    Strategy r =
        rotate_solution(f.strategy, haar_unitary(4, rng), haar_unitary(4, rng));
    double v = game_value(f.game, r);
    if (std::abs(v - 1.0) > 1e-8)
      fail(o, "rotated value " + std::to_string(v) + " at case " +
                  std::to_string(c));
  }
  return o;
}

// every unit vector of a canonical space plays perfectly
inline Outcome prop_members_are_perfect() {
  Outcome o{"canonical-space members win with certainty"};
  const SharedFixtures& f = shared();
  Rng rng(202);
  for (int c = 0; c < 200; ++c) {
    ++o.cases;
    CVec v = sample_unit(f.combined_space.subspace, rng);
    StateVector psi = make_state(8, 8, v);
    if (!membership(f.combined_space, psi).member) {
      fail(o, "sampled vector left the space at case " + std::to_string(c));
      continue;
    }
    Strategy st = strategy_with_state(f.combined_setup, psi);
    double val = game_value(f.game, st);
    if (val < 1.0 - 1e-7)
      fail(o, "member value " + std::to_string(val) + " at case " +
                  std::to_string(c));
  }
  return o;
}

// generic states sit outside the space and lose noticeably
inline Outcome prop_outsiders_are_imperfect() {
  Outcome o{"generic states are imperfect"};
  const SharedFixtures& f = shared();
  Rng rng(303);
  for (int c = 0; c < 200; ++c) {
    ++o.cases;
    CVec v = gaussian_vector(64, rng);
    v /= v.norm();
    StateVector psi = make_state(8, 8, v);
    if (membership(f.combined_space, psi).member) {
      fail(o, "random state claimed membership at case " + std::to_string(c));
      continue;
    }
    Strategy st = strategy_with_state(f.combined_setup, psi);
    double val = game_value(f.game, st);
    if (val >= 1.0 - 1e-4)
      fail(o, "outsider value " + std::to_string(val) + " at case " +
                  std::to_string(c));
  }
  return o;
}

// schmidt: descending positive values, unit square sum, exact rebuild
inline Outcome prop_schmidt_reconstruction() {
  Outcome o{"schmidt decomposition reconstructs the state"};
  Rng rng(404);
  for (int c = 0; c < 200; ++c) {
    ++o.cases;
    Eigen::Index da = 2 + (c % 3), db = 2 + (c % 4);
    CVec v = gaussian_vector(da * db, rng);
    v /= v.norm();
    StateVector psi = make_state(da, db, v);
    SchmidtData sd = schmidt(psi);
    double sq = 0.0;
    bool ok = true;
    for (Eigen::Index l = 0; l < sd.values.size(); ++l) {
      sq += sd.values(l) * sd.values(l);
      if (sd.values(l) < -1e-12) ok = false;
      if (l > 0 && sd.values(l) > sd.values(l - 1) + 1e-12) ok = false;
    }
    CMat m = CMat::Zero(da, db);
    for (Eigen::Index l = 0; l < sd.values.size(); ++l)
      m += sd.values(l) * sd.left.col(l) * sd.right.col(l).transpose();
    if (!ok || std::abs(sq - 1.0) > 1e-9 ||
        (m - state_matrix(psi)).norm() > 1e-9)
      fail(o, "schmidt failure at case " + std::to_string(c));
  }
  return o;
}

// index families: product target, balanced halves, semantic bijection
inline Outcome prop_index_families() {
  Outcome o{"index families keep the parity structure"};
  Rng rng(505);
  for (int c = 0; c < 200; ++c) {
    ++o.cases;
    int arity = 2 + int(rng() % 7);  // 2..8
    int target = (rng() % 2) ? 1 : -1;
    IndexSetFamily fam = build_index_sets(arity, target);
    int k = int(rng() % uint64_t(fam.pool_size()));
    int prod = 1;
    for (int sgn : fam.signs[size_t(k)]) prod *= sgn;
    int pos = int(rng() % uint64_t(arity));
    bool halves = int(fam.set_of(1, pos).size()) == fam.pool_size() / 2;
    bool bij = target != 1 || check_recursion_matches_semantics(arity).ok;
    if (prod != target || !halves || !bij)
      fail(o, "family failure at case " + std::to_string(c));
  }
  return o;
}

inline ParityScenario random_scenario(Rng& rng) {
  ParityScenario sc;
  sc.name = "random";
  const std::vector<std::string> pool_names = {"A", "B"};
  std::vector<std::vector<std::string>> labels(2);
  for (size_t p = 0; p < 2; ++p) {
    int size = 2 + int(rng() % 2);
    for (int k = 0; k < size; ++k)
      labels[p].push_back(pool_names[p] + std::to_string(k));
    sc.pools[pool_names[p]] = labels[p];
  }
  int ncons = 1 + int(rng() % 3);
  for (int ci = 0; ci < ncons; ++ci) {
    // one sign per index per constraint keeps the scenario well-formed
    std::vector<std::vector<int>> sign(2);
    for (size_t p = 0; p < 2; ++p)
      for (size_t k = 0; k < labels[p].size(); ++k)
        sign[p].push_back((rng() % 2) ? 1 : -1);
    std::vector<Term> con;
    int nterms = 1 + int(rng() % 3);
    for (int t = 0; t < nterms; ++t) {
      Term term;
      for (size_t p = 0; p < 2; ++p) {
        if (t > 0 && rng() % 3 == 0) continue;  // sometimes claim one pool only
        Claim c;
        size_t first = rng() % labels[p].size();
        c.indices.insert(labels[p][first]);
        for (size_t k = 0; k < labels[p].size(); ++k)
          if (rng() % 2) c.indices.insert(labels[p][k]);
        c.sign = sign[p][first];
        // a claim must be sign-pure within the constraint
        std::set<std::string> pure;
        for (const std::string& l : c.indices) {
          size_t k = size_t(std::find(labels[p].begin(), labels[p].end(), l) -
                            labels[p].begin());
          if (sign[p][k] == c.sign) pure.insert(l);
        }
        c.indices = std::move(pure);
        if (!c.indices.empty()) term[pool_names[p]] = std::move(c);
      }
      if (!term.empty()) con.push_back(std::move(term));
    }
    if (!con.empty()) sc.constraints.push_back(std::move(con));
  }
  if (sc.constraints.empty()) {
    Term t;
    t["A"] = Claim{{labels[0][0]}, 1};
    sc.constraints.push_back({t});
  }
  return sc;
}

// engine sanity on random scenarios: well-formed, deterministic,
// witnesses check out, verdicts survive serialization
inline Outcome prop_random_scenarios() {
  Outcome o{"parity engine is stable on random scenarios"};
  Rng rng(606);
  for (int c = 0; c < 200; ++c) {
    ++o.cases;
    ParityScenario sc = random_scenario(rng);
    try {
      validate_scenario(sc);
      Certificate c1 = certify_scenario(sc);
      Certificate c2 = certify_scenario(sc);
      if (c1.trace != c2.trace || c1.verdict != c2.verdict) {
        fail(o, "nondeterministic certify at case " + std::to_string(c));
        continue;
      }
      if (c1.verdict == Verdict::NoContradiction &&
          c1.trace == "satisfying assignment found") {
        for (size_t ci = 0; ci < sc.constraints.size(); ++ci) {
          const Term& t = sc.constraints[ci][size_t(c1.chosen_terms[ci])];
          for (const auto& [pool, claim] : t)
            if (!claim.indices.count(c1.assignment.at(pool)))
              fail(o, "witness misses a claim at case " + std::to_string(c));
        }
      }
      ParityScenario back = scenario_from_json(scenario_to_json(sc));
      Certificate c3 = certify_scenario(back);
      if (c3.trace != c1.trace)
        fail(o, "verdict changed after roundtrip at case " + std::to_string(c));
    } catch (const Error& e) {
      fail(o, std::string("exception at case ") + std::to_string(c) + ": " +
                  e.what());
    }
  }
  return o;
}

// oracle tables are valid and no random valid table beats them
inline Outcome prop_classical_optimality() {
  Outcome o{"classical oracle dominates random tables"};
  Rng rng(707);
  const std::vector<std::pair<int, int>> shapes = {
      {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 2}, {3, 3}, {2, 4}};
  for (int c = 0; c < 200; ++c) {
    ++o.cases;
    auto [m, n] = shapes[size_t(c) % shapes.size()];
    GameSpec g = GameSpec::uniform(m, n);
    ClassicalTables t = classical_oracle_tables(g);
    double best = classical_oracle(g);
    std::int64_t agree = 0;
    bool valid = true;
    for (int x = 0; x < m; ++x) {
      int rp = 1;
      for (int y = 0; y < n; ++y) rp *= t.a[x][y];
      valid = valid && rp == 1;
    }
    for (int y = 0; y < n; ++y) {
      int cp = 1;
      for (int x = 0; x < m; ++x) cp *= t.b[x][y];
      valid = valid && cp == -1;
    }
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < n; ++y)
        if (t.a[x][y] == t.b[x][y]) ++agree;
    if (!valid || agree != t.agreements ||
        std::abs(best - double(agree) / (m * n)) > 1e-12) {
      fail(o, "invalid oracle tables at case " + std::to_string(c));
      continue;
    }
    auto rows = valid_tuples(n, 1);
    auto cols = valid_tuples(m, -1);
    double sampled = 0.0;
    for (int x = 0; x < m; ++x) {
      const auto& ra = rows[rng() % rows.size()].signs;
      for (int y = 0; y < n; ++y) {
        const auto& cb = cols[rng() % cols.size()].signs;
        if (ra[size_t(y)] == cb[size_t(x)]) sampled += g.mu(x, y);
      }
    }
    if (sampled > best + 1e-12)
      fail(o, "random table beat the oracle at case " + std::to_string(c));
  }
  return o;
}

// per-cell decomposition holds at every cell for canonical members
inline Outcome prop_per_cell_form() {
  Outcome o{"per-cell product form reconstructs members"};
  const SharedFixtures& f = shared();
  Rng rng(808);
  for (int c = 0; c < 200; ++c) {
    ++o.cases;
    CVec v = sample_unit(f.combined_space.subspace, rng);
    StateVector psi = make_state(8, 8, v);
    int i = int(rng() % 3), j = int(rng() % 3);
    CellDecomposition d = per_cell_form(psi, f.combined_setup, i, j);
    CMat m = CMat::Zero(8, 8);
    for (size_t l = 0; l < d.alphas.size(); ++l)
      m += d.alphas[l] * d.left.col(Eigen::Index(l)) *
           d.right.col(Eigen::Index(l)).transpose();
    if (d.residual > 1e-8 || (m - state_matrix(psi)).norm() > 1e-8)
      fail(o, "cell form failed at case " + std::to_string(c));
  }
  return o;
}

}  // namespace detail

inline std::vector<Outcome> run_all_properties() {
  return {
      detail::prop_rotation_invariance(),
      detail::prop_members_are_perfect(),
      detail::prop_outsiders_are_imperfect(),
      detail::prop_schmidt_reconstruction(),
      detail::prop_index_families(),
      detail::prop_random_scenarios(),
      detail::prop_classical_optimality(),
      detail::prop_per_cell_form(),
  };
}

inline int report_properties(std::ostream& os,
                             const std::vector<Outcome>& results) {
  int bad = 0;
  for (const Outcome& o : results) {
    if (o.failures == 0) {
      os << "  ok: " << o.name << " (" << o.cases << " cases)\n";
    } else {
      ++bad;
      os << "  FAILED: " << o.name << " (" << o.failures << "/" << o.cases
         << " cases): " << o.first_failure << "\n";
    }
  }
  return bad;
}

}  // namespace proptest
