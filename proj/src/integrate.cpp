#include "magicrect/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace magicrect {

Embedding plan_embedding(const IntegrationPlan& plan) {
  Embedding e;
  for (const auto& [s, w] : plan.inputs) {
    (void)w;
    e.offset_a.push_back(e.dim_a);
    e.offset_b.push_back(e.dim_b);
    e.dim_a += s.state.dim_a;
    e.dim_b += s.state.dim_b;
  }
  return e;
}

namespace {

// Direct sum of one side's PVMs across inputs, padded so the
// lexicographically first valid outcome absorbs the leftover identity.
std::vector<std::vector<std::pair<OutcomeTuple, CMat>>> integrate_side(
    const IntegrationPlan& plan, bool alice_side, Eigen::Index total_dim,
    const std::vector<Eigen::Index>& offsets, int questions, int answers,
    int target) {
  std::vector<std::vector<std::pair<OutcomeTuple, CMat>>> out;
  OutcomeTuple designated = valid_tuples(answers, target).front();
  for (int q = 0; q < questions; ++q) {
    std::set<OutcomeTuple> tuples;
    tuples.insert(designated);
    for (const auto& [s, w] : plan.inputs) {
      (void)w;
      const auto& pvm = alice_side ? s.alice[size_t(q)] : s.bob[size_t(q)];
      for (const auto& [t, op] : pvm) {
        (void)op;
        tuples.insert(t);
      }
    }
    std::vector<std::pair<OutcomeTuple, CMat>> merged;
    CMat total = CMat::Zero(total_dim, total_dim);
    for (const OutcomeTuple& t : tuples) {
      CMat e = CMat::Zero(total_dim, total_dim);
      for (size_t k = 0; k < plan.inputs.size(); ++k) {
        const Strategy& s = plan.inputs[k].first;
        const auto& pvm = alice_side ? s.alice[size_t(q)] : s.bob[size_t(q)];
        Eigen::Index d = alice_side ? s.state.dim_a : s.state.dim_b;
        for (const auto& [st, op] : pvm) {
          if (st == t) {
            e.block(offsets[k], offsets[k], d, d) = op;
            break;
          }
        }
      }
      total += e;
      merged.push_back({t, std::move(e)});
    }
    for (auto& [t, e] : merged) {
      if (t == designated) {
        e += CMat::Identity(total_dim, total_dim) - total;
        break;
      }
    }
    out.push_back(std::move(merged));
  }
  return out;
}

}  // namespace

Strategy integrate(const IntegrationPlan& plan, Tolerance tol) {
  if (plan.inputs.empty()) {
    throw BadWeights("integration needs at least one input");
  }
  double wsum = 0.0;
  for (const auto& [s, w] : plan.inputs) {
    (void)s;
    if (w <= 0.0) throw BadWeights("integration weights must be positive");
    wsum += w * w;
  }
  if (std::abs(wsum - 1.0) > 1000.0 * tol.eps) {
    throw BadWeights("integration weights must have unit square sum, got " +
                     std::to_string(wsum));
  }
  for (size_t k = 0; k < plan.inputs.size(); ++k) {
    const Strategy& s = plan.inputs[k].first;
    if (int(s.alice.size()) != plan.game.m || int(s.bob.size()) != plan.game.n) {
      throw GameMismatch("input " + std::to_string(k) +
                         " does not play a " + std::to_string(plan.game.m) +
                         "x" + std::to_string(plan.game.n) + " game");
    }
    double v = game_value(plan.game, s, tol);
    if (std::abs(v - 1.0) > 1000.0 * tol.eps) {
      throw NotPerfectInput("input " + std::to_string(k) +
                            " has winning value " + std::to_string(v));
    }
  }

  Embedding emb = plan_embedding(plan);
  CVec amps = CVec::Zero(emb.dim_a * emb.dim_b);
  for (size_t k = 0; k < plan.inputs.size(); ++k) {
    const auto& [s, w] = plan.inputs[k];
    for (Eigen::Index a = 0; a < s.state.dim_a; ++a) {
      for (Eigen::Index b = 0; b < s.state.dim_b; ++b) {
        amps((emb.offset_a[k] + a) * emb.dim_b + (emb.offset_b[k] + b)) =
            w * s.state.amplitudes(a * s.state.dim_b + b);
      }
    }
  }
  amps /= amps.norm();  // weights may be off by up to the BadWeights slack
  Strategy out;
  out.state = make_state(emb.dim_a, emb.dim_b, amps, tol);
  out.alice = integrate_side(plan, true, emb.dim_a, emb.offset_a, plan.game.m,
                             plan.game.n, +1);
  out.bob = integrate_side(plan, false, emb.dim_b, emb.offset_b, plan.game.n,
                           plan.game.m, -1);
  return out;
}

Strategy rotate_solution(const Strategy& s, const CMat& u_a, const CMat& u_b,
                         Tolerance tol) {
  Eigen::Index da = s.state.dim_a, db = s.state.dim_b;
  if (u_a.rows() != da || u_a.cols() != da || u_b.rows() != db ||
      u_b.cols() != db) {
    throw DimensionMismatch("rotation unitaries do not match the state");
  }
  auto check_unitary = [&](const CMat& u, Eigen::Index dim, const char* side) {
    if ((u.adjoint() * u - CMat::Identity(dim, dim)).norm() >
        10.0 * tol.eps * double(dim)) {
      throw NotUnitary(std::string("rotation for side ") + side +
                       " is not unitary");
    }
  };
  check_unitary(u_a, da, "A");
  check_unitary(u_b, db, "B");
  Strategy out;
  out.state = state_from_matrix(u_a * state_matrix(s.state) * u_b.transpose());
  for (const auto& pvm : s.alice) {
    std::vector<std::pair<OutcomeTuple, CMat>> np;
    for (const auto& [t, op] : pvm) np.push_back({t, u_a * op * u_a.adjoint()});
    out.alice.push_back(std::move(np));
  }
  for (const auto& pvm : s.bob) {
    std::vector<std::pair<OutcomeTuple, CMat>> np;
    for (const auto& [t, op] : pvm) np.push_back({t, u_b * op * u_b.adjoint()});
    out.bob.push_back(std::move(np));
  }
  return out;
}

}  // namespace magicrect
