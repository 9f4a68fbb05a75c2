// Combines perfect strategies of the same game into one on direct-sum
// spaces: the shared state is the weighted sum of the embedded inputs,
// PVM elements are block direct sums padded back to completeness.
#pragma once

#include "magicrect/game.hpp"

namespace magicrect {

struct NotPerfectInput : Error {
  using Error::Error;
};
struct GameMismatch : Error {
  using Error::Error;
};
struct BadWeights : Error {
  using Error::Error;
};

struct IntegrationPlan {
  GameSpec game;
  std::vector<std::pair<Strategy, double>> inputs;  // (strategy, weight)
};

// Offsets of each input's block inside the enlarged factors.
struct Embedding {
  std::vector<Eigen::Index> offset_a, offset_b;
  Eigen::Index dim_a = 0, dim_b = 0;
};

Embedding plan_embedding(const IntegrationPlan& plan);

// Weights must be positive with unit square sum; inputs must all be
// perfect for plan.game. The result is perfect with Schmidt clusters
// scaled by the weights.
Strategy integrate(const IntegrationPlan& plan, Tolerance tol = {});

// Conjugates state and PVMs by local unitaries; the winning value is
// unchanged.
Strategy rotate_solution(const Strategy& s, const CMat& u_a, const CMat& u_b,
                         Tolerance tol = {});

}  // namespace magicrect
