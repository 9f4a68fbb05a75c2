// Canonical space of perfect solution states for an operator setup:
// per-cell sign-block projectors, their intersection, membership tests,
// and the Schmidt cluster analysis that splits a perfect state into
// maximally entangled components.
#pragma once

#include "magicrect/setup.hpp"

namespace magicrect {

struct NotAPQSS : Error {
  using Error::Error;
};

struct CanonicalSpace {
  int m = 0, n = 0;
  Eigen::Index dim_a = 0, dim_b = 0;
  Subspace subspace;                      // on dim_a * dim_b
  std::vector<CMat> cells;                // row-major m*n projectors
  std::vector<std::array<CMat, 2>> sign_blocks;  // [0]: delta +1, [1]: -1

  const CMat& cell(int i, int j) const { return cells[size_t(i) * n + j]; }
  // The delta-labelled block P (x) Q of a cell; sgn(block) = delta.
  const CMat& block(int i, int j, int delta) const {
    return sign_blocks[size_t(i) * n + j][delta > 0 ? 0 : 1];
  }
};

// Pi_ij = sum over delta of P_{i,delta(j)} (x) Q_{j,delta(i)}. Throws
// InvalidSetup when every sign block of the cell vanishes.
CMat cell_projector(const OperatorSetup& s, int i, int j, Tolerance tol = {});

// Intersection over all cells of image(Pi_ij); exactly the perfect
// solution states of the setup.
CanonicalSpace canonical_space(const OperatorSetup& s, Tolerance tol = {});

struct MembershipResult {
  bool member = false;
  double distance = 0.0;
};

MembershipResult membership(const CanonicalSpace& space, const StateVector& psi,
                            Tolerance tol = {});

struct SchmidtCluster {
  double beta = 0.0;            // sigma * sqrt(multiplicity)
  double sigma = 0.0;           // shared singular value of the modes
  Eigen::Index schmidt_rank = 0;
  StateVector psi;              // normalized, maximally entangled component
  // Per row i: the sign tuples whose projectors keep a foothold on psi.
  std::vector<std::vector<OutcomeTuple>> row_configurations;
  // Per column j: ids of pool elements still acting nontrivially on psi.
  std::vector<std::vector<int>> effective_columns;
  bool reduced_membership_ok = false;  // psi lies in the canonical space
                                       // of the setup cut to those ids
  bool perfect = false;                // psi lies in the input's space
};

struct SchmidtAnalysis {
  std::vector<SchmidtCluster> clusters;
};

// Groups the Schmidt modes of psi by equal singular value (merge window
// 2*tol.eps) and verifies each cluster is itself a perfect state of a
// setup no larger than the input. Throws NotAPQSS when psi is not in
// the canonical space.
SchmidtAnalysis schmidt_clusters(const StateVector& psi,
                                 const OperatorSetup& s, Tolerance tol = {});

struct CellDecomposition {
  std::vector<double> alphas;  // positive weights
  std::vector<int> deltas;     // sign label of each term's block
  CMat left;                   // dim_a x L, columns phi_l
  CMat right;                  // dim_b x L, columns chi_l
  double residual = 0.0;       // reconstruction error
};

// psi = sum_l alpha_l phi_l (x) chi_l with P_{i,delta_l} phi_l = phi_l
// and Q_{j,delta_l} chi_l = chi_l, for one cell (i,j).
CellDecomposition per_cell_form(const StateVector& psi, const OperatorSetup& s,
                                int i, int j, Tolerance tol = {});

// The strategy that measures the setup's pools on the given state.
Strategy strategy_with_state(const OperatorSetup& s, const StateVector& psi);

}  // namespace magicrect
