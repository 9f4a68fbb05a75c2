#include <doctest.h>

#include "magicrect/pqss.hpp"

using namespace magicrect;

namespace {

StateVector product_state_44() {
  CVec v = CVec::Zero(16);
  v(0) = 1;  // |0>|0>
  return make_state(4, 4, v);
}

}  // namespace

TEST_SUITE("pqss") {

TEST_CASE("cell projectors of the fixture fix the shared state") {
  auto [setup, s] = mermin_peres_fixture();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CMat pi = cell_projector(setup, i, j);
      REQUIRE(pi.rows() == 16);
      CHECK(is_projector(pi, 1e-10));
      CHECK((pi * s.state.amplitudes - s.state.amplitudes).norm() ==
            doctest::Approx(0.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("the fixture's canonical space is the line through its state") {
  auto [setup, s] = mermin_peres_fixture();
  CanonicalSpace cs = canonical_space(setup);
  CHECK(cs.subspace.ambient == 16);
  CHECK(cs.subspace.dim() == 1);

  MembershipResult in = membership(cs, s.state);
  CHECK(in.member);
  CHECK(in.distance == doctest::Approx(0.0).epsilon(1e-10));

  MembershipResult out = membership(cs, product_state_44());
  CHECK(!out.member);
  CHECK(out.distance > 0.5);
}

TEST_CASE("sign blocks compose the cell projectors") {
  auto [setup, s] = mermin_peres_fixture();
  (void)s;
  CanonicalSpace cs = canonical_space(setup);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK((cs.block(i, j, 1) + cs.block(i, j, -1) - cs.cell(i, j)).norm() ==
            doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("schmidt clusters of the fixture: one maximally entangled block") {
  auto [setup, s] = mermin_peres_fixture();
  SchmidtAnalysis an = schmidt_clusters(s.state, setup);
  REQUIRE(an.clusters.size() == 1);
  const SchmidtCluster& c = an.clusters[0];
  CHECK(c.schmidt_rank == 4);
  CHECK(c.sigma == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(c.beta == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(c.perfect);
  CHECK(c.reduced_membership_ok);
  REQUIRE(c.row_configurations.size() == 3);
  for (const auto& row : c.row_configurations) CHECK(row.size() == 4);
  REQUIRE(c.effective_columns.size() == 3);
  for (const auto& col : c.effective_columns) CHECK(col.size() == 4);
  // the cluster state reproduces the input up to phase
  CHECK(std::abs(c.psi.amplitudes.dot(s.state.amplitudes)) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("states outside the canonical space are rejected") {
  auto [setup, s] = mermin_peres_fixture();
  (void)s;
  CHECK_THROWS_AS(schmidt_clusters(product_state_44(), setup), NotAPQSS);
}

TEST_CASE("per-cell decomposition reconstructs the state") {
  auto [setup, s] = mermin_peres_fixture();
  CMat m = state_matrix(s.state);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CellDecomposition d = per_cell_form(s.state, setup, i, j);
      CHECK(d.residual == doctest::Approx(0.0).epsilon(1e-9));
      REQUIRE(d.alphas.size() == d.deltas.size());
      REQUIRE(Eigen::Index(d.alphas.size()) == d.left.cols());
      CMat rebuilt = CMat::Zero(4, 4);
      double sq = 0.0;
      for (size_t l = 0; l < d.alphas.size(); ++l) {
        CHECK(d.alphas[l] > 0.0);
        CHECK((d.deltas[l] == 1 || d.deltas[l] == -1));
        // each factor lives in its delta-half of the cell
        CMat p = setup.parity_p(i, d.deltas[l], j);
        CMat q = setup.parity_q(j, d.deltas[l], i);
        CHECK((p * d.left.col(l) - d.left.col(l)).norm() ==
              doctest::Approx(0.0).epsilon(1e-9));
        CHECK((q * d.right.col(l) - d.right.col(l)).norm() ==
              doctest::Approx(0.0).epsilon(1e-9));
        rebuilt += d.alphas[l] * d.left.col(l) * d.right.col(l).transpose();
        sq += d.alphas[l] * d.alphas[l];
      }
      CHECK((rebuilt - m).norm() == doctest::Approx(0.0).epsilon(1e-9));
      CHECK(sq == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("a forced-answer game still has a nonzero canonical space") {
  // 1x2 game: Bob must answer -1; Alice needs matching rows, so perfect
  // states exist (the classical value is 1)
  GameSpec g = GameSpec::uniform(1, 2);
  CMat e0 = CMat::Zero(2, 2), e1 = CMat::Zero(2, 2);
  e0(0, 0) = 1;
  e1(1, 1) = 1;
  OperatorSetup s = realize_setup(g, 2, 1, {{e0, e1}},
                                  {{CMat::Identity(1, 1)}, {CMat::Identity(1, 1)}});
  CanonicalSpace cs = canonical_space(s);
  CHECK(cs.subspace.dim() == 1);  // only the (-,-) Alice row survives

  CVec v = CVec::Zero(2);
  v(1) = 1;
  StateVector psi = make_state(2, 1, v);
  CHECK(membership(cs, psi).member);
  Strategy st = strategy_with_state(s, psi);
  validate_strategy(g, st);
  CHECK(game_value(g, st) == doctest::Approx(1.0));
}

TEST_CASE("strategy_with_state reproduces the fixture's measurements") {
  auto [setup, s] = mermin_peres_fixture();
  Strategy st = strategy_with_state(setup, s.state);
  validate_strategy(setup.game, st);
  CHECK(game_value(setup.game, st) == doctest::Approx(1.0).epsilon(1e-12));
}

}  // TEST_SUITE
