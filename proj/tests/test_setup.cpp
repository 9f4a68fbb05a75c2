#include <doctest.h>

#include "magicrect/pqss.hpp"
#include "magicrect/setup.hpp"

using namespace magicrect;

namespace {

// 1x2 game setup on C^2 (x) C^1: Alice's single row pool carries the
// two valid row tuples, Bob's column pools are forced to the answer -1.
OperatorSetup one_by_two_setup() {
  GameSpec g = GameSpec::uniform(1, 2);
  CMat e0 = CMat::Zero(2, 2), e1 = CMat::Zero(2, 2);
  e0(0, 0) = 1;
  e1(1, 1) = 1;
  std::vector<std::vector<CMat>> rows = {{e0, e1}};
  std::vector<std::vector<CMat>> cols = {{CMat::Identity(1, 1)},
                                         {CMat::Identity(1, 1)}};
  return realize_setup(g, 2, 1, rows, cols);
}

}  // namespace

TEST_SUITE("setup") {

TEST_CASE("the 3x3 fixture is a realized maximal setup with a perfect strategy") {
  auto [setup, s] = mermin_peres_fixture();
  CHECK(setup.game.m == 3);
  CHECK(setup.game.n == 3);
  CHECK(setup.dim_a == 4);
  CHECK(setup.dim_b == 4);
  CHECK(setup.maximal());
  CHECK(setup.realized());
  for (const auto& pool : setup.rows) CHECK(pool.live_count() == 4);
  for (const auto& pool : setup.cols) CHECK(pool.live_count() == 4);

  validate_strategy(setup.game, s);
  CHECK(game_value(setup.game, s) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(is_perfect(setup.game, s));
}

TEST_CASE("parity projectors split each pool into complementary halves") {
  auto [setup, s] = mermin_peres_fixture();
  (void)s;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CMat plus = setup.parity_p(i, 1, j);
      CMat minus = setup.parity_p(i, -1, j);
      CHECK(is_projector(plus, 1e-10));
      CHECK(is_projector(minus, 1e-10));
      CHECK((plus + minus - CMat::Identity(4, 4)).norm() ==
            doctest::Approx(0.0).epsilon(1e-12));
      CHECK((plus * minus).norm() == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(is_projector(setup.parity_q(j, 1, i), 1e-10));
    }
  }
  CHECK_THROWS_AS(setup.parity_p(3, 1, 0), DimensionMismatch);
  CHECK_THROWS_AS(setup.parity_q(0, 1, 5), DimensionMismatch);
}

TEST_CASE("observables of the fixture square to identity and anticommute correctly") {
  auto [setup, s] = mermin_peres_fixture();
  (void)s;
  ObservableTable t = observables_from_setup(setup);
  REQUIRE(t.m == 3);
  REQUIRE(t.n == 3);
  CMat id = CMat::Identity(4, 4);
  for (int i = 0; i < 3; ++i) {
    CMat row_prod = id, col_prod = id;
    for (int j = 0; j < 3; ++j) {
      const CMat& a = t.at_a(i, j).op;
      CHECK(is_hermitian(a, 1e-10));
      CHECK((a * a - id).norm() == doctest::Approx(0.0).epsilon(1e-10));
      CHECK(!t.at_a(i, j).degenerate);
      CHECK(t.at_a(i, j).identity_sign == 0);
      row_prod = row_prod * a;
      col_prod = col_prod * t.at_b(j, i).op;
    }
    CHECK((row_prod - id).norm() == doctest::Approx(0.0).epsilon(1e-10));
    CHECK((col_prod + id).norm() == doctest::Approx(0.0).epsilon(1e-10));
  }
  // Alice's and Bob's observables at one cell are elementwise transposes
  CHECK((t.at_b(1, 2).op - t.at_a(1, 2).op.transpose()).norm() ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("a forced answer makes the observable a negative identity") {
  OperatorSetup s = one_by_two_setup();
  CHECK(s.realized());
  ObservableTable t = observables_from_setup(s);
  for (int j = 0; j < 2; ++j) {
    CHECK(t.at_b(0, j).degenerate);  // the +1 half of the pool is empty
    CHECK(t.at_b(0, j).identity_sign == -1);
  }
  CHECK(t.at_a(0, 0).identity_sign == 0);
}

TEST_CASE("realize_setup rejects malformed pools") {
  GameSpec g = GameSpec::uniform(1, 2);
  CMat half = 0.5 * CMat::Identity(2, 2);
  CMat e0 = CMat::Zero(2, 2), e1 = CMat::Zero(2, 2);
  e0(0, 0) = 1;
  e1(1, 1) = 1;
  std::vector<std::vector<CMat>> cols = {{CMat::Identity(1, 1)},
                                         {CMat::Identity(1, 1)}};
  SUBCASE("not a projector") {
    CHECK_THROWS_AS(realize_setup(g, 2, 1, {{half, e1}}, cols), InvalidPool);
  }
  SUBCASE("not orthogonal") {
    CHECK_THROWS_AS(realize_setup(g, 2, 1, {{e0, e0}}, cols), InvalidPool);
  }
  SUBCASE("wrong pool size") {
    CHECK_THROWS_AS(realize_setup(g, 2, 1, {{e0, e1, e0, e1}}, cols), Error);
  }
}

TEST_CASE("zeroing one column-pool element is a legal reduction") {
  auto [setup, s] = mermin_peres_fixture();
  (void)s;
  // column pool 0, element 3 is the tuple (-,-,-); every half keeps an
  // element, so all three restrictions hold
  OperatorSetup r = reduce(setup, {Victim{false, 0, 3}});
  CHECK(r.cols[0].live_count() == 3);
  CHECK(r.cols[0].reduced[3] == 1);
  CHECK(r.cols[0].ops[3].norm() == 0.0);
  CHECK(!r.realized());
  CHECK(!r.maximal());
  // the untouched pools are unchanged
  CHECK(r.rows[0].live_count() == 4);
  CHECK(r.cols[1].live_count() == 4);
}

TEST_CASE("reductions violating the restrictions are rejected") {
  auto [setup, s] = mermin_peres_fixture();
  (void)s;
  SUBCASE("killing a whole pool trips restriction 1") {
    std::vector<Victim> all;
    for (int k = 0; k < 4; ++k) all.push_back(Victim{false, 0, k});
    CHECK_THROWS_WITH_AS(reduce(setup, all),
                         doctest::Contains("restriction 1"), RuleViolation);
  }
  SUBCASE("emptying one half of a cell trips restriction 2") {
    // column pool 0 loses both elements with sign -1 at row 0: Q_{0,-}(0)
    // dies while its partner P_{0,-}(0) stays live
    std::vector<Victim> half;
    auto tuples = valid_tuples(3, -1);
    for (int k = 0; k < 4; ++k)
      if (tuples[k].signs[0] == -1) half.push_back(Victim{false, 0, k});
    REQUIRE(half.size() == 2);
    CHECK_THROWS_WITH_AS(reduce(setup, half),
                         doctest::Contains("restriction 2"), RuleViolation);
  }
  SUBCASE("out-of-range victims are rejected") {
    CHECK_THROWS_AS(reduce(setup, {Victim{true, 9, 0}}), RuleViolation);
  }
}

TEST_CASE("setup read off the fixture strategy reproduces the fixture") {
  auto [setup, s] = mermin_peres_fixture();
  OperatorSetup r = setup_from_strategy(setup.game, s);
  CHECK(r.realized());
  CHECK(r.maximal());
  for (int i = 0; i < 3; ++i)
    for (size_t k = 0; k < 4; ++k)
      CHECK((r.rows[i].ops[k] - setup.rows[i].ops[k]).norm() ==
            doctest::Approx(0.0).epsilon(1e-12));
  // a strategy with an outcome no semantic family contains is rejected
  Strategy bad = s;
  bad.alice[0][0].first = OutcomeTuple{{1, 1, -1}};  // product -1 in a row
  CHECK_THROWS_AS(setup_from_strategy(setup.game, bad), Error);
}

}  // TEST_SUITE
