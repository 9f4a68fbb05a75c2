#include <doctest.h>

#include "magicrect/inequality.hpp"

using namespace magicrect;

namespace {

// Scalar evaluation for deterministic sign tables a, b (both m x n,
// b[x][y] = Bob's answer for row x at column y): correlations plus
// Alice's row products minus Bob's column products.
double table_value(const std::vector<std::vector<int>>& a,
                   const std::vector<std::vector<int>>& b) {
  int m = int(a.size()), n = int(a[0].size());
  double total = 0.0;
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < n; ++y) total += a[x][y] * b[x][y];
  for (int x = 0; x < m; ++x) {
    int p = 1;
    for (int y = 0; y < n; ++y) p *= a[x][y];
    total += p;
  }
  for (int y = 0; y < n; ++y) {
    int p = 1;
    for (int x = 0; x < m; ++x) p *= b[x][y];
    total -= p;
  }
  return total;
}

InequalityInput identity_input_33() {
  InequalityInput in;
  CVec v = CVec::Zero(4);
  v(0) = 1;
  in.state = make_state(2, 2, v);
  in.tables.m = 3;
  in.tables.n = 3;
  in.tables.a.assign(9, ObservableCell{CMat::Identity(2, 2), false, 1});
  in.tables.b.assign(9, ObservableCell{CMat::Identity(2, 2), false, 1});
  return in;
}

InequalityInput table_input(const std::vector<std::vector<int>>& a,
                            const std::vector<std::vector<int>>& b) {
  InequalityInput in;
  CVec one(1);
  one << 1;
  in.state = make_state(1, 1, one);
  int m = int(a.size()), n = int(a[0].size());
  in.tables.m = m;
  in.tables.n = n;
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < n; ++y) {
      in.tables.a.push_back(
          ObservableCell{double(a[x][y]) * CMat::Identity(1, 1), false, a[x][y]});
      in.tables.b.push_back(
          ObservableCell{double(b[x][y]) * CMat::Identity(1, 1), false, b[x][y]});
    }
  return in;
}

}  // namespace

TEST_SUITE("inequality") {

TEST_CASE("the fixture reaches 15 and the printed placement gives 3") {
  auto [setup, s] = mermin_peres_fixture();
  InequalityInput in = inequality_from_strategy(setup.game, s);
  InequalityBreakdown b = inequality_report(in);
  CHECK(b.correlations == doctest::Approx(9.0).epsilon(1e-10));
  CHECK(b.products_a == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(b.products_b == doctest::Approx(-3.0).epsilon(1e-10));
  CHECK(b.total == doctest::Approx(15.0).epsilon(1e-10));
  for (double c : b.per_cell) CHECK(c == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(inequality_value(in) == doctest::Approx(15.0).epsilon(1e-10));
  CHECK(inequality_value(in, true) == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("the all-identity table scores exactly 9") {
  InequalityInput in = identity_input_33();
  InequalityBreakdown b = inequality_report(in);
  CHECK(b.correlations == doctest::Approx(9.0));
  CHECK(b.products_a == doctest::Approx(3.0));
  CHECK(b.products_b == doctest::Approx(3.0));
  CHECK(b.total == doctest::Approx(9.0));
}

TEST_CASE("deterministic tables peak at 13 on the 3x3 shape") {
  double best = -1e9;
  std::vector<std::vector<int>> a(3, std::vector<int>(3)),
      b(3, std::vector<int>(3));
  for (int bits_a = 0; bits_a < 512; ++bits_a) {
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) a[x][y] = (bits_a >> (3 * x + y)) & 1 ? 1 : -1;
    for (int bits_b = 0; bits_b < 512; ++bits_b) {
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
          b[x][y] = (bits_b >> (3 * x + y)) & 1 ? 1 : -1;
      best = std::max(best, table_value(a, b));
    }
  }
  CHECK(best == doctest::Approx(13.0));
}

TEST_CASE("matrix evaluation agrees with the scalar formula on sign tables") {
  std::vector<std::vector<int>> a = {{1, -1, 1}, {1, 1, 1}, {-1, 1, -1}};
  std::vector<std::vector<int>> b = {{1, 1, 1}, {-1, 1, -1}, {1, -1, -1}};
  InequalityInput in = table_input(a, b);
  CHECK(inequality_value(in) == doctest::Approx(table_value(a, b)));
}

TEST_CASE("inputs that are not commuting involutions are rejected") {
  InequalityInput in = identity_input_33();
  SUBCASE("not an involution") {
    in.tables.a[0].op = 0.5 * CMat::Identity(2, 2);
    CHECK_THROWS_AS(inequality_report(in), Error);
  }
  SUBCASE("row mates must commute") {
    CMat x(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    in.tables.a[0].op = x;  // cell (0,0)
    in.tables.a[1].op = z;  // cell (0,1): XZ != ZX
    CHECK_THROWS_AS(inequality_report(in), Error);
  }
}

TEST_CASE("breakdown term counts follow the placement convention") {
  auto [setup, s] = mermin_peres_fixture();
  InequalityInput in = inequality_from_strategy(setup.game, s);
  InequalityBreakdown def = inequality_report(in);
  CHECK(def.per_cell.size() == 9);
  CHECK(def.per_a.size() == 3);
  CHECK(def.per_b.size() == 3);
  InequalityBreakdown pr = inequality_report(in, true);
  CHECK(pr.per_a.size() == 3);
  CHECK(pr.total == doctest::Approx(3.0).epsilon(1e-10));
}

}  // TEST_SUITE
