#include "magicrect/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace magicrect {

GameSpec GameSpec::uniform(int m, int n) {
  GameSpec g;
  g.m = m;
  g.n = n;
  g.mu = Eigen::MatrixXd::Constant(m, n, 1.0 / (double(m) * double(n)));
  return g;
}

int OutcomeTuple::product() const {
  int p = 1;
  for (int s : signs) p *= s;
  return p;
}

std::vector<OutcomeTuple> valid_tuples(int length, int target_product) {
  std::vector<OutcomeTuple> out;
  const std::uint64_t total = std::uint64_t(1) << length;
  // ascending bit patterns with the high bit at position 0 give
  // lexicographic order with +1 before -1
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    OutcomeTuple t;
    t.signs.resize(length);
    for (int i = 0; i < length; ++i)
      t.signs[i] = (bits >> (length - 1 - i)) & 1 ? -1 : 1;
    if (t.product() == target_product) out.push_back(std::move(t));
  }
  return out;
}

bool predicate(const OutcomeTuple& a, const OutcomeTuple& b, int x, int y) {
  if (y < 0 || y >= int(a.signs.size()) || x < 0 || x >= int(b.signs.size()))
    throw LengthMismatch("predicate: question index outside answer length");
  return a.product() == 1 && b.product() == -1 && a.signs[y] == b.signs[x];
}

namespace {

void validate_pvm(const std::vector<std::pair<OutcomeTuple, CMat>>& pvm,
                  Eigen::Index dim, int answer_len, double eps,
                  const char* side) {
  if (pvm.empty())
    throw InvalidStrategy(std::string(side) + ": question has no outcomes");
  CMat sum = CMat::Zero(dim, dim);
  for (size_t i = 0; i < pvm.size(); ++i) {
    const auto& [outcome, e] = pvm[i];
    if (int(outcome.signs.size()) != answer_len)
      throw LengthMismatch(std::string(side) + ": outcome length mismatch");
    if (e.rows() != dim || e.cols() != dim)
      throw InvalidStrategy(std::string(side) + ": PVM element dimension mismatch");
    if (!is_projector(e, eps))
      throw InvalidStrategy(std::string(side) + ": PVM element is not a projector");
    for (size_t j = i + 1; j < pvm.size(); ++j) {
      if (pvm[j].first == outcome)
        throw InvalidStrategy(std::string(side) + ": duplicate outcome");
      if ((e * pvm[j].second).norm() > eps)
        throw InvalidStrategy(std::string(side) + ": PVM elements not orthogonal");
    }
    sum += e;
  }
  if ((sum - CMat::Identity(dim, dim)).norm() > eps)
    throw InvalidStrategy(std::string(side) + ": PVM does not sum to identity");
}

}  // namespace

void validate_strategy(const GameSpec& g, const Strategy& s, Tolerance tol) {
  if (int(s.alice.size()) != g.m || int(s.bob.size()) != g.n)
    throw DimensionMismatch("strategy question count differs from game size");
  if (s.state.amplitudes.size() != s.state.dim_a * s.state.dim_b)
    throw DimensionMismatch("strategy state has inconsistent dimensions");
  if (std::abs(s.state.amplitudes.norm() - 1.0) > tol.eps)
    throw InvalidStrategy("strategy state is not normalized");
  // validation tolerance scales with ambient dimension
  const double eps = 10.0 * tol.eps * std::sqrt(double(s.state.dim_a));
  for (int x = 0; x < g.m; ++x)
    validate_pvm(s.alice[x], s.state.dim_a, g.n, eps, "alice");
  const double epsb = 10.0 * tol.eps * std::sqrt(double(s.state.dim_b));
  for (int y = 0; y < g.n; ++y)
    validate_pvm(s.bob[y], s.state.dim_b, g.m, epsb, "bob");
}

namespace {

// <psi| E (x) F |psi> via the reshaped state: sum conj(M) o (E M F^T)
double pair_expectation(const CMat& m, const CMat& e, const CMat& f) {
  return (m.conjugate().cwiseProduct(e * m * f.transpose())).sum().real();
}

const CMat* find_outcome(const std::vector<std::pair<OutcomeTuple, CMat>>& pvm,
                         const OutcomeTuple& o) {
  for (const auto& [outcome, mat] : pvm)
    if (outcome == o) return &mat;
  return nullptr;
}

}  // namespace

double correlation(const Strategy& s, const OutcomeTuple& a,
                   const OutcomeTuple& b, int x, int y, Tolerance tol) {
  if (x < 0 || x >= int(s.alice.size()) || y < 0 || y >= int(s.bob.size()))
    throw DimensionMismatch("correlation: question index out of range");
  const CMat* e = find_outcome(s.alice[x], a);
  const CMat* f = find_outcome(s.bob[y], b);
  if (e == nullptr || f == nullptr) return 0.0;  // outside stored support
  const double eps = 10.0 * tol.eps * std::sqrt(double(s.state.dim_a));
  if (!is_projector(*e, eps) || !is_projector(*f, eps))
    throw InvalidStrategy("correlation: measurement element is not a projector");
  const double p = pair_expectation(state_matrix(s.state), *e, *f);
  return std::clamp(p, 0.0, 1.0);
}

double game_value(const GameSpec& g, const Strategy& s, Tolerance tol) {
  validate_strategy(g, s, tol);
  const CMat m = state_matrix(s.state);
  double value = 0.0;
  for (int x = 0; x < g.m; ++x) {
    for (int y = 0; y < g.n; ++y) {
      double win = 0.0;
      for (const auto& [a, e] : s.alice[x]) {
        if (a.product() != 1) continue;
        for (const auto& [b, f] : s.bob[y]) {
          if (b.product() != -1 || a.signs[y] != b.signs[x]) continue;
          win += std::clamp(pair_expectation(m, e, f), 0.0, 1.0);
        }
      }
      value += g.mu(x, y) * win;
    }
  }
  return value;
}

bool is_perfect(const GameSpec& g, const Strategy& s, Tolerance tol) {
  return game_value(g, s, tol) >= 1.0 - tol.eps;
}

namespace {

struct Enumeration {
  std::vector<OutcomeTuple> rows;  // valid Alice rows (product +1)
  std::vector<OutcomeTuple> cols;  // valid Bob columns (product -1)
};

Enumeration enums_for(const GameSpec& g) {
  if (std::uint64_t(g.m) * std::uint64_t(std::max(g.n - 1, 0)) > 26)
    throw TooLarge("classical_oracle: table enumeration too large");
  return {valid_tuples(g.n, 1), valid_tuples(g.m, -1)};
}

}  // namespace

ClassicalTables classical_oracle_tables(const GameSpec& g) {
  const Enumeration en = enums_for(g);
  const std::uint64_t per_row = en.rows.size();
  std::uint64_t tables = 1;
  for (int i = 0; i < g.m; ++i) tables *= per_row;

  double best = -1.0;
  ClassicalTables out;
  std::vector<int> choice(g.m, 0);
  for (std::uint64_t t = 0; t < tables; ++t) {
    std::uint64_t r = t;
    for (int i = 0; i < g.m; ++i) {
      choice[i] = int(r % per_row);
      r /= per_row;
    }
    double total = 0.0;
    std::vector<int> col_pick(g.n, 0);
    for (int y = 0; y < g.n; ++y) {
      double col_best = -1.0;
      for (size_t c = 0; c < en.cols.size(); ++c) {
        double v = 0.0;
        for (int x = 0; x < g.m; ++x)
          if (en.rows[choice[x]].signs[y] == en.cols[c].signs[x])
            v += g.mu(x, y);
        if (v > col_best) {
          col_best = v;
          col_pick[y] = int(c);
        }
      }
      total += col_best;
    }
    if (total > best) {
      best = total;
      out.a.assign(g.m, std::vector<int>(g.n));
      out.b.assign(g.m, std::vector<int>(g.n));
      out.agreements = 0;
      for (int x = 0; x < g.m; ++x)
        for (int y = 0; y < g.n; ++y) {
          out.a[x][y] = en.rows[choice[x]].signs[y];
          out.b[x][y] = en.cols[col_pick[y]].signs[x];
          if (out.a[x][y] == out.b[x][y]) ++out.agreements;
        }
    }
  }
  return out;
}

double classical_oracle(const GameSpec& g) {
  const ClassicalTables t = classical_oracle_tables(g);
  // complement form: perfect tables give exactly 1.0 even when the
  // individual mu entries are not binary-exact
  double missed = 0.0;
  for (int x = 0; x < g.m; ++x)
    for (int y = 0; y < g.n; ++y)
      if (t.a[x][y] != t.b[x][y]) missed += g.mu(x, y);
  return 1.0 - missed;
}

std::pair<std::int64_t, std::int64_t> classical_oracle_exact(const GameSpec& g) {
  const double uniform = 1.0 / (double(g.m) * double(g.n));
  if ((g.mu.array() - uniform).abs().maxCoeff() > 1e-12)
    throw InvalidStrategy("classical_oracle_exact requires the uniform distribution");
  const ClassicalTables t = classical_oracle_tables(g);
  std::int64_t num = t.agreements;
  std::int64_t den = std::int64_t(g.m) * g.n;
  const std::int64_t d = std::gcd(num, den);
  return {num / std::max<std::int64_t>(d, 1), den / std::max<std::int64_t>(d, 1)};
}

std::pair<GameSpec, Strategy> rotate_game_90(const GameSpec& g,
                                             const Strategy& s) {
  if (g.m % 2 == 0 || g.n % 2 == 0)
    throw DimensionMismatch("rotate_game_90 requires odd row and column counts");
  GameSpec rg;
  rg.m = g.n;
  rg.n = g.m;
  rg.mu = g.mu.transpose();
  Strategy rs;
  rs.state = state_from_matrix(state_matrix(s.state).transpose());
  auto flip_all = [](std::vector<std::vector<std::pair<OutcomeTuple, CMat>>> qs) {
    for (auto& q : qs)
      for (auto& [outcome, mat] : q)
        for (int& v : outcome.signs) v = -v;
    return qs;
  };
  rs.alice = flip_all(s.bob);
  rs.bob = flip_all(s.alice);
  return {rg, rs};
}

}  // namespace magicrect
