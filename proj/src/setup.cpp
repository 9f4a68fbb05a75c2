#include "magicrect/setup.hpp"

#include <cmath>
#include <sstream>

namespace magicrect {

namespace {

std::string cell_name(bool row_side, int pool, int id) {
  std::ostringstream os;
  os << (row_side ? "row" : "column") << " pool " << pool << ", element " << id;
  return os.str();
}

// Any live element whose sign at `pos` equals delta?
bool half_live(const PoolRealization& p, int pos, int delta) {
  for (size_t k = 0; k < p.ops.size(); ++k) {
    if (!p.reduced[k] && p.family.signs[k][size_t(pos)] == delta) return true;
  }
  return false;
}

void check_pool(const PoolRealization& p, Eigen::Index dim, bool row_side,
                int pool, Tolerance tol) {
  const double thr = 10.0 * tol.eps * double(dim);
  CMat sum = CMat::Zero(dim, dim);
  for (size_t k = 0; k < p.ops.size(); ++k) {
    if (p.reduced[k]) continue;
    const CMat& e = p.ops[k];
    if (e.rows() != dim || e.cols() != dim) {
      throw DimensionMismatch("pool element has wrong dimension: " +
                              cell_name(row_side, pool, int(k)));
    }
    if (!is_projector(e, thr)) {
      throw InvalidPool("not a projector: " + cell_name(row_side, pool, int(k)));
    }
    for (size_t l = 0; l < k; ++l) {
      if (p.reduced[l]) continue;
      if ((e * p.ops[l]).norm() > thr) {
        throw InvalidPool("elements " + std::to_string(l) + " and " +
                          std::to_string(k) + " overlap in " +
                          cell_name(row_side, pool, int(k)));
      }
    }
    sum += e;
  }
  if (p.live_count() > 0 &&
      (sum - CMat::Identity(dim, dim)).norm() > thr) {
    throw InvalidPool(std::string(row_side ? "row" : "column") + " pool " +
                      std::to_string(pool) +
                      " does not resolve the identity over its live elements");
  }
}

}  // namespace

int PoolRealization::live_count() const {
  int c = 0;
  for (char r : reduced) c += r ? 0 : 1;
  return c;
}

CMat OperatorSetup::parity_p(int i, int delta, int j) const {
  if (i < 0 || size_t(i) >= rows.size() || j < 0 || j >= game.n ||
      (delta != 1 && delta != -1)) {
    throw DimensionMismatch("parity_p: index out of range");
  }
  const PoolRealization& p = rows[size_t(i)];
  CMat out = CMat::Zero(dim_a, dim_a);
  for (size_t k = 0; k < p.ops.size(); ++k) {
    if (!p.reduced[k] && p.family.signs[k][size_t(j)] == delta) out += p.ops[k];
  }
  return out;
}

CMat OperatorSetup::parity_q(int j, int delta, int i) const {
  if (j < 0 || size_t(j) >= cols.size() || i < 0 || i >= game.m ||
      (delta != 1 && delta != -1)) {
    throw DimensionMismatch("parity_q: index out of range");
  }
  const PoolRealization& p = cols[size_t(j)];
  CMat out = CMat::Zero(dim_b, dim_b);
  for (size_t k = 0; k < p.ops.size(); ++k) {
    if (!p.reduced[k] && p.family.signs[k][size_t(i)] == delta) out += p.ops[k];
  }
  return out;
}

bool OperatorSetup::maximal() const {
  for (const auto& p : rows) {
    if (p.live_count() != int(p.ops.size())) return false;
  }
  for (const auto& p : cols) {
    if (p.live_count() != int(p.ops.size())) return false;
  }
  return true;
}

bool OperatorSetup::realized(Tolerance tol) const {
  auto complete = [&](const PoolRealization& p, Eigen::Index dim) {
    CMat sum = CMat::Zero(dim, dim);
    for (size_t k = 0; k < p.ops.size(); ++k) {
      if (!p.reduced[k]) sum += p.ops[k];
    }
    return (sum - CMat::Identity(dim, dim)).norm() <= 10.0 * tol.eps * double(dim);
  };
  for (const auto& p : rows) {
    if (!complete(p, dim_a)) return false;
  }
  for (const auto& p : cols) {
    if (!complete(p, dim_b)) return false;
  }
  return true;
}

OperatorSetup realize_setup(const GameSpec& g, Eigen::Index dim_a,
                            Eigen::Index dim_b,
                            const std::vector<std::vector<CMat>>& row_ops,
                            const std::vector<std::vector<CMat>>& col_ops,
                            Tolerance tol) {
  if (int(row_ops.size()) != g.m || int(col_ops.size()) != g.n) {
    throw DimensionMismatch("realize_setup: pool count does not match game shape");
  }
  if (dim_a <= 0 || dim_b <= 0) {
    throw DimensionMismatch("realize_setup: dimensions must be positive");
  }
  OperatorSetup s;
  s.game = g;
  s.dim_a = dim_a;
  s.dim_b = dim_b;
  auto fill = [&](const std::vector<std::vector<CMat>>& src, int arity,
                  int target, Eigen::Index dim, bool row_side) {
    std::vector<PoolRealization> pools;
    IndexSetFamily family = semantic_index_sets(arity, target);
    for (size_t p = 0; p < src.size(); ++p) {
      PoolRealization pr;
      pr.family = family;
      if (src[p].size() != family.signs.size()) {
        throw DimensionMismatch("realize_setup: pool " + std::to_string(p) +
                                " has " + std::to_string(src[p].size()) +
                                " elements, expected " +
                                std::to_string(family.signs.size()));
      }
      for (const CMat& e : src[p]) {
        bool zero = e.size() == 0 || e.norm() <= 10.0 * tol.eps * double(dim);
        pr.ops.push_back(zero ? CMat::Zero(dim, dim) : e);
        pr.reduced.push_back(zero ? 1 : 0);
      }
      check_pool(pr, dim, row_side, int(p), tol);
      pools.push_back(std::move(pr));
    }
    return pools;
  };
  s.rows = fill(row_ops, g.n, +1, dim_a, true);
  s.cols = fill(col_ops, g.m, -1, dim_b, false);
  return s;
}

ObservableTable observables_from_setup(const OperatorSetup& s, Tolerance tol) {
  ObservableTable t;
  t.m = s.game.m;
  t.n = s.game.n;
  t.a.resize(size_t(t.m) * t.n);
  t.b.resize(size_t(t.m) * t.n);
  auto build = [&](const PoolRealization& p, int pos, Eigen::Index dim) {
    ObservableCell c;
    c.op = CMat::Zero(dim, dim);
    for (size_t k = 0; k < p.ops.size(); ++k) {
      if (p.reduced[k]) continue;
      c.op += double(p.family.signs[k][size_t(pos)]) * p.ops[k];
    }
    c.degenerate = !half_live(p, pos, +1) || !half_live(p, pos, -1);
    const double thr = 10.0 * tol.eps * double(dim);
    CMat id = CMat::Identity(dim, dim);
    if ((c.op - id).norm() <= thr) c.identity_sign = +1;
    else if ((c.op + id).norm() <= thr) c.identity_sign = -1;
    return c;
  };
  for (int i = 0; i < t.m; ++i) {
    for (int j = 0; j < t.n; ++j) {
      t.at_a(i, j) = build(s.rows[size_t(i)], j, s.dim_a);
      t.at_b(i, j) = build(s.cols[size_t(j)], i, s.dim_b);
    }
  }
  if (s.realized(tol)) {
    const double thr_a = 10.0 * tol.eps * double(s.dim_a);
    const double thr_b = 10.0 * tol.eps * double(s.dim_b);
    for (int i = 0; i < t.m; ++i) {
      CMat prod = CMat::Identity(s.dim_a, s.dim_a);
      for (int j = 0; j < t.n; ++j) {
        const CMat& o = t.at_a(i, j).op;
        for (int j2 = j + 1; j2 < t.n; ++j2) {
          const CMat& o2 = t.at_a(i, j2).op;
          if ((o * o2 - o2 * o).norm() > thr_a) {
            throw ConstraintViolation("observables (" + std::to_string(i) +
                                      "," + std::to_string(j) + ") and (" +
                                      std::to_string(i) + "," +
                                      std::to_string(j2) +
                                      ") of A fail to commute");
          }
        }
        prod = prod * o;
      }
      if ((prod - CMat::Identity(s.dim_a, s.dim_a)).norm() > thr_a) {
        throw ConstraintViolation("row " + std::to_string(i) +
                                  " of A does not multiply to +identity");
      }
    }
    for (int j = 0; j < t.n; ++j) {
      CMat prod = CMat::Identity(s.dim_b, s.dim_b);
      for (int i = 0; i < t.m; ++i) {
        const CMat& o = t.at_b(i, j).op;
        for (int i2 = i + 1; i2 < t.m; ++i2) {
          const CMat& o2 = t.at_b(i2, j).op;
          if ((o * o2 - o2 * o).norm() > thr_b) {
            throw ConstraintViolation("observables (" + std::to_string(i) +
                                      "," + std::to_string(j) + ") and (" +
                                      std::to_string(i2) + "," +
                                      std::to_string(j) +
                                      ") of B fail to commute");
          }
        }
        prod = prod * o;
      }
      if ((prod + CMat::Identity(s.dim_b, s.dim_b)).norm() > thr_b) {
        throw ConstraintViolation("column " + std::to_string(j) +
                                  " of B does not multiply to -identity");
      }
    }
  }
  return t;
}

OperatorSetup reduce(const OperatorSetup& s, const std::vector<Victim>& victims) {
  OperatorSetup r = s;
  for (const Victim& v : victims) {
    auto& pools = v.row_side ? r.rows : r.cols;
    if (v.pool < 0 || size_t(v.pool) >= pools.size()) {
      throw RuleViolation("reduce: pool index out of range");
    }
    PoolRealization& p = pools[size_t(v.pool)];
    if (v.id < 0 || size_t(v.id) >= p.ops.size()) {
      throw RuleViolation("reduce: element index out of range");
    }
    p.reduced[size_t(v.id)] = 1;
    p.ops[size_t(v.id)].setZero();
  }

  // Restriction 1: no pool may die entirely (its observables would all
  // become the zero operator).
  for (size_t i = 0; i < r.rows.size(); ++i) {
    if (r.rows[i].live_count() == 0) {
      throw RuleViolation("restriction 1: every observable in row " +
                          std::to_string(i) + " of A becomes zero");
    }
  }
  for (size_t j = 0; j < r.cols.size(); ++j) {
    if (r.cols[j].live_count() == 0) {
      throw RuleViolation("restriction 1: every observable in column " +
                          std::to_string(j) + " of B becomes zero");
    }
  }

  // Restriction 2: a cell's P half and Q half may only be emptied
  // together. Halves empty already in the input are exempt (they never
  // held any element, e.g. Bob's forced answer in 1-row games).
  for (int i = 0; i < r.game.m; ++i) {
    for (int j = 0; j < r.game.n; ++j) {
      for (int delta : {+1, -1}) {
        bool p_old = half_live(s.rows[size_t(i)], j, delta);
        bool p_new = half_live(r.rows[size_t(i)], j, delta);
        bool q_old = half_live(s.cols[size_t(j)], i, delta);
        bool q_new = half_live(r.cols[size_t(j)], i, delta);
        if ((p_old && !p_new && q_new) || (q_old && !q_new && p_new)) {
          throw RuleViolation(
              "restriction 2: cell (" + std::to_string(i) + "," +
              std::to_string(j) + "), sign " + (delta > 0 ? "+1" : "-1") +
              ": one side of the pair was zeroed without the other");
        }
      }
    }
  }

  // Restriction 3: the kept elements of a pool must still support every
  // observable built from it (image containment in the live span).
  Tolerance tol;
  auto supports = [&](const PoolRealization& p, Eigen::Index dim, int npos) {
    CMat span = CMat::Zero(dim, dim);
    for (size_t k = 0; k < p.ops.size(); ++k) {
      if (!p.reduced[k]) span += p.ops[k];
    }
    for (int pos = 0; pos < npos; ++pos) {
      CMat o = CMat::Zero(dim, dim);
      for (size_t k = 0; k < p.ops.size(); ++k) {
        if (!p.reduced[k]) o += double(p.family.signs[k][size_t(pos)]) * p.ops[k];
      }
      if ((o - span * o).norm() > 10.0 * tol.eps * double(dim)) return false;
    }
    return true;
  };
  for (size_t i = 0; i < r.rows.size(); ++i) {
    if (!supports(r.rows[i], r.dim_a, r.game.n)) {
      throw RuleViolation("restriction 3: kept elements of row pool " +
                          std::to_string(i) +
                          " no longer support its observables");
    }
  }
  for (size_t j = 0; j < r.cols.size(); ++j) {
    if (!supports(r.cols[j], r.dim_b, r.game.m)) {
      throw RuleViolation("restriction 3: kept elements of column pool " +
                          std::to_string(j) +
                          " no longer support its observables");
    }
  }
  return r;
}

std::pair<OperatorSetup, Strategy> mermin_peres_fixture() {
  const cplx im(0.0, 1.0);
  CMat I2 = CMat::Identity(2, 2);
  CMat X(2, 2), Y(2, 2), Z(2, 2);
  X << 0, 1, 1, 0;
  Y << 0, -im, im, 0;
  Z << 1, 0, 0, -1;

  // Each row and column of the table commutes; rows multiply to +I,
  // columns to -I.
  std::vector<std::vector<CMat>> a(3, std::vector<CMat>(3));
  a[0][0] = kron(I2, Z);
  a[0][1] = kron(Z, I2);
  a[0][2] = kron(Z, Z);
  a[1][0] = kron(X, I2);
  a[1][1] = kron(I2, X);
  a[1][2] = kron(X, X);
  a[2][0] = -kron(X, Z);
  a[2][1] = -kron(Z, X);
  a[2][2] = kron(Y, Y);
  std::vector<std::vector<CMat>> b(3, std::vector<CMat>(3));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) b[i][j] = a[i][j].transpose();
  }

  CMat id4 = CMat::Identity(4, 4);
  auto eigenproj = [&](const std::vector<CMat>& obs, const OutcomeTuple& t) {
    CMat p = id4;
    for (size_t k = 0; k < obs.size(); ++k) {
      p = p * (id4 + double(t.signs[k]) * obs[k]) / 2.0;
    }
    return p;
  };

  Strategy st;
  CVec amps = CVec::Zero(16);
  for (int i = 0; i < 4; ++i) amps(i * 4 + i) = 0.5;
  st.state = make_state(4, 4, amps);
  st.alice.resize(3);
  st.bob.resize(3);
  std::vector<std::vector<CMat>> row_ops(3), col_ops(3);
  for (int x = 0; x < 3; ++x) {
    for (const OutcomeTuple& t : valid_tuples(3, +1)) {
      CMat e = eigenproj(a[x], t);
      st.alice[x].push_back({t, e});
      row_ops[x].push_back(e);
    }
  }
  for (int y = 0; y < 3; ++y) {
    std::vector<CMat> column = {b[0][y], b[1][y], b[2][y]};
    for (const OutcomeTuple& t : valid_tuples(3, -1)) {
      CMat f = eigenproj(column, t);
      st.bob[y].push_back({t, f});
      col_ops[y].push_back(f);
    }
  }
  OperatorSetup s =
      realize_setup(GameSpec::uniform(3, 3), 4, 4, row_ops, col_ops);
  return {std::move(s), std::move(st)};
}

OperatorSetup setup_from_strategy(const GameSpec& g, const Strategy& s,
                                  Tolerance tol) {
  Eigen::Index dim_a = s.state.dim_a;
  Eigen::Index dim_b = s.state.dim_b;
  auto collect = [&](const std::vector<std::vector<std::pair<OutcomeTuple, CMat>>>&
                         side,
                     int arity, int target, Eigen::Index dim) {
    IndexSetFamily family = semantic_index_sets(arity, target);
    std::vector<std::vector<CMat>> out;
    for (size_t q = 0; q < side.size(); ++q) {
      std::vector<CMat> ops(family.signs.size(), CMat::Zero(dim, dim));
      for (const auto& [tuple, op] : side[q]) {
        if (op.norm() <= 10.0 * tol.eps * double(dim)) continue;
        bool placed = false;
        for (size_t k = 0; k < family.signs.size(); ++k) {
          if (tuple.signs == family.signs[k]) {
            ops[k] = op;
            placed = true;
            break;
          }
        }
        if (!placed) {
          throw InvalidSetup(
              "question " + std::to_string(q) +
              " carries a nonzero element on an outcome with the wrong sign product");
        }
      }
      out.push_back(std::move(ops));
    }
    return out;
  };
  auto row_ops = collect(s.alice, g.n, +1, dim_a);
  auto col_ops = collect(s.bob, g.m, -1, dim_b);
  return realize_setup(g, dim_a, dim_b, row_ops, col_ops, tol);
}

}  // namespace magicrect
