#include "magicrect/inequality.hpp"

#include <cmath>

namespace magicrect {

namespace {

double expectation(const CMat& m, const CMat& a, const CMat& b, Tolerance tol) {
  cplx v = (m.conjugate().cwiseProduct(a * m * b.transpose())).sum();
  if (std::abs(v.imag()) > 1000.0 * tol.eps) {
    throw ConstraintViolation("expectation has a non-real value " +
                              std::to_string(v.imag()));
  }
  return v.real();
}

void check_input(const InequalityInput& in, Tolerance tol) {
  const ObservableTable& t = in.tables;
  if (t.m <= 0 || t.n <= 0 || t.a.size() != size_t(t.m) * t.n ||
      t.b.size() != size_t(t.m) * t.n) {
    throw DimensionMismatch("observable tables do not match their shape");
  }
  Eigen::Index da = in.state.dim_a, db = in.state.dim_b;
  auto involution = [&](const CMat& o, Eigen::Index dim, const char* side,
                        int i, int j) {
    if (o.rows() != dim || o.cols() != dim) {
      throw DimensionMismatch("observable dimensions do not match the state");
    }
    const double thr = 10.0 * tol.eps * double(dim);
    if (!is_hermitian(o, thr) ||
        (o * o - CMat::Identity(dim, dim)).norm() > thr) {
      throw ConstraintViolation(std::string(side) + " observable (" +
                                std::to_string(i) + "," + std::to_string(j) +
                                ") is not an involution");
    }
  };
  for (int i = 0; i < t.m; ++i) {
    for (int j = 0; j < t.n; ++j) {
      involution(t.at_a(i, j).op, da, "A", i, j);
      involution(t.at_b(i, j).op, db, "B", i, j);
    }
  }
  const double thr_a = 10.0 * tol.eps * double(da);
  const double thr_b = 10.0 * tol.eps * double(db);
  for (int i = 0; i < t.m; ++i) {
    for (int j = 0; j < t.n; ++j) {
      for (int j2 = j + 1; j2 < t.n; ++j2) {
        const CMat& x = t.at_a(i, j).op;
        const CMat& y = t.at_a(i, j2).op;
        if ((x * y - y * x).norm() > thr_a) {
          throw ConstraintViolation("A observables in row " + std::to_string(i) +
                                    " fail to commute");
        }
      }
      for (int i2 = i + 1; i2 < t.m; ++i2) {
        const CMat& x = t.at_b(i, j).op;
        const CMat& y = t.at_b(i2, j).op;
        if ((x * y - y * x).norm() > thr_b) {
          throw ConstraintViolation("B observables in column " +
                                    std::to_string(j) + " fail to commute");
        }
      }
    }
  }
}

}  // namespace

InequalityBreakdown inequality_report(const InequalityInput& in,
                                      bool printed_form, Tolerance tol) {
  check_input(in, tol);
  const ObservableTable& t = in.tables;
  CMat m = state_matrix(in.state);
  CMat ida = CMat::Identity(in.state.dim_a, in.state.dim_a);
  CMat idb = CMat::Identity(in.state.dim_b, in.state.dim_b);
  InequalityBreakdown out;
  for (int i = 0; i < t.m; ++i) {
    for (int j = 0; j < t.n; ++j) {
      double c = expectation(m, t.at_a(i, j).op, t.at_b(i, j).op, tol);
      out.per_cell.push_back(c);
      out.correlations += c;
    }
  }
  // products evaluated in index order; commutativity within the
  // constrained direction makes the order immaterial
  if (!printed_form) {
    for (int i = 0; i < t.m; ++i) {
      CMat prod = ida;
      for (int j = 0; j < t.n; ++j) prod = prod * t.at_a(i, j).op;
      out.per_a.push_back(expectation(m, prod, idb, tol));
    }
    for (int j = 0; j < t.n; ++j) {
      CMat prod = idb;
      for (int i = 0; i < t.m; ++i) prod = prod * t.at_b(i, j).op;
      out.per_b.push_back(expectation(m, ida, prod, tol));
    }
  } else {
    for (int j = 0; j < t.n; ++j) {
      CMat prod = ida;
      for (int i = 0; i < t.m; ++i) prod = prod * t.at_a(i, j).op;
      out.per_a.push_back(expectation(m, prod, idb, tol));
    }
    for (int i = 0; i < t.m; ++i) {
      CMat prod = idb;
      for (int j = 0; j < t.n; ++j) prod = prod * t.at_b(i, j).op;
      out.per_b.push_back(expectation(m, ida, prod, tol));
    }
  }
  for (double v : out.per_a) out.products_a += v;
  for (double v : out.per_b) out.products_b += v;
  out.total = out.correlations + out.products_a - out.products_b;
  return out;
}

double inequality_value(const InequalityInput& in, bool printed_form,
                        Tolerance tol) {
  return inequality_report(in, printed_form, tol).total;
}

InequalityInput inequality_from_strategy(const GameSpec& g, const Strategy& s,
                                         Tolerance tol) {
  OperatorSetup setup = setup_from_strategy(g, s, tol);
  InequalityInput in;
  in.state = s.state;
  in.tables = observables_from_setup(setup, tol);
  return in;
}

}  // namespace magicrect
