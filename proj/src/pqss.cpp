#include "magicrect/pqss.hpp"

#include <cmath>

namespace magicrect {

namespace {

std::string cell_tag(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

CMat cell_projector(const OperatorSetup& s, int i, int j, Tolerance tol) {
  if (i < 0 || i >= s.game.m || j < 0 || j >= s.game.n) {
    throw DimensionMismatch("cell_projector: cell " + cell_tag(i, j) +
                            " out of range");
  }
  Eigen::Index dim = s.dim_a * s.dim_b;
  CMat pi = CMat::Zero(dim, dim);
  bool any = false;
  for (int delta : {+1, -1}) {
    CMat p = s.parity_p(i, delta, j);
    CMat q = s.parity_q(j, delta, i);
    if (p.norm() <= tol.eps * double(s.dim_a) ||
        q.norm() <= tol.eps * double(s.dim_b)) {
      continue;
    }
    pi += kron(p, q);
    any = true;
  }
  if (!any) {
    throw InvalidSetup("cell " + cell_tag(i, j) +
                       " has no surviving sign block");
  }
  if (!is_projector(pi, tol.eps * double(dim) * 10.0)) {
    throw InvalidSetup("cell " + cell_tag(i, j) +
                       " does not produce a projector");
  }
  return pi;
}

CanonicalSpace canonical_space(const OperatorSetup& s, Tolerance tol) {
  CanonicalSpace out;
  out.m = s.game.m;
  out.n = s.game.n;
  out.dim_a = s.dim_a;
  out.dim_b = s.dim_b;
  Eigen::Index dim = s.dim_a * s.dim_b;
  std::vector<Subspace> images;
  for (int i = 0; i < out.m; ++i) {
    for (int j = 0; j < out.n; ++j) {
      CMat p1 = s.parity_p(i, +1, j);
      CMat q1 = s.parity_q(j, +1, i);
      CMat p2 = s.parity_p(i, -1, j);
      CMat q2 = s.parity_q(j, -1, i);
      out.sign_blocks.push_back({kron(p1, q1), kron(p2, q2)});
      out.cells.push_back(cell_projector(s, i, j, tol));
      images.push_back(image(out.cells.back(), tol));
    }
  }
  (void)dim;
  out.subspace = intersect(images, tol);
  return out;
}

MembershipResult membership(const CanonicalSpace& space, const StateVector& psi,
                            Tolerance tol) {
  if (psi.dim_a != space.dim_a || psi.dim_b != space.dim_b) {
    throw DimensionMismatch("membership: state dimensions do not match space");
  }
  MembershipResult r;
  r.distance = distance(space.subspace, psi.amplitudes);
  r.member = r.distance <= tol.eps * 100.0;
  return r;
}

Strategy strategy_with_state(const OperatorSetup& s, const StateVector& psi) {
  if (psi.dim_a != s.dim_a || psi.dim_b != s.dim_b) {
    throw DimensionMismatch(
        "strategy_with_state: state dimensions do not match setup");
  }
  Strategy st;
  st.state = psi;
  for (const PoolRealization& p : s.rows) {
    std::vector<std::pair<OutcomeTuple, CMat>> pvm;
    for (size_t k = 0; k < p.ops.size(); ++k) {
      if (p.reduced[k]) continue;
      pvm.push_back({OutcomeTuple{p.family.signs[k]}, p.ops[k]});
    }
    st.alice.push_back(std::move(pvm));
  }
  for (const PoolRealization& p : s.cols) {
    std::vector<std::pair<OutcomeTuple, CMat>> pvm;
    for (size_t k = 0; k < p.ops.size(); ++k) {
      if (p.reduced[k]) continue;
      pvm.push_back({OutcomeTuple{p.family.signs[k]}, p.ops[k]});
    }
    st.bob.push_back(std::move(pvm));
  }
  return st;
}

SchmidtAnalysis schmidt_clusters(const StateVector& psi,
                                 const OperatorSetup& s, Tolerance tol) {
  CanonicalSpace space = canonical_space(s, tol);
  MembershipResult mem = membership(space, psi, tol);
  if (!mem.member) {
    throw NotAPQSS("state is not a perfect solution of this setup (distance " +
                   std::to_string(mem.distance) + ")");
  }

  SchmidtData sd = schmidt(psi, tol);
  SchmidtAnalysis out;
  const double merge = 2.0 * tol.eps;
  size_t start = 0;
  while (start < sd.values.size()) {
    size_t stop = start + 1;
    while (stop < sd.values.size() &&
           sd.values[start] - sd.values[stop] <= merge) {
      ++stop;
    }
    SchmidtCluster c;
    c.schmidt_rank = Eigen::Index(stop - start);
    double r = double(stop - start);
    double sigma = 0.0;
    for (size_t l = start; l < stop; ++l) sigma += sd.values[l];
    sigma /= r;
    c.sigma = sigma;
    c.beta = sigma * std::sqrt(r);
    CMat mk = CMat::Zero(psi.dim_a, psi.dim_b);
    for (size_t l = start; l < stop; ++l) {
      mk += sd.left.col(Eigen::Index(l)) *
            sd.right.col(Eigen::Index(l)).transpose();
    }
    mk /= std::sqrt(r);
    c.psi = state_from_matrix(mk);
    out.clusters.push_back(std::move(c));
    start = stop;
  }

  // Which pool elements keep a foothold on each cluster, and whether
  // the cluster is a perfect state of the setup cut down to those.
  const double foothold = 100.0 * tol.eps;
  for (SchmidtCluster& c : out.clusters) {
    CMat mk = state_matrix(c.psi);
    OperatorSetup cut = s;
    c.row_configurations.resize(size_t(s.game.m));
    for (int i = 0; i < s.game.m; ++i) {
      const PoolRealization& p = s.rows[size_t(i)];
      for (size_t k = 0; k < p.ops.size(); ++k) {
        if (p.reduced[k]) continue;
        if ((p.ops[k] * mk).norm() > foothold) {
          c.row_configurations[size_t(i)].push_back(
              OutcomeTuple{p.family.signs[k]});
        } else {
          cut.rows[size_t(i)].reduced[k] = 1;
          cut.rows[size_t(i)].ops[k].setZero();
        }
      }
    }
    c.effective_columns.resize(size_t(s.game.n));
    for (int j = 0; j < s.game.n; ++j) {
      const PoolRealization& p = s.cols[size_t(j)];
      for (size_t k = 0; k < p.ops.size(); ++k) {
        if (p.reduced[k]) continue;
        if ((mk * p.ops[k].transpose()).norm() > foothold) {
          c.effective_columns[size_t(j)].push_back(int(k));
        } else {
          cut.cols[size_t(j)].reduced[k] = 1;
          cut.cols[size_t(j)].ops[k].setZero();
        }
      }
    }
    c.perfect = membership(space, c.psi, tol).member;
    try {
      CanonicalSpace cut_space = canonical_space(cut, tol);
      c.reduced_membership_ok = membership(cut_space, c.psi, tol).member;
    } catch (const Error&) {
      c.reduced_membership_ok = false;
    }
  }
  return out;
}

CellDecomposition per_cell_form(const StateVector& psi, const OperatorSetup& s,
                                int i, int j, Tolerance tol) {
  CanonicalSpace space = canonical_space(s, tol);
  MembershipResult mem = membership(space, psi, tol);
  if (!mem.member) {
    throw NotAPQSS("state is not a perfect solution of this setup (distance " +
                   std::to_string(mem.distance) + ")");
  }
  CMat m = state_matrix(psi);
  CellDecomposition out;
  std::vector<CVec> lefts, rights;
  CMat recon = CMat::Zero(psi.dim_a, psi.dim_b);
  for (int delta : {+1, -1}) {
    CMat p = s.parity_p(i, delta, j);
    CMat q = s.parity_q(j, delta, i);
    CMat block = p * m * q.transpose();
    if (block.norm() <= tol.eps) continue;
    Eigen::JacobiSVD<CMat> svd(block,
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
    for (Eigen::Index l = 0; l < svd.singularValues().size(); ++l) {
      double alpha = svd.singularValues()(l);
      if (alpha <= tol.eps) continue;
      out.alphas.push_back(alpha);
      out.deltas.push_back(delta);
      lefts.push_back(svd.matrixU().col(l));
      rights.push_back(svd.matrixV().col(l).conjugate());
    }
    recon += block;
  }
  out.left = CMat(psi.dim_a, Eigen::Index(lefts.size()));
  out.right = CMat(psi.dim_b, Eigen::Index(rights.size()));
  for (size_t l = 0; l < lefts.size(); ++l) {
    out.left.col(Eigen::Index(l)) = lefts[l];
    out.right.col(Eigen::Index(l)) = rights[l];
  }
  out.residual = (recon - m).norm();
  return out;
}

}  // namespace magicrect
