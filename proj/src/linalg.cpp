#include "magicrect/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

namespace magicrect {

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

bool is_hermitian(const CMat& p, double eps) {
  return p.rows() == p.cols() && (p - p.adjoint()).norm() <= eps;
}

bool is_projector(const CMat& p, double eps) {
  return is_hermitian(p, eps) && (p * p - p).norm() <= eps;
}

Subspace image(const CMat& p, Tolerance tol) {
  if (p.rows() != p.cols())
    throw NotAProjector("image: matrix is not square");
  if (!is_hermitian(p, tol.eps))
    throw NotAProjector("image: matrix is not Hermitian within tolerance");
  if ((p * p - p).norm() > tol.eps)
    throw NotAProjector("image: matrix is not idempotent within tolerance");
  Eigen::SelfAdjointEigenSolver<CMat> es(p);
  // eigenvalues of a projector cluster at 0 and 1
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0.5) ++rank;
  Subspace s;
  s.ambient = p.rows();
  s.basis = es.eigenvectors().rightCols(rank);
  return s;
}

Subspace intersect(const std::vector<Subspace>& spaces, Tolerance tol) {
  if (spaces.empty())
    throw DimensionMismatch("intersect: empty input list");
  const Eigen::Index dim = spaces.front().ambient;
  for (const auto& s : spaces)
    if (s.ambient != dim)
      throw DimensionMismatch("intersect: ambient dimensions differ");
  // kernel of sum of complement projectors
  CMat a = CMat::Zero(dim, dim);
  for (const auto& s : spaces)
    a += CMat::Identity(dim, dim) - s.basis * s.basis.adjoint();
  Eigen::SelfAdjointEigenSolver<CMat> es(a);
  Eigen::Index keep = 0;
  const double cutoff = tol.eps * std::sqrt(double(dim));
  while (keep < dim && es.eigenvalues()(keep) < cutoff) ++keep;
  Subspace out;
  out.ambient = dim;
  out.basis = es.eigenvectors().leftCols(keep);
  return out;
}

Subspace span_union(const std::vector<Subspace>& spaces, Tolerance tol) {
  if (spaces.empty())
    throw DimensionMismatch("span_union: empty input list");
  const Eigen::Index dim = spaces.front().ambient;
  Eigen::Index total = 0;
  for (const auto& s : spaces) {
    if (s.ambient != dim)
      throw DimensionMismatch("span_union: ambient dimensions differ");
    total += s.dim();
  }
  if (total == 0) return Subspace::zero(dim);
  CMat stacked(dim, total);
  Eigen::Index pos = 0;
  for (const auto& s : spaces) {
    stacked.middleCols(pos, s.dim()) = s.basis;
    pos += s.dim();
  }
  Eigen::ColPivHouseholderQR<CMat> qr(stacked);
  qr.setThreshold(tol.eps * std::sqrt(double(dim)));
  const Eigen::Index rank = qr.rank();
  CMat q = qr.householderQ() * CMat::Identity(dim, rank);
  return {dim, q};
}

double distance(const Subspace& s, const CVec& v) {
  if (v.size() != s.ambient)
    throw DimensionMismatch("distance: vector/ambient dimension mismatch");
  if (s.dim() == 0) return v.norm();
  return (v - s.basis * (s.basis.adjoint() * v)).norm();
}

StateVector make_state(Eigen::Index dim_a, Eigen::Index dim_b, CVec amplitudes,
                       Tolerance tol) {
  if (amplitudes.size() != dim_a * dim_b)
    throw DimensionMismatch("make_state: amplitude count != dim_a * dim_b");
  if (std::abs(amplitudes.norm() - 1.0) > tol.eps)
    throw DimensionMismatch("make_state: state is not normalized");
  return {dim_a, dim_b, std::move(amplitudes)};
}

CMat state_matrix(const StateVector& psi) {
  CMat m(psi.dim_a, psi.dim_b);
  for (Eigen::Index i = 0; i < psi.dim_a; ++i)
    for (Eigen::Index j = 0; j < psi.dim_b; ++j)
      m(i, j) = psi.amplitudes(i * psi.dim_b + j);
  return m;
}

StateVector state_from_matrix(const CMat& m) {
  CVec amp(m.rows() * m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      amp(i * m.cols() + j) = m(i, j);
  return {m.rows(), m.cols(), std::move(amp)};
}

SchmidtData schmidt(const StateVector& psi, Tolerance tol) {
  const CMat m = state_matrix(psi);
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol.eps) ++rank;
  SchmidtData out;
  out.values = svd.singularValues().head(rank);
  out.left = svd.matrixU().leftCols(rank);
  // right modes chosen so that psi = sum_i sigma_i u_i (x) v_i
  out.right = svd.matrixV().conjugate().leftCols(rank);
  return out;
}

CVec gaussian_vector(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVec v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v(i) = cplx(re, im);
  }
  return v;
}

CMat haar_unitary(Eigen::Index dim, Rng& rng) {
  CMat g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) g.col(j) = gaussian_vector(dim, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ() * CMat::Identity(dim, dim);
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix phases so the distribution is Haar
  for (Eigen::Index j = 0; j < dim; ++j) {
    const cplx d = r(j, j);
    q.col(j) *= (std::abs(d) > 0) ? d / std::abs(d) : cplx(1, 0);
  }
  return q;
}

CVec sample_unit(const Subspace& s, Rng& rng) {
  if (s.dim() == 0)
    throw DimensionMismatch("sample_unit: zero subspace has no unit vectors");
  CVec coeff = gaussian_vector(s.dim(), rng);
  CVec v = s.basis * coeff;
  return v / v.norm();
}

}  // namespace magicrect
