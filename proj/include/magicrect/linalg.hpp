// Dense complex linear algebra used by the whole toolkit: Kronecker
// products, projector images, subspace intersections, Schmidt
// decompositions, and seeded random sampling. All tolerances are
// absolute and default to 1e-9.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace magicrect {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Rng = std::mt19937_64;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAProjector : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct NotUnitary : Error {
  using Error::Error;
};

struct Tolerance {
  double eps = 1e-9;
};

// Orthonormal column basis of a subspace; empty basis = zero subspace.
struct Subspace {
  Eigen::Index ambient = 0;
  CMat basis;  // ambient x dim

  Eigen::Index dim() const { return basis.cols(); }
  static Subspace zero(Eigen::Index ambient_dim) {
    return {ambient_dim, CMat::Zero(ambient_dim, 0)};
  }
  static Subspace full(Eigen::Index ambient_dim) {
    return {ambient_dim, CMat::Identity(ambient_dim, ambient_dim)};
  }
};

// Bipartite pure state; amplitudes indexed row-major: a * dim_b + b.
struct StateVector {
  Eigen::Index dim_a = 0;
  Eigen::Index dim_b = 0;
  CVec amplitudes;
};

struct SchmidtData {
  RVec values;  // descending, above cutoff
  CMat left;    // dim_a x rank
  CMat right;   // dim_b x rank
};

CMat kron(const CMat& a, const CMat& b);

bool is_hermitian(const CMat& p, double eps);
bool is_projector(const CMat& p, double eps);

// Orthonormal basis of the column space of a projector.
// Throws NotAProjector if p fails ||p^2-p|| <= eps or ||p-p'|| <= eps.
Subspace image(const CMat& p, Tolerance tol = {});

// Largest subspace contained in every input; inputs must share ambient_dim.
Subspace intersect(const std::vector<Subspace>& spaces, Tolerance tol = {});

// Orthonormal basis of the union (column span) of the inputs.
Subspace span_union(const std::vector<Subspace>& spaces, Tolerance tol = {});

// l2 distance from v to its projection onto s (norm of v for the zero space).
double distance(const Subspace& s, const CVec& v);

StateVector make_state(Eigen::Index dim_a, Eigen::Index dim_b, CVec amplitudes,
                       Tolerance tol = {});

// Row-major reshape of the amplitudes into a dim_a x dim_b matrix.
CMat state_matrix(const StateVector& psi);
StateVector state_from_matrix(const CMat& m);

// Singular values above tol.eps with matched left/right modes.
SchmidtData schmidt(const StateVector& psi, Tolerance tol = {});

CVec gaussian_vector(Eigen::Index dim, Rng& rng);
CMat haar_unitary(Eigen::Index dim, Rng& rng);

// Seeded unit-Gaussian combination of the basis columns.
CVec sample_unit(const Subspace& s, Rng& rng);

}  // namespace magicrect
