#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace biiso {

using cd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Raised for violated preconditions and malformed inputs.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerance {
  double eq_tol = 1e-9;
  double rank_tol = 1e-10;
};

/// Largest dimension any dense routine accepts.
inline constexpr long kMaxDim = 4096;

CMat identity(long n);
double op_norm(const CMat& m);
bool is_hermitian(const CMat& m, double tol);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-100 * rank_tol, 0) are clamped to zero.
CMat hermitian_sqrt(const CMat& m, const Tolerance& tol = {});

/// Orthonormal basis of the column span; singular values at most
/// rank_tol * sigma_max are treated as zero.
CMat orthonormal_range_basis(const CMat& m, const Tolerance& tol = {});

/// Orthonormal basis of the null space. A column is kept when its
/// singular value is at most rank_tol * max(1, sigma_max).
CMat kernel_basis(const CMat& m, const Tolerance& tol = {});

double min_singular_value(const CMat& m);

/// Orthogonal projector onto the span of orthonormal columns.
CMat projector(const CMat& basis);

/// Orthonormal basis of the intersection of two subspaces given by
/// orthonormal bases living in the same ambient space.
CMat intersect_subspaces(const CMat& a, const CMat& b, const Tolerance& tol = {});

/// Orthonormal basis of span(a) minus span(b) (a assumed to contain b).
CMat orthogonal_complement_in(const CMat& a, const CMat& b, const Tolerance& tol = {});

/// Re-expresses an orthonormal basis canonically: the standard coordinate
/// vectors are projected onto the span in index order and Gram-Schmidt
/// keeps the first independent ones.
CMat canonical_basis(const CMat& basis, const Tolerance& tol = {});

/// Unitary factor of the polar decomposition.
CMat polar_unitary(const CMat& m);

/// Searches for a unitary X with X * A_i = B_i * X for every pair.
/// A returned matrix is a verified certificate; an empty result means no
/// certificate was found, not that none exists.
std::optional<CMat> unitary_intertwiner_solve(const std::vector<std::pair<CMat, CMat>>& pairs,
                                              const Tolerance& tol = {});

/// Largest intertwining residual max_i ||X A_i - B_i X||.
double intertwining_residual(const CMat& x, const std::vector<std::pair<CMat, CMat>>& pairs);

}  // namespace biiso
