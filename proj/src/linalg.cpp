#include "biiso/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace biiso {

namespace {

void check_dim(long n, const char* what) {
  if (n > kMaxDim) throw Error(std::string(what) + ": dimension exceeds supported maximum");
}

// LAPACK divide-and-conquer SVD. jobz: 'N' values only, 'S' thin factors, 'A' full factors.
struct Svd {
  Eigen::VectorXd sigma;
  CMat u;
  CMat v;
};

Svd lapack_svd(const CMat& m, char jobz) {
  Svd out;
  const lapack_int rows = static_cast<lapack_int>(m.rows());
  const lapack_int cols = static_cast<lapack_int>(m.cols());
  const lapack_int k = std::min(rows, cols);
  out.sigma = Eigen::VectorXd::Zero(k);
  if (k == 0) return out;
  CMat a = m;
  const lapack_int ucols = jobz == 'A' ? rows : (jobz == 'S' ? k : 1);
  const lapack_int vtrows = jobz == 'A' ? cols : (jobz == 'S' ? k : 1);
  CMat u(jobz == 'N' ? 1 : rows, ucols);
  CMat vt(vtrows, cols);
  const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, jobz, rows, cols, a.data(), rows, out.sigma.data(), u.data(),
                                         static_cast<lapack_int>(u.rows()), vt.data(), vtrows);
  if (info != 0) throw Error("singular value decomposition failed to converge");
  if (jobz != 'N') {
    out.u = u;
    out.v = vt.adjoint();
  }
  return out;
}

// Singular values and right singular vectors of m, reducing tall inputs by QR first.
struct RightSvd {
  Eigen::VectorXd sigma;
  CMat v;
};

RightSvd right_svd(const CMat& m) {
  RightSvd out;
  const long cols = m.cols();
  if (cols == 0) return out;
  CMat work = m;
  if (m.rows() > 2 * cols) {
    Eigen::HouseholderQR<CMat> qr(m);
    work = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  }
  if (work.rows() == 0) {
    out.sigma = Eigen::VectorXd::Zero(cols);
    out.v = identity(cols);
    return out;
  }
  const Svd svd = lapack_svd(work, 'A');
  out.sigma = Eigen::VectorXd::Zero(cols);
  out.sigma.head(svd.sigma.size()) = svd.sigma;
  out.v = svd.v;
  return out;
}

}  // namespace

CMat identity(long n) { return CMat::Identity(n, n); }

double op_norm(const CMat& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  return lapack_svd(m, 'N').sigma(0);
}

bool is_hermitian(const CMat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * (1.0 + m.cwiseAbs().maxCoeff());
}

CMat hermitian_sqrt(const CMat& m, const Tolerance& tol) {
  if (m.rows() != m.cols()) throw Error("hermitian_sqrt: matrix is not square");
  check_dim(m.rows(), "hermitian_sqrt");
  if (m.size() == 0) return m;
  if (!is_hermitian(m, tol.eq_tol)) throw Error("hermitian_sqrt: matrix is not Hermitian");
  const CMat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  Eigen::VectorXd ev = es.eigenvalues();
  for (long i = 0; i < ev.size(); ++i) {
    if (ev(i) < -100.0 * tol.rank_tol) throw Error("hermitian_sqrt: matrix is not positive semidefinite");
    ev(i) = std::sqrt(std::max(ev(i), 0.0));
  }
  return es.eigenvectors() * ev.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
}

CMat orthonormal_range_basis(const CMat& m, const Tolerance& tol) {
  check_dim(std::min(m.rows(), m.cols()), "orthonormal_range_basis");
  if (m.size() == 0) return CMat(m.rows(), 0);
  const Svd svd = lapack_svd(m, 'S');
  const auto& s = svd.sigma;
  if (s.size() == 0 || s(0) == 0.0) return CMat(m.rows(), 0);
  long rank = 0;
  while (rank < s.size() && s(rank) > tol.rank_tol * s(0)) ++rank;
  return svd.u.leftCols(rank);
}

CMat kernel_basis(const CMat& m, const Tolerance& tol) {
  check_dim(m.cols(), "kernel_basis");
  const long cols = m.cols();
  if (cols == 0) return CMat(0, 0);
  if (m.rows() == 0) return identity(cols);
  const RightSvd svd = right_svd(m);
  const double scale = std::max(1.0, svd.sigma.size() ? svd.sigma(0) : 0.0);
  long rank = 0;
  while (rank < svd.sigma.size() && svd.sigma(rank) > tol.rank_tol * scale) ++rank;
  return svd.v.rightCols(cols - rank);
}

double min_singular_value(const CMat& m) {
  if (m.size() == 0) return 0.0;
  const Eigen::VectorXd s = lapack_svd(m, 'N').sigma;
  // A wide matrix always has a nontrivial kernel.
  if (m.cols() > m.rows()) return 0.0;
  return s(s.size() - 1);
}

CMat projector(const CMat& basis) { return basis * basis.adjoint(); }

CMat intersect_subspaces(const CMat& a, const CMat& b, const Tolerance& tol) {
  if (a.cols() == 0 || b.cols() == 0) return CMat(a.rows(), 0);
  const CMat residual = a - b * (b.adjoint() * a);
  const CMat k = kernel_basis(residual, tol);
  if (k.cols() == 0) return CMat(a.rows(), 0);
  return orthonormal_range_basis(a * k, tol);
}

CMat orthogonal_complement_in(const CMat& a, const CMat& b, const Tolerance& tol) {
  if (b.cols() == 0 || a.cols() == 0) return a;
  const CMat k = kernel_basis(b.adjoint() * a, tol);
  if (k.cols() == 0) return CMat(a.rows(), 0);
  return orthonormal_range_basis(a * k, tol);
}

CMat canonical_basis(const CMat& basis, const Tolerance& tol) {
  const long n = basis.rows();
  const long r = basis.cols();
  CMat out(n, r);
  long found = 0;
  for (long i = 0; i < n && found < r; ++i) {
    CVec v = basis * basis.row(i).adjoint();
    for (long j = 0; j < found; ++j) v -= out.col(j) * out.col(j).dot(v);
    for (long j = 0; j < found; ++j) v -= out.col(j) * out.col(j).dot(v);
    const double nv = v.norm();
    if (nv > std::sqrt(tol.rank_tol)) out.col(found++) = v / nv;
  }
  if (found != r) throw Error("canonical_basis: basis columns are not independent");
  return out;
}

CMat polar_unitary(const CMat& m) {
  if (m.rows() != m.cols()) throw Error("polar_unitary: matrix is not square");
  if (m.size() == 0) return m;
  const Svd svd = lapack_svd(m, 'A');
  return svd.u * svd.v.adjoint();
}

double intertwining_residual(const CMat& x, const std::vector<std::pair<CMat, CMat>>& pairs) {
  double r = 0.0;
  for (const auto& [a, b] : pairs) r = std::max(r, op_norm(x * a - b * x));
  return r;
}

std::optional<CMat> unitary_intertwiner_solve(const std::vector<std::pair<CMat, CMat>>& pairs,
                                              const Tolerance& tol) {
  if (pairs.empty()) throw Error("unitary_intertwiner_solve: no pairs given");
  const long n = pairs.front().first.rows();
  for (const auto& [a, b] : pairs) {
    if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n)
      throw Error("unitary_intertwiner_solve: dimension mismatch");
  }
  check_dim(n, "unitary_intertwiner_solve");
  if (n == 0) return CMat(0, 0);

  // Close the relations under adjoints; a unitary intertwiner respects both.
  std::vector<std::pair<CMat, CMat>> rel;
  for (const auto& [a, b] : pairs) {
    rel.emplace_back(a, b);
    rel.emplace_back(a.adjoint(), b.adjoint());
  }

  // A generic Hermitian element of each generated *-algebra. Any intertwiner
  // maps eigenspaces of h_a onto those of h_b with the same eigenvalue.
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  auto coeff = [&] { return cd(normal(rng), normal(rng)); };
  CMat h_a = CMat::Zero(n, n);
  CMat h_b = CMat::Zero(n, n);
  for (const auto& [a, b] : pairs) {
    const cd c = coeff();
    h_a += c * a;
    h_b += c * b;
  }
  for (const auto& [a1, b1] : pairs) {
    for (const auto& [a2, b2] : pairs) {
      const cd c = 0.5 * coeff();
      h_a += c * a1 * a2;
      h_b += c * b1 * b2;
      const cd c2 = 0.5 * coeff();
      h_a += c2 * a1.adjoint() * a2;
      h_b += c2 * b1.adjoint() * b2;
    }
  }
  h_a = CMat(h_a + h_a.adjoint());
  h_b = CMat(h_b + h_b.adjoint());

  Eigen::SelfAdjointEigenSolver<CMat> ea(h_a);
  Eigen::SelfAdjointEigenSolver<CMat> eb(h_b);
  const Eigen::VectorXd& la = ea.eigenvalues();
  const Eigen::VectorXd& lb = eb.eigenvalues();
  const double scale = 1.0 + std::max(la.cwiseAbs().maxCoeff(), lb.cwiseAbs().maxCoeff());
  const double gap = 1e-7 * scale;
  if ((la - lb).cwiseAbs().maxCoeff() > gap) return std::nullopt;

  std::vector<long> cluster(n);
  long n_clusters = 0;
  for (long i = 0; i < n; ++i) {
    if (i > 0 && la(i) - la(i - 1) > gap) ++n_clusters;
    cluster[i] = n_clusters;
  }
  ++n_clusters;

  // Unknowns: entries (p, r) of a cluster-block-diagonal Y with X = Vb Y Va*.
  std::vector<std::pair<long, long>> unknowns;
  for (long p = 0; p < n; ++p)
    for (long r = 0; r < n; ++r)
      if (cluster[p] == cluster[r]) unknowns.emplace_back(p, r);
  const long u = static_cast<long>(unknowns.size());
  if (u > 3000) return std::nullopt;

  const CMat& va = ea.eigenvectors();
  const CMat& vb = eb.eigenvectors();
  CMat gram = CMat::Zero(u, u);
  for (const auto& [a, b] : rel) {
    const CMat at = va.adjoint() * a * va;
    const CMat bt = vb.adjoint() * b * vb;
    const CMat aat = at * at.adjoint();
    const CMat btb = bt.adjoint() * bt;
    for (long i = 0; i < u; ++i) {
      const auto [p, r] = unknowns[i];
      for (long j = 0; j < u; ++j) {
        const auto [p2, r2] = unknowns[j];
        cd g = -std::conj(at(r, r2)) * bt(p, p2) - std::conj(bt(p2, p)) * at(r2, r);
        if (p == p2) g += aat(r2, r);
        if (r == r2) g += btb(p, p2);
        gram(i, j) += g;
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<CMat> eg(gram);
  const Eigen::VectorXd& lg = eg.eigenvalues();
  const double thr = std::max(1e-20, 1e-13 * std::max(1.0, lg(u - 1)));
  long null_dim = 0;
  while (null_dim < u && lg(null_dim) <= thr) ++null_dim;
  if (null_dim == 0) return std::nullopt;

  for (int attempt = 0; attempt < 3; ++attempt) {
    CVec y = CVec::Zero(u);
    for (long k = 0; k < null_dim; ++k) y += coeff() * eg.eigenvectors().col(k);
    CMat ym = CMat::Zero(n, n);
    for (long i = 0; i < u; ++i) ym(unknowns[i].first, unknowns[i].second) = y(i);
    const CMat x = polar_unitary(vb * ym * va.adjoint());
    if (op_norm(x.adjoint() * x - identity(n)) <= 1e-8 && intertwining_residual(x, pairs) <= tol.eq_tol)
      return x;
  }
  return std::nullopt;
}

}  // namespace biiso
