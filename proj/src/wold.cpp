#include "biiso/wold.hpp"

#include <Eigen/Sparse>
#include <set>

namespace biiso {

namespace {

// Kernel threshold for the fixed-point sweeps; residuals there are rounding noise.
Tolerance sweep_tol(const Tolerance& tol) { return {tol.eq_tol, std::max(tol.rank_tol, 1e-9)}; }

int interior_grades(const Window& w) {
  std::set<int> g;
  for (const Label& l : w.labels()) g.insert(l.grade);
  return static_cast<int>(g.size());
}

}  // namespace

CMat reducing_unitary_subspace(const std::vector<CMat>& ops, const Window& space, const Window& interior,
                               const std::vector<int>& unitary, int max_iter, const Tolerance& tol) {
  using Sparse = Eigen::SparseMatrix<cd>;
  const Tolerance t = sweep_tol(tol);
  const long n = space.size();
  const CMat inner = space.embedding(interior);
  if (max_iter <= 0) max_iter = static_cast<int>(n) + 2;

  // The model operators are banded, so sparse products keep each sweep cheap.
  std::vector<Sparse> fwd, adj;
  for (const CMat& a : ops) {
    fwd.push_back(a.sparseView(1.0, 1e-300));
    adj.push_back(CMat(a.adjoint()).sparseView(1.0, 1e-300));
  }
  Eigen::VectorXd mask = Eigen::VectorXd::Zero(n);
  for (const Label& l : interior.labels()) mask(*space.index_of(l)) = 1.0;

  CMat m = inner;
  for (int it = 0; it < max_iter && m.cols() > 0; ++it) {
    // Component of y inside the interior but orthogonal to span(m).
    auto leak = [&](const CMat& y) -> CMat { return mask.asDiagonal() * y - m * (m.adjoint() * y); };
    std::vector<CMat> blocks;
    for (size_t i = 0; i < fwd.size(); ++i) {
      blocks.push_back(leak(fwd[i] * m));
      blocks.push_back(leak(adj[i] * m));
    }
    for (int j : unitary) blocks.push_back(m - fwd[static_cast<size_t>(j)] * CMat(adj[static_cast<size_t>(j)] * m));
    long rows = 0;
    for (const auto& b : blocks) rows += b.rows();
    CMat stacked(rows, m.cols());
    long r = 0;
    for (const auto& b : blocks) {
      stacked.middleRows(r, b.rows()) = b;
      r += b.rows();
    }
    const CMat k = kernel_basis(stacked, t);
    if (k.cols() == m.cols()) break;
    m = k.cols() == 0 ? CMat(n, 0) : orthonormal_range_basis(m * k, t);
  }
  return m;
}

WoldResult wold_single(const WindowedOp& v, const Window& interior, int depth, const Tolerance& tol) {
  const Tolerance t = sweep_tol(tol);
  if (!(v.domain == v.codomain)) throw Error("wold_single: operator must act on one window");
  if (isometry_defect(v, interior) > 1e-9) throw Error("wold_single: operator is not isometric on the interior");
  if (depth <= 0) depth = interior_grades(interior);

  WoldResult out;
  out.depth_used = depth;
  const Window rows = interior.filter([&](const Label& l) {
    return v.exact_rows[static_cast<size_t>(*v.codomain.index_of(l))] != 0;
  });
  const CMat emb = v.domain.embedding(rows);
  const CMat k = kernel_basis(v.matrix.adjoint() * emb, t);
  out.wandering = k.cols() == 0 ? CMat(v.domain.size(), 0) : CMat(emb * k);

  if (out.wandering.cols() > 0) {
    CMat orbit(v.domain.size(), out.wandering.cols() * depth);
    CMat cur = out.wandering;
    for (int d = 0; d < depth; ++d) {
      orbit.middleCols(d * out.wandering.cols(), out.wandering.cols()) = cur;
      cur = v.matrix * cur;
    }
    out.shift_part = orthonormal_range_basis(orbit, t);
  } else {
    out.shift_part = CMat(v.domain.size(), 0);
  }
  out.unitary_part = reducing_unitary_subspace({v.matrix}, v.domain, interior, {0}, 0, tol);
  return out;
}

CMat unitary_part_pair(const BiIsometry& w, int depth, const Tolerance& tol) {
  return reducing_unitary_subspace({w.w0.matrix, w.w1.matrix}, w.space(), w.interior, {0, 1}, depth, tol);
}

FourSpaces four_space_decomposition(const BiIsometry& w, int depth, const Tolerance& tol) {
  const Tolerance t = sweep_tol(tol);
  const std::vector<CMat> ops{w.w0.matrix, w.w1.matrix};
  FourSpaces out;
  out.k11 = reducing_unitary_subspace(ops, w.space(), w.interior, {0, 1}, depth, tol);
  const CMat u0 = reducing_unitary_subspace(ops, w.space(), w.interior, {0}, depth, tol);
  const CMat u1 = reducing_unitary_subspace(ops, w.space(), w.interior, {1}, depth, tol);
  out.k10 = orthogonal_complement_in(u0, out.k11, t);
  out.k01 = orthogonal_complement_in(u1, out.k11, t);
  CMat taken(w.space().size(), u0.cols() + out.k01.cols());
  taken << u0, out.k01;
  out.k00 = orthogonal_complement_in(w.space().embedding(w.interior), orthonormal_range_basis(taken, t), t);
  return out;
}

CnuSplit cnu_part_of_contraction(const CMat& a, const Tolerance& tol) {
  if (a.rows() != a.cols()) throw Error("cnu_part_of_contraction: matrix is not square");
  if (op_norm(a) > 1.0 + 1e-9) throw Error("cnu_part_of_contraction: not a contraction");
  const Tolerance t = sweep_tol(tol);
  const long n = a.rows();
  CnuSplit out;
  CMat stacked(2 * n, n);
  stacked << identity(n) - a.adjoint() * a, identity(n) - a * a.adjoint();
  CMat m = kernel_basis(stacked, t);
  for (long it = 0; it <= n && m.cols() > 0; ++it) {
    const CMat p_perp = identity(n) - projector(m);
    CMat c(2 * n, m.cols());
    c << p_perp * a * m, p_perp * a.adjoint() * m;
    const CMat k = kernel_basis(c, t);
    if (k.cols() == m.cols()) break;
    m = k.cols() == 0 ? CMat(n, 0) : orthonormal_range_basis(m * k, t);
  }
  out.unitary = m;
  out.cnu = orthogonal_complement_in(identity(n), m, t);
  return out;
}

}  // namespace biiso
