#include "biiso/model.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>

namespace biiso {

namespace {

int next_pow2_above(int x) {
  int p = 8;
  while (p <= x) p *= 2;
  return p;
}

CMat interior_embedding(const BiIsometry& w) { return w.space().embedding(w.interior); }

Window exact_row_labels(const WindowedOp& op, const Window& among) {
  return among.filter([&](const Label& l) { return op.exact_rows[static_cast<size_t>(*op.codomain.index_of(l))] != 0; });
}

}  // namespace

Model build_model_biisometry(const OpSymbol& theta, int n, int k, const Tolerance& tol) {
  if (n < 2) throw Error("build_model_biisometry: need at least 3 grades");
  if (k < 8) throw Error("build_model_biisometry: need at least 8 samples");
  if (contractivity_norm(theta, std::max(k, 64)) > 1.0 + 1e-9) throw Error("build_model_biisometry: symbol is not contractive");
  (void)tol;

  const int d = theta.dim();
  const int deg = theta.effective_degree();
  const auto coeff = theta.series(deg);

  ModelSpaces sp;
  sp.fiber = d;
  sp.interior_top = n;
  sp.hardy_top = n + 1 + deg;
  sp.defect_top = 1;
  sp.samples = std::max(k, next_pow2_above(sp.hardy_top + deg));
  const auto pts = roots_of_unity(sp.samples);

  // Defect directions: eigenvectors of I - Theta*Theta with positive eigenvalue.
  std::vector<CVec> dirs;
  for (int j = 0; j < sp.samples; ++j) {
    const CMat t = theta.eval(pts[static_cast<size_t>(j)]);
    CMat m = identity(d) - t.adjoint() * t;
    m = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(m);
    for (long q = 0; q < d; ++q) {
      const double lam = es.eigenvalues()(q);
      if (lam < -1e-6) throw Error("build_model_biisometry: symbol is not contractive on the circle");
      if (lam <= 1e-11) continue;
      sp.defect_sample.push_back(j);
      sp.defect_weight.push_back(std::sqrt(lam));
      dirs.push_back(es.eigenvectors().col(q));
    }
  }
  sp.defect_dim = static_cast<int>(dirs.size());
  sp.defect_dirs = CMat(d, sp.defect_dim);
  for (int q = 0; q < sp.defect_dim; ++q) sp.defect_dirs.col(q) = dirs[static_cast<size_t>(q)];

  std::vector<Label> labels;
  for (int g = 0; g <= sp.hardy_top; ++g)
    for (int i = 0; i < d; ++i) labels.push_back({g, i});
  for (int m = 0; m <= sp.defect_top; ++m)
    for (int q = 0; q < sp.defect_dim; ++q) labels.push_back({m, d + q});
  sp.window = Window(labels, d + sp.defect_dim);
  sp.hardy = sp.window.filter([d](const Label& l) { return l.fiber < d; });
  sp.defect_zero = sp.window.filter([d](const Label& l) { return l.fiber >= d && l.grade == 0; });

  const Window& w = sp.window;
  auto idx = [&](int g, int f) { return *w.index_of({g, f}); };
  const double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(sp.samples));

  sp.d_op = CMat::Zero(sp.defect_dim, sp.hardy.size());
  for (long c = 0; c < sp.hardy.size(); ++c) {
    const Label l = sp.hardy[c];
    for (int q = 0; q < sp.defect_dim; ++q) {
      const cd zeta = pts[static_cast<size_t>(sp.defect_sample[static_cast<size_t>(q)])];
      sp.d_op(q, c) = inv_sqrt_k * sp.defect_weight[static_cast<size_t>(q)] * std::conj(sp.defect_dirs(l.fiber, q)) *
                      std::pow(zeta, l.grade);
    }
  }

  CMat m0 = CMat::Zero(w.size(), w.size());
  CMat m1 = CMat::Zero(w.size(), w.size());
  WindowedOp w0(w, w, m0), w1(w, w, m1);
  for (int g = 0; g <= sp.hardy_top; ++g)
    for (int i = 0; i < d; ++i) {
      const long c = idx(g, i);
      if (g < sp.hardy_top) w0.matrix(idx(g + 1, i), c) = 1.0;
      w0.exact_cols[static_cast<size_t>(c)] = g < sp.hardy_top;
      for (int kk = 0; kk <= deg && g + kk <= sp.hardy_top; ++kk)
        for (int r = 0; r < d; ++r) w1.matrix(idx(g + kk, r), c) += coeff[static_cast<size_t>(kk)](r, i);
      const long hc = *sp.hardy.index_of({g, i});
      for (int q = 0; q < sp.defect_dim; ++q) w1.matrix(idx(0, d + q), c) = sp.d_op(q, hc);
      w1.exact_cols[static_cast<size_t>(c)] = g + deg <= sp.hardy_top;
    }
  for (int m = 0; m <= sp.defect_top; ++m)
    for (int q = 0; q < sp.defect_dim; ++q) {
      const long c = idx(m, d + q);
      w0.matrix(c, c) = pts[static_cast<size_t>(sp.defect_sample[static_cast<size_t>(q)])];
      if (m < sp.defect_top) w1.matrix(idx(m + 1, d + q), c) = 1.0;
      w1.exact_cols[static_cast<size_t>(c)] = m < sp.defect_top;
    }
  w1.tail_bound = theta.has_inner() ? theta.series_tail(deg) : 0.0;

  const Window interior = w.filter([&](const Label& l) {
    return l.fiber < d ? l.grade <= sp.interior_top : l.grade < sp.defect_top;
  });
  return Model{BiIsometry{w0, w1, interior}, sp, theta};
}

ModelCompression model_space_compression(const Model& m, const Tolerance& tol) {
  const ModelSpaces& sp = m.spaces;
  const Window& w = sp.window;
  std::vector<Label> kl = sp.hardy.labels();
  for (const Label& l : sp.defect_zero.labels()) kl.push_back(l);
  const Window kn(kl, w.fiber_dim());

  // G = {P Theta u + Delta u : u in the H2 window}, assembled from the Toeplitz
  // matrix of the symbol and the sampled defect map.
  const WindowedOp t = toeplitz_matrix(m.theta, sp.hardy_top);
  CMat g = CMat::Zero(w.size(), sp.hardy.size());
  for (long c = 0; c < t.domain.size(); ++c) {
    const long col = *sp.hardy.index_of(t.domain[c]);
    for (long r = 0; r < t.codomain.size(); ++r) {
      if (t.codomain[r].grade > sp.hardy_top) continue;
      g(*w.index_of(t.codomain[r]), col) += t.matrix(r, c);
    }
    for (int q = 0; q < sp.defect_dim; ++q) g(*w.index_of({0, sp.fiber + q}), col) = sp.d_op(q, col);
  }
  ModelCompression out;
  const CMat range = orthonormal_range_basis(g, tol);
  out.basis = orthogonal_complement_in(w.embedding(kn), range, tol);
  out.s = out.basis.adjoint() * m.w.w0.matrix * out.basis;
  return out;
}

ModelCompression model_space_compression(const OpSymbol& theta, int n, int k, const Tolerance& tol) {
  return model_space_compression(build_model_biisometry(theta, n, k, tol), tol);
}

CMat wandering_space(const BiIsometry& w, const Tolerance& tol) {
  const CMat emb = w.space().embedding(exact_row_labels(w.w0, w.interior));
  const CMat k = kernel_basis(w.w0.matrix.adjoint() * emb, tol);
  if (k.cols() == 0) return CMat(w.space().size(), 0);
  return emb * k;
}

CMat pivotal_space(const BiIsometry& w, const Tolerance& tol) {
  const CMat emb = w.space().embedding(exact_row_labels(w.w1, w.space()));
  const CMat k = kernel_basis(w.w1.matrix.adjoint() * emb, tol);
  if (k.cols() == 0) return CMat(w.space().size(), 0);
  return emb * k;
}

CharPair characteristic_pair(const BiIsometry& w, int depth, const Tolerance& tol) {
  const WoldResult wr = wold_single(w.w0, w.interior, depth, tol);
  if (wr.shift_part.cols() == 0) throw Error("characteristic_pair: W0 has no shift part in the window");
  CharPair out;
  out.h_basis = wr.shift_part;
  out.v0 = out.h_basis.adjoint() * w.w0.matrix * out.h_basis;
  out.a = out.h_basis.adjoint() * w.w1.matrix * out.h_basis;
  return out;
}

std::vector<CMat> characteristic_function(const BiIsometry& w, int k_max, const Tolerance& tol) {
  const int span = w.interior.max_grade() - w.interior.min_grade();
  if (k_max < 0 || k_max > span - 2) throw Error("characteristic_function: k_max too deep for the window");
  const CMat wander = wandering_space(w, tol);
  if (wander.cols() == 0) throw Error("characteristic_function: ker W0* is empty");
  const CMat e = canonical_basis(wander, tol);
  std::vector<CMat> out;
  CMat cur = w.w1.matrix * e;
  const CMat w0s = w.w0.matrix.adjoint();
  for (int k = 0; k <= k_max; ++k) {
    out.push_back(e.adjoint() * cur);
    cur = w0s * cur;
  }
  return out;
}

CMat pivotal_operator(const BiIsometry& w, const Tolerance& tol) {
  const CMat f = pivotal_space(w, tol);
  if (f.cols() == 0) throw Error("pivotal_operator: ker W1* is empty");
  return f.adjoint() * w.w0.matrix * f;
}

CMat swapped_characteristic_function(const BiIsometry& w, cd z, const Tolerance& tol) {
  const double r = std::abs(z);
  if (r >= 1.0) throw Error("swapped_characteristic_function: need |z| < 1");
  int len = 0;
  while (std::pow(r, len + 1) / (1.0 - r) > 1e-8) {
    if (++len > 5000) throw Error("swapped_characteristic_function: Neumann tail bound above 1e-8");
  }
  const CMat f = pivotal_space(w, tol);
  CMat x = w.w0.matrix * f;
  CMat out = CMat::Zero(f.cols(), f.cols());
  const CMat w1s = w.w1.matrix.adjoint();
  cd zl(1.0);
  for (int l = 0; l <= len; ++l) {
    out += zl * (f.adjoint() * x);
    x = w1s * x;
    zl *= z;
  }
  return out;
}

Verdict doubly_commuting_test(const BiIsometry& w, double tol) {
  const CMat e = interior_embedding(w);
  const CMat& a = w.w0.matrix;
  const CMat& b = w.w1.matrix;
  const double r = op_norm(a * (b.adjoint() * e) - b.adjoint() * (a * e));
  return {r <= tol, r};
}

Verdict w1_unitary_test(const BiIsometry& w, double tol) {
  const CMat e = interior_embedding(w);
  const CMat& b = w.w1.matrix;
  const double r = op_norm(e - b * (b.adjoint() * e));
  return {r <= tol, r};
}

CMat w1_unitary_part(const BiIsometry& w, const Tolerance& tol) {
  return reducing_unitary_subspace({w.w0.matrix, w.w1.matrix}, w.space(), w.interior, {1}, 0, tol);
}

CMat w0_unitary_part(const BiIsometry& w, const Tolerance& tol) {
  return reducing_unitary_subspace({w.w0.matrix, w.w1.matrix}, w.space(), w.interior, {0}, 0, tol);
}

void constant_omega_search(const OpSymbol& theta, CMat& omega, CMat& u, const Tolerance& tol) {
  const Tolerance t{tol.eq_tol, std::max(tol.rank_tol, 1e-9)};
  const int d = theta.dim();
  const auto c = theta.series(theta.effective_degree());
  CMat stacked(static_cast<long>(c.size()) * d, d);
  stacked.topRows(d) = identity(d) - c[0].adjoint() * c[0];
  for (size_t k = 1; k < c.size(); ++k) stacked.middleRows(static_cast<long>(k) * d, d) = c[k];
  CMat m = kernel_basis(stacked, t);
  for (int it = 0; it <= d && m.cols() > 0; ++it) {
    const CMat k = kernel_basis((identity(d) - projector(m)) * c[0] * m, t);
    if (k.cols() == m.cols()) break;
    m = k.cols() == 0 ? CMat(d, 0) : orthonormal_range_basis(m * k, t);
  }
  if (m.cols() == 0) {
    omega = CMat(d, 0);
    u = CMat(0, 0);
    return;
  }
  // Theta_0 restricted to m is unitary, hence normal: its Schur form is diagonal.
  Eigen::ComplexSchur<CMat> schur(CMat(m.adjoint() * c[0] * m));
  omega = m * schur.matrixU();
  u = schur.matrixT().diagonal().asDiagonal();
}

BishiftReport bishift_test(const BiIsometry& w, const OpSymbol& theta, int n_max, int k, const Tolerance& tol) {
  BishiftReport out;
  const CMat e = interior_embedding(w);
  using Sparse = Eigen::SparseMatrix<cd>;
  const Sparse a0 = CMat(w.w0.matrix.adjoint()).sparseView(1.0, 1e-300);
  const Sparse a1 = CMat(w.w1.matrix.adjoint()).sparseView(1.0, 1e-300);
  CMat x0 = e, x1 = e;
  auto max_col = [](const CMat& x) { return x.cols() ? x.colwise().norm().maxCoeff() : 0.0; };
  for (int n = 1; n <= n_max; ++n) {
    x0 = a0 * x0;
    x1 = a1 * x1;
    out.decay0.push_back(max_col(x0));
    out.decay1.push_back(max_col(x1));
    if (out.decay0.back() <= 1e-13 && out.decay1.back() <= 1e-13) break;
  }
  const bool d0 = !out.decay0.empty() && *std::min_element(out.decay0.begin(), out.decay0.end()) <= 1e-6;
  const bool d1 = !out.decay1.empty() && *std::min_element(out.decay1.begin(), out.decay1.end()) <= 1e-6;
  out.decayed = d0 && d1;
  out.inner = is_inner_sampled(theta, k);
  constant_omega_search(theta, out.omega, out.u, tol);
  out.certificate = out.omega.cols() > 0;
  if (out.certificate) {
    for (cd z : roots_of_unity(k))
      for (double s : {1.0, 0.5}) {
        const CMat tz = theta.eval(s * z);
        out.certificate_residual = std::max(out.certificate_residual, op_norm(tz * out.omega - out.omega * out.u));
      }
  }
  out.bishift = out.decayed && out.inner.inner && !out.certificate;
  return out;
}

bool is_constant_isometry(const OpSymbol& theta, double tol) {
  const auto c = theta.series(theta.effective_degree());
  for (size_t k = 1; k < c.size(); ++k)
    if (op_norm(c[k]) > tol) return false;
  return op_norm(c[0].adjoint() * c[0] - identity(theta.dim())) <= tol;
}

bool is_constant_unitary(const OpSymbol& theta, double tol) {
  if (!is_constant_isometry(theta, tol)) return false;
  const auto c = theta.series(0);
  return op_norm(c[0] * c[0].adjoint() - identity(theta.dim())) <= tol;
}

}  // namespace biiso
