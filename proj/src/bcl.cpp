#include "biiso/bcl.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace biiso {

namespace {

double unitarity_defect(const CMat& u) {
  if (u.rows() == 0) return 0.0;
  const CMat id = identity(u.rows());
  return std::max(op_norm(u.adjoint() * u - id), op_norm(u * u.adjoint() - id));
}

CMat diag_projector(int e, int f) {
  CMat p = CMat::Zero(e + f, e + f);
  for (int i = 0; i < e; ++i) p(i, i) = 1.0;
  return p;
}

BCLPair assemble(const CMat& u, int e, int f) {
  BCLPair b;
  b.u = u;
  b.p = diag_projector(e, f);
  b.dim_e = e;
  b.dim_f = f;
  b.unitarity_defect = unitarity_defect(u);
  b.truncated = b.unitarity_defect > 1e-9;
  return b;
}

// Projector-free distance of span(x) from span(d): ||x - d d* x||.
double outside(const CMat& x, const CMat& d) {
  if (x.cols() == 0) return 0.0;
  return op_norm(x - d * (d.adjoint() * x));
}

}  // namespace

void validate_bcl(const BCLPair& b, double unitary_tol) {
  const long n = b.u.rows();
  if (b.u.cols() != n || b.p.rows() != n || b.p.cols() != n) throw Error("BCLPair: U and P must be square of the same size");
  if (b.dim_e + b.dim_f != n) throw Error("BCLPair: split does not add up to dim D");
  if (!is_hermitian(b.p, 1e-9)) throw Error("BCLPair: P is not Hermitian");
  if (n > 0 && op_norm(b.p * b.p - b.p) > 1e-9) throw Error("BCLPair: P is not idempotent");
  if (std::abs(b.p.trace().real() - b.dim_e) > 1e-6) throw Error("BCLPair: rank P differs from dim E");
  if (unitarity_defect(b.u) > unitary_tol) throw Error("BCLPair: U is not unitary");
  if (!b.interior_mask.empty() && static_cast<long>(b.interior_mask.size()) != n)
    throw Error("BCLPair: interior mask has the wrong length");
}

BCLPair make_bcl(const CMat& u, const CMat& p) {
  if (u.rows() != u.cols() || p.rows() != u.rows() || p.cols() != u.rows())
    throw Error("make_bcl: U and P must be square of the same size");
  BCLPair b;
  b.u = u;
  b.p = p;
  b.dim_e = static_cast<int>(std::lround(p.trace().real()));
  b.dim_f = static_cast<int>(u.rows()) - b.dim_e;
  b.unitarity_defect = unitarity_defect(u);
  validate_bcl(b);
  return b;
}

BCLPair bcl_from_biisometry(const BiIsometry& w, const Tolerance& tol, DecompositionCheck* check) {
  const CMat e_raw = wandering_space(w, tol);
  const CMat f_raw = pivotal_space(w, tol);
  if (e_raw.cols() + f_raw.cols() == 0) throw Error("bcl_from_biisometry: ker (W0 W1)* is empty");
  const CMat e = e_raw.cols() ? canonical_basis(e_raw, tol) : e_raw;
  const CMat f = f_raw.cols() ? canonical_basis(f_raw, tol) : f_raw;
  const CMat& w0 = w.w0.matrix;
  const CMat& w1 = w.w1.matrix;

  // D = ker (W0 W1)* over labels where both row sets are exact. The loose
  // version only uses exact columns of the product, so it is never cut down by
  // edge effects; inclusions are checked against it. The strict version uses
  // every column and is compared for equality when F stays inside the window.
  const Window rows = w.space().filter([&](const Label& l) {
    const auto i = static_cast<size_t>(*w.space().index_of(l));
    return w.w0.exact_rows[i] && w.w1.exact_rows[i];
  });
  const CMat emb = w.space().embedding(rows);
  auto kernel_of = [&](const CMat& m) {
    const CMat k = kernel_basis(m.adjoint() * emb, tol);
    return k.cols() ? CMat(emb * k) : CMat(w.space().size(), 0);
  };
  const WindowedOp prod = compose(w.w0, w.w1);
  const CMat d = kernel_of(prod.columns(prod.exact_domain()));

  // F' = part of F that W0 keeps inside the window.
  std::vector<Label> exact0;
  for (long i = 0; i < w.space().size(); ++i)
    if (w.w0.exact_cols[static_cast<size_t>(i)]) exact0.push_back(w.space()[i]);
  const CMat ex0 = w.space().embedding(Window(exact0, w.space().fiber_dim()));
  const CMat fp = f.cols() ? intersect_subspaces(f, ex0, tol) : f;
  const CMat w0f = w0 * fp;
  const CMat w1e = w1 * e;

  DecompositionCheck dc;
  dc.full = fp.cols() == f.cols();
  dc.e_w0f = std::max({outside(e, d), outside(w0f, d), e.cols() && w0f.cols() ? op_norm(e.adjoint() * w0f) : 0.0});
  dc.w1e_f = std::max({outside(w1e, d), outside(f, d), w1e.cols() && f.cols() ? op_norm(w1e.adjoint() * f) : 0.0});
  if (dc.full) {
    CMat a(d.rows(), e.cols() + w0f.cols()), b(d.rows(), w1e.cols() + f.cols());
    a << e, w0f;
    b << w1e, f;
    const CMat pd = projector(kernel_of(prod.matrix));
    dc.e_w0f = std::max(dc.e_w0f, op_norm(pd - a * a.adjoint()));
    dc.w1e_f = std::max(dc.w1e_f, op_norm(pd - b * b.adjoint()));
  }
  if (check) *check = dc;
  if (std::max(dc.e_w0f, dc.w1e_f) > 1e-8) throw Error("bcl_from_biisometry: decomposition of ker (W0 W1)* fails; window too small");

  const int ne = static_cast<int>(e.cols()), nf = static_cast<int>(f.cols());
  CMat u(ne + nf, ne + nf);
  if (ne) {
    u.block(0, 0, ne, ne) = e.adjoint() * w1.adjoint() * e;
    if (nf) u.block(ne, 0, nf, ne) = f.adjoint() * e;
  }
  if (nf) {
    const CMat w0full = w0 * f;
    if (ne) u.block(0, ne, ne, nf) = e.adjoint() * w1.adjoint() * w0full;
    u.block(ne, ne, nf, nf) = f.adjoint() * w0full;
  }
  return assemble(u, ne, nf);
}

BiIsometry biisometry_from_bcl(const BCLPair& b, int n) {
  if (n < 2) throw Error("biisometry_from_bcl: need at least 3 grades");
  const int dim = static_cast<int>(b.dim());
  if (dim == 0) throw Error("biisometry_from_bcl: empty pair");
  const Window w = Window::graded(dim, 0, n);
  const CMat pp = identity(dim) - b.p;
  const CMat up = b.u * b.p, upp = b.u * pp;
  const CMat pu = b.p * b.u.adjoint(), ppu = pp * b.u.adjoint();
  WindowedOp w0(w, w, CMat::Zero(w.size(), w.size()));
  WindowedOp w1(w, w, CMat::Zero(w.size(), w.size()));
  for (int g = 0; g <= n; ++g) {
    const long c = static_cast<long>(g) * dim;
    w0.matrix.block(c, c, dim, dim) = upp;
    w1.matrix.block(c, c, dim, dim) = pu;
    if (g < n) {
      w0.matrix.block(c + dim, c, dim, dim) = up;
      w1.matrix.block(c + dim, c, dim, dim) = ppu;
    }
    for (int i = 0; i < dim; ++i) {
      w0.exact_cols[static_cast<size_t>(c + i)] = g < n;
      w1.exact_cols[static_cast<size_t>(c + i)] = g < n;
    }
  }
  const Window interior = w.filter([&](const Label& l) {
    if (l.grade > n - 2) return false;
    return b.interior_mask.empty() || b.interior_mask[static_cast<size_t>(l.fiber)] != 0;
  });
  return {w0, w1, interior};
}

BCLPair bcl_from_symbol(const Model& m, const Tolerance& tol) {
  const ModelSpaces& sp = m.spaces;
  const Window& w = sp.window;
  const int d = sp.fiber;
  const int k = sp.samples;
  const auto pts = roots_of_unity(k);

  const ModelCompression mc = model_space_compression(m, tol);
  const CMat f = mc.basis.cols() ? canonical_basis(mc.basis, tol) : mc.basis;
  const int nf = static_cast<int>(f.cols());

  const auto coeff = m.theta.series(0);
  const CMat theta0 = coeff[0];
  const CMat t0s = theta0.adjoint();

  CMat u = CMat::Zero(d + nf, d + nf);
  u.block(0, 0, d, d) = t0s;

  if (nf) {
    // e - P Theta Theta(0)* e - Delta Theta(0)* e, built as e minus the model
    // image of the constant Theta(0)* e.
    const WindowedOp t = toeplitz_matrix(m.theta, sp.hardy_top);
    for (int i = 0; i < d; ++i) {
      CVec x = CVec::Zero(w.size());
      x(*w.index_of({0, i})) = 1.0;
      const CVec c = t0s.col(i);
      for (int j = 0; j < d; ++j) {
        if (c(j) == cd(0.0)) continue;
        const long tc = *t.domain.index_of({0, j});
        for (long r = 0; r < t.codomain.size(); ++r) {
          if (t.codomain[r].grade > sp.hardy_top) continue;
          x(*w.index_of(t.codomain[r])) -= t.matrix(r, tc) * c(j);
        }
        const long hc = *sp.hardy.index_of({0, j});
        for (int q = 0; q < sp.defect_dim; ++q) x(*w.index_of({0, d + q})) -= sp.d_op(q, hc) * c(j);
      }
      u.block(d, i, nf, 1) = f.adjoint() * x;
    }

    // (Theta* u + Delta v)_{-1} from the samples.
    std::vector<CMat> th(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) th[static_cast<size_t>(j)] = m.theta.eval(pts[static_cast<size_t>(j)]);
    const double sk = std::sqrt(static_cast<double>(k));
    for (int col = 0; col < nf; ++col) {
      const CVec x = f.col(col);
      std::vector<CVec> h(static_cast<size_t>(k), CVec::Zero(d));
      for (int j = 0; j < k; ++j) {
        const cd z = pts[static_cast<size_t>(j)];
        CVec uz = CVec::Zero(d);
        cd zg = 1.0;
        for (int g = 0; g <= sp.hardy_top; ++g, zg *= z)
          for (int i = 0; i < d; ++i) uz(i) += x(*w.index_of({g, i})) * zg;
        h[static_cast<size_t>(j)] = th[static_cast<size_t>(j)].adjoint() * uz;
      }
      for (int q = 0; q < sp.defect_dim; ++q) {
        const auto j = static_cast<size_t>(sp.defect_sample[static_cast<size_t>(q)]);
        const cd cq = x(*w.index_of({0, d + q}));
        h[j] += sk * cq * sp.defect_weight[static_cast<size_t>(q)] * sp.defect_dirs.col(q);
      }
      CVec acc = CVec::Zero(d);
      for (int j = 0; j < k; ++j) acc += pts[static_cast<size_t>(j)] * h[static_cast<size_t>(j)];
      u.block(0, d + col, d, 1) = acc / static_cast<double>(k);
    }
    u.block(d, d, nf, nf) = f.adjoint() * m.w.w0.matrix * f;
  }
  return assemble(u, d, nf);
}

BCLPair bcl_from_symbol(const OpSymbol& theta, int n, int k, const Tolerance& tol) {
  return bcl_from_symbol(build_model_biisometry(theta, n, k, tol), tol);
}

const char* to_string(Equivalence e) {
  switch (e) {
    case Equivalence::equivalent: return "equivalent";
    case Equivalence::inequivalent: return "inequivalent";
    case Equivalence::undecided: return "undecided";
  }
  return "undecided";
}

EquivalenceResult pair_equivalence(const BCLPair& a, const BCLPair& b, int word_len, const Tolerance& tol) {
  EquivalenceResult out;
  if (a.dim() != b.dim()) {
    out.verdict = Equivalence::inequivalent;
    out.reason = "dimension mismatch";
    return out;
  }
  if (a.dim() == 0) {
    out.verdict = Equivalence::equivalent;
    out.witness = CMat(0, 0);
    return out;
  }
  const std::vector<std::pair<CMat, CMat>> gens{
      {a.u, b.u}, {CMat(a.u.adjoint()), CMat(b.u.adjoint())}, {a.p, b.p}};
  const char* names[] = {"U", "U*", "P"};

  // Depth-first over words; stops at the first trace mismatch.
  std::string word;
  double worst = 0.0;
  std::function<bool(const CMat&, const CMat&, int)> walk = [&](const CMat& x, const CMat& y, int depth) -> bool {
    if (depth == word_len) return false;
    for (size_t g = 0; g < gens.size(); ++g) {
      const CMat xa = x * gens[g].first;
      const CMat yb = y * gens[g].second;
      const size_t keep = word.size();
      if (!word.empty()) word += " ";
      word += names[g];
      const double gap = std::abs(xa.trace() - yb.trace());
      worst = std::max(worst, gap);
      if (gap > 1e-7) return true;
      if (walk(xa, yb, depth + 1)) return true;
      word.resize(keep);
    }
    return false;
  };
  if (walk(identity(a.dim()), identity(b.dim()), 0)) {
    out.verdict = Equivalence::inequivalent;
    out.reason = "trace of " + word + " differs";
    out.residual = worst;
    return out;
  }
  const std::vector<std::pair<CMat, CMat>> rel{{a.u, b.u}, {a.p, b.p}};
  if (auto x = unitary_intertwiner_solve(rel, tol)) {
    out.verdict = Equivalence::equivalent;
    out.witness = *x;
    out.residual = intertwining_residual(*x, rel);
    return out;
  }
  out.verdict = Equivalence::undecided;
  out.reason = "traces agree up to length " + std::to_string(word_len) + "; no intertwiner found";
  return out;
}

}  // namespace biiso
