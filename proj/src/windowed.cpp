#include "biiso/windowed.hpp"

#include <algorithm>
#include <cmath>

namespace biiso {

Window::Window(std::vector<Label> labels, int fiber_dim) : labels_(std::move(labels)), fiber_dim_(fiber_dim) {
  std::sort(labels_.begin(), labels_.end());
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (i > 0 && labels_[i] == labels_[i - 1]) throw Error("Window: duplicate label");
    if (labels_[i].fiber < 0 || labels_[i].fiber >= fiber_dim_) throw Error("Window: fiber index out of range");
    index_.emplace(labels_[i], static_cast<long>(i));
  }
}

Window Window::graded(int fiber_dim, int lo, int hi) {
  std::vector<Label> labels;
  for (int g = lo; g <= hi; ++g)
    for (int i = 0; i < fiber_dim; ++i) labels.push_back({g, i});
  return Window(std::move(labels), fiber_dim);
}

std::optional<long> Window::index_of(const Label& l) const {
  auto it = index_.find(l);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Window::contains(const Window& other) const {
  return std::all_of(other.labels_.begin(), other.labels_.end(), [&](const Label& l) { return contains(l); });
}

Window Window::filter(const std::function<bool(const Label&)>& keep) const {
  std::vector<Label> out;
  std::copy_if(labels_.begin(), labels_.end(), std::back_inserter(out), keep);
  return Window(std::move(out), fiber_dim_);
}

int Window::min_grade() const { return labels_.empty() ? 0 : labels_.front().grade; }
int Window::max_grade() const { return labels_.empty() ? 0 : labels_.back().grade; }

CMat Window::embedding(const Window& sub) const {
  CMat e = CMat::Zero(size(), sub.size());
  for (long j = 0; j < sub.size(); ++j) {
    auto i = index_of(sub[j]);
    if (!i) throw Error("Window::embedding: label not contained in window");
    e(*i, j) = 1.0;
  }
  return e;
}

WindowedOp::WindowedOp(Window dom, Window cod, CMat m)
    : domain(std::move(dom)),
      codomain(std::move(cod)),
      matrix(std::move(m)),
      exact_cols(static_cast<size_t>(domain.size()), 1),
      exact_rows(static_cast<size_t>(codomain.size()), 1) {
  if (matrix.rows() != codomain.size() || matrix.cols() != domain.size())
    throw Error("WindowedOp: matrix dimensions do not match windows");
}

bool WindowedOp::exact() const {
  return tail_bound == 0.0 && std::all_of(exact_cols.begin(), exact_cols.end(), [](char c) { return c != 0; });
}

Window WindowedOp::exact_domain() const {
  std::vector<Label> out;
  for (long j = 0; j < domain.size(); ++j)
    if (exact_cols[static_cast<size_t>(j)]) out.push_back(domain[j]);
  return Window(std::move(out), domain.fiber_dim());
}

Window WindowedOp::exact_codomain_rows() const {
  std::vector<Label> out;
  for (long i = 0; i < codomain.size(); ++i)
    if (exact_rows[static_cast<size_t>(i)]) out.push_back(codomain[i]);
  return Window(std::move(out), codomain.fiber_dim());
}

CMat WindowedOp::columns(const Window& sub) const { return matrix * domain.embedding(sub); }

WindowedOp identity_op(const Window& w) { return WindowedOp(w, w, identity(w.size())); }

WindowedOp compose(const WindowedOp& f, const WindowedOp& g) {
  if (!f.domain.contains(g.codomain)) throw Error("compose: codomain of inner operator does not embed in domain");
  const CMat emb = f.domain.embedding(g.codomain);
  WindowedOp out(g.domain, f.codomain, f.matrix * emb * g.matrix);
  // Map from f.domain index to g.codomain index, -1 if absent.
  std::vector<long> to_g(static_cast<size_t>(f.domain.size()), -1);
  for (long k = 0; k < g.codomain.size(); ++k) to_g[static_cast<size_t>(*f.domain.index_of(g.codomain[k]))] = k;

  for (long j = 0; j < g.domain.size(); ++j) {
    bool ok = g.exact_cols[static_cast<size_t>(j)] != 0;
    for (long k = 0; ok && k < g.codomain.size(); ++k) {
      if (g.matrix(k, j) == cd(0.0)) continue;
      ok = f.exact_cols[static_cast<size_t>(*f.domain.index_of(g.codomain[k]))] != 0;
    }
    out.exact_cols[static_cast<size_t>(j)] = ok;
  }
  for (long r = 0; r < f.codomain.size(); ++r) {
    bool ok = f.exact_rows[static_cast<size_t>(r)] != 0;
    for (long k = 0; ok && k < f.domain.size(); ++k) {
      if (f.matrix(r, k) == cd(0.0)) continue;
      const long gk = to_g[static_cast<size_t>(k)];
      ok = gk >= 0 && g.exact_rows[static_cast<size_t>(gk)] != 0;
    }
    out.exact_rows[static_cast<size_t>(r)] = ok;
  }
  out.tail_bound = f.tail_bound + g.tail_bound;
  return out;
}

WindowedOp adjoint(const WindowedOp& f) {
  WindowedOp out(f.codomain, f.domain, f.matrix.adjoint());
  out.exact_cols = f.exact_rows;
  out.exact_rows = f.exact_cols;
  out.tail_bound = f.tail_bound;
  return out;
}

WindowedOp operator+(const WindowedOp& a, const WindowedOp& b) {
  if (!(a.domain == b.domain) || !(a.codomain == b.codomain)) throw Error("operator+: window mismatch");
  WindowedOp out(a.domain, a.codomain, a.matrix + b.matrix);
  for (size_t j = 0; j < out.exact_cols.size(); ++j) out.exact_cols[j] = a.exact_cols[j] && b.exact_cols[j];
  for (size_t i = 0; i < out.exact_rows.size(); ++i) out.exact_rows[i] = a.exact_rows[i] && b.exact_rows[i];
  out.tail_bound = a.tail_bound + b.tail_bound;
  return out;
}

WindowedOp scale(const WindowedOp& a, cd s) {
  WindowedOp out = a;
  out.matrix *= s;
  out.tail_bound *= std::abs(s);
  return out;
}

double isometry_defect(const WindowedOp& f, const Window& on) {
  if (!f.domain.contains(on)) throw Error("isometry_defect: window does not embed in domain");
  const CMat m = f.columns(on);
  return op_norm(m.adjoint() * m - identity(on.size()));
}

WindowedOp shift_operator(int fiber_dim, int n) {
  if (n < 1) throw Error("shift_operator: need at least two grades");
  const Window w = Window::graded(fiber_dim, 0, n);
  CMat m = CMat::Zero(w.size(), w.size());
  for (long j = 0; j < w.size(); ++j) {
    auto i = w.index_of({w[j].grade + 1, w[j].fiber});
    if (i) m(*i, j) = 1.0;
  }
  WindowedOp op(w, w, m);
  for (long j = 0; j < w.size(); ++j) op.exact_cols[static_cast<size_t>(j)] = w[j].grade < n;
  op.tail_bound = 1.0;
  return op;
}

WindowedOp bilateral_shift_operator(int fiber_dim, int n) {
  if (n < 1) throw Error("bilateral_shift_operator: need n >= 1");
  const Window w = Window::graded(fiber_dim, -n, n);
  CMat m = CMat::Zero(w.size(), w.size());
  for (long j = 0; j < w.size(); ++j) {
    auto i = w.index_of({w[j].grade + 1, w[j].fiber});
    if (i) m(*i, j) = 1.0;
  }
  WindowedOp op(w, w, m);
  for (long j = 0; j < w.size(); ++j) {
    op.exact_cols[static_cast<size_t>(j)] = w[j].grade < n;
    op.exact_rows[static_cast<size_t>(j)] = w[j].grade > -n;
  }
  op.tail_bound = 1.0;
  return op;
}

Window direct_sum(const Window& a, const Window& b) {
  std::vector<Label> labels = a.labels();
  for (const Label& l : b.labels()) labels.push_back({l.grade, l.fiber + a.fiber_dim()});
  return Window(std::move(labels), a.fiber_dim() + b.fiber_dim());
}

WindowedOp direct_sum(const WindowedOp& a, const WindowedOp& b) {
  const Window dom = direct_sum(a.domain, b.domain);
  const Window cod = direct_sum(a.codomain, b.codomain);
  const int off_dom = a.domain.fiber_dim();
  const int off_cod = a.codomain.fiber_dim();
  CMat m = CMat::Zero(cod.size(), dom.size());
  WindowedOp out(dom, cod, m);
  auto place = [&](const WindowedOp& op, int dom_off, int cod_off) {
    for (long j = 0; j < op.domain.size(); ++j) {
      const long jj = *dom.index_of({op.domain[j].grade, op.domain[j].fiber + dom_off});
      out.exact_cols[static_cast<size_t>(jj)] = op.exact_cols[static_cast<size_t>(j)];
      for (long i = 0; i < op.codomain.size(); ++i) {
        const long ii = *cod.index_of({op.codomain[i].grade, op.codomain[i].fiber + cod_off});
        out.matrix(ii, jj) = op.matrix(i, j);
      }
    }
    for (long i = 0; i < op.codomain.size(); ++i) {
      const long ii = *cod.index_of({op.codomain[i].grade, op.codomain[i].fiber + cod_off});
      out.exact_rows[static_cast<size_t>(ii)] = op.exact_rows[static_cast<size_t>(i)];
    }
  };
  place(a, 0, 0);
  place(b, off_dom, off_cod);
  out.tail_bound = std::max(a.tail_bound, b.tail_bound);
  return out;
}

double restricted_norm(const CMat& m, const Window& space, const Window& on) {
  return op_norm(m * space.embedding(on));
}

BiIsometryResiduals validate(const BiIsometry& w) {
  BiIsometryResiduals r;
  r.isometry0 = isometry_defect(w.w0, w.interior);
  r.isometry1 = isometry_defect(w.w1, w.interior);
  r.commutation = restricted_norm(w.w0.matrix * w.w1.matrix - w.w1.matrix * w.w0.matrix, w.space(), w.interior);
  return r;
}

BiIsometry direct_sum(const BiIsometry& a, const BiIsometry& b) {
  return {direct_sum(a.w0, b.w0), direct_sum(a.w1, b.w1), direct_sum(a.interior, b.interior)};
}

}  // namespace biiso
