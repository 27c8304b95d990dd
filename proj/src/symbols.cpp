#include "biiso/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace biiso {

namespace {

std::vector<cd> multiply_series(const std::vector<cd>& a, const std::vector<cd>& b, size_t len) {
  std::vector<cd> out(len, cd(0.0));
  for (size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == cd(0.0)) continue;
    for (size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<cd> factor_series(cd a, size_t len) {
  std::vector<cd> out(len, cd(0.0));
  if (len == 0) return out;
  out[0] = -a;
  const double w = 1.0 - std::norm(a);
  cd p(1.0);
  for (size_t k = 1; k < len; ++k) {
    out[k] = w * p;
    p *= std::conj(a);
  }
  return out;
}

void check_disk(cd z) {
  if (std::abs(z) > 1.0 + 1e-12) throw Error("symbol evaluated outside the closed unit disk");
}

}  // namespace

cd InnerScalar::eval(cd z) const {
  cd v = constant;
  for (cd a : zeros) v *= (z - a) / (1.0 - std::conj(a) * z);
  return v;
}

std::vector<cd> InnerScalar::series(int n) const {
  const size_t len = static_cast<size_t>(n + 1);
  std::vector<cd> out(len, cd(0.0));
  out[0] = constant;
  for (cd a : zeros) out = multiply_series(out, factor_series(a, len), len);
  return out;
}

double InnerScalar::radius() const {
  double r = 0.0;
  for (cd a : zeros) r = std::max(r, std::abs(a));
  return r;
}

InnerScalar blaschke_factor(cd a) {
  if (std::abs(a) >= 1.0) throw Error("Blaschke zero must lie in the open disk");
  return InnerScalar{{a}, cd(1.0)};
}

OpSymbol::OpSymbol(int dim, std::vector<SymbolEntry> entries) : dim_(dim), entries_(std::move(entries)) {
  if (dim_ < 1) throw Error("OpSymbol: dimension must be positive");
  if (entries_.size() != static_cast<size_t>(dim_ * dim_)) throw Error("OpSymbol: expected dim*dim entries");
  for (const auto& e : entries_) {
    if (!e.inner) continue;
    for (cd a : e.inner->zeros)
      if (std::abs(a) >= 1.0) throw Error("OpSymbol: Blaschke zero outside the open disk");
    if (std::abs(std::abs(e.inner->constant) - 1.0) > 1e-12) throw Error("OpSymbol: inner constant is not unimodular");
  }
}

OpSymbol OpSymbol::constant(const CMat& c) { return polynomial({c}); }

OpSymbol OpSymbol::polynomial(const std::vector<CMat>& coeffs) {
  if (coeffs.empty()) throw Error("OpSymbol::polynomial: no coefficients");
  const int d = static_cast<int>(coeffs.front().rows());
  std::vector<SymbolEntry> entries(static_cast<size_t>(d * d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (const CMat& c : coeffs) {
        if (c.rows() != d || c.cols() != d) throw Error("OpSymbol::polynomial: coefficient shape mismatch");
        entries[static_cast<size_t>(i * d + j)].poly.push_back(c(i, j));
      }
  return OpSymbol(d, std::move(entries));
}

int OpSymbol::poly_degree() const {
  int deg = 0;
  for (const auto& e : entries_)
    for (int k = static_cast<int>(e.poly.size()) - 1; k > deg; --k)
      if (e.poly[static_cast<size_t>(k)] != cd(0.0)) {
        deg = k;
        break;
      }
  return deg;
}

bool OpSymbol::has_inner() const {
  return std::any_of(entries_.begin(), entries_.end(), [](const SymbolEntry& e) {
    return e.inner && !e.inner->zeros.empty();
  });
}

double OpSymbol::inner_radius() const {
  double r = 0.0;
  for (const auto& e : entries_)
    if (e.inner) r = std::max(r, e.inner->radius());
  return r;
}

int OpSymbol::effective_degree(double tail) const {
  const int deg = poly_degree();
  if (!has_inner()) return deg;
  int ext = 0;
  while (series_tail(deg + ext) > tail) {
    ext += 4;
    if (ext > 2000) throw Error("OpSymbol: Blaschke tail decays too slowly");
  }
  return deg + ext;
}

CMat OpSymbol::eval(cd z) const {
  check_disk(z);
  CMat m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      const SymbolEntry& e = entry(i, j);
      cd p(0.0);
      for (auto it = e.poly.rbegin(); it != e.poly.rend(); ++it) p = p * z + *it;
      if (e.inner) p *= e.inner->eval(z);
      m(i, j) = p;
    }
  return m;
}

std::vector<CMat> OpSymbol::series(int n) const {
  const size_t len = static_cast<size_t>(n + 1);
  std::vector<CMat> out(len, CMat::Zero(dim_, dim_));
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      const SymbolEntry& e = entry(i, j);
      std::vector<cd> c(e.poly.begin(), e.poly.begin() + static_cast<long>(std::min(e.poly.size(), len)));
      if (e.inner) c = multiply_series(c, e.inner->series(n), len);
      for (size_t k = 0; k < c.size() && k < len; ++k) out[k](i, j) = c[k];
    }
  return out;
}

double OpSymbol::series_tail(int n) const {
  if (!has_inner()) return n >= poly_degree() ? 0.0 : 1.0;
  // Coefficients decay like k^m rho^k; sum a long explicit stretch, then bound the rest geometrically.
  const int stretch = 400;
  const auto c = series(n + stretch);
  double s = 0.0;
  for (int k = n + 1; k <= n + stretch; ++k) s += c[static_cast<size_t>(k)].norm();
  const double rho = inner_radius();
  const double last = c.back().norm();
  if (rho < 1.0) s += last * rho / (1.0 - rho) * 4.0;
  return s;
}

std::vector<cd> roots_of_unity(int k) {
  std::vector<cd> out(static_cast<size_t>(k));
  for (int j = 0; j < k; ++j) out[static_cast<size_t>(j)] = std::polar(1.0, 2.0 * std::numbers::pi * j / k);
  return out;
}

std::vector<CMat> taylor_coefficients(const OpSymbol& s, int n_max, int k) {
  if (k < 4 * (n_max + s.poly_degree())) throw Error("taylor_coefficients: sample count too small");
  const auto pts = roots_of_unity(k);
  std::vector<CMat> vals;
  vals.reserve(pts.size());
  for (cd z : pts) vals.push_back(s.eval(z));
  std::vector<CMat> out;
  for (int n = 0; n <= n_max; ++n) {
    CMat c = CMat::Zero(s.dim(), s.dim());
    for (int j = 0; j < k; ++j) c += vals[static_cast<size_t>(j)] * std::pow(std::conj(pts[static_cast<size_t>(j)]), n);
    out.push_back(c / static_cast<double>(k));
  }
  return out;
}

BoundaryDefect boundary_defect(const OpSymbol& s, int k, const Tolerance& tol) {
  if (k < 8) throw Error("boundary_defect: need at least 8 samples");
  (void)tol;
  BoundaryDefect out;
  out.points = roots_of_unity(k);
  for (cd z : out.points) {
    const CMat t = s.eval(z);
    CMat m = identity(s.dim()) - t.adjoint() * t;
    m = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(m);
    Eigen::VectorXd ev = es.eigenvalues();
    if (ev.minCoeff() < -1e-6) throw Error("boundary_defect: symbol is not contractive on the circle");
    for (long i = 0; i < ev.size(); ++i) ev(i) = std::sqrt(std::max(ev(i), 0.0));
    out.delta.push_back(es.eigenvectors() * ev.cast<cd>().asDiagonal() * es.eigenvectors().adjoint());
  }
  return out;
}

WindowedOp toeplitz_matrix(const OpSymbol& s, int n) {
  const int d = s.effective_degree();
  const int f = s.dim();
  const auto c = s.series(d);
  const Window dom = Window::graded(f, 0, n);
  const Window cod = Window::graded(f, 0, n + d);
  CMat m = CMat::Zero(cod.size(), dom.size());
  for (int g = 0; g <= n; ++g)
    for (int k = 0; k <= d; ++k) m.block(static_cast<long>(g + k) * f, static_cast<long>(g) * f, f, f) = c[static_cast<size_t>(k)];
  WindowedOp op(dom, cod, m);
  for (long i = 0; i < cod.size(); ++i) op.exact_rows[static_cast<size_t>(i)] = cod[i].grade <= n;
  op.tail_bound = s.has_inner() ? s.series_tail(d) : 0.0;
  return op;
}

namespace {

WindowedOp banded_laurent(const std::vector<CMat>& coeff, int lo_off, int hi_off, int f, int n, double tail) {
  // coeff[m - lo_off] is the Fourier coefficient of index m, lo_off <= m <= hi_off.
  const Window w = Window::graded(f, -n, n);
  CMat m = CMat::Zero(w.size(), w.size());
  for (int g = -n; g <= n; ++g)
    for (int gp = -n; gp <= n; ++gp) {
      const int k = gp - g;
      if (k < lo_off || k > hi_off) continue;
      m.block(static_cast<long>(gp + n) * f, static_cast<long>(g + n) * f, f, f) = coeff[static_cast<size_t>(k - lo_off)];
    }
  WindowedOp op(w, w, m);
  for (long i = 0; i < w.size(); ++i) {
    const int g = w[i].grade;
    op.exact_cols[static_cast<size_t>(i)] = g + hi_off <= n && g + lo_off >= -n;
    op.exact_rows[static_cast<size_t>(i)] = g - hi_off >= -n && g - lo_off <= n;
  }
  op.tail_bound = tail;
  return op;
}

}  // namespace

WindowedOp laurent_matrix(const OpSymbol& s, int n) {
  const int d = s.effective_degree();
  return banded_laurent(s.series(d), 0, d, s.dim(), n, s.has_inner() ? s.series_tail(d) : 0.0);
}

WindowedOp laurent_matrix(const BoundaryDefect& dft, int n) {
  const int k = static_cast<int>(dft.points.size());
  if (k == 0) throw Error("laurent_matrix: empty defect samples");
  const int f = static_cast<int>(dft.delta.front().rows());
  const int half = (k - 1) / 2;
  std::vector<CMat> coeff;
  for (int m = -half; m <= half; ++m) {
    CMat c = CMat::Zero(f, f);
    for (int j = 0; j < k; ++j) c += dft.delta[static_cast<size_t>(j)] * std::pow(std::conj(dft.points[static_cast<size_t>(j)]), m);
    coeff.push_back(c / static_cast<double>(k));
  }
  // Band = largest index with a non-negligible coefficient; the rest is reported as tail.
  int band = 0;
  for (int m = -half; m <= half; ++m)
    if (op_norm(coeff[static_cast<size_t>(m + half)]) > 1e-13) band = std::max(band, std::abs(m));
  band = std::min(band, 2 * n);
  double tail = 0.0;
  for (int m = -half; m <= half; ++m)
    if (std::abs(m) > band) tail += op_norm(coeff[static_cast<size_t>(m + half)]);
  std::vector<CMat> kept(coeff.begin() + (half - band), coeff.begin() + (half + band + 1));
  return banded_laurent(kept, -band, band, f, n, tail);
}

InnerCheck is_inner_sampled(const OpSymbol& s, int k) {
  if (k < 8) throw Error("is_inner_sampled: need at least 8 samples");
  InnerCheck out;
  for (cd z : roots_of_unity(k)) {
    const CMat t = s.eval(z);
    out.max_defect = std::max(out.max_defect, op_norm(t.adjoint() * t - identity(s.dim())));
  }
  out.inner = out.max_defect <= 1e-8;
  return out;
}

double contractivity_norm(const OpSymbol& s, int k) {
  double r = 0.0;
  for (cd z : roots_of_unity(k)) r = std::max(r, op_norm(s.eval(z)));
  return r;
}

OpSymbol section6_symbol(int n, cd phi_zero) {
  if (n < 2) throw Error("section6_symbol: need n >= 2");
  const InnerScalar phi = blaschke_factor(phi_zero);
  std::vector<SymbolEntry> e(static_cast<size_t>(n * n));
  auto at = [&](int i, int j) -> SymbolEntry& { return e[static_cast<size_t>(i * n + j)]; };
  at(0, 0) = {{cd(0.6)}, phi};
  at(1, 0) = {{cd(0.0), cd(0.8)}, std::nullopt};
  for (int j = 1; j + 1 < n; ++j) at(j + 1, j) = {{cd(1.0)}, std::nullopt};
  at(0, n - 1) = {{cd(0.8)}, phi};
  at(1, n - 1) = {{cd(0.0), cd(-0.6)}, std::nullopt};
  return OpSymbol(n, std::move(e));
}

CMat section6_left_inverse(int n, cd phi_zero, cd z) {
  const InnerScalar phi = blaschke_factor(phi_zero);
  const cd phi0 = phi.eval(0.0);
  if (std::abs(phi0) < 1e-12) throw Error("section6_left_inverse: phi(0) must be nonzero");
  cd eta;
  if (std::abs(z) < 1e-3) {
    const auto c = phi.series(24);
    cd s(0.0);
    for (int k = 24; k >= 1; --k) s = s * z + c[static_cast<size_t>(k)];
    eta = -1.25 * s / phi0;
  } else {
    eta = 1.25 / z * (1.0 - phi.eval(z) / phi0);
  }
  CMat m = CMat::Zero(n, n);
  m(0, 0) = 5.0 / (3.0 * phi0);
  m(0, 1) = eta;
  for (int i = 1; i + 1 < n; ++i) m(i, i + 1) = 1.0;
  return m;
}

}  // namespace biiso
