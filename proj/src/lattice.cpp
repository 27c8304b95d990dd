#include "biiso/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace biiso {

namespace {

long pmod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

void check_pattern(const std::string& p, const char* side) {
  if (p.empty()) throw Error(std::string("ZSet: empty ") + side + " pattern");
  for (char c : p)
    if (c != '0' && c != '1') throw Error(std::string("ZSet: ") + side + " pattern must be a 0/1 string");
}

std::string shortest_period(const std::string& p) {
  const size_t n = p.size();
  for (size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (size_t k = d; k < n && ok; ++k) ok = p[k] == p[k % d];
    if (ok) return p.substr(0, d);
  }
  return p;
}

long lcm_of(long a, long b) { return std::lcm(a, b); }

}  // namespace

bool ZSet::contains(long n) const {
  if (n < core_lo) return left[static_cast<size_t>(pmod(n - core_lo, static_cast<long>(left.size())))] == '1';
  if (n > core_hi) return right[static_cast<size_t>(pmod(n - core_hi - 1, static_cast<long>(right.size())))] == '1';
  return core[static_cast<size_t>(n - core_lo)] != 0;
}

void ZSet::check() const {
  if (core_hi < core_lo - 1) throw Error("ZSet: core_hi < core_lo - 1");
  if (static_cast<long>(core.size()) != core_hi - core_lo + 1) throw Error("ZSet: core mask length does not match its range");
  check_pattern(left, "left");
  check_pattern(right, "right");
}

long ZSet::tail_period() const { return static_cast<long>(std::max(left.size(), right.size())); }

ZSet ZSet::empty() { return ZSet{}; }

ZSet ZSet::all() {
  ZSet z;
  z.left = z.right = "1";
  return z;
}

ZSet ZSet::at_least(long from) {
  ZSet z;
  z.core_lo = from;
  z.core_hi = from - 1;
  z.left = "0";
  z.right = "1";
  return z;
}

ZSet ZSet::below(long below) {
  ZSet z;
  z.core_lo = below;
  z.core_hi = below - 1;
  z.left = "1";
  z.right = "0";
  return z;
}

ZSet ZSet::multiples(long m, long r) {
  if (m < 1) throw Error("ZSet::multiples: modulus must be positive");
  std::string p(static_cast<size_t>(m), '0');
  p[static_cast<size_t>(pmod(r, m))] = '1';
  ZSet z;
  z.left = z.right = p;
  return z;
}

ZSet ZSet::finite(const std::vector<long>& members) {
  if (members.empty()) return empty();
  const auto [lo, hi] = std::minmax_element(members.begin(), members.end());
  ZSet z;
  z.core_lo = *lo;
  z.core_hi = *hi;
  z.core.assign(static_cast<size_t>(*hi - *lo + 1), 0);
  for (long m : members) z.core[static_cast<size_t>(m - *lo)] = 1;
  return z;
}

ZSet normalize(const ZSet& a) {
  a.check();
  ZSet z = a;
  z.left = shortest_period(z.left);
  z.right = shortest_period(z.right);
  // Absorb core bits that the tails already predict.
  size_t front = 0;
  while (front < z.core.size() && (z.core[front] != 0) == (z.left[0] == '1')) {
    std::rotate(z.left.begin(), z.left.begin() + 1, z.left.end());
    ++front;
  }
  z.core.erase(z.core.begin(), z.core.begin() + static_cast<long>(front));
  z.core_lo += static_cast<long>(front);
  while (!z.core.empty() && (z.core.back() != 0) == (z.right.back() == '1')) {
    std::rotate(z.right.rbegin(), z.right.rbegin() + 1, z.right.rend());
    z.core.pop_back();
    --z.core_hi;
  }
  return z;
}

ZSet translate(const ZSet& a, long n) {
  ZSet z = a;
  z.core_lo += n;
  z.core_hi += n;
  return z;
}

std::vector<char> membership(const ZSet& a, long lo, long hi) {
  std::vector<char> out;
  for (long n = lo; n <= hi; ++n) out.push_back(a.contains(n) ? 1 : 0);
  return out;
}

bool same_set(const ZSet& a, const ZSet& b) {
  const long l = lcm_of(lcm_of(static_cast<long>(a.left.size()), static_cast<long>(b.left.size())),
                        lcm_of(static_cast<long>(a.right.size()), static_cast<long>(b.right.size())));
  const long lo = std::min(a.core_lo, b.core_lo) - l;
  const long hi = std::max(a.core_hi, b.core_hi) + l;
  for (long n = lo; n <= hi; ++n)
    if (a.contains(n) != b.contains(n)) return false;
  return true;
}

ZSet random_zset(std::mt19937& rng, int max_core, int max_period) {
  std::uniform_int_distribution<int> len(0, max_core), per(1, max_period), kind(0, 2), bit(0, 1), off(-10, 10);
  auto tail = [&] {
    const int k = kind(rng);
    if (k == 0) return std::string("0");
    if (k == 1) return std::string("1");
    std::string p(static_cast<size_t>(per(rng)), '0');
    for (char& c : p) c = bit(rng) ? '1' : '0';
    return p;
  };
  ZSet z;
  const int n = len(rng);
  z.core_lo = off(rng);
  z.core_hi = z.core_lo + n - 1;
  for (int i = 0; i < n; ++i) z.core.push_back(static_cast<char>(bit(rng)));
  z.left = tail();
  z.right = tail();
  return z;
}

std::optional<long> minimal_period(const ZSet& a) {
  const ZSet z = normalize(a);
  const long l = lcm_of(static_cast<long>(z.left.size()), static_cast<long>(z.right.size()));
  // A period of A is also a period of both tails, so it divides their lcm.
  for (long m = 1; m <= l; ++m)
    if (l % m == 0 && same_set(z, translate(z, m))) return m;
  return std::nullopt;
}

std::optional<long> translate_equivalent(const ZSet& a, const ZSet& b) {
  const ZSet za = normalize(a), zb = normalize(b);
  if (const auto m = minimal_period(za)) {
    for (long n = 0; n < *m; ++n)
      if (same_set(translate(za, n), zb)) return n;
    return std::nullopt;
  }
  // For aperiodic sets the tail boundaries pin the shift down to within a
  // few tail periods of the core offsets.
  const long l = lcm_of(lcm_of(static_cast<long>(za.left.size()), static_cast<long>(zb.left.size())),
                        lcm_of(static_cast<long>(za.right.size()), static_cast<long>(zb.right.size())));
  const long lo = zb.core_lo - za.core_hi - 2 * l - 2;
  const long hi = zb.core_hi - za.core_lo + 2 * l + 2;
  for (long n = lo; n <= hi; ++n)
    if (same_set(translate(za, n), zb)) return n;
  return std::nullopt;
}

bool is_irreducible(const ZSet& a) { return !minimal_period(a).has_value(); }

std::pair<long, long> Staircase::point(long n) const {
  long i = i0, j = j0;
  if (n >= n0) {
    for (long k = n0; k < n; ++k) {
      if (vertical.contains(k)) --j;
      else ++i;
    }
  } else {
    for (long k = n0 - 1; k >= n; --k) {
      if (vertical.contains(k)) ++j;
      else --i;
    }
  }
  return {i, j};
}

bool Staircase::contains(long i, long j) const { return i >= point(i - j).first; }

std::string Staircase::steps(long lo, long hi) const {
  std::string s;
  for (long n = lo; n <= hi; ++n) s += vertical.contains(n) ? 'V' : 'H';
  return s;
}

void Staircase::check() const {
  vertical.check();
  if (i0 - j0 != n0) throw Error("Staircase: anchor does not lie on its diagonal");
}

Staircase translate(const Staircase& s, long p, long q) {
  return {s.n0 + p - q, s.i0 + p, s.j0 + q, translate(s.vertical, p - q)};
}

bool same_staircase(const Staircase& a, const Staircase& b) {
  return same_set(a.vertical, b.vertical) && b.point(a.n0) == std::make_pair(a.i0, a.j0);
}

std::optional<std::pair<long, long>> staircase_period(const Staircase& s) {
  const auto m = minimal_period(s.vertical);
  if (!m) return std::nullopt;
  long p = 0, q = 0;
  for (long n = s.n0; n < s.n0 + *m; ++n) {
    if (s.vertical.contains(n)) --q;
    else ++p;
  }
  if (!same_staircase(s, translate(s, p, q))) return std::nullopt;
  return std::make_pair(p, q);
}

Staircase quadrant_staircase() { return {0, 0, 0, ZSet::below(0)}; }

Staircase cross_staircase() { return {0, 0, 0, ZSet::at_least(0)}; }

ZSet staircase_to_zset(const Staircase& s) {
  s.check();
  return normalize(s.vertical);
}

Staircase zset_to_staircase(const ZSet& a) { return {0, 0, 0, normalize(a)}; }

BCLPair zset_to_bcl(const ZSet& a, long lo, long hi) {
  a.check();
  const long w = hi - lo + 1;
  if (w < 6) throw Error("zset_to_bcl: window needs at least 6 points");
  const ZSet z = normalize(a);
  if (lo > z.core_lo || hi < z.core_hi) throw Error("zset_to_bcl: window does not cover the core of the set");
  CMat u = CMat::Zero(w, w);
  CMat p = CMat::Zero(w, w);
  for (long k = 0; k < w; ++k) {
    u((k + 1) % w, k) = 1.0;
    if (z.contains(lo + k)) p(k, k) = 1.0;
  }
  BCLPair b = make_bcl(u, p);
  b.interior_mask.assign(static_cast<size_t>(w), 1);
  for (long k = 0; k < w; ++k)
    if (k < 2 || k > w - 3) b.interior_mask[static_cast<size_t>(k)] = 0;
  return b;
}

StaircaseWindow staircase_restriction_biisometry(const Staircase& s, int count) {
  s.check();
  if (count < 4) throw Error("staircase_restriction_biisometry: window count must be at least 4");
  const ZSet a = normalize(s.vertical);
  StaircaseWindow out;
  out.n_lo = std::min(a.core_lo, s.n0) - count;
  out.n_hi = std::max(a.core_hi, s.n0) + count;
  out.t_top = count;
  const long width = out.n_hi - out.n_lo + 1;
  const Window win = Window::graded(static_cast<int>(width), 0, count);
  auto idx = [&](long n, long t) { return *win.index_of({static_cast<int>(t), static_cast<int>(n - out.n_lo)}); };
  auto in_a = [&](long n) { return a.contains(n); };
  auto next = [&](long n) { return n == out.n_hi ? out.n_lo : n + 1; };
  auto prev = [&](long n) { return n == out.n_lo ? out.n_hi : n - 1; };

  WindowedOp v0(win, win, CMat::Zero(win.size(), win.size()));
  WindowedOp v1(win, win, CMat::Zero(win.size(), win.size()));
  for (long t = 0; t <= count; ++t)
    for (long n = out.n_lo; n <= out.n_hi; ++n) {
      const long c = idx(n, t);
      const long t0 = t + (in_a(n) ? 1 : 0);
      if (t0 <= count) v0.matrix(idx(next(n), t0), c) = 1.0;
      v0.exact_cols[static_cast<size_t>(c)] = t0 <= count;
      const long p = prev(n);
      const long t1 = t + (in_a(p) ? 0 : 1);
      if (t1 <= count) v1.matrix(idx(p, t1), c) = 1.0;
      v1.exact_cols[static_cast<size_t>(c)] = t1 <= count;
    }
  const Window interior = win.filter([&](const Label& l) { return l.grade <= count - 2; });
  out.w = {v0, v1, interior};
  for (const Label& l : win.labels()) {
    const auto g = s.point(out.n_lo + l.fiber);
    out.points.emplace_back(g.first + l.grade, g.second + l.grade);
  }
  return out;
}

CMat cyclic_weighted_shift(long n, cd zeta) {
  if (n < 1) throw Error("cyclic_weighted_shift: size must be positive");
  CMat u = CMat::Zero(n, n);
  if (n == 1) {
    u(0, 0) = zeta;
    return u;
  }
  u(0, n - 1) = std::pow(zeta, static_cast<double>(n - 1));
  for (long k = 0; k + 1 < n; ++k) u(k + 1, k) = std::pow(zeta, static_cast<double>(k));
  return u;
}

FiberPair direct_integral_factor(const ZSet& a, cd zeta) {
  const auto m = minimal_period(a);
  if (!m) throw Error("direct_integral_factor: set is not periodic");
  if (std::abs(std::abs(zeta) - 1.0) > 1e-12) throw Error("direct_integral_factor: zeta must be unimodular");
  const long n = *m;
  FiberPair f;
  f.period = n;
  f.u = cyclic_weighted_shift(n, zeta);
  f.p = CMat::Zero(n, n);
  for (long i = 0; i < n; ++i)
    if (a.contains(i)) f.p(i, i) = 1.0;
  return f;
}

int commutant_dimension(const CMat& u, const CMat& p, double tol) {
  const long n = u.rows();
  if (u.cols() != n || p.rows() != n || p.cols() != n) throw Error("commutant_dimension: matrices must be square of one size");
  if (n > 32) throw Error("commutant_dimension: dimension above 32");
  if (n == 0) return 0;
  // vec(XA - AX) = (A^T kron I - I kron A) vec X.
  const CMat id = identity(n);
  auto comm = [&](const CMat& a) {
    CMat k(n * n, n * n);
    for (long r = 0; r < n; ++r)
      for (long c = 0; c < n; ++c) k.block(r * n, c * n, n, n) = a(c, r) * id - (r == c ? a : CMat::Zero(n, n));
    return k;
  };
  CMat sys(2 * n * n, n * n);
  sys << comm(u), comm(p);
  return static_cast<int>(kernel_basis(sys, Tolerance{1e-9, tol}).cols());
}

}  // namespace biiso
