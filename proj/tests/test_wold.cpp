#include <doctest.h>

#include <random>

#include "biiso/suite.hpp"
#include "biiso/wold.hpp"

using namespace biiso;

namespace {

// Fiber 0 carries S, fibers 1..q carry the constant unitary q on every grade.
WindowedOp shift_plus_unitary(const CMat& q, int n) {
  const int f = 1 + static_cast<int>(q.rows());
  const Window w = Window::graded(f, 0, n);
  CMat m = CMat::Zero(w.size(), w.size());
  for (int g = 0; g <= n; ++g) {
    if (g < n) m((g + 1) * f, g * f) = 1.0;
    m.block(g * f + 1, g * f + 1, f - 1, f - 1) = q;
  }
  WindowedOp v(w, w, m);
  for (long j = 0; j < w.size(); ++j) v.exact_cols[j] = w[j].grade < n || w[j].fiber > 0;
  return v;
}

// Four one-dimensional fibers: (S, S), (S, b), (a, S), (a, b) with |a| = |b| = 1.
BiIsometry four_blocks(int n, cd a, cd b) {
  const Window w = Window::graded(4, 0, n);
  CMat m0 = CMat::Zero(w.size(), w.size()), m1 = m0;
  for (int g = 0; g <= n; ++g) {
    const long base = 4L * g;
    if (g < n) {
      m0(base + 4, base) = m1(base + 4, base) = 1.0;
      m0(base + 5, base + 1) = 1.0;
      m1(base + 6, base + 2) = 1.0;
    }
    m1(base + 1, base + 1) = b;
    m0(base + 2, base + 2) = a;
    m0(base + 3, base + 3) = a;
    m1(base + 3, base + 3) = b;
  }
  WindowedOp w0(w, w, m0), w1(w, w, m1);
  for (long j = 0; j < w.size(); ++j) {
    const bool top = w[j].grade == n;
    w0.exact_cols[j] = !(top && (w[j].fiber == 0 || w[j].fiber == 1));
    w1.exact_cols[j] = !(top && (w[j].fiber == 0 || w[j].fiber == 2));
  }
  return {w0, w1, w.filter([n](const Label& l) { return l.grade <= n - 2; })};
}

// ||(I - P_block) op x|| for x in the part of the block away from the top.
double reducing_residual(const CMat& low_part, const CMat& block, const CMat& op) {
  if (low_part.cols() == 0) return 0.0;
  const CMat p = projector(block);
  return op_norm((CMat::Identity(p.rows(), p.cols()) - p) * op * low_part);
}

}  // namespace

TEST_CASE("wold of S + Q recovers the part dimensions") {
  std::mt19937 rng(suite_seed());
  std::uniform_int_distribution<int> dim(1, 5);
  const int n = 8;
  for (int trial = 0; trial < 10; ++trial) {
    const int q = dim(rng);
    CAPTURE(q);
    const WindowedOp v = shift_plus_unitary(random_unitary(rng, q), n);
    const Window interior = v.domain.filter([n](const Label& l) { return l.grade <= n - 1; });
    const WoldResult r = wold_single(v, interior);
    CHECK(r.wandering.cols() == 1);
    CHECK(r.shift_part.cols() == n);
    CHECK(r.unitary_part.cols() == q * n);
    const CMat pi = v.domain.embedding(interior);
    CHECK(op_norm(projector(r.shift_part) + projector(r.unitary_part) - projector(pi)) <= 1e-8);
    CHECK(op_norm(r.wandering.adjoint() * r.unitary_part) <= 1e-10);
    CHECK(op_norm(r.shift_part.adjoint() * r.unitary_part) <= 1e-10);
    // V maps the unitary part onto itself
    const CMat vu = v.matrix * r.unitary_part;
    CHECK(op_norm(vu - projector(r.unitary_part) * vu) <= 1e-8);
    CHECK(min_singular_value(r.unitary_part.adjoint() * vu) >= 1 - 1e-8);
  }
}

TEST_CASE("wold of a pure shift") {
  const WindowedOp s = shift_operator(2, 6);
  const Window in = s.domain.filter([](const Label& l) { return l.grade <= 5; });
  const WoldResult r = wold_single(s, in);
  CHECK(r.wandering.cols() == 2);
  CHECK(r.unitary_part.cols() == 0);
  CHECK(r.shift_part.cols() == 12);
}

TEST_CASE("non-isometries are rejected") {
  WindowedOp s = shift_operator(1, 4);
  s.matrix *= 0.5;
  CHECK_THROWS_AS(wold_single(s, s.exact_domain()), Error);
}

TEST_CASE("four-space decomposition of a constructed sum") {
  const int n = 8;
  const BiIsometry w = four_blocks(n, std::polar(1.0, 0.3), std::polar(1.0, -1.1));
  const BiIsometryResiduals res = validate(w);
  REQUIRE(res.isometry0 <= 1e-12);
  REQUIRE(res.isometry1 <= 1e-12);
  REQUIRE(res.commutation <= 1e-12);
  const FourSpaces f = four_space_decomposition(w);
  const long g = n - 1;  // interior grades
  CHECK(f.k00.cols() == g);
  CHECK(f.k01.cols() == g);
  CHECK(f.k10.cols() == g);
  CHECK(f.k11.cols() == g);
  const CMat inner = w.space().embedding(w.interior);
  CMat all(w.space().size(), 4 * g);
  all << f.k00, f.k01, f.k10, f.k11;
  CHECK(op_norm(projector(all) - projector(inner)) <= 1e-8);
  // each block sits on its own fiber
  auto on_fiber = [&](const CMat& b, int fib) {
    const CMat e = w.space().embedding(w.interior.filter([fib](const Label& l) { return l.fiber == fib; }));
    return op_norm(projector(b) - projector(e));
  };
  CHECK(on_fiber(f.k00, 0) <= 1e-8);
  CHECK(on_fiber(f.k01, 1) <= 1e-8);
  CHECK(on_fiber(f.k10, 2) <= 1e-8);
  CHECK(on_fiber(f.k11, 3) <= 1e-8);
  for (const CMat* b : {&f.k00, &f.k01, &f.k10, &f.k11}) {
    // images stay in the block as long as they stay in the interior
    const CMat low = w.space().embedding(w.interior.filter([n](const Label& l) { return l.grade <= n - 3; }));
    const CMat bl = orthonormal_range_basis(projector(low) * *b);
    CHECK(reducing_residual(bl, *b, w.w0.matrix) <= 1e-8);
    CHECK(reducing_residual(bl, *b, w.w1.matrix) <= 1e-8);
    CHECK(reducing_residual(bl, *b, w.w0.matrix.adjoint()) <= 1e-8);
    CHECK(reducing_residual(bl, *b, w.w1.matrix.adjoint()) <= 1e-8);
  }
}

TEST_CASE("unitary part of a pair") {
  const BiIsometry w = four_blocks(6, std::polar(1.0, 0.3), std::polar(1.0, -1.1));
  CHECK(unitary_part_pair(w).cols() == 5);
}

TEST_CASE("cnu part of a contraction") {
  std::mt19937 rng(9);
  const CMat u = random_unitary(rng, 2);
  CMat a = CMat::Zero(4, 4);
  a.topLeftCorner(2, 2) = u;
  a(2, 3) = 0.5;
  a(3, 2) = 0.2;
  const CMat q = random_unitary(rng, 4);
  const CMat b = q * a * q.adjoint();
  const CnuSplit s = cnu_part_of_contraction(b);
  REQUIRE(s.unitary.cols() == 2);
  CHECK(s.cnu.cols() == 2);
  const CMat r = s.unitary.adjoint() * b.adjoint() * b * s.unitary - identity(2);
  CHECK(op_norm(r) <= 1e-9);
  CHECK(op_norm(s.unitary.adjoint() * q.leftCols(2) * q.leftCols(2).adjoint() * s.unitary - identity(2)) <= 1e-9);
  Tolerance half;
  half.eq_tol /= 2;
  half.rank_tol /= 2;
  CHECK(cnu_part_of_contraction(b, half).unitary.cols() == 2);
  CHECK(cnu_part_of_contraction(0.5 * identity(3)).unitary.cols() == 0);
  CHECK(cnu_part_of_contraction(identity(3)).unitary.cols() == 3);
  CHECK_THROWS_AS(cnu_part_of_contraction(2.0 * identity(2)), Error);
}
