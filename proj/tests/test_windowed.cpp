#include <doctest.h>

#include <random>

#include "biiso/symbols.hpp"
#include "biiso/windowed.hpp"

using namespace biiso;

TEST_CASE("graded windows are grade-major") {
  const Window w = Window::graded(2, -1, 1);
  REQUIRE(w.size() == 6);
  CHECK(w[0] == Label{-1, 0});
  CHECK(w[1] == Label{-1, 1});
  CHECK(w[5] == Label{1, 1});
  CHECK(*w.index_of({0, 1}) == 3);
  CHECK_FALSE(w.index_of({2, 0}).has_value());
  CHECK(w.min_grade() == -1);
  CHECK(w.max_grade() == 1);
  const Window low = w.filter([](const Label& l) { return l.grade <= 0; });
  CHECK(w.contains(low));
  CHECK_FALSE(low.contains(w));
  const CMat e = w.embedding(low);
  CHECK(e.rows() == 6);
  CHECK(e.cols() == 4);
  CHECK(op_norm(e.adjoint() * e - identity(4)) == 0.0);
}

TEST_CASE("duplicate labels are rejected") {
  CHECK_THROWS_AS(Window({{0, 0}, {0, 0}}, 1), Error);
}

TEST_CASE("shift is isometric on its exact columns") {
  for (int f = 1; f <= 8; f += 3)
    for (int n = 1; n <= 64; n += 9) {
      const WindowedOp s = shift_operator(f, n);
      CHECK(isometry_defect(s, s.exact_domain()) <= 1e-12);
      CHECK_FALSE(s.exact());
    }
}

TEST_CASE("exact images do not change when the window grows") {
  std::mt19937 rng(11);
  std::normal_distribution<double> nd;
  const OpSymbol t = OpSymbol::polynomial({CMat::Constant(2, 2, 0.2), CMat::Identity(2, 2) * 0.3});
  const WindowedOp a = toeplitz_matrix(t, 8), b = toeplitz_matrix(t, 10);
  const Window ex = a.exact_domain();
  REQUIRE(ex.size() > 0);
  CVec x(ex.size());
  for (long i = 0; i < x.size(); ++i) x(i) = cd(nd(rng), nd(rng));
  const CVec ya = a.matrix * a.domain.embedding(ex) * x;
  const CVec yb = b.matrix * b.domain.embedding(ex) * x;
  // everything in the wide image inside the small codomain, nothing outside
  const CMat emb = b.codomain.embedding(a.codomain);
  CHECK((emb.adjoint() * yb - ya).norm() <= 1e-12);
  CHECK((yb - emb * emb.adjoint() * yb).norm() <= 1e-12);
}

TEST_CASE("compose is associative and adjoint is an involution") {
  const WindowedOp s = shift_operator(2, 6);
  const OpSymbol t = OpSymbol::constant(CMat::Constant(2, 2, cd(0.1, 0.2)));
  const WindowedOp m = toeplitz_matrix(t, 6);
  REQUIRE(m.domain == s.domain);
  const WindowedOp l = compose(compose(s, m), s), r = compose(s, compose(m, s));
  CHECK(op_norm(l.matrix - r.matrix) <= 1e-12);
  CHECK(op_norm(adjoint(adjoint(m)).matrix - m.matrix) == 0.0);
  CHECK(op_norm((s + scale(s, -1.0)).matrix) == 0.0);
}

TEST_CASE("exactness propagates through compose") {
  const WindowedOp s = shift_operator(1, 5);
  const WindowedOp ss = compose(s, s);
  // S^2 is exact on grades 0..n-2
  for (long j = 0; j < ss.domain.size(); ++j) CHECK((ss.exact_cols[j] != 0) == (ss.domain[j].grade <= 3));
}

TEST_CASE("bilateral shift is unitary away from both edges") {
  const WindowedOp u = bilateral_shift_operator(2, 5);
  const Window mid = u.domain.filter([](const Label& l) { return l.grade > -5 && l.grade < 5; });
  CHECK(isometry_defect(u, mid) <= 1e-12);
  CHECK(isometry_defect(adjoint(u), mid) <= 1e-12);
}

TEST_CASE("(S, S) and direct sums validate") {
  const WindowedOp s = shift_operator(1, 8);
  const Window in = s.domain.filter([](const Label& l) { return l.grade <= 6; });
  const BiIsometry w{s, s, in};
  const BiIsometryResiduals r = validate(w);
  CHECK(r.isometry0 <= 1e-12);
  CHECK(r.isometry1 <= 1e-12);
  CHECK(r.commutation <= 1e-12);
  const BiIsometry d = direct_sum(w, w.swapped());
  CHECK(d.space().size() == 2 * w.space().size());
  const BiIsometryResiduals rd = validate(d);
  CHECK(rd.commutation <= 1e-12);
  CHECK(rd.isometry0 <= 1e-12);
}
