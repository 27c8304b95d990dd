#include <doctest.h>

#include <cmath>

#include "biiso/suite.hpp"
#include "biiso/symbols.hpp"

using namespace biiso;

namespace {

std::vector<NamedSymbol> suite() {
  auto s = named_symbols();
  for (auto& r : random_symbols(20, suite_seed())) s.push_back(r);
  OpSymbol b(1, {SymbolEntry{{cd(1.0)}, blaschke_factor(cd(0.5, 0.2))}});
  s.push_back({"blaschke", b});
  return s;
}

}  // namespace

TEST_CASE("blaschke factor") {
  const cd a(0.3, -0.4);
  const InnerScalar b = blaschke_factor(a);
  CHECK(std::abs(b.eval(a)) < 1e-15);
  for (cd z : roots_of_unity(16)) CHECK(std::abs(std::abs(b.eval(z)) - 1.0) < 1e-14);
  // Taylor coefficients against the values inside the disk
  const auto c = b.series(40);
  const cd z(0.2, 0.1);
  cd sum = 0.0, p = 1.0;
  for (cd ck : c) {
    sum += ck * p;
    p *= z;
  }
  CHECK(std::abs(sum - b.eval(z)) < 1e-14);
  CHECK(b.radius() == doctest::Approx(0.5));
  CHECK_THROWS_AS(blaschke_factor(cd(1.0, 0.0)), Error);
}

TEST_CASE("roots of unity") {
  const auto r = roots_of_unity(8);
  REQUIRE(r.size() == 8);
  CHECK(std::abs(r[0] - 1.0) < 1e-15);
  CHECK(std::abs(r[2] - cd(0, 1)) < 1e-15);
}

TEST_CASE("defect identity at every sample") {
  for (const auto& ns : suite()) {
    CAPTURE(ns.name);
    const BoundaryDefect d = boundary_defect(ns.theta, 64);
    for (size_t j = 0; j < d.points.size(); ++j) {
      const CMat t = ns.theta.eval(d.points[j]);
      CHECK(is_hermitian(d.delta[j], 1e-12));
      CHECK(op_norm(d.delta[j] * d.delta[j] + t.adjoint() * t - identity(t.cols())) <= 1e-8);
    }
  }
}

TEST_CASE("taylor coefficients re-sum to the value") {
  for (const auto& ns : suite()) {
    CAPTURE(ns.name);
    const auto c = taylor_coefficients(ns.theta, 24, 256);
    const cd z = 0.3;
    CMat sum = CMat::Zero(ns.theta.dim(), ns.theta.dim());
    cd p = 1.0;
    for (const CMat& ck : c) {
      sum += ck * p;
      p *= z;
    }
    CHECK(op_norm(sum - ns.theta.eval(z)) <= 1e-8);
  }
}

TEST_CASE("toeplitz matrices commute with the shift") {
  for (const auto& ns : suite()) {
    CAPTURE(ns.name);
    const int n = 10;
    const WindowedOp t = toeplitz_matrix(ns.theta, n);
    const int top = t.codomain.max_grade();
    const WindowedOp s_in = shift_operator(ns.theta.dim(), n), s_out = shift_operator(ns.theta.dim(), top);
    // T S - S T on grades 0..n-1
    const Window in = t.domain.filter([n](const Label& l) { return l.grade < n; });
    const CMat ts = t.matrix * s_in.matrix * t.domain.embedding(in);
    const CMat st = s_out.matrix * s_out.domain.embedding(t.codomain) * t.matrix * t.domain.embedding(in);
    CHECK(op_norm(s_out.domain.embedding(t.codomain) * ts - st) <= 1e-10 + t.tail_bound);
  }
}

TEST_CASE("laurent matrix of the sampled defect is self-adjoint") {
  const OpSymbol t = OpSymbol::polynomial({CMat::Constant(1, 1, 0.5), CMat::Constant(1, 1, 0.3)});
  const WindowedOp l = laurent_matrix(boundary_defect(t, 64), 6);
  CHECK(op_norm(l.matrix - l.matrix.adjoint()) <= 1e-12);
}

TEST_CASE("contractivity and innerness") {
  std::mt19937 rng(5);
  for (int i = 0; i < 5; ++i) {
    const OpSymbol s = random_contractive_symbol(rng, 2, 2, 0.9);
    CHECK(contractivity_norm(s, 512) == doctest::Approx(0.9).epsilon(1e-9));
    CHECK_FALSE(is_inner_sampled(s, 64).inner);
  }
  CHECK(is_inner_sampled(section6_symbol(8), 64).inner);
  CHECK(is_inner_sampled(OpSymbol::polynomial({CMat::Zero(2, 2), identity(2)}), 64).inner);
  CHECK_FALSE(is_inner_sampled(OpSymbol::constant(0.5 * identity(2)), 64).inner);
}

TEST_CASE("series agrees with the polynomial and inner parts") {
  const OpSymbol t = OpSymbol::polynomial({CMat::Constant(2, 2, 0.1), CMat::Constant(2, 2, cd(0, 0.2))});
  CHECK(t.poly_degree() == 1);
  CHECK_FALSE(t.has_inner());
  const auto c = t.series(3);
  CHECK(op_norm(c[1] - CMat::Constant(2, 2, cd(0, 0.2))) == 0.0);
  CHECK(op_norm(c[3]) == 0.0);
  CHECK(t.series_tail(1) == 0.0);
}

TEST_CASE("bad symbols are rejected") {
  CHECK_THROWS_AS(OpSymbol(2, {SymbolEntry{{cd(1.0)}, std::nullopt}}), Error);
  CHECK_THROWS_AS(OpSymbol::constant(CMat::Zero(2, 3)), Error);
}
