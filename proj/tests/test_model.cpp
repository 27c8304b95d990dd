#include <doctest.h>

#include "biiso/model.hpp"
#include "biiso/suite.hpp"
#include "biiso/wold.hpp"

using namespace biiso;

namespace {

const int kN = 12, kK = 32;

std::vector<NamedSymbol> suite() {
  auto s = named_symbols();
  for (auto& r : random_symbols(12, suite_seed())) s.push_back(r);
  return s;
}

double roundtrip_error(const Model& m, int kmax) {
  const auto cf = characteristic_function(m.w, kmax);
  const auto ex = m.theta.series(kmax);
  double e = 0.0;
  for (int k = 0; k <= kmax; ++k) e = std::max(e, op_norm(cf[k] - ex[k]));
  return e;
}

}  // namespace

TEST_CASE("models are bi-isometries and return their symbol") {
  for (const auto& ns : suite()) {
    CAPTURE(ns.name);
    const Model m = build_model_biisometry(ns.theta, kN, kK);
    const BiIsometryResiduals r = validate(m.w);
    CHECK(r.isometry0 <= 1e-9);
    CHECK(r.isometry1 <= 1e-9);
    CHECK(r.commutation <= 1e-9);
    CHECK(roundtrip_error(m, 8) <= 1e-8);
    // {0}-pure: no W0-unitary part
    CHECK(w0_unitary_part(m.w).cols() == 0);
  }
}

TEST_CASE("model of z I is (S, 1)-like and returns z") {
  const OpSymbol z = OpSymbol::polynomial({CMat::Zero(1, 1), identity(1)});
  const Model m = build_model_biisometry(z, 10, 16);
  const auto cf = characteristic_function(m.w, 3);
  CHECK(std::abs(cf[0](0, 0)) <= 1e-12);
  CHECK(std::abs(cf[1](0, 0) - 1.0) <= 1e-12);
  CHECK(std::abs(cf[2](0, 0)) <= 1e-12);
  CHECK(m.spaces.defect_dim == 0);
}

TEST_CASE("W1 unitary iff the symbol is a constant unitary") {
  int yes = 0, no = 0;
  for (const auto& ns : suite()) {
    CAPTURE(ns.name);
    const Model m = build_model_biisometry(ns.theta, kN, kK);
    const bool cu = is_constant_unitary(ns.theta);
    CHECK(w1_unitary_test(m.w).holds == cu);
    (cu ? yes : no)++;
  }
  CHECK(yes >= 3);
  CHECK(no >= 3);
}

TEST_CASE("{1}-purity iff Theta(0) is cnu") {
  int yes = 0, no = 0;
  for (const auto& ns : suite()) {
    CAPTURE(ns.name);
    const Model m = build_model_biisometry(ns.theta, kN, kK);
    const bool cnu = cnu_part_of_contraction(ns.theta.series(0)[0]).unitary.cols() == 0;
    const bool pure = w1_unitary_part(m.w).cols() == 0;
    CHECK(pure == cnu);
    (cnu ? yes : no)++;
  }
  CHECK(yes >= 3);
  CHECK(no >= 3);
}

TEST_CASE("doubly commuting equivalences") {
  for (const auto& ns : suite()) {
    CAPTURE(ns.name);
    const Model m = build_model_biisometry(ns.theta, 8, 16);
    const bool dc = doubly_commuting_test(m.w).holds;
    const bool ci = is_constant_isometry(ns.theta);
    const CMat t0 = characteristic_function(m.w, 0)[0];
    const bool v4 = op_norm(t0.adjoint() * t0 - identity(t0.cols())) <= 1e-8;
    bool v5 = true;
    if (pivotal_space(m.w).cols()) {
      const CMat p = pivotal_operator(m.w);
      v5 = op_norm(p.adjoint() * p - identity(p.cols())) <= 1e-8;
    }
    CHECK(dc == ci);
    CHECK(ci == v4);
    CHECK(v4 == v5);
  }
}

TEST_CASE("H(Theta) is the kernel of W1*") {
  for (const auto& ns : suite()) {
    CAPTURE(ns.name);
    const Model m = build_model_biisometry(ns.theta, kN, kK);
    const ModelCompression c = model_space_compression(m);
    const CMat f = pivotal_space(m.w);
    CHECK(c.basis.cols() == f.cols());
    CHECK(op_norm(projector(c.basis) - projector(f)) <= 1e-8);
  }
}

TEST_CASE("characteristic pair") {
  const OpSymbol theta = named_symbols()[5].theta;
  const Model m = build_model_biisometry(theta, 10, 32);
  const CharPair cp = characteristic_pair(m.w);
  // a truncated shift: isometric except on the top layer
  const CMat g = cp.v0.adjoint() * cp.v0;
  CHECK(op_norm(g * g - g) <= 1e-9);
  CHECK(std::abs(g.trace().real() - (cp.v0.cols() - wandering_space(m.w).cols())) <= 1e-8);
  CHECK(op_norm(cp.a) <= 1 + 1e-9);
}

TEST_CASE("bi-shift verdicts") {
  // inner symbols give bi-shifts
  const Model m6 = build_model_biisometry(section6_symbol(8), kN, kK);
  const BishiftReport r6 = bishift_test(m6.w, m6.theta, 400, 64);
  CHECK(r6.inner.inner);
  CHECK(r6.bishift);
  // Theta = I: a constant Omega with Omega Theta = I certifies the failure
  const OpSymbol id = OpSymbol::constant(identity(2));
  const Model mi = build_model_biisometry(id, kN, kK);
  const BishiftReport ri = bishift_test(mi.w, id, 200, 32);
  CHECK(ri.certificate);
  CHECK(ri.certificate_residual <= 1e-8);
  CHECK_FALSE(ri.bishift);
}

TEST_CASE("model input checks") {
  CHECK_THROWS_AS(build_model_biisometry(OpSymbol::constant(2.0 * identity(2)), 8, 16), Error);
  CHECK_THROWS_AS(build_model_biisometry(OpSymbol::constant(identity(2)), 1, 16), Error);
}

TEST_CASE("model space of small symbols") {
  const ModelCompression cu = model_space_compression(OpSymbol::constant(identity(2)), 8, 16);
  CHECK(cu.basis.cols() == 0);
  const OpSymbol z = OpSymbol::polynomial({CMat::Zero(1, 1), identity(1)});
  const ModelCompression cz = model_space_compression(z, 8, 16);
  REQUIRE(cz.basis.cols() == 1);
  CHECK(op_norm(cz.s) <= 1e-12);
}

TEST_CASE("swapped characteristic function") {
  // (zeta S, S): the value at z is zeta z
  const cd zeta = std::polar(1.0, 0.9);
  WindowedOp s0 = shift_operator(1, 40), s1 = s0;
  s0.matrix *= zeta;
  const BiIsometry w{s0, s1, s0.domain.filter([](const Label& l) { return l.grade <= 38; })};
  for (cd z : {cd(0.0), cd(0.3, 0.2), cd(-0.5, 0.0)}) {
    const CMat v = swapped_characteristic_function(w, z);
    REQUIRE(v.rows() == 1);
    CHECK(std::abs(v(0, 0) - zeta * z) <= 1e-8);
  }
  CHECK_THROWS_AS(swapped_characteristic_function(w, 1.0), Error);
  // z = 0 is the compression of W0 to ker W1*
  const Model m = build_model_biisometry(named_symbols()[5].theta, 10, 32);
  const CMat f = pivotal_space(m.w);
  CHECK(op_norm(swapped_characteristic_function(m.w, 0.0) - f.adjoint() * m.w.w0.matrix * f) <= 1e-12);
}
