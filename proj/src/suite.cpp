#include "biiso/suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "biiso/bcl.hpp"
#include "biiso/lattice.hpp"
#include "biiso/model.hpp"

namespace biiso {

namespace {

CMat gaussian(std::mt19937& rng, int r, int c) {
  std::normal_distribution<double> nd;
  CMat m(r, c);
  for (long i = 0; i < m.size(); ++i) m.data()[i] = cd(nd(rng), nd(rng));
  return m;
}

OpSymbol block_diag(const CMat& top, const std::vector<CMat>& bottom) {
  const long a = top.rows(), b = bottom.front().rows();
  std::vector<CMat> c;
  for (size_t k = 0; k < bottom.size(); ++k) {
    CMat m = CMat::Zero(a + b, a + b);
    if (k == 0) m.topLeftCorner(a, a) = top;
    m.bottomRightCorner(b, b) = bottom[k];
    c.push_back(m);
  }
  return OpSymbol::polynomial(c);
}

Check make(const std::string& name, bool pass, double value, double tol, std::string detail = {}) {
  return {name, pass, value, tol, std::move(detail)};
}

BiIsometry rotated_shift_pair(cd zeta, int n) {
  WindowedOp s0 = shift_operator(1, n);
  WindowedOp s1 = s0;
  s0.matrix *= zeta;
  const Window inner = s0.domain.filter([n](const Label& l) { return l.grade <= n - 2; });
  return {s0, s1, inner};
}

}  // namespace

unsigned suite_seed() {
  if (const char* s = std::getenv("BIISO_SEED")) {
    try {
      return static_cast<unsigned>(std::stoul(s));
    } catch (const std::exception&) {
      throw Error("BIISO_SEED must be a non-negative integer");
    }
  }
  return 42;
}

CMat random_unitary(std::mt19937& rng, int dim) {
  const CMat g = gaussian(rng, dim, dim);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR();
  for (int i = 0; i < dim; ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

OpSymbol random_contractive_symbol(std::mt19937& rng, int dim, int degree, double scale) {
  std::vector<CMat> c;
  for (int k = 0; k <= degree; ++k) c.push_back(gaussian(rng, dim, dim));
  const double nrm = contractivity_norm(OpSymbol::polynomial(c), 512);
  for (CMat& m : c) m *= scale / nrm;
  return OpSymbol::polynomial(c);
}

std::vector<NamedSymbol> named_symbols() {
  std::mt19937 rng(7);
  std::vector<NamedSymbol> out;
  out.push_back({"identity", OpSymbol::constant(identity(2))});
  out.push_back({"z", OpSymbol::polynomial({CMat::Zero(2, 2), identity(2)})});
  out.push_back({"half", OpSymbol::constant(0.5 * identity(2))});
  out.push_back({"constant_unitary", OpSymbol::constant(random_unitary(rng, 2))});
  CMat cyc = CMat::Zero(3, 3);
  cyc(1, 0) = cyc(2, 1) = cyc(0, 2) = 1.0;
  out.push_back({"cyclic_shift", OpSymbol::constant(cyc)});
  out.push_back({"l2_example_8", section6_symbol(8)});
  return out;
}

std::vector<NamedSymbol> random_symbols(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dim(1, 3), deg(1, 3);
  std::vector<NamedSymbol> out;
  for (int i = 0; i < count; ++i) {
    const std::string name = "random_" + std::to_string(i);
    switch (i % 10) {
      case 6: {
        const CMat c = gaussian(rng, 2, 2);
        out.push_back({name + "_constant", OpSymbol::constant(0.8 * c / op_norm(c))});
        break;
      }
      case 7: {
        // A constant unitary block next to a random one: Theta(0) is not cnu.
        const OpSymbol r = random_contractive_symbol(rng, dim(rng) == 3 ? 2 : 1, deg(rng));
        out.push_back({name + "_mixed", block_diag(random_unitary(rng, 1), r.series(r.poly_degree()))});
        break;
      }
      case 9:
        out.push_back({name + "_unitary", OpSymbol::constant(random_unitary(rng, dim(rng)))});
        break;
      default:
        out.push_back({name, random_contractive_symbol(rng, dim(rng), deg(rng))});
    }
  }
  return out;
}

std::vector<Check> section6_checks() {
  std::vector<Check> out;
  const cd zero(-0.5, 0.0);

  // Omega(z) Theta(z) = I on the leading block, away from the last column.
  {
    const int n = 13;
    const OpSymbol theta = section6_symbol(n, zero);
    double worst = 0.0;
    for (cd z : roots_of_unity(32)) {
      const cd p = 0.9 * z;
      const CMat prod = section6_left_inverse(n, zero, p) * theta.eval(p);
      worst = std::max(worst, op_norm(prod.topLeftCorner(n - 1, n - 1) - identity(n - 1)));
    }
    out.push_back(make("left_inverse", worst <= 1e-8, worst, 1e-8, "32 points on |z| = 0.9, leading 12x12 block"));
  }
  // Theta(0) has eigenvalue 3 phi(0) / 5.
  {
    const OpSymbol theta = section6_symbol(8, zero);
    const CMat t0 = theta.series(0)[0];
    const Eigen::ComplexEigenSolver<CMat> es(t0);
    const cd target = 0.6 * blaschke_factor(zero).eval(0.0);
    double best = 1e300;
    for (long i = 0; i < es.eigenvalues().size(); ++i) best = std::min(best, std::abs(es.eigenvalues()(i) - target));
    out.push_back(make("theta0_eigenvalue", best <= 1e-10, best, 1e-10, "distance of the spectrum of Theta(0) from 0.3"));
  }
  // The model is a bi-shift.
  {
    const OpSymbol theta = section6_symbol(8, zero);
    const Model m = build_model_biisometry(theta, 12, 32);
    const BishiftReport r = bishift_test(m.w, theta, 400, 64);
    out.push_back(make("bishift", r.bishift, r.decay1.empty() ? 0.0 : r.decay1.back(), 1e-6,
                       std::string("decayed=") + (r.decayed ? "1" : "0") + " inner=" + (r.inner.inner ? "1" : "0") +
                           " certificate=" + (r.certificate ? "1" : "0")));
  }
  return out;
}

std::vector<Check> section8_checks(unsigned seed) {
  std::vector<Check> out;
  out.push_back(make("quadrant_set", same_set(staircase_to_zset(quadrant_staircase()), ZSet::below(0)), 0, 0,
                     "A for N^2 is {n < 0}"));
  out.push_back(make("cross_set", same_set(staircase_to_zset(cross_staircase()), ZSet::at_least(0)), 0, 0,
                     "A for (Z x N) + (N x Z) is N"));

  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> shift(-5, 5);
  int bad = 0;
  for (int r = 0; r < 100; ++r) {
    const Staircase s = zset_to_staircase(random_zset(rng));
    const int p = shift(rng), q = shift(rng);
    if (!same_set(staircase_to_zset(translate(s, p, q)), translate(staircase_to_zset(s), p - q))) ++bad;
  }
  out.push_back(make("staircase_covariance", bad == 0, bad, 0, "100 random staircases"));

  const auto p2 = minimal_period(ZSet::multiples(2));
  out.push_back(make("period_2Z", p2 && *p2 == 2, p2 ? static_cast<double>(*p2) : -1, 0));
  const auto t1 = translate_equivalent(ZSet::multiples(2), ZSet::multiples(2, 1));
  out.push_back(make("translate_2Z_odd", t1 && *t1 == 1, t1 ? static_cast<double>(*t1) : -1, 0));
  const auto t3 = translate_equivalent(ZSet::multiples(2), ZSet::multiples(3));
  out.push_back(make("translate_2Z_3Z", !t3.has_value(), t3 ? static_cast<double>(*t3) : -1, 0));
  out.push_back(make("irreducible_N", is_irreducible(ZSet::at_least(0)), 0, 0));
  out.push_back(make("reducible_2Z", !is_irreducible(ZSet::multiples(2)), 0, 0));

  // Fibers of 2Z against (zeta S, S), compared through their pairs.
  double worst = 0.0;
  bool all_equiv = true, all_irreducible = true;
  for (int k = 0; k < 8; ++k) {
    const cd zeta = std::polar(1.0, 2.0 * M_PI * (k + 0.25) / 8.0);
    const FiberPair f = direct_integral_factor(ZSet::multiples(2), zeta);
    const BCLPair from_fiber = bcl_from_biisometry(biisometry_from_bcl(make_bcl(f.u, f.p), 8));
    const BCLPair from_shift = bcl_from_biisometry(rotated_shift_pair(zeta, 12));
    const EquivalenceResult eq = pair_equivalence(from_fiber, from_shift);
    all_equiv = all_equiv && eq.verdict == Equivalence::equivalent;
    worst = std::max(worst, eq.residual);
    all_irreducible = all_irreducible && commutant_dimension(f.u, f.p) == 1;
  }
  out.push_back(make("fiber_vs_rotated_shift", all_equiv && worst <= 1e-8, worst, 1e-8, "8 values of zeta"));
  out.push_back(make("fiber_irreducible", all_irreducible, 0, 0, "commutant dimension 1 at 8 values of zeta"));

  CMat p4 = CMat::Zero(4, 4);
  p4(0, 0) = p4(2, 2) = 1.0;
  const int c4 = commutant_dimension(cyclic_weighted_shift(4, std::polar(1.0, 0.7)), p4);
  out.push_back(make("period_2_as_4_reducible", c4 > 1, c4, 1, "commutant dimension above 1"));
  return out;
}

}  // namespace biiso
