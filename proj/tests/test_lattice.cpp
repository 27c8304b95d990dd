#include <doctest.h>

#include <cmath>

#include "biiso/lattice.hpp"
#include "biiso/suite.hpp"

using namespace biiso;

TEST_CASE("basic sets") {
  const ZSet two = ZSet::multiples(2);
  for (long n = -9; n <= 9; ++n) CHECK(two.contains(n) == (n % 2 == 0));
  const ZSet odd = ZSet::multiples(2, 1);
  CHECK(odd.contains(-3));
  CHECK_FALSE(odd.contains(4));
  CHECK(ZSet::at_least(3).contains(3));
  CHECK_FALSE(ZSet::at_least(3).contains(2));
  CHECK(ZSet::below(0).contains(-1));
  CHECK_FALSE(ZSet::below(0).contains(0));
  const ZSet f = ZSet::finite({4, -2, 7});
  CHECK(f.contains(-2));
  CHECK_FALSE(f.contains(5));
  CHECK_FALSE(f.contains(100));
  CHECK(ZSet::all().contains(-1000));
  CHECK_FALSE(ZSet::empty().contains(0));
  const auto m = membership(two, -2, 2);
  CHECK(m == std::vector<char>{1, 0, 1, 0, 1});
}

TEST_CASE("normalize and same_set") {
  ZSet a;
  a.core_lo = -3;
  a.core_hi = 4;
  a.core = {1, 0, 1, 0, 1, 0, 1, 0};
  a.left = "10";
  a.right = "10";
  a.check();
  CHECK(same_set(a, ZSet::multiples(2, 1)));
  const ZSet n = normalize(a);
  CHECK(n.core.empty());
  CHECK(n.tail_period() == 2);
  CHECK(same_set(n, a));
  CHECK_FALSE(same_set(a, ZSet::multiples(2)));
  // a period 4 pattern that is really period 2
  ZSet b = ZSet::multiples(2);
  b.left = "1010";
  b.right = "1010";
  CHECK(normalize(b).tail_period() == 2);
}

TEST_CASE("inconsistent sets are rejected") {
  ZSet a;
  a.core_lo = 0;
  a.core_hi = 3;
  a.core = {1, 0};
  CHECK_THROWS_AS(a.check(), Error);
  ZSet b;
  b.left = "";
  CHECK_THROWS_AS(b.check(), Error);
  ZSet c;
  c.right = "12";
  CHECK_THROWS_AS(c.check(), Error);
}

TEST_CASE("periods and translation classes") {
  CHECK(*minimal_period(ZSet::multiples(2)) == 2);
  CHECK(*minimal_period(ZSet::multiples(6, 1)) == 6);
  CHECK(*minimal_period(ZSet::all()) == 1);
  CHECK_FALSE(minimal_period(ZSet::at_least(0)).has_value());
  CHECK_FALSE(minimal_period(ZSet::finite({1, 2})).has_value());
  CHECK(*translate_equivalent(ZSet::multiples(2), ZSet::multiples(2, 1)) == 1);
  CHECK_FALSE(translate_equivalent(ZSet::multiples(2), ZSet::multiples(3)).has_value());
  CHECK(*translate_equivalent(ZSet::at_least(0), ZSet::at_least(-4)) == -4);
  CHECK_FALSE(translate_equivalent(ZSet::at_least(0), ZSet::below(0)).has_value());
  CHECK(is_irreducible(ZSet::at_least(0)));
  CHECK_FALSE(is_irreducible(ZSet::multiples(2)));
}

TEST_CASE("translate_equivalent finds every shift") {
  std::mt19937 rng(suite_seed());
  for (int r = 0; r < 60; ++r) {
    const ZSet a = random_zset(rng);
    for (long n = -10; n <= 10; n += 3) {
      const ZSet b = translate(a, n);
      const auto k = translate_equivalent(a, b);
      REQUIRE(k.has_value());
      CHECK(same_set(translate(a, *k), b));
    }
  }
}

TEST_CASE("translated sets give intertwined pairs") {
  std::mt19937 rng(suite_seed() + 1);
  for (int r = 0; r < 10; ++r) {
    const ZSet a = normalize(random_zset(rng, 6, 3));
    const long n = static_cast<long>(r) - 5;
    const ZSet b = translate(a, n);
    const auto k = translate_equivalent(a, b);
    REQUIRE(k.has_value());
    const long lo = a.core_lo - 8, hi = a.core_hi + 8;
    const BCLPair pa = zset_to_bcl(a, lo, hi), pb = zset_to_bcl(b, lo + *k, hi + *k);
    // the witness is the window relabelling, i.e. the identity in window coordinates
    CHECK(intertwining_residual(identity(pa.dim()), {{pa.u, pb.u}, {pa.p, pb.p}}) <= 1e-12);
    const EquivalenceResult eq = pair_equivalence(pa, pb, 2);
    CHECK(eq.verdict == Equivalence::equivalent);
    CHECK(eq.residual <= 1e-8);
  }
}

TEST_CASE("staircases of the quadrant and the cross") {
  CHECK(same_set(staircase_to_zset(quadrant_staircase()), ZSet::below(0)));
  CHECK(same_set(staircase_to_zset(cross_staircase()), ZSet::at_least(0)));
  const Staircase q = quadrant_staircase();
  CHECK(q.contains(0, 0));
  CHECK(q.contains(3, 5));
  CHECK_FALSE(q.contains(-1, 0));
  CHECK_FALSE(q.contains(0, -1));
  const Staircase c = cross_staircase();
  CHECK(c.contains(-5, 0));
  CHECK(c.contains(0, -5));
  CHECK_FALSE(c.contains(-1, -1));
}

TEST_CASE("staircase covariance and periodicity") {
  std::mt19937 rng(suite_seed());
  std::uniform_int_distribution<int> sh(-5, 5);
  for (int r = 0; r < 100; ++r) {
    const ZSet a = random_zset(rng);
    const Staircase s = zset_to_staircase(a);
    CHECK(same_set(staircase_to_zset(s), a));
    const int p = sh(rng), q = sh(rng);
    CHECK(same_set(staircase_to_zset(translate(s, p, q)), translate(a, p - q)));
    // periodic staircase iff periodic set
    CHECK(staircase_period(s).has_value() == minimal_period(a).has_value());
  }
}

TEST_CASE("staircase path") {
  const Staircase s = zset_to_staircase(ZSet::multiples(2));
  for (long n = -6; n <= 6; ++n) {
    const auto [i, j] = s.point(n);
    CHECK(i - j == n);
  }
  CHECK(s.steps(0, 3) == "VHVH");
  CHECK(same_staircase(translate(s, 1, -1), s));
  CHECK_FALSE(same_staircase(translate(s, 1, 1), s));
  const auto per = staircase_period(s);
  REQUIRE(per.has_value());
  CHECK(same_staircase(translate(s, per->first, per->second), s));
  CHECK_FALSE(staircase_period(zset_to_staircase(ZSet::at_least(0))).has_value());
}

TEST_CASE("(U, Q_A) pair of 2Z") {
  const BCLPair b = zset_to_bcl(ZSet::multiples(2), -4, 3);
  REQUIRE(b.dim() == 8);
  for (int i = 0; i < 8; ++i) CHECK(std::abs(b.p(i, i) - (i % 2 == 0 ? 1.0 : 0.0)) < 1e-15);
  CHECK(op_norm(b.u.adjoint() * b.u - identity(8)) <= 1e-15);
  CHECK_THROWS_AS(zset_to_bcl(ZSet::multiples(2), 0, 3), Error);
  CHECK_THROWS_AS(zset_to_bcl(ZSet::finite({0, 20}), 0, 10), Error);
}

TEST_CASE("doubly commuting sets") {
  // {n < 0} comes from the quadrant: doubly commuting; N does not
  auto verdict = [](const ZSet& a) {
    const BCLPair b = zset_to_bcl(a, -8, 8);
    return doubly_commuting_test(biisometry_from_bcl(b, 8)).holds;
  };
  CHECK(verdict(ZSet::below(0)));
  CHECK_FALSE(verdict(ZSet::at_least(0)));
}

TEST_CASE("restriction to a staircase set") {
  std::mt19937 rng(5);
  for (int r = 0; r < 4; ++r) {
    const Staircase s = zset_to_staircase(random_zset(rng, 6, 3));
    const StaircaseWindow sw = staircase_restriction_biisometry(s, 4);
    const BiIsometryResiduals res = validate(sw.w);
    CHECK(res.isometry0 <= 1e-12);
    CHECK(res.isometry1 <= 1e-12);
    CHECK(res.commutation <= 1e-12);
    for (const auto& [i, j] : sw.points) CHECK(s.contains(i, j));
    const BCLPair from_window = bcl_from_biisometry(sw.w);
    const BCLPair from_set = zset_to_bcl(staircase_to_zset(s), sw.n_lo, sw.n_hi);
    const EquivalenceResult eq = pair_equivalence(from_window, from_set, 2);
    CHECK(eq.verdict == Equivalence::equivalent);
    CHECK(eq.residual <= 1e-8);
  }
}

TEST_CASE("direct integral factors") {
  for (long n : {1L, 2L, 3L, 5L}) {
    for (int k = 0; k < 64; ++k) {
      const cd zeta = std::polar(1.0, 2 * M_PI * k / 64.0);
      const CMat u = cyclic_weighted_shift(n, zeta);
      CHECK(op_norm(u.adjoint() * u - identity(n)) <= 1e-12);
    }
  }
  // zeta = 1: the cyclic permutation
  const CMat c = cyclic_weighted_shift(4, 1.0);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(c((i + 1) % 4, i) - 1.0) < 1e-15);
  const FiberPair f = direct_integral_factor(ZSet::multiples(3, 1), std::polar(1.0, 0.4));
  CHECK(f.period == 3);
  CHECK(std::abs(f.p(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(f.p(0, 0)) < 1e-15);
  CHECK_THROWS_AS(direct_integral_factor(ZSet::at_least(0), 1.0), Error);
}

TEST_CASE("commutant dimensions") {
  const cd zeta = std::polar(1.0, 0.7);
  const FiberPair f = direct_integral_factor(ZSet::multiples(2), zeta);
  CHECK(commutant_dimension(f.u, f.p) == 1);
  CMat p4 = CMat::Zero(4, 4);
  p4(0, 0) = p4(2, 2) = 1;
  CHECK(commutant_dimension(cyclic_weighted_shift(4, zeta), p4) > 1);
  CHECK(commutant_dimension(identity(2), identity(2)) == 4);
  // (zeta_1 S, S) and (zeta_2 S, S) differ
  const FiberPair g = direct_integral_factor(ZSet::multiples(2), -zeta);
  CHECK(pair_equivalence(make_bcl(f.u, f.p), make_bcl(g.u, g.p)).verdict == Equivalence::inequivalent);
}
