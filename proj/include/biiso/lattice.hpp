#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "biiso/bcl.hpp"
#include "biiso/linalg.hpp"
#include "biiso/windowed.hpp"

namespace biiso {

/// Eventually periodic subset of Z: an explicit core on [core_lo, core_hi]
/// and periodic tails. The left pattern is read at (n - core_lo) mod p for
/// n < core_lo, the right pattern at (n - core_hi - 1) mod p for n > core_hi.
/// "1" is all_in, "0" is all_out.
struct ZSet {
  long core_lo = 0;
  long core_hi = -1;
  std::vector<char> core;
  std::string left = "0";
  std::string right = "0";

  bool contains(long n) const;
  /// Throws on an inconsistent representation.
  void check() const;
  /// Longest tail period.
  long tail_period() const;

  static ZSet empty();
  static ZSet all();
  /// {n : n >= from}.
  static ZSet at_least(long from);
  /// {n : n < below}.
  static ZSet below(long below);
  /// m Z + r.
  static ZSet multiples(long m, long r = 0);
  static ZSet finite(const std::vector<long>& members);
};

/// Same set with the smallest core and shortest tail patterns.
ZSet normalize(const ZSet& a);
ZSet translate(const ZSet& a, long n);
bool same_set(const ZSet& a, const ZSet& b);
/// Bits of the set on [lo, hi].
std::vector<char> membership(const ZSet& a, long lo, long hi);

ZSet random_zset(std::mt19937& rng, int max_core = 12, int max_period = 4);

std::optional<long> minimal_period(const ZSet& a);
/// Some n with b = a + n.
std::optional<long> translate_equivalent(const ZSet& a, const ZSet& b);
bool is_irreducible(const ZSet& a);

/// Boundary path of a staircase set: gamma at n0 is (i0, j0) with
/// i0 - j0 = n0, and the step gamma_{n+1} - gamma_n is (0, -1) exactly when
/// n is in `vertical`, otherwise (1, 0).
struct Staircase {
  long n0 = 0;
  long i0 = 0;
  long j0 = 0;
  ZSet vertical;

  std::pair<long, long> point(long n) const;
  /// (i, j) lies in the set generated by the path.
  bool contains(long i, long j) const;
  /// Step string "H"/"V" for n in [lo, hi].
  std::string steps(long lo, long hi) const;
  void check() const;
};

Staircase translate(const Staircase& s, long p, long q);
bool same_staircase(const Staircase& a, const Staircase& b);
/// Smallest translation (p, q) != 0 with s = s + (p, q), if any.
std::optional<std::pair<long, long>> staircase_period(const Staircase& s);
/// Z^2 quadrant N^2 and the union (Z x N) + (N x Z).
Staircase quadrant_staircase();
Staircase cross_staircase();

ZSet staircase_to_zset(const Staircase& s);
Staircase zset_to_staircase(const ZSet& a);

/// Cyclic bilateral shift on lo..hi with P = Q_A. Fibers within two steps of
/// the seam are left out of the interior mask.
BCLPair zset_to_bcl(const ZSet& a, long lo, long hi);

struct StaircaseWindow {
  BiIsometry w;
  long n_lo = 0;
  long n_hi = 0;
  int t_top = 0;
  /// Lattice point of each label, in window order.
  std::vector<std::pair<long, long>> points;
};

/// Multiplication by the two variables on span{e_ij : (i, j) in the set},
/// written in diagonal coordinates (n, t) -> gamma_n + (t, t) with n cyclic on
/// the window and t in 0..count.
StaircaseWindow staircase_restriction_biisometry(const Staircase& s, int count);

struct FiberPair {
  CMat u;
  CMat p;
  long period = 0;
};

/// n x n matrix with zeta^{n-1} in the corner (0, n-1) and 1, zeta, ...,
/// zeta^{n-2} on the subdiagonal.
CMat cyclic_weighted_shift(long n, cd zeta);

/// U0(zeta) and P0 for periodic A; P0 tests membership of 0..n-1.
FiberPair direct_integral_factor(const ZSet& a, cd zeta);

/// Dimension of {X : XU = UX, XP = PX}.
int commutant_dimension(const CMat& u, const CMat& p, double tol = 1e-9);

}  // namespace biiso
