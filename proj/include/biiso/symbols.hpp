#pragma once

#include <optional>
#include <vector>

#include "biiso/linalg.hpp"
#include "biiso/windowed.hpp"

namespace biiso {

/// Finite Blaschke product c * prod (z - a) / (1 - conj(a) z).
struct InnerScalar {
  std::vector<cd> zeros;
  cd constant{1.0, 0.0};

  cd eval(cd z) const;
  /// Taylor coefficients 0..n, by series multiplication of the factors.
  std::vector<cd> series(int n) const;
  /// max |a| over the zeros (0 when there are none).
  double radius() const;
};

InnerScalar blaschke_factor(cd a);

/// One matrix entry: polynomial times an optional Blaschke product.
struct SymbolEntry {
  std::vector<cd> poly;
  std::optional<InnerScalar> inner;
};

/// Contractive analytic function on the disk with values in dim x dim matrices.
class OpSymbol {
 public:
  OpSymbol() = default;
  OpSymbol(int dim, std::vector<SymbolEntry> entries);

  static OpSymbol constant(const CMat& c);
  static OpSymbol polynomial(const std::vector<CMat>& coeffs);

  int dim() const { return dim_; }
  const SymbolEntry& entry(int i, int j) const { return entries_[static_cast<size_t>(i * dim_ + j)]; }
  const std::vector<SymbolEntry>& entries() const { return entries_; }

  int poly_degree() const;
  bool has_inner() const;
  double inner_radius() const;
  /// Polynomial degree plus the number of extra coefficients needed before the
  /// Blaschke tails drop below `tail`.
  int effective_degree(double tail = 1e-15) const;

  CMat eval(cd z) const;
  /// Exact Taylor coefficients 0..n.
  std::vector<CMat> series(int n) const;
  /// Sum of coefficient norms beyond index n (geometric bound for Blaschke tails).
  double series_tail(int n) const;

 private:
  int dim_ = 0;
  std::vector<SymbolEntry> entries_;
};

std::vector<cd> roots_of_unity(int k);

/// Taylor coefficients by averaging eval over K-th roots of unity.
std::vector<CMat> taylor_coefficients(const OpSymbol& s, int n_max, int k);

struct BoundaryDefect {
  std::vector<cd> points;
  std::vector<CMat> delta;
};

BoundaryDefect boundary_defect(const OpSymbol& s, int k, const Tolerance& tol = {});

/// T_Theta on grades 0..n. The codomain runs to n + effective degree.
WindowedOp toeplitz_matrix(const OpSymbol& s, int n);

/// Laurent operators on grades -n..n.
WindowedOp laurent_matrix(const OpSymbol& s, int n);
WindowedOp laurent_matrix(const BoundaryDefect& d, int n);

struct InnerCheck {
  bool inner = false;
  double max_defect = 0.0;
};

InnerCheck is_inner_sampled(const OpSymbol& s, int k);
double contractivity_norm(const OpSymbol& s, int k);

/// Finite closure of the l2 example: first column (3/5 phi, 4/5 z), a
/// shifted identity below, and last column (4/5 phi, -3/5 z) making it inner.
/// phi is the Blaschke factor with the given zero.
OpSymbol section6_symbol(int n, cd phi_zero = cd(-0.5, 0.0));

/// Matching left inverse: row 0 is (5/(3 phi(0)), eta(z)), rows i >= 1 pick
/// coordinate i + 1.  eta(z) = 5/(4z) (1 - phi(z)/phi(0)).
CMat section6_left_inverse(int n, cd phi_zero, cd z);

}  // namespace biiso
