#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "biiso/linalg.hpp"

namespace biiso {

struct Label {
  int grade = 0;
  int fiber = 0;
  auto operator<=>(const Label&) const = default;
};

/// Ordered list of basis labels of a truncated graded space.
class Window {
 public:
  Window() = default;
  Window(std::vector<Label> labels, int fiber_dim);

  /// Grades lo..hi, each carrying fiber indices 0..fiber_dim-1 (grade-major).
  static Window graded(int fiber_dim, int lo, int hi);

  long size() const { return static_cast<long>(labels_.size()); }
  int fiber_dim() const { return fiber_dim_; }
  const std::vector<Label>& labels() const { return labels_; }
  const Label& operator[](long i) const { return labels_[static_cast<size_t>(i)]; }
  std::optional<long> index_of(const Label& l) const;
  bool contains(const Label& l) const { return index_of(l).has_value(); }
  bool contains(const Window& other) const;
  Window filter(const std::function<bool(const Label&)>& keep) const;
  int min_grade() const;
  int max_grade() const;

  /// Column-selection matrix embedding `sub` into this window.
  CMat embedding(const Window& sub) const;

  bool operator==(const Window& other) const { return labels_ == other.labels_; }

 private:
  std::vector<Label> labels_;
  int fiber_dim_ = 0;
  std::map<Label, long> index_;
};

/// A finite matrix standing in for an operator between graded spaces.
///
/// exact_cols[j] records that the true image of domain vector j lies in the
/// codomain window; exact_rows[i] records that every domain vector with a
/// nonzero true component on codomain label i lies in the domain window, which
/// is what makes the adjoint's column i exact. tail_bound caps the mass lost by
/// approximate entries per unit vector.
struct WindowedOp {
  Window domain;
  Window codomain;
  CMat matrix;
  std::vector<char> exact_cols;
  std::vector<char> exact_rows;
  double tail_bound = 0.0;

  WindowedOp() = default;
  WindowedOp(Window dom, Window cod, CMat m);

  bool exact() const;
  Window exact_domain() const;
  Window exact_codomain_rows() const;
  /// Matrix restricted to the given domain sub-window.
  CMat columns(const Window& sub) const;
};

WindowedOp identity_op(const Window& w);
WindowedOp compose(const WindowedOp& f, const WindowedOp& g);
WindowedOp adjoint(const WindowedOp& f);
WindowedOp operator+(const WindowedOp& a, const WindowedOp& b);
WindowedOp scale(const WindowedOp& a, cd s);

/// || (f* f - I) restricted to `on` ||.
double isometry_defect(const WindowedOp& f, const Window& on);

/// Unilateral shift (g, i) -> (g + 1, i) on grades 0..n.
WindowedOp shift_operator(int fiber_dim, int n);

/// Bilateral shift (g, i) -> (g + 1, i) on grades -n..n.
WindowedOp bilateral_shift_operator(int fiber_dim, int n);

/// Block-diagonal direct sum; the fiber index of `b` is offset past `a`.
WindowedOp direct_sum(const WindowedOp& a, const WindowedOp& b);
Window direct_sum(const Window& a, const Window& b);

/// A pair of commuting isometries acting on one window, with the sub-window
/// on which both identities hold exactly.
struct BiIsometry {
  WindowedOp w0;
  WindowedOp w1;
  Window interior;

  const Window& space() const { return w0.domain; }
  BiIsometry swapped() const { return {w1, w0, interior}; }
};

struct BiIsometryResiduals {
  double isometry0 = 0.0;
  double isometry1 = 0.0;
  double commutation = 0.0;
};

/// Isometry defects and ||(W0 W1 - W1 W0)|interior||.
BiIsometryResiduals validate(const BiIsometry& w);

/// Operator norm of m restricted to the interior columns.
double restricted_norm(const CMat& m, const Window& space, const Window& on);

BiIsometry direct_sum(const BiIsometry& a, const BiIsometry& b);

}  // namespace biiso
