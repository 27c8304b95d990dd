#pragma once

#include <vector>

#include "biiso/linalg.hpp"
#include "biiso/windowed.hpp"

namespace biiso {

/// Bases are columns in the coordinates of the operator's domain window.
struct WoldResult {
  CMat wandering;
  CMat shift_part;
  CMat unitary_part;
  int depth_used = 0;
};

/// Largest subspace M of the interior that reduces every operator in `ops`
/// (images may leave through the window edge) and on which each operator
/// listed in `unitary` satisfies A A* = I. Computed as a decreasing fixed point;
/// `max_iter` caps the number of sweeps.
CMat reducing_unitary_subspace(const std::vector<CMat>& ops, const Window& space, const Window& interior,
                               const std::vector<int>& unitary, int max_iter = 0, const Tolerance& tol = {});

/// depth <= 0 selects the number of interior grades.
WoldResult wold_single(const WindowedOp& v, const Window& interior, int depth = 0, const Tolerance& tol = {});

/// Largest reducing subspace on which both operators are unitary.
CMat unitary_part_pair(const BiIsometry& w, int depth = 0, const Tolerance& tol = {});

/// k_ab: W0 unitary iff a = 1, W1 unitary iff b = 1.
struct FourSpaces {
  CMat k00, k01, k10, k11;
};

FourSpaces four_space_decomposition(const BiIsometry& w, int depth = 0, const Tolerance& tol = {});

struct CnuSplit {
  CMat unitary;
  CMat cnu;
};

CnuSplit cnu_part_of_contraction(const CMat& a, const Tolerance& tol = {});

}  // namespace biiso
