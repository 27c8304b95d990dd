#pragma once

#include <string>
#include <vector>

#include "biiso/linalg.hpp"
#include "biiso/model.hpp"
#include "biiso/symbols.hpp"
#include "biiso/windowed.hpp"

namespace biiso {

/// Unitary U and orthogonal projection P on D = E + F, stored in the basis
/// where E comes first. P is diag(I_E, 0).
struct BCLPair {
  CMat u;
  CMat p;
  int dim_e = 0;
  int dim_f = 0;
  // Set when U was compressed from a window and is only approximately unitary.
  bool truncated = false;
  double unitarity_defect = 0.0;
  // Per-coordinate flag; empty means every coordinate is interior. Consumed by
  // biisometry_from_bcl to keep seam fibers out of the interior.
  std::vector<char> interior_mask;

  long dim() const { return u.rows(); }
};

/// Checks shape, projection and unitarity (within `unitary_tol`).
void validate_bcl(const BCLPair& b, double unitary_tol = 1e-9);

BCLPair make_bcl(const CMat& u, const CMat& p);

struct DecompositionCheck {
  double e_w0f = 0.0;       // D = E + W0 F
  double w1e_f = 0.0;       // D = W1 E + F
  bool full = false;  // F inside the exact part of W0: projector equality checked too
};

/// U in the E + F basis from the block matrix
/// [[W1*|E, W1* W0|F], [(I - W1 W1*)|E, (I - W1 W1*) W0|F]].
BCLPair bcl_from_biisometry(const BiIsometry& w, const Tolerance& tol = {}, DecompositionCheck* check = nullptr);

/// (W0 f)(z) = U(zP + P')f(z), (W1 f)(z) = (P + zP')U* f(z) on grades 0..n.
BiIsometry biisometry_from_bcl(const BCLPair& b, int n);

/// Pair of the model of theta computed from the symbol: the E block from
/// Theta(0), the H(Theta) block through the (-1) Fourier coefficient of
/// Theta* u + Delta v on the samples.
BCLPair bcl_from_symbol(const Model& m, const Tolerance& tol = {});
BCLPair bcl_from_symbol(const OpSymbol& theta, int n, int k, const Tolerance& tol = {});

enum class Equivalence { equivalent, inequivalent, undecided };

const char* to_string(Equivalence e);

struct EquivalenceResult {
  Equivalence verdict = Equivalence::undecided;
  CMat witness;
  double residual = 0.0;
  std::string reason;
};

/// Traces of words in {U, U*, P} up to word_len separate inequivalent pairs;
/// an intertwiner certifies equivalence.
EquivalenceResult pair_equivalence(const BCLPair& a, const BCLPair& b, int word_len = 8, const Tolerance& tol = {});

}  // namespace biiso
