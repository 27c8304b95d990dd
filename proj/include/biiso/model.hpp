#pragma once

#include <vector>

#include "biiso/linalg.hpp"
#include "biiso/symbols.hpp"
#include "biiso/windowed.hpp"
#include "biiso/wold.hpp"

namespace biiso {

/// Compression of W1 to the shift part of W0.
struct CharPair {
  CMat h_basis;  // orthonormal basis of the shift part, in window coordinates
  CMat v0;       // W0 restricted to it
  CMat a;        // P_H W1 restricted to it
};

/// Layout of the truncated model space H2(E) + H2(defect).
///
/// The circle is replaced by K sample points. The defect space is spanned by
/// the eigenvectors of I - Theta*Theta at each sample with positive eigenvalue;
/// W0 acts on it by the sample value zeta_j, exactly unitarily.
struct ModelSpaces {
  int fiber = 0;          // dim E
  int hardy_top = 0;      // H2 grades 0..hardy_top
  int interior_top = 0;   // interior H2 grades 0..interior_top
  int defect_top = 0;     // defect w-grades 0..defect_top
  int samples = 0;        // effective sample count
  int defect_dim = 0;     // dim of the sampled defect space
  std::vector<int> defect_sample;     // sample index of each defect direction
  std::vector<double> defect_weight;  // square root of its eigenvalue
  CMat defect_dirs;                   // fiber x defect_dim, unit eigenvectors
  Window window;
  Window hardy;        // all H2 labels
  Window defect_zero;  // defect labels at w-grade 0
  CMat d_op;           // defect_dim x hardy: f -> Delta f on the samples
};

struct Model {
  BiIsometry w;
  ModelSpaces spaces;
  OpSymbol theta;
};

/// W(Theta) truncated so that the interior identities hold exactly for
/// polynomial Theta (Blaschke tails are carried below 1e-15).
Model build_model_biisometry(const OpSymbol& theta, int n, int k, const Tolerance& tol = {});

struct ModelCompression {
  CMat basis;  // orthonormal basis of H(Theta) in model window coordinates
  CMat s;      // compression of W0 to it
};

/// Complement of {P Theta u + Delta u} in H2 + defect grade 0, computed from
/// the Toeplitz and defect blocks directly.
ModelCompression model_space_compression(const Model& m, const Tolerance& tol = {});
ModelCompression model_space_compression(const OpSymbol& theta, int n, int k, const Tolerance& tol = {});

/// ker W0* over the interior labels whose W0 rows are exact.
CMat wandering_space(const BiIsometry& w, const Tolerance& tol = {});

/// ker W1* over the labels whose W1 rows are exact.
CMat pivotal_space(const BiIsometry& w, const Tolerance& tol = {});

CharPair characteristic_pair(const BiIsometry& w, int depth = 0, const Tolerance& tol = {});

/// Theta_k = E* W0*^k W1 E in the canonical basis of E = ker W0*.
std::vector<CMat> characteristic_function(const BiIsometry& w, int k_max, const Tolerance& tol = {});

/// (W0* restricted to ker W1*)* in an orthonormal basis of ker W1*.
CMat pivotal_operator(const BiIsometry& w, const Tolerance& tol = {});

/// (I - W1 W1*)(I - z W1*)^{-1} W0 on ran(I - W1 W1*), by a Neumann series.
CMat swapped_characteristic_function(const BiIsometry& w, cd z, const Tolerance& tol = {});

struct Verdict {
  bool holds = false;
  double residual = 0.0;
};

Verdict doubly_commuting_test(const BiIsometry& w, double tol = 1e-8);

/// ||(I - W1 W1*)|interior||.
Verdict w1_unitary_test(const BiIsometry& w, double tol = 1e-8);

/// Largest reducing subspace on which W1 is unitary (empty means {1}-pure).
CMat w1_unitary_part(const BiIsometry& w, const Tolerance& tol = {});

/// Largest reducing subspace on which W0 is unitary (empty means {0}-pure).
CMat w0_unitary_part(const BiIsometry& w, const Tolerance& tol = {});

struct BishiftReport {
  std::vector<double> decay0;
  std::vector<double> decay1;
  bool decayed = false;
  InnerCheck inner;
  bool certificate = false;  // constant Omega found
  CMat omega;
  CMat u;
  double certificate_residual = 0.0;
  bool bishift = false;
};

/// Constant isometry Omega with Theta(z) Omega = Omega U, U unitary diagonal.
/// Empty omega when the largest such subspace is zero.
void constant_omega_search(const OpSymbol& theta, CMat& omega, CMat& u, const Tolerance& tol = {});

BishiftReport bishift_test(const BiIsometry& w, const OpSymbol& theta, int n_max, int k, const Tolerance& tol = {});

/// Theta_k = 0 for k >= 1 and Theta_0 isometric, judged on the exact series.
bool is_constant_isometry(const OpSymbol& theta, double tol = 1e-9);
bool is_constant_unitary(const OpSymbol& theta, double tol = 1e-9);

}  // namespace biiso
