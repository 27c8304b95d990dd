#pragma once

#include <random>
#include <string>
#include <vector>

#include "biiso/linalg.hpp"
#include "biiso/symbols.hpp"

namespace biiso {

struct NamedSymbol {
  std::string name;
  OpSymbol theta;
};

/// BIISO_SEED, or 42.
unsigned suite_seed();

/// Random polynomial of the given size and degree, scaled so that its sup
/// norm on the circle is `scale` (at most 1).
OpSymbol random_contractive_symbol(std::mt19937& rng, int dim, int degree, double scale = 0.95);
CMat random_unitary(std::mt19937& rng, int dim);

/// I, zI, I/2, a constant unitary, the cyclic shift on C^3 and the 8x8
/// closure of the l2 example.
std::vector<NamedSymbol> named_symbols();

/// `count` symbols with fiber dim <= 3 and degree <= 3. Mixes plain random
/// polynomials with constants and block-diagonal symbols that carry a
/// constant unitary block.
std::vector<NamedSymbol> random_symbols(int count, unsigned seed);

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double tol = 0.0;
  std::string detail;
};

/// Left inverse, eigenvalue and bi-shift facts of the l2 example.
std::vector<Check> section6_checks();

/// Staircase, period, translation and direct-integral facts for lattice sets.
std::vector<Check> section8_checks(unsigned seed);

}  // namespace biiso
