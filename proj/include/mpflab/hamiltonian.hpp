#pragma once

#include <cstdint>
#include <vector>

#include "mpflab/pauli.hpp"

namespace mpflab {

struct HeisenbergChain {
  PauliSumOp H;
  std::vector<double> fields;  // h_j, uniform on [-1, 1]
};

// H = sum_j (X_j X_{j+1} + Y_j Y_{j+1} + Z_j Z_{j+1}) + sum_j h_j Z_j, open chain.
HeisenbergChain build_heisenberg_chain(int n, std::uint64_t seed);

// XX+YY+ZZ on bond (j, j+1) with weight w.
PauliSumOp heisenberg_bond(int n, int j, double w);

// F1 = F5 = half odd bonds (1,2),(3,4),...; F2 = F4 = half fields;
// F3 = even bonds (0,1),(2,3),...
std::vector<PauliSumOp> fragment_decomposition_S2(const HeisenbergChain& chain);

PauliSumOp sum_fragments(const std::vector<PauliSumOp>& frags);

}  // namespace mpflab
