#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mpflab/pauli.hpp"

namespace mpflab {

using Statevector = Eigen::VectorXcd;

Statevector basis_state(int n, std::uint64_t index);
// |1010...>: qubit j is 1 for even j.
Statevector neel_state(int n);
Statevector random_state(int n, std::uint64_t seed);
int num_qubits_of(const Statevector& s);

cplx overlap(const Statevector& a, const Statevector& b);  // <a|b>

// e^{-i tau F} for a fragment of pairwise commuting Pauli terms. Diagonal
// terms are folded into one energy vector, the rest act as in-place
// amplitude-pair rotations.
class FragmentKernel {
 public:
  struct Prepared {
    Eigen::VectorXcd diag_phase;  // empty when the fragment has no diagonal part
    std::vector<double> c, s;     // per off-diagonal term
  };

  explicit FragmentKernel(const PauliSumOp& f);

  int num_qubits() const { return n_; }
  Prepared prepare(double tau) const;
  void apply(const Prepared& p, Statevector& psi) const;
  void apply(double tau, Statevector& psi) const { apply(prepare(tau), psi); }

 private:
  struct OffDiag {
    PauliString p;
    double coeff;
    std::uint64_t pivot;  // lowest set bit of x
  };
  int n_;
  bool has_diag_ = false;
  Eigen::VectorXd energy_;
  std::vector<OffDiag> off_;
};

Statevector apply_fragment_exp(const Statevector& psi, const PauliSumOp& f, double t);

}  // namespace mpflab
