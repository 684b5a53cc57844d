#pragma once

#include <memory>
#include <vector>

#include "mpflab/pauli.hpp"
#include "mpflab/statevector.hpp"

namespace mpflab {

struct PfStep {
  int fragment;
  double multiplier;
};

// S(t) = prod_j exp(-i m_j t F_{f_j}); steps listed in application order
// (first step acts first on the state).
class ProductFormula {
 public:
  ProductFormula(std::vector<PauliSumOp> fragments, std::vector<PfStep> steps, int order);

  // Lie-Trotter: F_1 first, F_m last.
  static ProductFormula first_order(const std::vector<PauliSumOp>& fragments);
  // Symmetric second-order recipe. A fragment list that is already an
  // operator palindrome of odd length (F_a == F_{m+1-a}) is taken literally
  // with unit multipliers; otherwise Strang splitting F_1(1/2)..F_m(1)..F_1(1/2).
  static ProductFormula second_order(const std::vector<PauliSumOp>& fragments);
  // Suzuki recursion S_{2j}(t) = S(u t)^2 S((1-4u) t) S(u t)^2, u = 1/(4 - 4^{1/(2j-1)}).
  static ProductFormula suzuki(const ProductFormula& base, int p);

  int order() const { return order_; }
  int num_qubits() const { return fragments_.front().num_qubits(); }
  const std::vector<PauliSumOp>& fragments() const { return fragments_; }
  const std::vector<PfStep>& steps() const { return steps_; }
  std::size_t num_exponentials() const { return steps_.size(); }
  PauliSumOp hamiltonian() const;
  // m_j F_{f_j} in application order.
  std::vector<PauliSumOp> exponents() const;
  // Per-fragment multiplier sums (each is 1 for a consistent formula).
  std::vector<double> multiplier_sums() const;

  // One application of S(t).
  void apply(Statevector& psi, double t) const;
  // S(t/k)^k psi
  Statevector rho_k_state(const Statevector& psi, double t, int k) const;
  // S(dt)^reps psi, with the step unitary prepared once.
  Statevector repeat(const Statevector& psi, double dt, int reps) const;

 private:
  std::vector<PauliSumOp> fragments_;
  std::vector<std::shared_ptr<const FragmentKernel>> kernels_;
  std::vector<PfStep> steps_;
  int order_;
};

Statevector rho_k_state(const ProductFormula& pf, const Statevector& psi, double t, int k);

}  // namespace mpflab
