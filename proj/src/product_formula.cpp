#include "mpflab/product_formula.hpp"

#include <cmath>

#include "mpflab/errors.hpp"

namespace mpflab {

ProductFormula::ProductFormula(std::vector<PauliSumOp> fragments, std::vector<PfStep> steps, int order)
    : fragments_(std::move(fragments)), steps_(std::move(steps)), order_(order) {
  if (fragments_.empty()) throw InvalidArgument("product formula needs at least one fragment");
  if (order < 1) throw InvalidArgument("product formula order must be >= 1");
  const int n = fragments_.front().num_qubits();
  for (const auto& f : fragments_) {
    if (f.num_qubits() != n) throw InvalidArgument("fragments act on different qubit counts");
    kernels_.push_back(std::make_shared<const FragmentKernel>(f));
  }
  for (const auto& s : steps_)
    if (s.fragment < 0 || s.fragment >= static_cast<int>(fragments_.size()))
      throw InvalidArgument("product formula step refers to unknown fragment");
}

ProductFormula ProductFormula::first_order(const std::vector<PauliSumOp>& fragments) {
  std::vector<PfStep> steps;
  for (std::size_t a = 0; a < fragments.size(); ++a) steps.push_back({static_cast<int>(a), 1.0});
  return ProductFormula(fragments, steps, 1);
}

ProductFormula ProductFormula::second_order(const std::vector<PauliSumOp>& fragments) {
  const int m = static_cast<int>(fragments.size());
  if (m == 0) throw InvalidArgument("second_order needs at least one fragment");
  bool palindrome = m % 2 == 1;
  for (int a = 0; palindrome && a < m / 2; ++a) palindrome = fragments[a] == fragments[m - 1 - a];
  std::vector<PfStep> steps;
  if (palindrome) {
    for (int a = 0; a < m; ++a) steps.push_back({a, 1.0});
  } else {
    for (int a = 0; a < m - 1; ++a) steps.push_back({a, 0.5});
    steps.push_back({m - 1, 1.0});
    for (int a = m - 2; a >= 0; --a) steps.push_back({a, 0.5});
  }
  return ProductFormula(fragments, steps, 2);
}

ProductFormula ProductFormula::suzuki(const ProductFormula& base, int p) {
  if (base.order() != 2) throw InvalidArgument("suzuki: base formula must have order 2");
  if (p != 4 && p != 6) throw InvalidArgument("suzuki: target order must be 4 or 6");
  std::vector<PfStep> cur = base.steps();
  for (int k = 2; k <= p / 2; ++k) {
    const double u = 1.0 / (4.0 - std::pow(4.0, 1.0 / (2 * k - 1)));
    std::vector<PfStep> next;
    for (double w : {u, u, 1.0 - 4.0 * u, u, u})
      for (const auto& s : cur) {
        if (!next.empty() && next.back().fragment == s.fragment)
          next.back().multiplier += w * s.multiplier;
        else
          next.push_back({s.fragment, w * s.multiplier});
      }
    cur = std::move(next);
  }
  return ProductFormula(base.fragments(), cur, p);
}

PauliSumOp ProductFormula::hamiltonian() const {
  PauliSumOp h(num_qubits());
  for (const auto& f : fragments_) h = h + f;
  return h;
}

std::vector<PauliSumOp> ProductFormula::exponents() const {
  std::vector<PauliSumOp> out;
  for (const auto& s : steps_) out.push_back(fragments_[s.fragment] * s.multiplier);
  return out;
}

std::vector<double> ProductFormula::multiplier_sums() const {
  std::vector<double> sums(fragments_.size(), 0.0);
  for (const auto& s : steps_) sums[s.fragment] += s.multiplier;
  return sums;
}

void ProductFormula::apply(Statevector& psi, double t) const {
  for (const auto& s : steps_) kernels_[s.fragment]->apply(s.multiplier * t, psi);
}

Statevector ProductFormula::repeat(const Statevector& psi, double dt, int reps) const {
  if (reps < 0) throw InvalidArgument("repeat: negative count");
  if (psi.size() != (Eigen::Index(1) << num_qubits())) throw InvalidArgument("product formula: state dimension mismatch");
  std::vector<FragmentKernel::Prepared> prep;
  for (const auto& s : steps_) prep.push_back(kernels_[s.fragment]->prepare(s.multiplier * dt));
  Statevector out = psi;
  for (int r = 0; r < reps; ++r)
    for (std::size_t j = 0; j < steps_.size(); ++j) kernels_[steps_[j].fragment]->apply(prep[j], out);
  return out;
}

Statevector ProductFormula::rho_k_state(const Statevector& psi, double t, int k) const {
  if (k < 1) throw InvalidArgument("rho_k_state: k must be >= 1");
  return repeat(psi, t / k, k);
}

Statevector rho_k_state(const ProductFormula& pf, const Statevector& psi, double t, int k) {
  return pf.rho_k_state(psi, t, k);
}

}  // namespace mpflab
