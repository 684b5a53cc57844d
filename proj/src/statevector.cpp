#include "mpflab/statevector.hpp"

#include <bit>
#include <cmath>

#include "mpflab/errors.hpp"
#include "mpflab/rng.hpp"

namespace mpflab {

Statevector basis_state(int n, std::uint64_t index) {
  if (n < 1 || n > 30) throw InvalidArgument("basis_state: n out of range");
  const std::uint64_t dim = 1ULL << n;
  if (index >= dim) throw InvalidArgument("basis_state: index out of range");
  Statevector s = Statevector::Zero(dim);
  s[index] = 1.0;
  return s;
}

Statevector neel_state(int n) {
  std::uint64_t idx = 0;
  for (int j = 0; j < n; j += 2) idx |= 1ULL << j;
  return basis_state(n, idx);
}

Statevector random_state(int n, std::uint64_t seed) {
  Rng rng(seed, Stream::Testing, static_cast<std::uint64_t>(n));
  Statevector s(1ULL << n);
  for (auto& a : s) a = cplx(rng.normal(), rng.normal());
  return s / s.norm();
}

int num_qubits_of(const Statevector& s) {
  const auto dim = static_cast<std::uint64_t>(s.size());
  if (dim == 0 || (dim & (dim - 1)) != 0) throw InvalidArgument("state dimension is not a power of two");
  return std::countr_zero(dim);
}

cplx overlap(const Statevector& a, const Statevector& b) {
  if (a.size() != b.size()) throw InvalidArgument("overlap: dimension mismatch");
  return a.dot(b);
}

FragmentKernel::FragmentKernel(const PauliSumOp& f) : n_(f.num_qubits()) {
  if (n_ < 1 || n_ > 30) throw InvalidArgument("fragment: qubit count out of range");
  if (!f.pairwise_commuting()) throw InvalidArgument("fragment terms do not pairwise commute");
  const std::uint64_t dim = 1ULL << n_;
  energy_ = Eigen::VectorXd::Zero(dim);
  for (const auto& [p, c] : f.terms()) {
    if (p.is_diagonal()) {
      has_diag_ = true;
      for (std::uint64_t b = 0; b < dim; ++b) energy_[b] += c * p.phase_on(b).real();
    } else {
      off_.push_back({p, c, p.x() & (~p.x() + 1)});
    }
  }
}

FragmentKernel::Prepared FragmentKernel::prepare(double tau) const {
  Prepared pr;
  if (has_diag_) {
    pr.diag_phase.resize(energy_.size());
    for (Eigen::Index b = 0; b < energy_.size(); ++b)
      pr.diag_phase[b] = std::polar(1.0, -tau * energy_[b]);
  }
  for (const auto& o : off_) {
    pr.c.push_back(std::cos(tau * o.coeff));
    pr.s.push_back(std::sin(tau * o.coeff));
  }
  return pr;
}

void FragmentKernel::apply(const Prepared& pr, Statevector& psi) const {
  const std::uint64_t dim = 1ULL << n_;
  if (static_cast<std::uint64_t>(psi.size()) != dim) throw InvalidArgument("fragment: state dimension mismatch");
  if (has_diag_) psi.array() *= pr.diag_phase.array();
  const cplx mi(0, -1);
  for (std::size_t t = 0; t < off_.size(); ++t) {
    const auto& o = off_[t];
    const double c = pr.c[t];
    const cplx ms = mi * pr.s[t];
    const std::uint64_t x = o.p.x();
    for (std::uint64_t b = 0; b < dim; ++b) {
      if (b & o.pivot) continue;
      const std::uint64_t b2 = b ^ x;
      const cplx a0 = psi[b], a1 = psi[b2];
      // (P psi)[b] = phase_on(b2) psi[b2]
      psi[b] = c * a0 + ms * o.p.phase_on(b2) * a1;
      psi[b2] = c * a1 + ms * o.p.phase_on(b) * a0;
    }
  }
}

Statevector apply_fragment_exp(const Statevector& psi, const PauliSumOp& f, double t) {
  FragmentKernel k(f);
  Statevector out = psi;
  k.apply(t, out);
  return out;
}

}  // namespace mpflab
