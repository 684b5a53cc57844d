#include "mpflab/bounds.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>

#include "mpflab/errors.hpp"
#include "mpflab/rng.hpp"
#include "mpflab/spectral.hpp"

namespace mpflab {

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double operator_norm(const PauliSumOp& op) { return hermitian_norm(op); }

namespace {

void guard(const PauliSumOp& op) {
  if (op.size() > kMaxCommutatorTerms)
    throw ResourceLimit("nested commutator exceeds the term guard; use the (k,J) locality estimates");
}

// Visits every composition (q_1..q_s) of p; fn(q, Ad_{A_2}^{q_2}..Ad_{A_s}^{q_s}(B)).
// Partial commutators are shared between compositions with a common tail.
template <class Fn>
void for_each_tail(int p, const std::vector<PauliSumOp>& chain, const PauliSumOp& B, Fn&& fn) {
  const int s = static_cast<int>(chain.size());
  std::vector<int> q(s, 0);
  auto rec = [&](auto&& self, int g, int left, const PauliSumOp& cur) -> void {
    if (g == 0) {
      q[0] = left;
      fn(q, cur);
      return;
    }
    PauliSumOp x = cur;
    for (int k = 0; k <= left; ++k) {
      q[g] = k;
      self(self, g - 1, left - k, x);
      if (k < left) {
        x = commutator_i(chain[g], x);
        guard(x);
        if (x.empty()) {
          // every further power vanishes; remaining compositions contribute 0
          break;
        }
      }
    }
    q[g] = 0;
  };
  rec(rec, s - 1, p, B);
}

double multinomial(const std::vector<int>& q) {
  int tot = 0;
  double den = 1;
  for (int v : q) {
    tot += v;
    den *= factorial(v);
  }
  return factorial(tot) / den;
}

PauliSumOp ad_power(const PauliSumOp& a, PauliSumOp x, int k) {
  for (int i = 0; i < k && !x.empty(); ++i) {
    x = commutator_i(a, x);
    guard(x);
  }
  return x;
}

Eigen::MatrixXcd dense_unitary(const std::vector<FragmentKernel>& kernels, const std::vector<double>& tau, int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::MatrixXcd U(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    Statevector v = Statevector::Zero(dim);
    v[b] = 1.0;
    // U = e^{-i tau_2 A_2} .. e^{-i tau_s A_s}: A_s acts first
    for (std::size_t g = kernels.size(); g-- > 0;) kernels[g].apply(tau[g], v);
    U.col(b) = v;
  }
  return U;
}

double dense_hermitian_norm(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
}

}  // namespace

double alpha_comm(int p, const std::vector<PauliSumOp>& chain, const PauliSumOp& B) {
  if (p < 0) throw InvalidArgument("alpha_comm: p must be >= 0");
  if (chain.empty()) throw InvalidArgument("alpha_comm: empty chain");
  double total = 0;
  for_each_tail(p, chain, B, [&](const std::vector<int>& q, const PauliSumOp& tail) {
    const PauliSumOp full = ad_power(chain[0], tail, q[0]);
    if (!full.empty()) total += multinomial(q) * operator_norm(full);
  });
  return total;
}

double alpha_p(const std::vector<PauliSumOp>& ex, int p) {
  const int d = static_cast<int>(ex.size());
  double total = 0;
  for (int a = 2; a <= d; ++a) {
    // chain F_d, .., F_a ; target F_{a-1} (1-based)
    std::vector<PauliSumOp> chain;
    for (int g = d; g >= a; --g) chain.push_back(ex[g - 1]);
    total += alpha_comm(p, chain, ex[a - 2]);
  }
  return total;
}

double alpha_p(const ProductFormula& pf) { return alpha_p(pf.exponents(), pf.order()); }

BetaValue beta_comm(int p, int ell, const std::vector<PauliSumOp>& chain, const PauliSumOp& B, double t,
                    const BetaSampler& sampler) {
  if (p < 0 || ell < 0) throw InvalidArgument("beta_comm: p and ell must be >= 0");
  if (chain.empty()) throw InvalidArgument("beta_comm: empty chain");
  if (t < 0) throw InvalidArgument("beta_comm: t must be >= 0");
  const int s = static_cast<int>(chain.size());
  BetaValue out;
  if (t == 0.0 || s == 1) {
    for_each_tail(p, chain, B, [&](const std::vector<int>& q, const PauliSumOp& tail) {
      const PauliSumOp full = ad_power(chain[0], tail, ell + q[0]);
      if (!full.empty()) out.value += multinomial(q) * operator_norm(full);
    });
    return out;
  }
  if (sampler.grid_points < 1 && sampler.random_draws == 0)
    throw InvalidArgument("beta_comm: sampler has no points");
  const int n = B.num_qubits();
  if (n > 8) throw ResourceLimit("beta_comm: sampled evaluation limited to 8 qubits");

  std::vector<std::vector<double>> taus;
  if (sampler.grid_points >= 1) {
    const double count = std::pow(double(sampler.grid_points), s - 1);
    if (count > 1e5) throw ResourceLimit("beta_comm: sampling grid too large");
    std::vector<int> g(s - 1, 0);
    while (true) {
      std::vector<double> tau(s - 1);
      for (int i = 0; i < s - 1; ++i)
        tau[i] = sampler.grid_points == 1 ? t : t * g[i] / (sampler.grid_points - 1);
      taus.push_back(tau);
      int i = 0;
      while (i < s - 1 && ++g[i] == sampler.grid_points) g[i++] = 0;
      if (i == s - 1) break;
    }
  }
  Rng rng(sampler.seed, Stream::BetaSamples, static_cast<std::uint64_t>(s));
  for (std::size_t m = 0; m < sampler.random_draws; ++m) {
    std::vector<double> tau(s - 1);
    for (auto& v : tau) v = rng.uniform(0.0, t);
    taus.push_back(tau);
  }

  std::vector<FragmentKernel> kernels;
  for (int g = 1; g < s; ++g) kernels.emplace_back(chain[g]);
  std::vector<Eigen::MatrixXcd> Us;
  for (const auto& tau : taus) Us.push_back(dense_unitary(kernels, tau, n));
  const Eigen::MatrixXcd A1 = chain[0].to_dense();
  const std::complex<double> mi(0, -1);

  for_each_tail(p, chain, B, [&](const std::vector<int>& q, const PauliSumOp& tail) {
    if (tail.empty()) return;
    const Eigen::MatrixXcd X = tail.to_dense();
    double best = 0;
    for (const auto& U : Us) {
      Eigen::MatrixXcd Y = U * X * U.adjoint();
      for (int k = 0; k < ell + q[0]; ++k) Y = (mi * (A1 * Y - Y * A1)).eval();
      best = std::max(best, dense_hermitian_norm(Y));
    }
    out.value += multinomial(q) * best;
  });
  out.sampled = true;
  out.samples = taus.size();
  return out;
}

BetaValue beta_pl(const ProductFormula& pf, int p, int ell, double t, const BetaSampler& sampler) {
  const auto ex = pf.exponents();
  const PauliSumOp H = pf.hamiltonian();
  const int d = static_cast<int>(ex.size());
  BetaValue out;
  for (int a = 2; a <= d; ++a) {
    std::vector<PauliSumOp> chain{H};
    for (int g = d; g >= a; --g) chain.push_back(ex[g - 1]);
    const BetaValue b = beta_comm(p, ell, chain, ex[a - 2], t, sampler);
    out.value += b.value;
    out.sampled = out.sampled || b.sampled;
    out.samples = std::max(out.samples, b.samples);
  }
  return out;
}

Rational bernoulli(int l) {
  using boost::multiprecision::cpp_rational;
  if (l < 0 || l > 30) throw InvalidArgument("bernoulli: index must be in [0, 30]");
  // sum_{j=0}^{m} C(m+1, j) B_j = 0
  std::vector<cpp_rational> B(l + 1);
  B[0] = 1;
  for (int m = 1; m <= l; ++m) {
    cpp_rational acc = 0;
    cpp_rational binom = 1;  // C(m+1, j)
    for (int j = 0; j < m; ++j) {
      acc += binom * B[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    B[m] = -acc / (m + 1);
  }
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  return {static_cast<std::int64_t>(numerator(B[l])), static_cast<std::int64_t>(denominator(B[l]))};
}

double theorem1_prefactor(const MpfScheme& s) { return scheme_objective(s.order, s.steps, s.coefficients); }

namespace {

void check_theorem1_scheme(const MpfScheme& s, const ProductFormula& pf) {
  const int p = s.order;
  if (static_cast<int>(s.steps.size()) != p + 1)
    throw InvalidArgument("theorem1_bound: scheme must have r = p + 1 steps");
  if (pf.order() != p) throw InvalidArgument("theorem1_bound: formula order differs from scheme order");
  if (zne_residual(s) > 1e-8) throw InvalidArgument("theorem1_bound: coefficients do not solve the extrapolation system");
}

struct BetaSet {
  double b2p0 = 0, bpp = 0;
  std::vector<double> bell;
  bool sampled = false;
};

BetaSet betas_at(const ProductFormula& pf, int p, double tau, const BetaSampler& sm) {
  BetaSet b;
  const BetaValue vpp = beta_pl(pf, p, p, tau, sm);
  b.bpp = vpp.value;
  b.sampled = vpp.sampled;
  for (int l = 1; l <= p; ++l) {
    const BetaValue v = beta_pl(pf, 2 * p - l, l - 1, tau, sm);
    b.bell.push_back(v.value);
    b.sampled = b.sampled || v.sampled;
  }
  return b;
}

Theorem1Bound assemble(const MpfScheme& s, double alpha, double b2p0, const BetaSet& b, double t) {
  const int p = s.order;
  Theorem1Bound out;
  out.t = t;
  out.alpha_p = alpha;
  out.prefactor = theorem1_prefactor(s);
  out.beta_2p_0 = b2p0;
  out.beta_p_p = b.bpp;
  out.beta_ell = b.bell;
  out.sampled = b.sampled;
  out.a1 = 8.0 * std::pow(alpha / factorial(p + 1), 2);
  out.a2 = 4.0 * b2p0 / factorial(2 * p) + 8.0 * b.bpp / (std::pow(2 * std::numbers::pi, p) * factorial(p));
  double a3 = 0;
  for (int l = 1; l <= p; ++l)
    a3 += std::abs(bernoulli(l).value()) * b.bell[l - 1] / (factorial(l) * factorial(2 * p - l));
  out.a3 = 4.0 * a3;
  out.value = out.prefactor * (out.a1 * std::pow(t, 2 * p + 2) + out.a2 * std::pow(t, 2 * p + 1) +
                               out.a3 * std::pow(t, 2 * p));
  return out;
}

}  // namespace

Theorem1Bound theorem1_bound(const MpfScheme& s, const ProductFormula& pf, double t, const BetaSampler& sm) {
  check_theorem1_scheme(s, pf);
  if (t < 0) throw InvalidArgument("theorem1_bound: t must be >= 0");
  const int p = s.order;
  const int kmin = *std::min_element(s.steps.begin(), s.steps.end());
  const double alpha = alpha_p(pf);
  const double b2p0 = beta_pl(pf, 2 * p, 0, 0.0, sm).value;
  return assemble(s, alpha, b2p0, betas_at(pf, p, t / kmin, sm), t);
}

std::vector<Theorem1Bound> theorem1_bound_curve(const MpfScheme& s, const ProductFormula& pf,
                                                const std::vector<double>& ts, const BetaSampler& sm) {
  check_theorem1_scheme(s, pf);
  if (!std::is_sorted(ts.begin(), ts.end())) throw InvalidArgument("theorem1_bound_curve: times must be sorted");
  const int p = s.order;
  const int kmin = *std::min_element(s.steps.begin(), s.steps.end());
  const double alpha = alpha_p(pf);
  const double b2p0 = beta_pl(pf, 2 * p, 0, 0.0, sm).value;
  std::vector<Theorem1Bound> out;
  BetaSet run;
  run.bell.assign(p, 0.0);
  for (double t : ts) {
    if (t < 0) throw InvalidArgument("theorem1_bound_curve: t must be >= 0");
    const BetaSet b = betas_at(pf, p, t / kmin, sm);
    run.bpp = std::max(run.bpp, b.bpp);
    for (int l = 0; l < p; ++l) run.bell[l] = std::max(run.bell[l], b.bell[l]);
    run.sampled = run.sampled || b.sampled;
    out.push_back(assemble(s, alpha, b2p0, run, t));
  }
  return out;
}

double lemma1_bound(double alpha, int p, double t, int k) {
  if (k < 1) throw InvalidArgument("lemma1_bound: k must be >= 1");
  return 2.0 * alpha * std::pow(t, p + 1) / (factorial(p + 1) * std::pow(double(k), p));
}

double lemma1_bound(const ProductFormula& pf, double t, int k) {
  return lemma1_bound(alpha_p(pf), pf.order(), t, k);
}

LocalityProfile kj_commutator(const LocalityProfile& a, const LocalityProfile& b) {
  return {a.k + b.k - 1, 2.0 * a.J * b.J * (a.k + b.k)};
}

LocalityProfile kj_conjugation(const LocalityProfile& a, int gamma, int depth) {
  if (gamma < 1 || depth < 0) throw InvalidArgument("kj_conjugation: need gamma >= 1, depth >= 0");
  const double g = std::pow(double(gamma), depth);
  return {static_cast<int>(g * a.k), g * a.J};
}

LocalityProfile kj_adjoint_power(const LocalityProfile& A, const LocalityProfile& B, int q) {
  if (q < 0) throw InvalidArgument("kj_adjoint_power: q must be >= 0");
  LocalityProfile x = B;
  for (int i = 0; i < q; ++i) x = kj_commutator(A, x);
  return x;
}

LocalityProfile kj_propagate(const std::vector<LocalityProfile>& pr, KjOperation op, int param, int depth) {
  for (const auto& p : pr)
    if (p.k < 1 || p.J < 0) throw InvalidArgument("kj_propagate: invalid profile");
  switch (op) {
    case KjOperation::Commutator:
      if (pr.size() != 2) throw InvalidArgument("kj_propagate: commutator needs two profiles");
      return kj_commutator(pr[0], pr[1]);
    case KjOperation::Conjugation:
      if (pr.size() != 1) throw InvalidArgument("kj_propagate: conjugation needs one profile");
      return kj_conjugation(pr[0], param, depth);
    case KjOperation::AdjointPower:
      if (pr.size() != 2) throw InvalidArgument("kj_propagate: adjoint power needs two profiles");
      return kj_adjoint_power(pr[0], pr[1], param);
  }
  throw InvalidArgument("kj_propagate: unknown operation");
}

}  // namespace mpflab
