#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mpflab/pauli.hpp"
#include "mpflab/product_formula.hpp"
#include "mpflab/static_mpf.hpp"

namespace mpflab {

inline constexpr std::size_t kMaxCommutatorTerms = 1'000'000;

// ||op|| for a Hermitian Pauli sum (exact, block-diagonalized eigenvalues).
double operator_norm(const PauliSumOp& op);

// sum over q_1+..+q_s = p of p!/(q_1!..q_s!) ||Ad_{A_1}^{q_1} .. Ad_{A_s}^{q_s}(B)||
double alpha_comm(int p, const std::vector<PauliSumOp>& chain, const PauliSumOp& B);

// sum_{a=2}^{d} alpha_comm(p; F_d..F_a; F_{a-1}) over the exponents of pf,
// with p the formula order unless given.
double alpha_p(const ProductFormula& pf);
double alpha_p(const std::vector<PauliSumOp>& exponents, int p);

struct BetaSampler {
  int grid_points = 3;          // per-time levels 0, t/(g-1), .., t
  std::size_t random_draws = 64;
  std::uint64_t seed = 0;
};

struct BetaValue {
  double value = 0.0;
  bool sampled = false;  // true when the max over the unitary set was estimated
  std::size_t samples = 1;
};

// sum over j_1+..+j_s = p of p!/J! max_U ||Ad_{A_1}^{ell+j_1} U (prod_{g>=2} Ad_{A_g}^{j_g}(B)) U^dag||
// with U = e^{-i tau_2 A_2} .. e^{-i tau_s A_s}, 0 <= tau <= t. Sampled for t > 0.
BetaValue beta_comm(int p, int ell, const std::vector<PauliSumOp>& chain, const PauliSumOp& B, double t,
                    const BetaSampler& sampler);

// sum_{a=2}^{d} beta_comm(p, ell; H, F_d..F_a; F_{a-1}; t)
BetaValue beta_pl(const ProductFormula& pf, int p, int ell, double t, const BetaSampler& sampler);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};
// B_l = B_l(0), so B_1 = -1/2.
Rational bernoulli(int l);

struct Theorem1Bound {
  double t = 0.0;
  double alpha_p = 0.0;
  double a1 = 0.0, a2 = 0.0, a3 = 0.0;
  double prefactor = 0.0;  // sum |c_i| / k_i^{2p}
  double beta_2p_0 = 0.0;
  double beta_p_p = 0.0;
  std::vector<double> beta_ell;  // beta_{2p-l, l-1}(t/k_min), l = 1..p
  bool sampled = false;
  double value = 0.0;
};

// Requires r = p+1 and coefficients solving the consecutive system q = p..2p-1.
// |B_l| is used in a3.
Theorem1Bound theorem1_bound(const MpfScheme& scheme, const ProductFormula& pf, double t,
                             const BetaSampler& sampler = {});
// Evaluated on sorted times with the beta values replaced by running maxima,
// so the curve is nondecreasing in t.
std::vector<Theorem1Bound> theorem1_bound_curve(const MpfScheme& scheme, const ProductFormula& pf,
                                                const std::vector<double>& ts, const BetaSampler& sampler = {});
double theorem1_prefactor(const MpfScheme& scheme);

// 2 alpha_p t^{p+1} / ((p+1)! k^p)
double lemma1_bound(double alpha_p, int p, double t, int k);
double lemma1_bound(const ProductFormula& pf, double t, int k);

enum class KjOperation { Commutator, Conjugation, AdjointPower };

LocalityProfile kj_commutator(const LocalityProfile& a, const LocalityProfile& b);
// Conjugation by a depth-d circuit with light-cone factor gamma.
LocalityProfile kj_conjugation(const LocalityProfile& a, int gamma, int depth);
// Ad_A^q(B) by iterating the commutator rule.
LocalityProfile kj_adjoint_power(const LocalityProfile& A, const LocalityProfile& B, int q);
// Commutator: profiles {a, b}; Conjugation: {a}, param = gamma, depth;
// AdjointPower: {A, B}, param = q.
LocalityProfile kj_propagate(const std::vector<LocalityProfile>& profiles, KjOperation op, int param = 0,
                             int depth = 0);

double factorial(int n);

}  // namespace mpflab
