#include <gtest/gtest.h>

#include <cmath>

#include "mpflab/bounds.hpp"
#include "mpflab/errors.hpp"
#include "mpflab/experiments.hpp"
#include "mpflab/hamiltonian.hpp"
#include "mpflab/rng.hpp"
#include "support/dense.hpp"

using namespace mpflab;

namespace {

PauliSumOp random_op(Rng& rng, int n, int terms) {
  static const char sym[] = "IXYZ";
  std::vector<std::pair<double, std::string>> t;
  for (int i = 0; i < terms; ++i) {
    std::string w;
    for (int j = 0; j < n; ++j) w += sym[rng.next() % 4];
    t.emplace_back(rng.uniform(-1, 1), w);
  }
  return PauliSumOp::from_terms(n, t);
}

dense::Mat ad(const dense::Mat& A, const dense::Mat& X) { return A * X - X * A; }

// qubit-wise Hadamard: X <-> Z, Y -> -Y
PauliSumOp hadamard_all(const PauliSumOp& op) {
  std::vector<std::pair<double, std::string>> t;
  for (const auto& [p, c] : op.terms()) {
    std::string w = p.word();
    double sign = 1;
    for (auto& ch : w) {
      if (ch == 'X') ch = 'Z';
      else if (ch == 'Z') ch = 'X';
      else if (ch == 'Y') sign = -sign;
    }
    t.emplace_back(sign * c, w);
  }
  return PauliSumOp::from_terms(op.num_qubits(), t);
}

const std::vector<PauliSumOp> kS2Fragments = fragment_decomposition_S2(build_heisenberg_chain(4, 1));

}  // namespace

TEST(OperatorNorm, MatchesSvd) {
  Rng rng(1, Stream::Testing);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_op(rng, 1 + trial % 5, 6);
    EXPECT_NEAR(operator_norm(a), dense::spectral_norm(dense::op(a)), 1e-10);
  }
  EXPECT_DOUBLE_EQ(operator_norm(PauliSumOp(3)), 0.0);
}

TEST(AlphaComm, SingleCommutator) {
  Rng rng(2, Stream::Testing);
  const auto A = random_op(rng, 3, 5), B = random_op(rng, 3, 5);
  const double want = dense::spectral_norm(ad(dense::op(A), dense::op(B)));
  EXPECT_NEAR(alpha_comm(1, {A}, B), want, 1e-10);
  EXPECT_DOUBLE_EQ(alpha_comm(0, {A}, B), operator_norm(B));
}

TEST(AlphaComm, MatchesDenseNestedCommutators) {
  Rng rng(3, Stream::Testing);
  const auto A1 = random_op(rng, 3, 4), A2 = random_op(rng, 3, 4), B = random_op(rng, 3, 4);
  const auto a1 = dense::op(A1), a2 = dense::op(A2), b = dense::op(B);
  const double want = dense::spectral_norm(ad(a1, ad(a1, b))) + 2 * dense::spectral_norm(ad(a1, ad(a2, b))) +
                      dense::spectral_norm(ad(a2, ad(a2, b)));
  EXPECT_NEAR(alpha_comm(2, {A1, A2}, B), want, 1e-9);
}

TEST(AlphaComm, CommutingOperatorsGiveZero) {
  const auto A = PauliSumOp::from_terms(3, {{1.0, "ZZI"}, {0.5, "IZZ"}});
  const auto B = PauliSumOp::from_terms(3, {{0.3, "ZIZ"}, {2.0, "IZI"}});
  EXPECT_DOUBLE_EQ(alpha_comm(1, {A}, B), 0.0);
  EXPECT_DOUBLE_EQ(alpha_comm(3, {A, B}, B), 0.0);
}

TEST(AlphaComm, Homogeneity) {
  Rng rng(4, Stream::Testing);
  const auto A = random_op(rng, 3, 4), B = random_op(rng, 3, 4);
  for (int p : {1, 2, 3}) {
    const double base = alpha_comm(p, {A}, B);
    EXPECT_NEAR(alpha_comm(p, {A * 2.0}, B * 2.0), std::pow(2.0, p + 1) * base, 1e-9 * std::max(1.0, base));
  }
}

TEST(AlphaP, SecondOrderClosedForm) {
  const PauliSumOp F1 = kS2Fragments[0] * 2.0, F2 = kS2Fragments[1] * 2.0;
  const auto pf = ProductFormula::second_order({F1, F2, F1});
  const double closed = dense::spectral_norm(ad(dense::op(F2), ad(dense::op(F2), dense::op(F1)))) +
                        3 * dense::spectral_norm(ad(dense::op(F1), ad(dense::op(F1), dense::op(F2))));
  EXPECT_NEAR(alpha_p(pf), closed, 1e-9);
}

TEST(AlphaP, SingleExponentIsZero) {
  EXPECT_DOUBLE_EQ(alpha_p(std::vector<PauliSumOp>{kS2Fragments[0]}, 2), 0.0);
}

TEST(AlphaP, HadamardInvariance) {
  const auto pf = ProductFormula::second_order(kS2Fragments);
  std::vector<PauliSumOp> rotated;
  for (const auto& e : pf.exponents()) rotated.push_back(hadamard_all(e));
  EXPECT_NEAR(alpha_p(rotated, 2), alpha_p(pf), 1e-9 * alpha_p(pf));
}

TEST(AlphaP, HeisenbergRegression) {
  EXPECT_NEAR(alpha_p(ProductFormula::second_order(kS2Fragments)), 126.94367630756348, 1e-8);
}

TEST(BetaComm, ZeroTimeReducesToAlpha) {
  Rng rng(5, Stream::Testing);
  const auto A = random_op(rng, 3, 4), B = random_op(rng, 3, 4);
  const auto v = beta_comm(2, 0, {A}, B, 0.0, {});
  EXPECT_NEAR(v.value, alpha_comm(2, {A}, B), 1e-12);
  EXPECT_FALSE(v.sampled);
}

TEST(BetaComm, MonotoneInSampleSet) {
  Rng rng(6, Stream::Testing);
  const auto H = random_op(rng, 3, 4), A2 = random_op(rng, 3, 3), B = random_op(rng, 3, 3);
  const double zero = beta_comm(1, 1, {H, A2}, B, 0.0, {}).value;
  BetaSampler coarse{3, 0, 0}, fine{5, 0, 0}, rich{5, 32, 1};
  const auto c = beta_comm(1, 1, {H, A2}, B, 0.8, coarse);
  const auto f = beta_comm(1, 1, {H, A2}, B, 0.8, fine);
  const auto r = beta_comm(1, 1, {H, A2}, B, 0.8, rich);
  EXPECT_TRUE(c.sampled);
  EXPECT_GE(c.value, zero - 1e-10);
  EXPECT_GE(f.value, c.value - 1e-10);
  EXPECT_GE(r.value, f.value - 1e-10);
  EXPECT_EQ(r.samples, 5u + 32u);
  EXPECT_THROW(beta_comm(1, 1, {H, A2}, B, -1.0, coarse), InvalidArgument);
}

TEST(Bernoulli, Values) {
  EXPECT_EQ(bernoulli(0), (Rational{1, 1}));
  EXPECT_EQ(bernoulli(1), (Rational{-1, 2}));
  EXPECT_EQ(bernoulli(2), (Rational{1, 6}));
  EXPECT_EQ(bernoulli(4), (Rational{-1, 30}));
  EXPECT_EQ(bernoulli(12), (Rational{-691, 2730}));
  for (int l : {3, 5, 7, 15, 29}) EXPECT_EQ(bernoulli(l).num, 0);
  EXPECT_THROW(bernoulli(31), InvalidArgument);
  EXPECT_THROW(bernoulli(-1), InvalidArgument);
}

TEST(KjCalculus, CommutatorRule) {
  const auto out = kj_commutator({2, 1.5}, {2, 0.5});
  EXPECT_EQ(out.k, 3);
  EXPECT_DOUBLE_EQ(out.J, 8 * 1.5 * 0.5);
  const auto nested = kj_adjoint_power({2, 1.0}, {2, 1.0}, 2);
  EXPECT_EQ(nested.k, 4);
  EXPECT_DOUBLE_EQ(nested.J, 80.0);
  const auto via = kj_propagate({{2, 1.0}, {2, 1.0}}, KjOperation::AdjointPower, 2);
  EXPECT_EQ(via.k, nested.k);
  EXPECT_THROW(kj_propagate({{0, 1.0}, {2, 1.0}}, KjOperation::Commutator), InvalidArgument);
  EXPECT_THROW(kj_propagate({{2, 1.0}}, KjOperation::Commutator), InvalidArgument);
}

TEST(KjCalculus, CommutatorBoundHoldsOnChain) {
  const auto chain = build_heisenberg_chain(6, 2);
  const auto F3 = fragment_decomposition_S2(chain)[2];
  const auto pred = kj_commutator(locality_profile(chain.H), locality_profile(F3));
  const auto got = locality_profile(commutator_i(chain.H, F3));
  EXPECT_LE(got.k, pred.k);
  EXPECT_LE(got.J, pred.J + 1e-12);
  const auto comm = commutator_i(PauliSumOp::from_terms(2, {{1, "ZI"}}), PauliSumOp::from_terms(2, {{1, "ZZ"}}));
  EXPECT_TRUE(comm.empty());
}

TEST(KjCalculus, Conjugation) {
  const auto out = kj_conjugation({2, 1.0}, 2, 3);
  EXPECT_EQ(out.k, 16);
  EXPECT_DOUBLE_EQ(out.J, 8.0);
  EXPECT_THROW(kj_conjugation({2, 1.0}, 0, 1), InvalidArgument);
}

TEST(StepBound, FormulaAndScaling) {
  EXPECT_DOUBLE_EQ(lemma1_bound(6.0, 2, 1.0, 1), 2.0);
  EXPECT_NEAR(lemma1_bound(6.0, 2, 2.0, 1) / lemma1_bound(6.0, 2, 1.0, 1), 8.0, 1e-12);
  EXPECT_NEAR(lemma1_bound(6.0, 2, 1.0, 1) / lemma1_bound(6.0, 2, 1.0, 3), 9.0, 1e-12);
  EXPECT_THROW(lemma1_bound(6.0, 2, 1.0, 0), InvalidArgument);
}

TEST(StepBound, BoundsOperatorError) {
  const auto chain = build_heisenberg_chain(4, 1);
  const auto pf = ProductFormula::second_order(fragment_decomposition_S2(chain));
  const auto H = dense::op(chain.H);
  const Eigen::Index d = 16;
  for (double t : {0.2, 0.7, 1.5}) {
    for (int k : {1, 2, 5}) {
      dense::Mat S(d, d);
      for (Eigen::Index b = 0; b < d; ++b) S.col(b) = pf.rho_k_state(basis_state(4, b), t, k);
      const double err = dense::spectral_norm(S - dense::expi(H, t));
      EXPECT_LE(err, lemma1_bound(pf, t, k)) << t << " " << k;
    }
  }
}

TEST(MpfBound, RejectsWrongShape) {
  const auto s = make_heisenberg_setup(3, 1, 2);
  EXPECT_THROW(theorem1_bound(solve_coefficients(2, {7}), s.pf, 1.0), InvalidArgument);
  EXPECT_THROW(theorem1_bound(solve_coefficients(2, {4, 9, 13, 17}), s.pf, 1.0), InvalidArgument);
  EXPECT_THROW(theorem1_bound(solve_coefficients(2, {4, 13, 17}), s.pf, -1.0), InvalidArgument);
}

TEST(MpfBound, SoundAndMonotoneAtFourQubits) {
  const auto s = make_heisenberg_setup(4, 1, 2);
  const auto scheme = solve_coefficients(2, {4, 13, 17});
  BetaSampler sm;
  sm.random_draws = 8;
  const auto ts = make_grid(0.25, 2.0, 5, "linear");
  const auto rows = mpf_sweep(s, scheme, ts, 4, true, sm);
  const auto curve = theorem1_bound_curve(scheme, s.pf, ts, sm);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_GE(rows[i].theorem1_bound, rows[i].mpf_error);
    EXPECT_GE(curve[i].a1, 0);
    EXPECT_GE(curve[i].a2, 0);
    EXPECT_GE(curve[i].a3, 0);
    EXPECT_NEAR(curve[i].prefactor, theorem1_prefactor(scheme), 1e-15);
    if (i > 0) EXPECT_GE(curve[i].value, curve[i - 1].value);
  }
}
