#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mpflab/dynamic_mpf.hpp"
#include "mpflab/errors.hpp"
#include "mpflab/hamiltonian.hpp"
#include "mpflab/mixture.hpp"
#include "mpflab/product_formula.hpp"
#include "mpflab/rng.hpp"
#include "mpflab/spectral.hpp"
#include "mpflab/statevector.hpp"
#include "support/dense.hpp"

using namespace mpflab;
using cd = std::complex<double>;

TEST(Statevector, BasisAndNeel) {
  const auto b = basis_state(3, 5);
  EXPECT_EQ(b.size(), 8);
  EXPECT_EQ(b[5], cd(1, 0));
  // qubit j is 1 for even j: 0b0101 at n=4
  const auto neel = neel_state(4);
  EXPECT_EQ(neel[0b0101], cd(1, 0));
  EXPECT_DOUBLE_EQ(neel.norm(), 1.0);
  EXPECT_EQ(num_qubits_of(neel), 4);
  EXPECT_THROW(basis_state(2, 4), InvalidArgument);
}

TEST(Statevector, Overlap) {
  const auto a = random_state(4, 1), b = random_state(4, 2);
  EXPECT_NEAR(std::abs(overlap(a, a) - 1.0), 0.0, 1e-14);
  EXPECT_EQ(overlap(basis_state(2, 1), basis_state(2, 2)), cd(0, 0));
  EXPECT_NEAR(std::abs(overlap(a, b)), std::abs(overlap(b, a)), 1e-15);
  EXPECT_NEAR(std::abs(overlap(a, b) - std::conj(overlap(b, a))), 0.0, 1e-15);
  EXPECT_THROW(overlap(a, random_state(3, 1)), InvalidArgument);
}

TEST(FragmentExp, DiagonalGlobalPhase) {
  const auto F = PauliSumOp::from_terms(3, {{1.0, "ZII"}});
  const auto out = apply_fragment_exp(basis_state(3, 0), F, std::numbers::pi);
  EXPECT_NEAR(std::abs(out[0] - std::exp(cd(0, -std::numbers::pi))), 0.0, 1e-14);
  EXPECT_NEAR(out.norm(), 1.0, 1e-14);
}

TEST(FragmentExp, XRotationHalfPi) {
  const auto F = PauliSumOp::from_terms(1, {{1.0, "X"}});
  const auto out = apply_fragment_exp(basis_state(1, 0), F, std::numbers::pi / 2);
  EXPECT_NEAR(std::abs(out[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out[1] - cd(0, -1)), 0.0, 1e-15);
}

TEST(FragmentExp, MatchesDenseExponential) {
  const auto chain = build_heisenberg_chain(5, 4);
  const auto frags = fragment_decomposition_S2(chain);
  const auto psi = random_state(5, 3);
  for (const auto& F : frags) {
    for (double t : {0.1, 0.7, 2.3}) {
      const auto got = apply_fragment_exp(psi, F, t);
      const Statevector want = dense::expi(dense::op(F), t) * psi;
      EXPECT_LT((got - want).norm(), 1e-12);
      EXPECT_NEAR(got.norm(), 1.0, 1e-12);
    }
  }
}

TEST(FragmentExp, MixedCommutingTerms) {
  // commuting set with diagonal, X-type and Y-type strings
  const auto F = PauliSumOp::from_terms(3, {{0.3, "ZZI"}, {-0.8, "XXI"}, {0.5, "YYI"}, {0.2, "IIZ"}, {1.1, "XXZ"}});
  ASSERT_TRUE(F.pairwise_commuting());
  const auto psi = random_state(3, 8);
  EXPECT_LT((apply_fragment_exp(psi, F, 0.9) - dense::expi(dense::op(F), 0.9) * psi).norm(), 1e-12);
}

TEST(FragmentExp, RejectsNonCommutingFragment) {
  EXPECT_THROW(FragmentKernel(PauliSumOp::from_terms(2, {{1.0, "XI"}, {1.0, "ZI"}})), InvalidArgument);
}

TEST(SpectralOracle, EvolutionMatchesDense) {
  const auto chain = build_heisenberg_chain(4, 2);
  const SpectralOracle oracle(chain.H);
  EXPECT_LE(oracle.reconstruction_error(), 1e-9 * oracle.norm());
  const auto psi = random_state(4, 1);
  for (double t : {0.0, 0.3, 1.7}) {
    EXPECT_LT((exact_evolve(oracle, psi, t) - dense::expi(dense::op(chain.H), t) * psi).norm(), 1e-10);
  }
  EXPECT_EQ(exact_evolve(oracle, psi, 0.0), psi);
  EXPECT_THROW(oracle.evolve(random_state(3, 1), 0.1), InvalidArgument);
}

TEST(SpectralOracle, GroupPropertiesAndNorm) {
  const auto chain = build_heisenberg_chain(6, 3);
  const SpectralOracle oracle(chain.H);
  const auto psi = neel_state(6);
  const auto back = oracle.evolve(oracle.evolve(psi, 1.3), -1.3);
  EXPECT_LT((back - psi).norm(), 1e-9);
  const auto two = oracle.evolve(oracle.evolve(psi, 0.4), 0.9);
  EXPECT_LT((two - oracle.evolve(psi, 1.3)).norm(), 1e-9);
  // magnetization sectors 0..6
  EXPECT_EQ(oracle.num_blocks(), 7u);
  EXPECT_EQ(oracle.largest_block(), 20u);
  EXPECT_NEAR(oracle.norm(), dense::spectral_norm(dense::op(chain.H)), 1e-9);
}

TEST(SpectralOracle, QubitCap) {
  EXPECT_THROW(SpectralOracle(build_heisenberg_chain(13, 1).H), ResourceLimit);
}

TEST(SpectralOracle, FineTrotterCrossCheck) {
  const auto chain = build_heisenberg_chain(2, 1);
  const SpectralOracle oracle(chain.H);
  const auto pf = ProductFormula::suzuki(ProductFormula::second_order(fragment_decomposition_S2(chain)), 4);
  const auto psi = neel_state(2);
  const double t = 2.0;
  const double fid = std::norm(overlap(oracle.evolve(psi, t), pf.rho_k_state(psi, t, 10000)));
  EXPECT_GE(fid, 1.0 - 1e-8);
}

TEST(Mixture, TraceNormExamples) {
  const auto a = random_state(3, 4);
  EXPECT_NEAR(mixture_trace_norm({a}, {1.0}), 1.0, 1e-12);
  EXPECT_NEAR(mixture_trace_norm({basis_state(2, 0), basis_state(2, 3)}, {1.0, -1.0}), 2.0, 1e-12);
}

TEST(Mixture, TraceNormMatchesDense) {
  Rng rng(11, Stream::Testing);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<Statevector> st;
    std::vector<double> w;
    dense::Mat X = dense::Mat::Zero(Eigen::Index(1) << n, Eigen::Index(1) << n);
    for (int i = 0; i < 3; ++i) {
      st.push_back(random_state(n, 100 * trial + i));
      w.push_back(rng.uniform(-1.5, 1.5));
      X += w.back() * dense::proj(st.back());
    }
    const double want = dense::trace_norm(X);
    EXPECT_NEAR(mixture_trace_norm(st, w), want, 1e-10);
    dense::Mat G(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) G(i, j) = overlap(st[i], st[j]);
    EXPECT_NEAR(mixture_trace_norm_from_gram(G, w), want, 1e-10);
  }
}

TEST(Mixture, GramRouteRejectsIndefiniteGram) {
  dense::Mat G(2, 2);
  G << 1, 2, 2, 1;
  EXPECT_THROW(mixture_trace_norm_from_gram(G, {1.0, -1.0}), NumericalDegeneracy);
}

TEST(Mixture, FrobeniusExamples) {
  const Eigen::Matrix2d M = Eigen::Matrix2d::Ones();
  EXPECT_DOUBLE_EQ(mixture_frobenius_sq(M, Eigen::Vector2d::Zero(), Eigen::Vector2d::Ones()), 1.0);
  EXPECT_DOUBLE_EQ(mixture_frobenius_sq(M, Eigen::Vector2d(1, 0), Eigen::Vector2d::Ones()), 0.0);
}

TEST(Mixture, FrobeniusMatchesDense) {
  const std::vector<Statevector> st{random_state(4, 1), random_state(4, 2), random_state(4, 3)};
  const auto ex = random_state(4, 4);
  const Eigen::Vector3d c(0.4, -0.7, 1.3);
  dense::Mat X = -dense::proj(ex);
  for (int i = 0; i < 3; ++i) X += c[i] * dense::proj(st[i]);
  EXPECT_NEAR(mixture_frobenius_sq(gram_matrix(st), c, l_exact(ex, st)), X.squaredNorm(), 1e-10);
  const auto err = mpf_error(ex, st, {c[0], c[1], c[2]});
  EXPECT_NEAR(err.frobenius, X.norm(), 1e-10);
  EXPECT_NEAR(err.trace, dense::trace_norm(X), 1e-10);
}

TEST(Mixture, SmallErrorsKeepRelativePrecision) {
  // a state 1e-9 away from the target: trace distance 2 sin(theta) ~ 2e-9
  Statevector ex = basis_state(3, 0);
  Statevector near = ex;
  const double th = 1e-9;
  near[0] = std::cos(th);
  near[1] = std::sin(th);
  EXPECT_NEAR(mpf_trace_distance(ex, {near}, {1.0}) / (2 * std::sin(th)), 1.0, 1e-6);
}
