#include <gtest/gtest.h>

#include <sstream>

#include "mpflab/errors.hpp"
#include "mpflab/pauli.hpp"
#include "mpflab/rng.hpp"
#include "mpflab/statevector.hpp"
#include "support/dense.hpp"

using namespace mpflab;

namespace {

std::string random_word(Rng& rng, int n) {
  static const char sym[] = "IXYZ";
  std::string w;
  for (int j = 0; j < n; ++j) w += sym[rng.next() % 4];
  return w;
}

PauliSumOp random_op(Rng& rng, int n, int terms) {
  std::vector<std::pair<double, std::string>> t;
  for (int i = 0; i < terms; ++i) t.emplace_back(rng.uniform(-1, 1), random_word(rng, n));
  return PauliSumOp::from_terms(n, t);
}

}  // namespace

TEST(PauliString, WordRoundTrip) {
  const auto p = PauliString::from_word("XYZI");
  EXPECT_EQ(p.num_qubits(), 4);
  EXPECT_EQ(p.word(), "XYZI");
  EXPECT_EQ(p.symbol(0), 'X');
  EXPECT_EQ(p.symbol(1), 'Y');
  EXPECT_EQ(p.weight(), 3);
  EXPECT_EQ(p.support(), (std::vector<int>{0, 1, 2}));
  EXPECT_FALSE(p.is_diagonal());
  EXPECT_TRUE(PauliString::from_word("IZZI").is_diagonal());
  EXPECT_TRUE(PauliString::from_word("IIII").is_identity());
  EXPECT_THROW(PauliString::from_word("XQ"), InvalidArgument);
}

TEST(PauliString, DenseMatchesKroneckerConstruction) {
  Rng rng(1, Stream::Testing);
  for (int trial = 0; trial < 20; ++trial) {
    const std::string w = random_word(rng, 3);
    const auto op = PauliSumOp::from_terms(3, {{1.0, w}});
    EXPECT_LT((op.to_dense() - dense::word(w)).norm(), 1e-14) << w;
  }
}

TEST(PauliString, MultiplyMatchesDense) {
  Rng rng(2, Stream::Testing);
  for (int trial = 0; trial < 50; ++trial) {
    const std::string a = random_word(rng, 3), b = random_word(rng, 3);
    const auto [e, prod] = PauliString::from_word(a).multiply(PauliString::from_word(b));
    const std::complex<double> ph = std::pow(std::complex<double>(0, 1), e);
    EXPECT_LT((dense::word(a) * dense::word(b) - ph * dense::word(prod.word())).norm(), 1e-13) << a << " " << b;
  }
}

TEST(PauliString, CommutationMatchesDense) {
  Rng rng(3, Stream::Testing);
  for (int trial = 0; trial < 50; ++trial) {
    const std::string a = random_word(rng, 3), b = random_word(rng, 3);
    const auto A = dense::word(a), B = dense::word(b);
    EXPECT_EQ(PauliString::from_word(a).commutes_with(PauliString::from_word(b)), (A * B - B * A).norm() < 1e-12);
  }
}

TEST(PauliString, PhaseOnBasisState) {
  const auto p = PauliString::from_word("YZ");
  const auto D = dense::word("YZ");
  for (std::uint64_t b = 0; b < 4; ++b) {
    const auto target = b ^ p.x();
    EXPECT_LT(std::abs(D(target, b) - p.phase_on(b)), 1e-14);
  }
}

TEST(PauliSumOp, NormalizationMergesAndDrops) {
  const auto op = PauliSumOp::from_terms(2, {{1.0, "XX"}, {0.5, "ZI"}, {-1.0, "XX"}, {0.25, "ZI"}});
  EXPECT_EQ(op.size(), 1u);
  EXPECT_DOUBLE_EQ(op.coefficient(PauliString::from_word("ZI")), 0.75);
  EXPECT_DOUBLE_EQ(op.one_norm(), 0.75);
  EXPECT_TRUE((op - op).empty());
  EXPECT_TRUE((op * 2.0).approx_equal(op + op));
}

TEST(PauliSumOp, CommutatorMatchesDense) {
  Rng rng(4, Stream::Testing);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_op(rng, 3, 5), b = random_op(rng, 3, 5);
    const auto A = dense::op(a), B = dense::op(b);
    const auto C = dense::op(commutator_i(a, b));
    EXPECT_LT((A * B - B * A - std::complex<double>(0, 1) * C).norm(), 1e-12);
  }
}

TEST(PauliSumOp, ApplyMatchesDense) {
  Rng rng(5, Stream::Testing);
  const auto a = random_op(rng, 4, 8);
  const auto v = random_state(4, 9);
  EXPECT_LT((a.apply(v) - dense::op(a) * v).norm(), 1e-13);
}

TEST(PauliSumOp, FromDenseRoundTrip) {
  Rng rng(6, Stream::Testing);
  const auto a = random_op(rng, 3, 6);
  EXPECT_TRUE(PauliSumOp::from_dense(dense::op(a)).approx_equal(a, 1e-12));
}

TEST(PauliSumOp, PairwiseCommuting) {
  EXPECT_TRUE(PauliSumOp::from_terms(3, {{1, "XXI"}, {1, "YYI"}, {1, "ZZI"}}).pairwise_commuting());
  EXPECT_FALSE(PauliSumOp::from_terms(2, {{1, "XI"}, {1, "ZI"}}).pairwise_commuting());
}

TEST(PauliSumOp, LocalityProfileIgnoresIdentity) {
  const auto op = PauliSumOp::from_terms(4, {{2.0, "IIII"}, {0.5, "XXII"}, {-1.5, "IZZZ"}});
  const auto prof = locality_profile(op);
  EXPECT_EQ(prof.k, 3);
  EXPECT_DOUBLE_EQ(prof.J, 2.0);  // qubit 1: 0.5 + 1.5
}

TEST(PauliSumOp, TextFormatRoundTrip) {
  std::istringstream in("# comment\n0.5 XXI\n-1.25 IZZ  # trailing\n\n2 YIY\n");
  const auto op = read_pauli_sum(in);
  EXPECT_EQ(op.size(), 3u);
  std::ostringstream out;
  write_pauli_sum(out, op);
  std::istringstream again(out.str());
  EXPECT_EQ(read_pauli_sum(again), op);
  std::istringstream bad("0.5 XXI\n1.0 XX\n");
  EXPECT_THROW(read_pauli_sum(bad), InvalidArgument);
}
