#include "mpflab/hamiltonian.hpp"

#include "mpflab/errors.hpp"
#include "mpflab/rng.hpp"

namespace mpflab {

PauliSumOp heisenberg_bond(int n, int j, double w) {
  std::vector<PauliSumOp::Term> t;
  for (char s : {'X', 'Y', 'Z'}) {
    std::string word(n, 'I');
    word[j] = word[j + 1] = s;
    t.emplace_back(PauliString::from_word(word), w);
  }
  return PauliSumOp(n, std::move(t));
}

namespace {

PauliSumOp fields_op(int n, const std::vector<double>& h, double w) {
  std::vector<PauliSumOp::Term> t;
  for (int j = 0; j < n; ++j) t.emplace_back(PauliString::single(n, j, 'Z'), w * h[j]);
  return PauliSumOp(n, std::move(t));
}

PauliSumOp bonds(int n, int parity, double w) {
  PauliSumOp op(n);
  for (int j = parity; j + 1 < n; j += 2) op = op + heisenberg_bond(n, j, w);
  return op;
}

}  // namespace

HeisenbergChain build_heisenberg_chain(int n, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("heisenberg chain needs n >= 2");
  if (n > 64) throw InvalidArgument("heisenberg chain limited to 64 qubits");
  Rng rng(seed, Stream::Fields);
  std::vector<double> h(n);
  for (auto& v : h) v = rng.uniform(-1.0, 1.0);
  return {bonds(n, 0, 1.0) + bonds(n, 1, 1.0) + fields_op(n, h, 1.0), h};
}

std::vector<PauliSumOp> fragment_decomposition_S2(const HeisenbergChain& chain) {
  const int n = chain.H.num_qubits();
  const PauliSumOp odd = bonds(n, 1, 0.5);
  const PauliSumOp f = fields_op(n, chain.fields, 0.5);
  return {odd, f, bonds(n, 0, 1.0), f, odd};
}

PauliSumOp sum_fragments(const std::vector<PauliSumOp>& frags) {
  if (frags.empty()) throw InvalidArgument("sum_fragments: empty list");
  PauliSumOp s(frags.front().num_qubits());
  for (const auto& f : frags) s = s + f;
  return s;
}

}  // namespace mpflab
