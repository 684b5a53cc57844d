#include "mpflab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "mpflab/errors.hpp"

namespace mpflab {

namespace {

struct UnionFind {
  std::vector<std::uint64_t> parent;
  explicit UnionFind(std::uint64_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0ULL); }
  std::uint64_t find(std::uint64_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::uint64_t a, std::uint64_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<std::vector<std::uint64_t>> coupled_blocks(const PauliSumOp& op) {
  const int n = op.num_qubits();
  if (n > 20) throw ResourceLimit("coupled_blocks: too many qubits");
  const std::uint64_t dim = 1ULL << n;
  // Group terms by x mask; an edge b -- b^x exists if the summed element is nonzero.
  std::map<std::uint64_t, std::vector<const PauliSumOp::Term*>> byx;
  for (const auto& t : op.terms())
    if (t.first.x() != 0) byx[t.first.x()].push_back(&t);
  UnionFind uf(dim);
  for (const auto& [x, ts] : byx)
    for (std::uint64_t b = 0; b < dim; ++b) {
      const std::uint64_t b2 = b ^ x;
      if (b2 < b) continue;
      cplx v = 0;
      for (const auto* t : ts) v += t->second * t->first.phase_on(b);
      if (std::abs(v) > 1e-14) uf.unite(b, b2);
    }
  std::map<std::uint64_t, std::vector<std::uint64_t>> comp;
  for (std::uint64_t b = 0; b < dim; ++b) comp[uf.find(b)].push_back(b);
  std::vector<std::vector<std::uint64_t>> out;
  for (auto& [r, v] : comp) out.push_back(std::move(v));
  return out;
}

Eigen::MatrixXcd dense_block(const PauliSumOp& op, const std::vector<std::uint64_t>& idx) {
  std::map<std::uint64_t, Eigen::Index> pos;
  for (std::size_t i = 0; i < idx.size(); ++i) pos[idx[i]] = static_cast<Eigen::Index>(i);
  const auto m = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m, m);
  for (const auto& [p, c] : op.terms())
    for (Eigen::Index col = 0; col < m; ++col) {
      const std::uint64_t b = idx[col];
      auto it = pos.find(b ^ p.x());
      if (it != pos.end()) h(it->second, col) += c * p.phase_on(b);
    }
  return h;
}

double hermitian_norm(const PauliSumOp& op) {
  if (op.empty()) return 0.0;
  double best = 0.0;
  for (const auto& idx : coupled_blocks(op)) {
    if (idx.size() > 4096) throw ResourceLimit("hermitian_norm: block larger than 4096");
    if (idx.size() == 1) {
      best = std::max(best, std::abs(dense_block(op, idx)(0, 0).real()));
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_block(op, idx), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalDegeneracy("hermitian_norm: eigensolver failed");
    best = std::max({best, std::abs(es.eigenvalues()[0]), std::abs(es.eigenvalues()[es.eigenvalues().size() - 1])});
  }
  return best;
}

SpectralOracle::SpectralOracle(const PauliSumOp& H) : n_(H.num_qubits()) {
  if (n_ < 1) throw InvalidArgument("spectral oracle needs at least one qubit");
  if (n_ > kMaxQubits) throw ResourceLimit("spectral oracle limited to 12 qubits");
  double max_err = 0.0;
  for (auto& idx : coupled_blocks(H)) {
    Block blk;
    const Eigen::MatrixXcd h = dense_block(H, idx);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) throw NumericalDegeneracy("spectral oracle: eigensolver failed");
    blk.evals = es.eigenvalues();
    blk.evecs = es.eigenvectors();
    blk.idx = std::move(idx);
    norm_ = std::max({norm_, std::abs(blk.evals[0]), std::abs(blk.evals[blk.evals.size() - 1])});
    const Eigen::MatrixXcd rec = blk.evecs * blk.evals.asDiagonal() * blk.evecs.adjoint();
    max_err = std::max(max_err, (rec - h).cwiseAbs().maxCoeff());
    blocks_.push_back(std::move(blk));
  }
  recon_err_ = max_err;
  if (max_err > 1e-9 * std::max(norm_, 1.0))
    throw NumericalDegeneracy("spectral oracle: reconstruction check failed");
}

std::size_t SpectralOracle::largest_block() const {
  std::size_t m = 0;
  for (const auto& b : blocks_) m = std::max(m, b.idx.size());
  return m;
}

Statevector SpectralOracle::evolve(const Statevector& psi, double t) const {
  if (psi.size() != (Eigen::Index(1) << n_)) throw InvalidArgument("exact_evolve: dimension mismatch");
  if (t == 0.0) return psi;
  Statevector out(psi.size());
  for (const auto& b : blocks_) {
    const auto m = static_cast<Eigen::Index>(b.idx.size());
    Eigen::VectorXcd v(m);
    for (Eigen::Index i = 0; i < m; ++i) v[i] = psi[b.idx[i]];
    Eigen::VectorXcd w = b.evecs.adjoint() * v;
    for (Eigen::Index i = 0; i < m; ++i) w[i] *= std::polar(1.0, -t * b.evals[i]);
    v = b.evecs * w;
    for (Eigen::Index i = 0; i < m; ++i) out[b.idx[i]] = v[i];
  }
  return out;
}

Statevector exact_evolve(const SpectralOracle& oracle, const Statevector& psi, double t) {
  return oracle.evolve(psi, t);
}

}  // namespace mpflab
