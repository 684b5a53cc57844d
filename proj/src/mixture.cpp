#include "mpflab/mixture.hpp"

#include <cmath>

#include "mpflab/errors.hpp"

namespace mpflab {

Eigen::VectorXd low_rank_spectrum(const std::vector<Statevector>& basis, const Eigen::MatrixXcd& core) {
  const auto m = static_cast<Eigen::Index>(basis.size());
  if (m == 0 || core.rows() != m || core.cols() != m) throw InvalidArgument("low_rank_spectrum: shape mismatch");
  const Eigen::Index dim = basis.front().size();
  Eigen::MatrixXcd B(dim, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    if (basis[a].size() != dim) throw InvalidArgument("low_rank_spectrum: dimension mismatch");
    B.col(a) = basis[a];
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(B);
  const Eigen::Index k = std::min(dim, m);
  const Eigen::MatrixXcd R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  Eigen::MatrixXcd S = R * core * R.adjoint();
  S = 0.5 * (S + S.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double mixture_trace_norm(const std::vector<Statevector>& states, const std::vector<double>& w) {
  if (states.empty() || states.size() != w.size()) throw InvalidArgument("mixture_trace_norm: size mismatch");
  Eigen::MatrixXcd core = Eigen::MatrixXcd::Zero(w.size(), w.size());
  for (std::size_t i = 0; i < w.size(); ++i) core(i, i) = w[i];
  return low_rank_spectrum(states, core).cwiseAbs().sum();
}

double mixture_trace_norm_from_gram(const Eigen::MatrixXcd& gram, const std::vector<double>& w) {
  const auto r = static_cast<Eigen::Index>(w.size());
  if (r == 0 || gram.rows() != r || gram.cols() != r) throw InvalidArgument("gram: size mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (gram + gram.adjoint()));
  Eigen::VectorXd lam = es.eigenvalues();
  for (Eigen::Index i = 0; i < r; ++i) {
    if (lam[i] < -1e-10) throw NumericalDegeneracy("gram matrix is not positive semidefinite");
    lam[i] = std::sqrt(std::max(lam[i], 0.0));
  }
  const Eigen::MatrixXcd half = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
  Eigen::VectorXd d(r);
  for (Eigen::Index i = 0; i < r; ++i) d[i] = w[i];
  Eigen::MatrixXcd S = half * d.asDiagonal() * half;
  S = 0.5 * (S + S.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(S, Eigen::EigenvaluesOnly);
  return es2.eigenvalues().cwiseAbs().sum();
}

double mixture_frobenius_sq(const Eigen::MatrixXd& M, const Eigen::VectorXd& c, const Eigen::VectorXd& L) {
  if (M.rows() != c.size() || M.cols() != c.size() || L.size() != c.size())
    throw InvalidArgument("mixture_frobenius_sq: size mismatch");
  return 1.0 + c.dot(M * c) - 2.0 * L.dot(c);
}

MixtureError mpf_error(const Statevector& exact, const std::vector<Statevector>& states,
                       const std::vector<double>& c) {
  const std::size_t r = states.size();
  if (r == 0 || c.size() != r) throw InvalidArgument("mpf_error: size mismatch");
  // basis [psi, d_1..d_r], d_i = e^{i theta_i} phi_i - psi
  std::vector<Statevector> basis{exact};
  double csum = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    const cplx ov = overlap(exact, states[i]);
    const cplx ph = std::abs(ov) > 0 ? std::conj(ov) / std::abs(ov) : cplx(1.0);
    basis.push_back(ph * states[i] - exact);
    csum += c[i];
  }
  Eigen::MatrixXcd core = Eigen::MatrixXcd::Zero(r + 1, r + 1);
  core(0, 0) = csum - 1.0;
  for (std::size_t i = 0; i < r; ++i) {
    core(0, i + 1) = core(i + 1, 0) = c[i];
    core(i + 1, i + 1) = c[i];
  }
  const Eigen::VectorXd lam = low_rank_spectrum(basis, core);
  return {lam.cwiseAbs().sum(), lam.norm()};
}

double mpf_trace_distance(const Statevector& exact, const std::vector<Statevector>& states,
                          const std::vector<double>& c) {
  return mpf_error(exact, states, c).trace;
}

double mpf_frobenius(const Statevector& exact, const std::vector<Statevector>& states,
                     const std::vector<double>& c) {
  return mpf_error(exact, states, c).frobenius;
}

}  // namespace mpflab
