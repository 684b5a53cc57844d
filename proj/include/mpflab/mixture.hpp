#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mpflab/statevector.hpp"

namespace mpflab {

// Eigenvalues of X = sum_ab C_ab |v_a><v_b| (C Hermitian) via Householder QR
// of the basis: nonzero spectrum of X equals that of R C R^dagger.
Eigen::VectorXd low_rank_spectrum(const std::vector<Statevector>& basis, const Eigen::MatrixXcd& core);

// || sum_i w_i |phi_i><phi_i| ||_1
double mixture_trace_norm(const std::vector<Statevector>& states, const std::vector<double>& w);

// Same from the Gram matrix G_ij = <phi_i|phi_j> via G^{1/2} D G^{1/2};
// eigenvalues of G below -1e-10 raise NumericalDegeneracy, the rest are clamped.
double mixture_trace_norm_from_gram(const Eigen::MatrixXcd& gram, const std::vector<double>& w);

// 1 + c^T M c - 2 L^T c
double mixture_frobenius_sq(const Eigen::MatrixXd& M, const Eigen::VectorXd& c, const Eigen::VectorXd& L);

// Norms of sum_i c_i |phi_i><phi_i| - |psi><psi|, evaluated on the differences
// phi_i - psi (after phase alignment) so that small errors keep full relative
// precision.
struct MixtureError {
  double trace = 0.0;
  double frobenius = 0.0;
};
MixtureError mpf_error(const Statevector& exact, const std::vector<Statevector>& states,
                       const std::vector<double>& c);
double mpf_trace_distance(const Statevector& exact, const std::vector<Statevector>& states,
                          const std::vector<double>& c);
double mpf_frobenius(const Statevector& exact, const std::vector<Statevector>& states,
                     const std::vector<double>& c);

}  // namespace mpflab
