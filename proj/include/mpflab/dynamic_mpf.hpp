#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "mpflab/product_formula.hpp"
#include "mpflab/spectral.hpp"
#include "mpflab/statevector.hpp"

namespace mpflab {

// psi_{k_i}(t) = S(t/k_i)^{k_i} psi for every step count.
std::vector<Statevector> trotter_states(const ProductFormula& pf, const Statevector& psi, double t,
                                        const std::vector<int>& steps);

// M_ij = |<a_i|a_j>|^2
Eigen::MatrixXd gram_matrix(const std::vector<Statevector>& states);
Eigen::MatrixXd gram_matrix(const ProductFormula& pf, const Statevector& psi, double t, const std::vector<int>& steps);

// Q_is = |<propagated_s | current_i>|^2 where propagated_s = S(dt/k0)^{k0} psi_{k_s}(t_j)
// and current_i = psi_{k_i}(t_j + dt).
Eigen::MatrixXd q_matrix(const std::vector<Statevector>& propagated, const std::vector<Statevector>& current);
Eigen::MatrixXd q_matrix(const ProductFormula& pf, const Statevector& psi, double t_j, double dt, int k0,
                         const std::vector<int>& steps);

// L_i = |<exact|a_i>|^2
Eigen::VectorXd l_exact(const Statevector& exact, const std::vector<Statevector>& states);
Eigen::VectorXd l_exact(const ProductFormula& pf, const SpectralOracle& oracle, const Statevector& psi, double t,
                        const std::vector<int>& steps);

struct Projection {
  Eigen::VectorXd c;
  double frobenius_sq = 0.0;  // 1 + c^T M c - 2 L^T c
  bool regularized = false;
};
// argmin c^T M c - 2 L^T c subject to 1^T c = 1
Projection dynamic_project(const Eigen::MatrixXd& M, const Eigen::VectorXd& L);

struct NoisyOverlaps {
  Eigen::MatrixXd M;  // M-bar
  Eigen::MatrixXd A;  // A-bar
  double m_deviation = 0.0;  // ||M-bar - M||_2 after clamping
  double a_deviation = 0.0;
};
// Gaussian perturbations rescaled to spectral norm eps, then entries clamped
// to >= 0; M-bar re-symmetrized with unit diagonal. Draws depend on (seed, index).
NoisyOverlaps inject_noise(const Eigen::MatrixXd& M, const Eigen::MatrixXd& Q, double eps, std::uint64_t seed,
                           std::uint64_t index = 0);

struct MinimaxStep {
  Eigen::VectorXd x;
  double objective = 0.0;  // ||M x - b|| + eps ||x||
  double gap = 0.0;        // certified objective gap
  int iterations = 0;
};
// argmin_{1^T x = 1} ||M x - A c_prev||_2 + eps ||x||_2
MinimaxStep minimax_step(const Eigen::MatrixXd& Mbar, const Eigen::MatrixXd& Abar, const Eigen::VectorXd& c_prev,
                         double eps);
double minimax_objective(const Eigen::MatrixXd& Mbar, const Eigen::VectorXd& b, const Eigen::VectorXd& x, double eps);

struct MinimaxConfig {
  std::vector<int> steps;
  double t0 = 1.0;
  double dt = 0.05;
  double T = 4.5;
  double eps = 0.01;
  int k0 = 26;
  std::uint64_t seed = 1;
  std::optional<Eigen::VectorXd> c0;  // default: exact dynamic solution at t0
  int threads = 1;
};

struct MinimaxRun {
  std::vector<double> t;
  std::vector<Eigen::VectorXd> c;        // estimate, c[0] = initialization
  std::vector<Eigen::VectorXd> c_exact;  // dynamic projection with exact M, L
  std::vector<Eigen::MatrixXd> M, Mbar;  // per grid point
  std::vector<Eigen::MatrixXd> Q, Abar;  // index j: transition t_{j-1} -> t_j (empty at j = 0)
  std::vector<Eigen::VectorXd> L;
  std::vector<double> err_exactdata;  // Frobenius error of c_exact
  std::vector<double> err_estimate;   // Frobenius error of c
  std::vector<double> l1_condition;   // ||c||_1
  std::vector<double> objective;
  std::vector<double> gap;
  std::vector<double> m_deviation;
  std::vector<std::vector<Statevector>> states;  // only kept when requested
};

std::vector<double> time_grid(double t0, double dt, double T);

MinimaxRun minimax_run(const ProductFormula& pf, const SpectralOracle& oracle, const Statevector& psi,
                       const MinimaxConfig& cfg, bool keep_states = false);

// Same recursion with each step replaced by the equality-constrained least
// squares projection on the surrogate data (the eps = 0 reference).
std::vector<Eigen::VectorXd> dynamic_recursion(const MinimaxRun& run);

struct Theorem2Inputs {
  std::vector<Eigen::MatrixXd> Mbar;        // s = 0..J
  std::vector<Eigen::MatrixXd> Abar;        // s = 0..J, Abar[s] maps c(t_{s-1}) to t_s; Abar[0] unused
  std::vector<Eigen::VectorXd> c_hat;       // s = 0..J
  Eigen::VectorXd c_exact0;                 // exact coefficients at t_0
  std::vector<double> c_exact_norms;        // ||c_exact(t_s)||_2 (or ceilings), s = 0..J
  std::vector<double> gamma;                // gamma(t_s), s = 0..J
  double eps = 0.0;
};

struct Theorem2Step {
  Eigen::MatrixXd P;
  double alpha = 0.0;
  Eigen::VectorXd r;
  double beta_hat = 0.0;
  Eigen::VectorXd bound;  // per component 2 beta^{1/2} <P^+ e_i, e_i>^{1/2}
  double bound_max = 0.0;
};

// Bounds for horizons j = 1..J (entry j-1 of the result).
std::vector<Theorem2Step> theorem2_bound(const Theorem2Inputs& in);

Eigen::MatrixXd pseudo_inverse_sym(const Eigen::MatrixXd& P, double rel_cutoff = 1e-12);

// gamma(t) = prefactor (a1 t^{2p+2} + a2 t^{2p+1} + a3 t^{2p}) + 2 alpha_p dt^{p+1} / ((p+1)! k0^p)
double gamma_term(double theorem1_value, double alpha_p, int p, double dt, int k0);

}  // namespace mpflab
