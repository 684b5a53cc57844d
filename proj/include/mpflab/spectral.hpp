#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mpflab/pauli.hpp"
#include "mpflab/statevector.hpp"

namespace mpflab {

// Connected components of the basis-state graph with edges on nonzero
// matrix elements of op. For spin chains these are magnetization sectors.
std::vector<std::vector<std::uint64_t>> coupled_blocks(const PauliSumOp& op);

Eigen::MatrixXcd dense_block(const PauliSumOp& op, const std::vector<std::uint64_t>& idx);

// Largest |eigenvalue| of a Hermitian Pauli sum, block by block.
double hermitian_norm(const PauliSumOp& op);

class SpectralOracle {
 public:
  static constexpr int kMaxQubits = 12;

  explicit SpectralOracle(const PauliSumOp& H);

  int num_qubits() const { return n_; }
  double norm() const { return norm_; }
  std::size_t num_blocks() const { return blocks_.size(); }
  std::size_t largest_block() const;
  double reconstruction_error() const { return recon_err_; }

  Statevector evolve(const Statevector& psi, double t) const;

 private:
  struct Block {
    std::vector<std::uint64_t> idx;
    Eigen::VectorXd evals;
    Eigen::MatrixXcd evecs;
  };
  int n_;
  double norm_ = 0.0;
  double recon_err_ = 0.0;
  std::vector<Block> blocks_;
};

Statevector exact_evolve(const SpectralOracle& oracle, const Statevector& psi, double t);

}  // namespace mpflab
