#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace mpflab {

using cplx = std::complex<double>;

// Pauli string on up to 64 qubits as (x, z) bit masks. Qubit j is bit j.
// Operator convention: P = i^{|x & z|} X^x Z^z, so x=z=1 on a site is Y.
class PauliString {
 public:
  PauliString() = default;
  PauliString(int n, std::uint64_t x, std::uint64_t z);
  // word[j] is the symbol on qubit j, e.g. "XXII" = X_0 X_1.
  static PauliString from_word(const std::string& word);
  static PauliString single(int n, int qubit, char symbol);

  int num_qubits() const { return n_; }
  std::uint64_t x() const { return x_; }
  std::uint64_t z() const { return z_; }
  char symbol(int qubit) const;
  std::string word() const;
  std::vector<int> support() const;
  int weight() const;
  bool is_identity() const { return (x_ | z_) == 0; }
  bool is_diagonal() const { return x_ == 0; }
  bool commutes_with(const PauliString& o) const;

  // this * o = i^phase * result
  std::pair<int, PauliString> multiply(const PauliString& o) const;
  // P|b> = phase_on(b) |b ^ x>
  cplx phase_on(std::uint64_t b) const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    if (a.x_ != b.x_) return a.x_ <=> b.x_;
    return a.z_ <=> b.z_;
  }

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

struct LocalityProfile {
  int k = 1;
  double J = 0.0;
};

// Real linear combination of Pauli strings; terms sorted, merged, zeros
// dropped. Immutable once built.
class PauliSumOp {
 public:
  using Term = std::pair<PauliString, double>;

  PauliSumOp() = default;
  explicit PauliSumOp(int n) : n_(n) {}
  PauliSumOp(int n, std::vector<Term> terms);
  static PauliSumOp from_terms(int n, const std::vector<std::pair<double, std::string>>& terms);

  int num_qubits() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  double coefficient(const PauliString& p) const;
  double one_norm() const;  // sum |coeff|

  PauliSumOp operator+(const PauliSumOp& o) const;
  PauliSumOp operator-(const PauliSumOp& o) const;
  PauliSumOp operator*(double s) const;
  friend PauliSumOp operator*(double s, const PauliSumOp& a) { return a * s; }
  bool approx_equal(const PauliSumOp& o, double tol = 0.0) const;
  friend bool operator==(const PauliSumOp& a, const PauliSumOp& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  bool pairwise_commuting() const;
  Eigen::MatrixXcd to_dense() const;
  // y = Op * v without materializing the matrix.
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  // Coefficients from trace inner products; imaginary parts must vanish.
  static PauliSumOp from_dense(const Eigen::MatrixXcd& m, double drop = 1e-14);

 private:
  int n_ = 0;
  std::vector<Term> terms_;
};

// Real C with [A, B] = i C (A, B Hermitian).
PauliSumOp commutator_i(const PauliSumOp& a, const PauliSumOp& b);

LocalityProfile locality_profile(const PauliSumOp& op);

// Text format: one "coeff WORD" per line, '#' starts a comment.
PauliSumOp read_pauli_sum(std::istream& in);
PauliSumOp load_pauli_sum(const std::string& path);
void write_pauli_sum(std::ostream& out, const PauliSumOp& op);

}  // namespace mpflab
