#include "mpflab/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "mpflab/errors.hpp"

namespace mpflab {

namespace {

const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

std::uint64_t mask_for(int n) { return n >= 64 ? ~0ULL : ((1ULL << n) - 1); }

std::vector<PauliSumOp::Term> normalize(std::vector<PauliSumOp::Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<PauliSumOp::Term> out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(t);
  }
  std::erase_if(out, [](const auto& t) { return t.second == 0.0; });
  return out;
}

}  // namespace

PauliString::PauliString(int n, std::uint64_t x, std::uint64_t z) : n_(n), x_(x), z_(z) {
  if (n < 0 || n > 64) throw InvalidArgument("pauli string: qubit count must be in [0,64]");
  if (((x | z) & ~mask_for(n)) != 0) throw InvalidArgument("pauli string: index >= n");
}

PauliString PauliString::from_word(const std::string& word) {
  const int n = static_cast<int>(word.size());
  if (n > 64) throw InvalidArgument("pauli word longer than 64 qubits");
  std::uint64_t x = 0, z = 0;
  for (int j = 0; j < n; ++j) {
    const std::uint64_t bit = 1ULL << j;
    switch (word[j]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default: throw InvalidArgument(std::string("bad pauli symbol '") + word[j] + "'");
    }
  }
  return PauliString(n, x, z);
}

PauliString PauliString::single(int n, int qubit, char symbol) {
  if (qubit < 0 || qubit >= n) throw InvalidArgument("pauli string: qubit out of range");
  std::string w(n, 'I');
  w[qubit] = symbol;
  return from_word(w);
}

char PauliString::symbol(int q) const {
  const bool xb = (x_ >> q) & 1, zb = (z_ >> q) & 1;
  return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
}

std::string PauliString::word() const {
  std::string w(n_, 'I');
  for (int j = 0; j < n_; ++j) w[j] = symbol(j);
  return w;
}

std::vector<int> PauliString::support() const {
  std::vector<int> s;
  for (int j = 0; j < n_; ++j)
    if (((x_ | z_) >> j) & 1) s.push_back(j);
  return s;
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

bool PauliString::commutes_with(const PauliString& o) const {
  return ((std::popcount(x_ & o.z_) + std::popcount(z_ & o.x_)) & 1) == 0;
}

std::pair<int, PauliString> PauliString::multiply(const PauliString& o) const {
  if (n_ != o.n_) throw InvalidArgument("pauli multiply: qubit count mismatch");
  const std::uint64_t x3 = x_ ^ o.x_, z3 = z_ ^ o.z_;
  int e = std::popcount(x_ & z_) + std::popcount(o.x_ & o.z_) - std::popcount(x3 & z3) +
          2 * std::popcount(z_ & o.x_);
  e = ((e % 4) + 4) % 4;
  return {e, PauliString(n_, x3, z3)};
}

cplx PauliString::phase_on(std::uint64_t b) const {
  int e = std::popcount(x_ & z_) + 2 * std::popcount(z_ & b);
  return kIPow[e & 3];
}

PauliSumOp::PauliSumOp(int n, std::vector<Term> terms) : n_(n) {
  for (const auto& t : terms) {
    if (t.first.num_qubits() != n) throw InvalidArgument("pauli sum: term qubit count mismatch");
    if (!std::isfinite(t.second)) throw InvalidArgument("pauli sum: non-finite coefficient");
  }
  terms_ = normalize(std::move(terms));
}

PauliSumOp PauliSumOp::from_terms(int n, const std::vector<std::pair<double, std::string>>& terms) {
  std::vector<Term> t;
  for (const auto& [c, w] : terms) {
    if (static_cast<int>(w.size()) != n) throw InvalidArgument("pauli word length != n");
    t.emplace_back(PauliString::from_word(w), c);
  }
  return PauliSumOp(n, std::move(t));
}

double PauliSumOp::coefficient(const PauliString& p) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), p,
                             [](const Term& t, const PauliString& q) { return t.first < q; });
  return (it != terms_.end() && it->first == p) ? it->second : 0.0;
}

double PauliSumOp::one_norm() const {
  double s = 0;
  for (const auto& t : terms_) s += std::abs(t.second);
  return s;
}

PauliSumOp PauliSumOp::operator+(const PauliSumOp& o) const {
  if (n_ != o.n_) throw InvalidArgument("pauli sum: qubit count mismatch");
  std::vector<Term> t = terms_;
  t.insert(t.end(), o.terms_.begin(), o.terms_.end());
  return PauliSumOp(n_, std::move(t));
}

PauliSumOp PauliSumOp::operator-(const PauliSumOp& o) const { return *this + o * -1.0; }

PauliSumOp PauliSumOp::operator*(double s) const {
  std::vector<Term> t = terms_;
  for (auto& x : t) x.second *= s;
  return PauliSumOp(n_, std::move(t));
}

bool PauliSumOp::approx_equal(const PauliSumOp& o, double tol) const {
  if (n_ != o.n_) return false;
  const PauliSumOp d = *this - o;
  for (const auto& t : d.terms_)
    if (std::abs(t.second) > tol) return false;
  return true;
}

bool PauliSumOp::pairwise_commuting() const {
  for (std::size_t a = 0; a < terms_.size(); ++a)
    for (std::size_t b = a + 1; b < terms_.size(); ++b)
      if (!terms_[a].first.commutes_with(terms_[b].first)) return false;
  return true;
}

Eigen::MatrixXcd PauliSumOp::to_dense() const {
  if (n_ > 14) throw ResourceLimit("dense materialization limited to 14 qubits");
  const std::uint64_t dim = 1ULL << n_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [p, c] : terms_)
    for (std::uint64_t b = 0; b < dim; ++b) m(b ^ p.x(), b) += c * p.phase_on(b);
  return m;
}

Eigen::VectorXcd PauliSumOp::apply(const Eigen::VectorXcd& v) const {
  const std::uint64_t dim = 1ULL << n_;
  if (static_cast<std::uint64_t>(v.size()) != dim) throw InvalidArgument("apply: dimension mismatch");
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(dim);
  for (const auto& [p, c] : terms_)
    for (std::uint64_t b = 0; b < dim; ++b) y[b ^ p.x()] += c * p.phase_on(b) * v[b];
  return y;
}

PauliSumOp PauliSumOp::from_dense(const Eigen::MatrixXcd& m, double drop) {
  const auto dim = static_cast<std::uint64_t>(m.rows());
  if (m.cols() != m.rows() || dim == 0 || (dim & (dim - 1)) != 0)
    throw InvalidArgument("from_dense: matrix must be 2^n square");
  const int n = std::countr_zero(dim);
  std::vector<Term> terms;
  for (std::uint64_t x = 0; x < dim; ++x)
    for (std::uint64_t z = 0; z < dim; ++z) {
      PauliString p(n, x, z);
      cplx tr = 0;
      // Tr(P^dagger M) = sum_b conj(phase_on(b)) M(b^x, b)
      for (std::uint64_t b = 0; b < dim; ++b) tr += std::conj(p.phase_on(b)) * m(b ^ x, b);
      tr /= static_cast<double>(dim);
      if (std::abs(tr.imag()) > 1e-10)
        throw InvalidArgument("from_dense: matrix is not Hermitian");
      if (std::abs(tr.real()) > drop) terms.emplace_back(p, tr.real());
    }
  return PauliSumOp(n, std::move(terms));
}

PauliSumOp commutator_i(const PauliSumOp& a, const PauliSumOp& b) {
  if (a.num_qubits() != b.num_qubits()) throw InvalidArgument("commutator: qubit count mismatch");
  std::map<PauliString, double> acc;
  for (const auto& [pa, ca] : a.terms())
    for (const auto& [pb, cb] : b.terms()) {
      if (pa.commutes_with(pb)) continue;
      // [Pa,Pb] = 2 Pa Pb = 2 i^e P, e odd; so C = 2 i^{e-1} P
      auto [e, p] = pa.multiply(pb);
      const double sign = ((e - 1) & 3) == 0 ? 1.0 : -1.0;
      acc[p] += 2.0 * sign * ca * cb;
    }
  std::vector<PauliSumOp::Term> terms(acc.begin(), acc.end());
  std::erase_if(terms, [](const auto& t) { return std::abs(t.second) < 1e-15; });
  return PauliSumOp(a.num_qubits(), std::move(terms));
}

LocalityProfile locality_profile(const PauliSumOp& op) {
  LocalityProfile lp{1, 0.0};
  std::vector<double> per(op.num_qubits(), 0.0);
  for (const auto& [p, c] : op.terms()) {
    if (p.is_identity()) continue;
    lp.k = std::max(lp.k, p.weight());
    for (int q : p.support()) per[q] += std::abs(c);
  }
  for (double v : per) lp.J = std::max(lp.J, v);
  return lp;
}

PauliSumOp read_pauli_sum(std::istream& in) {
  std::vector<std::pair<double, std::string>> terms;
  int n = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    double c;
    std::string w;
    if (!(ls >> c)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw InvalidArgument("hamiltonian line " + std::to_string(lineno) + ": expected coefficient");
    }
    if (!(ls >> w)) throw InvalidArgument("hamiltonian line " + std::to_string(lineno) + ": expected pauli word");
    std::string rest;
    if (ls >> rest) throw InvalidArgument("hamiltonian line " + std::to_string(lineno) + ": trailing tokens");
    if (n < 0) n = static_cast<int>(w.size());
    if (static_cast<int>(w.size()) != n)
      throw InvalidArgument("hamiltonian line " + std::to_string(lineno) + ": inconsistent word length");
    terms.emplace_back(c, w);
  }
  if (n < 0) throw InvalidArgument("hamiltonian: no terms");
  return PauliSumOp::from_terms(n, terms);
}

PauliSumOp load_pauli_sum(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot open hamiltonian file " + path);
  return read_pauli_sum(f);
}

void write_pauli_sum(std::ostream& out, const PauliSumOp& op) {
  out << std::setprecision(17);
  for (const auto& [p, c] : op.terms()) out << c << ' ' << p.word() << '\n';
}

}  // namespace mpflab
