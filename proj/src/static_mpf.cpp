#include "mpflab/static_mpf.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>

#include "mpflab/errors.hpp"

namespace mpflab {

namespace {

using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VecL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

void check_steps(const std::vector<int>& steps) {
  if (steps.empty()) throw InvalidArgument("mpf: empty step tuple");
  std::set<int> seen;
  for (int k : steps) {
    if (k <= 0) throw InvalidArgument("mpf: steps must be positive");
    if (!seen.insert(k).second) throw InvalidArgument("mpf: duplicate steps make the system singular");
  }
}

// Unknowns y_i = c_i / k_i^p. Row 0: sum k_i^p y_i = 1; row m >= 1:
// sum y_i x_i^{q_m - p} = 0 with x_i = 1/k_i.
std::vector<double> solve_scaled(int p, const std::vector<int>& steps, ExtrapolationRange range,
                                 double* condition) {
  const int r = static_cast<int>(steps.size());
  const auto qs = cancelled_powers(p, r, range);
  MatL A(r, r);
  VecL b = VecL::Zero(r);
  b[0] = 1;
  for (int i = 0; i < r; ++i) {
    const long double k = steps[i];
    A(0, i) = std::pow(k, static_cast<long double>(p));
    for (int m = 1; m < r; ++m) A(m, i) = std::pow(1.0L / k, static_cast<long double>(qs[m - 1] - p));
  }
  Eigen::FullPivLU<MatL> lu(A);
  lu.setThreshold(1e-40L);
  if (!lu.isInvertible()) throw InvalidArgument("mpf: extrapolation system is singular");
  const VecL y = lu.solve(b);
  if (condition) {
    Eigen::JacobiSVD<MatL> svd(A);
    const auto& sv = svd.singularValues();
    *condition = static_cast<double>(sv[0] / sv[sv.size() - 1]);
  }
  std::vector<double> c(r);
  for (int i = 0; i < r; ++i)
    c[i] = static_cast<double>(y[i] * std::pow(static_cast<long double>(steps[i]), static_cast<long double>(p)));
  return c;
}

}  // namespace

std::vector<int> cancelled_powers(int p, int r, ExtrapolationRange range) {
  std::vector<int> q;
  for (int m = 0; m < r - 1; ++m) q.push_back(range == ExtrapolationRange::Consecutive ? p + m : p + 2 * m);
  return q;
}

double scheme_objective(int p, const std::vector<int>& steps, const std::vector<double>& c) {
  double s = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) s += std::abs(c[i]) / std::pow(double(steps[i]), 2 * p);
  return s;
}

MpfScheme solve_coefficients(int p, const std::vector<int>& steps, ExtrapolationRange range) {
  if (p < 1) throw InvalidArgument("mpf: order must be >= 1");
  check_steps(steps);
  MpfScheme s;
  s.order = p;
  s.steps = steps;
  s.range = range;
  s.coefficients = solve_scaled(p, steps, range, &s.system_condition);
  for (double c : s.coefficients) s.kappa += std::abs(c);
  s.objective = scheme_objective(p, steps, s.coefficients);
  return s;
}

std::vector<double> extrapolation_residuals(const MpfScheme& s) {
  const int r = static_cast<int>(s.steps.size());
  std::vector<double> res;
  long double sum = 0;
  for (double c : s.coefficients) sum += c;
  res.push_back(static_cast<double>(sum - 1));
  for (int q : cancelled_powers(s.order, r, s.range)) {
    long double acc = 0;
    for (int i = 0; i < r; ++i) acc += s.coefficients[i] / std::pow(static_cast<long double>(s.steps[i]), q);
    res.push_back(static_cast<double>(acc));
  }
  return res;
}

double zne_residual(const MpfScheme& s) {
  const int p = s.order;
  long double worst = 0, sum = 0;
  for (double c : s.coefficients) sum += c;
  worst = std::abs(sum - 1);
  for (int q = p; q <= 2 * p - 1; ++q) {
    long double acc = 0;
    for (std::size_t i = 0; i < s.steps.size(); ++i)
      acc += s.coefficients[i] / std::pow(static_cast<long double>(s.steps[i]), q);
    worst = std::max(worst, std::abs(acc));
  }
  return static_cast<double>(worst);
}

std::vector<MpfScheme> search_steps(int p, int k_max, int r, const SearchOptions& opt) {
  if (p < 1) throw InvalidArgument("search: order must be >= 1");
  if (r < 1) throw InvalidArgument("search: tuple length must be >= 1");
  if (k_max < r || k_max > 40) throw InvalidArgument("search: k_max must be in [r, 40]");
  if (opt.top == 0) throw InvalidArgument("search: top must be >= 1");
  auto better = [](const MpfScheme& a, const MpfScheme& b) {
    const double tol = 1e-12 * std::max(a.objective, b.objective);
    if (std::abs(a.objective - b.objective) > tol) return a.objective < b.objective;
    if (a.kappa != b.kappa) return a.kappa < b.kappa;
    return a.steps < b.steps;
  };
  std::vector<MpfScheme> best;
  std::vector<int> k(r);
  for (int i = 0; i < r; ++i) k[i] = i + 1;
  while (true) {
    MpfScheme s;
    s.order = p;
    s.steps = k;
    s.range = opt.range;
    s.coefficients = solve_scaled(p, k, opt.range, nullptr);
    for (double c : s.coefficients) s.kappa += std::abs(c);
    s.objective = scheme_objective(p, k, s.coefficients);
    if (!opt.kappa_ceiling || s.kappa <= *opt.kappa_ceiling) {
      if (best.size() < opt.top || better(s, best.back())) {
        best.insert(std::upper_bound(best.begin(), best.end(), s, better), s);
        if (best.size() > opt.top) best.pop_back();
      }
    }
    int i = r - 1;
    while (i >= 0 && k[i] == k_max - (r - 1 - i)) --i;
    if (i < 0) break;
    ++k[i];
    for (int j = i + 1; j < r; ++j) k[j] = k[j - 1] + 1;
  }
  for (auto& s : best) s = solve_coefficients(p, s.steps, opt.range);
  return best;
}

Combined mean_value_combine(const std::vector<double>& x, const std::vector<double>& eps, const MpfScheme& s) {
  const std::size_t r = s.coefficients.size();
  if (x.size() != r || eps.size() != r) throw InvalidArgument("mean_value_combine: size mismatch");
  Combined out;
  for (std::size_t i = 0; i < r; ++i) {
    if (eps[i] < 0) throw InvalidArgument("mean_value_combine: negative error");
    out.value += s.coefficients[i] * x[i];
    out.error_budget += eps[i] * std::abs(s.coefficients[i]);
  }
  return out;
}

}  // namespace mpflab
