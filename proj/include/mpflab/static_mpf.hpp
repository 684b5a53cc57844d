#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace mpflab {

// Error powers cancelled by the extrapolation system besides sum c = 1:
// Consecutive q = p, p+1, ..., p+r-2; EvenPowers q = p, p+2, ..., p+2(r-2)
// (the latter suits symmetric formulas whose error expansion is even in 1/k).
enum class ExtrapolationRange { Consecutive, EvenPowers };

struct MpfScheme {
  int order = 0;
  std::vector<int> steps;
  std::vector<double> coefficients;
  double kappa = 0.0;      // sum |c_i|
  double objective = 0.0;  // sum |c_i| / k_i^{2p}
  double system_condition = 0.0;
  ExtrapolationRange range = ExtrapolationRange::Consecutive;
};

std::vector<int> cancelled_powers(int p, int r, ExtrapolationRange range);

MpfScheme solve_coefficients(int p, const std::vector<int>& steps,
                             ExtrapolationRange range = ExtrapolationRange::Consecutive);

// max over constraints of |residual|; first entry is sum c - 1.
std::vector<double> extrapolation_residuals(const MpfScheme& s);
// Residuals of the r = p+1 system q = p..2p-1 (the one the order-2p+2 bound assumes).
double zne_residual(const MpfScheme& s);

double scheme_objective(int p, const std::vector<int>& steps, const std::vector<double>& c);

struct SearchOptions {
  std::optional<double> kappa_ceiling;
  std::size_t top = 10;
  ExtrapolationRange range = ExtrapolationRange::Consecutive;
};

// Exhaustive search over strictly increasing r-tuples in [1, k_max], ranked
// by objective, then kappa, then lexicographic order.
std::vector<MpfScheme> search_steps(int p, int k_max, int r, const SearchOptions& opt = {});

struct Combined {
  double value = 0.0;
  double error_budget = 0.0;
};
Combined mean_value_combine(const std::vector<double>& x, const std::vector<double>& eps, const MpfScheme& s);

}  // namespace mpflab
