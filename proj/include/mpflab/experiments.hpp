#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mpflab/bounds.hpp"
#include "mpflab/dynamic_mpf.hpp"
#include "mpflab/hamiltonian.hpp"
#include "mpflab/product_formula.hpp"
#include "mpflab/spectral.hpp"
#include "mpflab/static_mpf.hpp"

namespace mpflab {

// Flat "key = value" configuration; '#' starts a comment. Every key read
// through a getter is recorded with its effective value for the CSV header.
class Config {
 public:
  Config() = default;
  static Config parse(std::istream& in);
  static Config load(const std::string& path);

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string get_string(const std::string& key, const std::string& def) const;
  double get_double(const std::string& key, double def) const;
  long get_int(const std::string& key, long def) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t def) const;
  bool get_bool(const std::string& key, bool def) const;
  std::vector<int> get_ints(const std::string& key, const std::vector<int>& def) const;
  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& def) const;

  // Keys that were given but never read.
  std::vector<std::string> unused() const;
  const std::map<std::string, std::string>& effective() const { return used_; }

 private:
  const std::string* lookup(const std::string& key, const std::string& def_text) const;
  std::map<std::string, std::string> values_;
  mutable std::map<std::string, std::string> used_;
};

struct SimulationSetup {
  int n = 0;
  PauliSumOp H;
  std::vector<double> fields;
  ProductFormula pf;
  Statevector psi;
  SpectralOracle oracle;
};

// Heisenberg chain with the S2 fragments (Suzuki-lifted for order 4/6), Neel input.
SimulationSetup make_heisenberg_setup(int n, std::uint64_t seed, int order);
// Custom Hamiltonian: terms greedily grouped into commuting fragments.
SimulationSetup make_custom_setup(const PauliSumOp& H, int order);
std::vector<PauliSumOp> commuting_groups(const PauliSumOp& H);

std::vector<double> make_grid(double start, double stop, int count, const std::string& spacing);

struct TrotterSweepRow {
  double t;
  int k;
  double trotter_error;
  double lemma1_bound;
  double fit_value;
};
std::vector<TrotterSweepRow> trotter_sweep(const SimulationSetup& s, const std::vector<int>& ks,
                                           const std::vector<double>& ts, int threads);

struct MpfSweepRow {
  double t;
  double trotter_error_best_k;
  double mpf_error;
  double mpf_frobenius;
  double lemma1_bound;
  double theorem1_bound;  // NaN when not evaluated
  double fit_value;
  double trotter_fit_value;
};
std::vector<MpfSweepRow> mpf_sweep(const SimulationSetup& s, const MpfScheme& scheme, const std::vector<double>& ts,
                                   int threads, bool with_theorem1, const BetaSampler& sampler = {});

// Reference fit constants: MPF a*n^2 t^{2p+2} sum|c|/k^{2p}, Trotter b*n t^{p+1}/k^p.
double mpf_fit_constant(int p);
double trotter_fit_constant(int p);

struct ScalingRow {
  double n, t, k, value;
};
struct ScalingModel {
  std::optional<double> b, c, d;  // fixed exponents; unset ones are fitted
};
struct ScalingFit {
  double a = 0, b = 0, c = 0, d = 0;
  double rms_log_residual = 0;
  std::vector<double> log_residuals;
};
// value = a n^b t^c / k^d, least squares in log space.
ScalingFit fit_scaling(const std::vector<ScalingRow>& rows, const ScalingModel& model);

// Least-squares slope of log(y) against log(t).
double loglog_slope(const std::vector<double>& t, const std::vector<double>& y);

// Indices of the window [t_hi / ratio, t_hi], t_hi the largest t whose error
// (and all earlier ones) stays at or below cap.
std::vector<std::size_t> presaturation_window(const std::vector<double>& t, const std::vector<double>& err,
                                              double cap = 0.05, double ratio = 2.0);

struct ShootoutRow {
  double t;
  double err_static_wc, err_best_trotter, err_dynamic_exact, err_minimax, kappa_minimax;
  Eigen::VectorXd c;
  double objective;
  double bound_component_max;  // NaN when not evaluated
};
struct ShootoutResult {
  std::vector<ShootoutRow> rows;
  MinimaxRun run;
  MpfScheme static_scheme;
  std::vector<int> steps;
};
struct ShootoutConfig {
  int n = 10;
  std::uint64_t seed = 1;
  std::vector<int> steps{8, 20, 26, 30, 34};
  std::vector<int> static_steps{8, 26, 34};
  double t0 = 1.0, dt = 0.05, T = 4.5, eps = 0.01;
  int k0 = 26;
  std::optional<Eigen::VectorXd> c0;
  bool theorem2 = false;
  BetaSampler sampler;
  int threads = 1;
};
ShootoutResult minimax_shootout(const ShootoutConfig& cfg);
// Default initialization (0.00612895, 0, -1.55561002, 0, 2.54948107).
Eigen::VectorXd default_shootout_seed();

struct Theorem2Evaluation {
  std::vector<Theorem2Step> steps;
  std::vector<double> gamma;
  MpfScheme scheme;
};
// Coefficient-error bounds for a run, using gamma(t) from the order-2p+2 bound of
// the consecutive-range scheme on theorem_steps.
Theorem2Evaluation evaluate_theorem2(const SimulationSetup& s, const MinimaxRun& run, const MinimaxConfig& cfg,
                                     const std::vector<int>& theorem_steps, const BetaSampler& sampler);

// Scenario runners used by the command-line tool. Return the full CSV text.
std::string run_scenario(const std::string& scenario, const Config& cfg, int threads);
std::vector<std::string> scenario_names();

std::string format_double(double v);

}  // namespace mpflab
