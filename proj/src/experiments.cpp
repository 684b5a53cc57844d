#include "mpflab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

#include "mpflab/bounds.hpp"
#include "mpflab/errors.hpp"
#include "mpflab/mixture.hpp"
#include "mpflab/parallel.hpp"

namespace mpflab {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',' || ch == ';' || ch == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw InvalidArgument("config: '" + key + "' expects a number, got '" + v + "'");
  }
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw InvalidArgument("config: '" + key + "' expects an integer, got '" + v + "'");
  }
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string join_doubles(const std::vector<double>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + format_double(v[i]);
  return s;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Config Config::parse(std::istream& in) {
  Config c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw InvalidArgument("config line " + std::to_string(lineno) + ": empty key");
    c.values_[key] = trim(line.substr(eq + 1));
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot open config file " + path);
  return parse(f);
}

const std::string* Config::lookup(const std::string& key, const std::string& def_text) const {
  auto it = values_.find(key);
  if (it == values_.end()) {
    used_[key] = def_text;
    return nullptr;
  }
  used_[key] = it->second;
  return &it->second;
}

std::string Config::get_string(const std::string& key, const std::string& def) const {
  const auto* v = lookup(key, def);
  return v ? *v : def;
}

double Config::get_double(const std::string& key, double def) const {
  const auto* v = lookup(key, format_double(def));
  return v ? parse_double(key, *v) : def;
}

long Config::get_int(const std::string& key, long def) const {
  const auto* v = lookup(key, std::to_string(def));
  return v ? parse_long(key, *v) : def;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t def) const {
  const auto* v = lookup(key, std::to_string(def));
  if (!v) return def;
  try {
    std::size_t pos = 0;
    if (!v->empty() && (*v)[0] == '-') throw std::invalid_argument("negative");
    const auto d = std::stoull(*v, &pos);
    if (pos != v->size()) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw InvalidArgument("config: '" + key + "' expects an unsigned integer, got '" + *v + "'");
  }
}

bool Config::get_bool(const std::string& key, bool def) const {
  const auto* v = lookup(key, def ? "true" : "false");
  if (!v) return def;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw InvalidArgument("config: '" + key + "' expects true/false, got '" + *v + "'");
}

std::vector<int> Config::get_ints(const std::string& key, const std::vector<int>& def) const {
  const auto* v = lookup(key, join_ints(def));
  if (!v) return def;
  std::vector<int> out;
  for (const auto& tok : split_list(*v)) out.push_back(static_cast<int>(parse_long(key, tok)));
  if (out.empty()) throw InvalidArgument("config: '" + key + "' is an empty list");
  return out;
}

std::vector<double> Config::get_doubles(const std::string& key, const std::vector<double>& def) const {
  const auto* v = lookup(key, join_doubles(def, ","));
  if (!v) return def;
  std::vector<double> out;
  for (const auto& tok : split_list(*v)) out.push_back(parse_double(key, tok));
  if (out.empty()) throw InvalidArgument("config: '" + key + "' is an empty list");
  return out;
}

std::vector<std::string> Config::unused() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values_)
    if (!used_.count(k)) out.push_back(k);
  return out;
}

namespace {

ProductFormula lift(const ProductFormula& base, int order) {
  if (order == 2) return base;
  if (order == 4 || order == 6) return ProductFormula::suzuki(base, order);
  throw InvalidArgument("formula order must be 2, 4 or 6");
}

}  // namespace

SimulationSetup make_heisenberg_setup(int n, std::uint64_t seed, int order) {
  if (n > SpectralOracle::kMaxQubits) throw ResourceLimit("simulation limited to 12 qubits");
  auto chain = build_heisenberg_chain(n, seed);
  ProductFormula pf = lift(ProductFormula::second_order(fragment_decomposition_S2(chain)), order);
  SpectralOracle oracle(chain.H);
  return SimulationSetup{n, chain.H, chain.fields, pf, neel_state(n), oracle};
}

std::vector<PauliSumOp> commuting_groups(const PauliSumOp& H) {
  std::vector<std::vector<PauliSumOp::Term>> groups;
  for (const auto& t : H.terms()) {
    if (t.first.is_identity()) continue;
    bool placed = false;
    for (auto& g : groups) {
      bool ok = true;
      for (const auto& u : g) ok = ok && u.first.commutes_with(t.first);
      if (ok) {
        g.push_back(t);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({t});
  }
  std::vector<PauliSumOp> out;
  for (auto& g : groups) out.emplace_back(H.num_qubits(), g);
  if (out.empty()) out.emplace_back(H.num_qubits());
  return out;
}

SimulationSetup make_custom_setup(const PauliSumOp& H, int order) {
  const int n = H.num_qubits();
  if (n > SpectralOracle::kMaxQubits) throw ResourceLimit("simulation limited to 12 qubits");
  ProductFormula pf = lift(ProductFormula::second_order(commuting_groups(H)), order);
  SpectralOracle oracle(H);
  return SimulationSetup{n, H, {}, pf, neel_state(n), oracle};
}

std::vector<double> make_grid(double start, double stop, int count, const std::string& spacing) {
  if (count < 1) throw InvalidArgument("grid: count must be >= 1");
  if (start < 0 || stop < start) throw InvalidArgument("grid: need 0 <= start <= stop");
  std::vector<double> g;
  if (count == 1) return {start};
  for (int i = 0; i < count; ++i) {
    const double f = double(i) / (count - 1);
    if (spacing == "linear") {
      g.push_back(start + f * (stop - start));
    } else if (spacing == "log") {
      if (start <= 0) throw InvalidArgument("grid: log spacing needs start > 0");
      g.push_back(start * std::pow(stop / start, f));
    } else {
      throw InvalidArgument("grid: spacing must be linear or log");
    }
  }
  return g;
}

double mpf_fit_constant(int p) {
  if (p == 2) return 0.06;
  if (p == 4) return 0.00014;
  return std::numeric_limits<double>::quiet_NaN();
}

double trotter_fit_constant(int p) {
  if (p == 2) return 0.6;
  if (p == 4) return 0.04;
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<TrotterSweepRow> trotter_sweep(const SimulationSetup& s, const std::vector<int>& ks,
                                           const std::vector<double>& ts, int threads) {
  const int p = s.pf.order();
  const double alpha = alpha_p(s.pf);
  std::vector<TrotterSweepRow> rows(ts.size() * ks.size());
  parallel_for(ts.size(), threads, [&](std::size_t i) {
    const double t = ts[i];
    const Statevector ex = s.oracle.evolve(s.psi, t);
    for (std::size_t j = 0; j < ks.size(); ++j) {
      const int k = ks[j];
      const Statevector st = s.pf.rho_k_state(s.psi, t, k);
      rows[i * ks.size() + j] = {t, k, mpf_trace_distance(ex, {st}, {1.0}), lemma1_bound(alpha, p, t, k),
                                 trotter_fit_constant(p) * s.n * std::pow(t, p + 1) / std::pow(double(k), p)};
    }
  });
  return rows;
}

std::vector<MpfSweepRow> mpf_sweep(const SimulationSetup& s, const MpfScheme& scheme, const std::vector<double>& ts,
                                   int threads, bool with_theorem1, const BetaSampler& sampler) {
  const int p = s.pf.order();
  if (scheme.order != p) throw InvalidArgument("mpf_sweep: scheme order differs from formula order");
  const int kmax = *std::max_element(scheme.steps.begin(), scheme.steps.end());
  const double alpha = alpha_p(s.pf);
  std::vector<double> th1(ts.size(), std::numeric_limits<double>::quiet_NaN());
  if (with_theorem1) {
    std::vector<double> sorted = ts;
    std::sort(sorted.begin(), sorted.end());
    const auto curve = theorem1_bound_curve(scheme, s.pf, sorted, sampler);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const auto it = std::lower_bound(sorted.begin(), sorted.end(), ts[i]);
      th1[i] = curve[it - sorted.begin()].value;
    }
  }
  std::vector<MpfSweepRow> rows(ts.size());
  parallel_for(ts.size(), threads, [&](std::size_t i) {
    const double t = ts[i];
    const Statevector ex = s.oracle.evolve(s.psi, t);
    std::vector<Statevector> st;
    for (int k : scheme.steps) st.push_back(s.pf.rho_k_state(s.psi, t, k));
    const auto best = std::max_element(scheme.steps.begin(), scheme.steps.end()) - scheme.steps.begin();
    const MixtureError e = mpf_error(ex, st, scheme.coefficients);
    rows[i] = {t,
               mpf_trace_distance(ex, {st[best]}, {1.0}),
               e.trace,
               e.frobenius,
               lemma1_bound(alpha, p, t, kmax),
               th1[i],
               mpf_fit_constant(p) * s.n * s.n * std::pow(t, 2 * p + 2) * scheme.objective,
               trotter_fit_constant(p) * s.n * std::pow(t, p + 1) / std::pow(double(kmax), p)};
  });
  return rows;
}

ScalingFit fit_scaling(const std::vector<ScalingRow>& rows, const ScalingModel& model) {
  if (rows.empty()) throw InvalidArgument("fit_scaling: no rows");
  std::vector<int> free_cols;  // 0 = b, 1 = c, 2 = d
  if (!model.b) free_cols.push_back(0);
  if (!model.c) free_cols.push_back(1);
  if (!model.d) free_cols.push_back(2);
  const auto m = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index ncol = 1 + static_cast<Eigen::Index>(free_cols.size());
  Eigen::MatrixXd X(m, ncol);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& r = rows[i];
    if (!(r.value > 0) || !(r.n > 0) || !(r.t > 0) || !(r.k > 0))
      throw InvalidArgument("fit_scaling: values and axes must be positive");
    const double ln[3] = {std::log(r.n), std::log(r.t), -std::log(r.k)};
    double fixed = 0;
    if (model.b) fixed += *model.b * ln[0];
    if (model.c) fixed += *model.c * ln[1];
    if (model.d) fixed += *model.d * ln[2];
    y[i] = std::log(r.value) - fixed;
    X(i, 0) = 1.0;
    for (std::size_t j = 0; j < free_cols.size(); ++j) X(i, 1 + j) = ln[free_cols[j]];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(1e-10);
  if (qr.rank() < ncol) throw InvalidArgument("fit_scaling: degenerate design matrix");
  const Eigen::VectorXd beta = qr.solve(y);
  ScalingFit f;
  f.a = std::exp(beta[0]);
  double ex[3] = {model.b.value_or(0), model.c.value_or(0), model.d.value_or(0)};
  for (std::size_t j = 0; j < free_cols.size(); ++j) ex[free_cols[j]] = beta[1 + j];
  f.b = ex[0];
  f.c = ex[1];
  f.d = ex[2];
  const Eigen::VectorXd res = y - X * beta;
  f.log_residuals.assign(res.data(), res.data() + res.size());
  f.rms_log_residual = std::sqrt(res.squaredNorm() / double(m));
  return f;
}

double loglog_slope(const std::vector<double>& t, const std::vector<double>& y) {
  std::vector<ScalingRow> rows;
  for (std::size_t i = 0; i < t.size(); ++i) rows.push_back({1.0, t[i], 1.0, y[i]});
  return fit_scaling(rows, {0.0, std::nullopt, 0.0}).c;
}

std::vector<std::size_t> presaturation_window(const std::vector<double>& t, const std::vector<double>& err,
                                              double cap, double ratio) {
  if (t.size() != err.size()) throw InvalidArgument("presaturation_window: size mismatch");
  std::size_t hi = 0;
  bool found = false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(err[i] <= cap)) break;
    hi = i;
    found = true;
  }
  if (!found) return {};
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i <= hi; ++i)
    if (t[i] >= t[hi] / ratio) idx.push_back(i);
  return idx;
}

Eigen::VectorXd default_shootout_seed() {
  Eigen::VectorXd c(5);
  c << 0.00612895, 0.0, -1.55561002, 0.0, 2.54948107;
  return c;
}

Theorem2Evaluation evaluate_theorem2(const SimulationSetup& s, const MinimaxRun& run, const MinimaxConfig& cfg,
                                     const std::vector<int>& theorem_steps, const BetaSampler& sampler) {
  Theorem2Evaluation ev;
  const int p = s.pf.order();
  ev.scheme = solve_coefficients(p, theorem_steps, ExtrapolationRange::Consecutive);
  const auto curve = theorem1_bound_curve(ev.scheme, s.pf, run.t, sampler);
  const double alpha = alpha_p(s.pf);
  for (const auto& b : curve) ev.gamma.push_back(gamma_term(b.value, alpha, p, cfg.dt, cfg.k0));
  Theorem2Inputs in;
  in.Mbar = run.Mbar;
  in.Abar = run.Abar;
  in.c_hat = run.c;
  in.c_exact0 = run.c_exact[0];
  for (const auto& c : run.c_exact) in.c_exact_norms.push_back(c.norm());
  in.gamma = ev.gamma;
  in.eps = cfg.eps;
  ev.steps = theorem2_bound(in);
  return ev;
}

ShootoutResult minimax_shootout(const ShootoutConfig& cfg) {
  const SimulationSetup s = make_heisenberg_setup(cfg.n, cfg.seed, 2);
  ShootoutResult res;
  res.steps = cfg.steps;
  // well-conditioned static comparator: even-power extrapolation on the sub-tuple
  res.static_scheme = solve_coefficients(2, cfg.static_steps, ExtrapolationRange::EvenPowers);
  MinimaxConfig mc;
  mc.steps = cfg.steps;
  mc.t0 = cfg.t0;
  mc.dt = cfg.dt;
  mc.T = cfg.T;
  mc.eps = cfg.eps;
  mc.k0 = cfg.k0;
  mc.seed = cfg.seed;
  mc.c0 = cfg.c0;
  mc.threads = cfg.threads;
  res.run = minimax_run(s.pf, s.oracle, s.psi, mc, true);
  const auto& run = res.run;
  std::vector<double> bound(run.t.size(), std::numeric_limits<double>::quiet_NaN());
  if (cfg.theorem2) {
    const auto ev = evaluate_theorem2(s, run, mc, cfg.static_steps, cfg.sampler);
    for (std::size_t j = 1; j < run.t.size(); ++j) bound[j] = ev.steps[j - 1].bound_max;
  }
  const int kbest = *std::max_element(cfg.steps.begin(), cfg.steps.end());
  std::vector<std::size_t> static_idx;
  for (int k : cfg.static_steps) {
    const auto it = std::find(cfg.steps.begin(), cfg.steps.end(), k);
    static_idx.push_back(it == cfg.steps.end() ? cfg.steps.size() : it - cfg.steps.begin());
  }
  res.rows.resize(run.t.size());
  parallel_for(run.t.size(), cfg.threads, [&](std::size_t j) {
    const double t = run.t[j];
    const Statevector ex = s.oracle.evolve(s.psi, t);
    std::vector<Statevector> st;
    for (std::size_t i = 0; i < cfg.static_steps.size(); ++i)
      st.push_back(static_idx[i] < cfg.steps.size() ? run.states[j][static_idx[i]]
                                                     : s.pf.rho_k_state(s.psi, t, cfg.static_steps[i]));
    const Statevector best = s.pf.rho_k_state(s.psi, t, kbest);
    res.rows[j] = {t,
                   mpf_frobenius(ex, st, res.static_scheme.coefficients),
                   mpf_frobenius(ex, {best}, {1.0}),
                   run.err_exactdata[j],
                   run.err_estimate[j],
                   run.l1_condition[j],
                   run.c[j],
                   run.objective[j],
                   bound[j]};
  });
  return res;
}

namespace {

std::string csv_header(const std::string& scenario, const Config& cfg) {
  std::ostringstream os;
  os << "# mpf-lab schema v1\n# scenario = " << scenario << "\n";
  for (const auto& [k, v] : cfg.effective()) os << "# " << k << " = " << v << "\n";
  return os.str();
}

ExtrapolationRange parse_range(const std::string& s) {
  if (s == "consecutive") return ExtrapolationRange::Consecutive;
  if (s == "even") return ExtrapolationRange::EvenPowers;
  throw InvalidArgument("config: range must be 'consecutive' or 'even'");
}

void check_unused(const Config& cfg) {
  const auto u = cfg.unused();
  if (!u.empty()) throw InvalidArgument("config: unknown key '" + u.front() + "'");
}

SimulationSetup setup_from(const Config& cfg, int order) {
  const std::string path = cfg.get_string("hamiltonian", "");
  if (!path.empty()) return make_custom_setup(load_pauli_sum(path), order);
  const long n = cfg.get_int("n", 10);
  if (n < 2) throw InvalidArgument("config: n must be >= 2");
  return make_heisenberg_setup(static_cast<int>(n), cfg.get_u64("seed", 1), order);
}

std::vector<double> grid_from(const Config& cfg, double start, double stop, int count, const char* spacing) {
  return make_grid(cfg.get_double("t_start", start), cfg.get_double("t_stop", stop),
                   static_cast<int>(cfg.get_int("t_count", count)), cfg.get_string("t_spacing", spacing));
}

BetaSampler sampler_from(const Config& cfg) {
  BetaSampler s;
  s.grid_points = static_cast<int>(cfg.get_int("beta_grid_points", 3));
  s.random_draws = static_cast<std::size_t>(cfg.get_int("beta_random_draws", 64));
  s.seed = cfg.get_u64("seed", 1);
  return s;
}

std::string scheme_row(const MpfScheme& s) {
  std::string k, c;
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    k += (i ? ";" : "") + std::to_string(s.steps[i]);
    c += (i ? ";" : "") + format_double(s.coefficients[i]);
  }
  return std::to_string(s.order) + "," + k + "," + c + "," + format_double(s.kappa) + "," + format_double(s.objective);
}

std::vector<int> default_base(int p) {
  return p == 2 ? std::vector<int>{4, 13, 17} : std::vector<int>{2, 9, 17, 23, 25};
}

std::string trotter_sweep_csv(const Config& cfg, int threads) {
  const int p = static_cast<int>(cfg.get_int("order", 2));
  const auto s = setup_from(cfg, p);
  const auto ks = cfg.get_ints("steps", default_base(p));
  const auto ts = grid_from(cfg, 0.1, 3.0, 30, "log");
  check_unused(cfg);
  std::ostringstream os;
  os << csv_header("trotter-sweep", cfg) << "t,k,trotter_error,lemma1_bound,fit_value\n";
  for (const auto& r : trotter_sweep(s, ks, ts, threads))
    os << format_double(r.t) << ',' << r.k << ',' << format_double(r.trotter_error) << ','
       << format_double(r.lemma1_bound) << ',' << format_double(r.fit_value) << '\n';
  return os.str();
}

std::string mpf_sweep_csv(const Config& cfg, int threads) {
  const int p = static_cast<int>(cfg.get_int("order", 2));
  const auto s = setup_from(cfg, p);
  const auto base = cfg.get_ints("base_steps", default_base(p));
  const long lambda = cfg.get_int("lambda", 1);
  if (lambda < 1) throw InvalidArgument("config: lambda must be a positive integer");
  std::vector<int> steps;
  for (int k : base) steps.push_back(static_cast<int>(lambda * k));
  const auto range = parse_range(cfg.get_string("range", "consecutive"));
  const auto ts = grid_from(cfg, 0.5, 3.0, 26, "linear");
  const long th_max = cfg.get_int("theorem1_max_n", 4);
  const BetaSampler sm = sampler_from(cfg);
  check_unused(cfg);
  const MpfScheme scheme = solve_coefficients(p, steps, range);
  const bool th1 = s.n <= th_max && static_cast<int>(steps.size()) == p + 1 && range == ExtrapolationRange::Consecutive;
  std::ostringstream os;
  os << csv_header("mpf-sweep", cfg) << "# coefficients = " << join_doubles(scheme.coefficients, ",") << "\n"
     << "t,trotter_error_best_k,mpf_error,lemma1_bound,theorem1_bound,fit_value,mpf_frobenius,trotter_fit_value\n";
  for (const auto& r : mpf_sweep(s, scheme, ts, threads, th1, sm))
    os << format_double(r.t) << ',' << format_double(r.trotter_error_best_k) << ',' << format_double(r.mpf_error)
       << ',' << format_double(r.lemma1_bound) << ',' << format_double(r.theorem1_bound) << ','
       << format_double(r.fit_value) << ',' << format_double(r.mpf_frobenius) << ','
       << format_double(r.trotter_fit_value) << '\n';
  return os.str();
}

std::string tuple_search_csv(const Config& cfg) {
  const int p = static_cast<int>(cfg.get_int("order", 2));
  SearchOptions opt;
  const int kmax = static_cast<int>(cfg.get_int("k_max", 25));
  const int r = static_cast<int>(cfg.get_int("r", p + 1));
  opt.top = static_cast<std::size_t>(cfg.get_int("top", 10));
  const double ceiling = cfg.get_double("kappa_ceiling", 0.0);
  if (ceiling > 0) opt.kappa_ceiling = ceiling;
  opt.range = parse_range(cfg.get_string("range", "consecutive"));
  check_unused(cfg);
  std::ostringstream os;
  os << csv_header("tuple-search", cfg) << "rank,p,k_tuple,c,kappa,objective\n";
  int rank = 1;
  for (const auto& s : search_steps(p, kmax, r, opt)) os << rank++ << ',' << scheme_row(s) << '\n';
  return os.str();
}

std::string solve_coeffs_csv(const Config& cfg) {
  const int p = static_cast<int>(cfg.get_int("order", 2));
  const auto steps = cfg.get_ints("steps", default_base(p));
  const auto range = parse_range(cfg.get_string("range", "consecutive"));
  check_unused(cfg);
  const MpfScheme s = solve_coefficients(p, steps, range);
  double res = 0;
  for (double v : extrapolation_residuals(s)) res = std::max(res, std::abs(v));
  std::ostringstream os;
  os << csv_header("solve-coeffs", cfg) << "p,k_tuple,c,kappa,objective,system_condition,max_residual\n"
     << scheme_row(s) << ',' << format_double(s.system_condition) << ',' << format_double(res) << '\n';
  return os.str();
}

std::string bound_eval_csv(const Config& cfg) {
  const int p = static_cast<int>(cfg.get_int("order", 2));
  const std::string path = cfg.get_string("hamiltonian", "");
  const long n = path.empty() ? cfg.get_int("n", 4) : 0;
  if (path.empty() && n < 2) throw InvalidArgument("config: n must be >= 2");
  if (n > 8) throw ResourceLimit("bound-eval: dense commutator norms limited to 8 qubits");
  const SimulationSetup s = path.empty() ? make_heisenberg_setup(static_cast<int>(n), cfg.get_u64("seed", 1), p)
                                         : make_custom_setup(load_pauli_sum(path), p);
  const auto steps = cfg.get_ints("steps", default_base(p));
  const auto ts = grid_from(cfg, 0.25, 2.0, 8, "linear");
  const BetaSampler sm = sampler_from(cfg);
  check_unused(cfg);
  const MpfScheme scheme = solve_coefficients(p, steps, ExtrapolationRange::Consecutive);
  const auto curve = theorem1_bound_curve(scheme, s.pf, ts, sm);
  const int kmin = *std::min_element(steps.begin(), steps.end());
  std::ostringstream os;
  os << csv_header("bound-eval", cfg) << "t,alpha_p,beta_2p_0,beta_p_p";
  for (int l = 1; l <= p; ++l) os << ",beta_ell_" << l;
  os << ",a1,a2,a3,prefactor,theorem1_bound,lemma1_bound_kmin,sampled\n";
  for (const auto& b : curve) {
    os << format_double(b.t) << ',' << format_double(b.alpha_p) << ',' << format_double(b.beta_2p_0) << ','
       << format_double(b.beta_p_p);
    for (double v : b.beta_ell) os << ',' << format_double(v);
    os << ',' << format_double(b.a1) << ',' << format_double(b.a2) << ',' << format_double(b.a3) << ','
       << format_double(b.prefactor) << ',' << format_double(b.value) << ','
       << format_double(lemma1_bound(b.alpha_p, p, b.t, kmin)) << ',' << (b.sampled ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string shootout_csv(const Config& cfg, int threads) {
  ShootoutConfig sc;
  sc.n = static_cast<int>(cfg.get_int("n", 10));
  if (sc.n < 2) throw InvalidArgument("config: n must be >= 2");
  sc.seed = cfg.get_u64("seed", 1);
  sc.steps = cfg.get_ints("steps", sc.steps);
  sc.static_steps = cfg.get_ints("static_steps", sc.static_steps);
  sc.t0 = cfg.get_double("t0", sc.t0);
  sc.dt = cfg.get_double("dt", sc.dt);
  sc.T = cfg.get_double("T", sc.T);
  sc.eps = cfg.get_double("eps", sc.eps);
  sc.k0 = static_cast<int>(cfg.get_int("k0", sc.k0));
  const std::string init = cfg.get_string("c0", "reference");
  const long th2_max = cfg.get_int("theorem2_max_n", 4);
  sc.sampler = sampler_from(cfg);
  check_unused(cfg);
  if (init == "reference") {
    if (sc.steps.size() != 5) throw InvalidArgument("config: c0 = reference needs a 5-step tuple");
    sc.c0 = default_shootout_seed();
  } else if (init != "exact") {
    std::vector<double> v;
    for (const auto& tok : split_list(init)) v.push_back(parse_double("c0", tok));
    if (v.size() != sc.steps.size()) throw InvalidArgument("config: c0 length differs from steps");
    sc.c0 = Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  }
  sc.theorem2 = sc.n <= th2_max && static_cast<int>(sc.static_steps.size()) == 3;
  sc.threads = threads;
  const auto res = minimax_shootout(sc);
  std::ostringstream os;
  os << csv_header("minimax-shootout", cfg) << "# static_coefficients = "
     << join_doubles(res.static_scheme.coefficients, ",") << "\n"
     << "t,err_static_wc,err_best_trotter,err_dynamic_exact,err_minimax,kappa_minimax";
  for (std::size_t i = 0; i < sc.steps.size(); ++i) os << ",c_" << i + 1;
  os << ",frobenius_error_exactdata,frobenius_error_estimate,l1_condition,objective,bound_component_max\n";
  for (const auto& r : res.rows) {
    os << format_double(r.t) << ',' << format_double(r.err_static_wc) << ',' << format_double(r.err_best_trotter)
       << ',' << format_double(r.err_dynamic_exact) << ',' << format_double(r.err_minimax) << ','
       << format_double(r.kappa_minimax);
    for (Eigen::Index i = 0; i < r.c.size(); ++i) os << ',' << format_double(r.c[i]);
    os << ',' << format_double(r.err_dynamic_exact) << ',' << format_double(r.err_minimax) << ','
       << format_double(r.kappa_minimax) << ',' << format_double(r.objective) << ','
       << format_double(r.bound_component_max) << '\n';
  }
  return os.str();
}

}  // namespace

std::vector<std::string> scenario_names() {
  return {"trotter-sweep", "mpf-sweep", "tuple-search", "bound-eval", "minimax-shootout", "solve-coeffs"};
}

std::string run_scenario(const std::string& scenario, const Config& cfg, int threads) {
  if (threads < 1) throw InvalidArgument("threads must be >= 1");
  cfg.get_u64("seed", 1);  // every scenario accepts and records the seed
  if (scenario == "trotter-sweep") return trotter_sweep_csv(cfg, threads);
  if (scenario == "mpf-sweep") return mpf_sweep_csv(cfg, threads);
  if (scenario == "tuple-search") return tuple_search_csv(cfg);
  if (scenario == "solve-coeffs") return solve_coeffs_csv(cfg);
  if (scenario == "bound-eval") return bound_eval_csv(cfg);
  if (scenario == "minimax-shootout") return shootout_csv(cfg, threads);
  throw InvalidArgument("unknown scenario '" + scenario + "'");
}

}  // namespace mpflab
