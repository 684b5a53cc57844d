#include "mpflab/dynamic_mpf.hpp"

#include <algorithm>
#include <cmath>

#include "mpflab/errors.hpp"
#include "mpflab/mixture.hpp"
#include "mpflab/parallel.hpp"
#include "mpflab/rng.hpp"

namespace mpflab {

std::vector<Statevector> trotter_states(const ProductFormula& pf, const Statevector& psi, double t,
                                        const std::vector<int>& steps) {
  std::vector<Statevector> out;
  out.reserve(steps.size());
  for (int k : steps) out.push_back(pf.rho_k_state(psi, t, k));
  return out;
}

Eigen::MatrixXd gram_matrix(const std::vector<Statevector>& s) {
  const auto r = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd M(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    M(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < r; ++j) M(i, j) = M(j, i) = std::norm(overlap(s[i], s[j]));
  }
  return M;
}

Eigen::MatrixXd gram_matrix(const ProductFormula& pf, const Statevector& psi, double t, const std::vector<int>& steps) {
  return gram_matrix(trotter_states(pf, psi, t, steps));
}

Eigen::MatrixXd q_matrix(const std::vector<Statevector>& prop, const std::vector<Statevector>& cur) {
  if (prop.size() != cur.size()) throw InvalidArgument("q_matrix: size mismatch");
  const auto r = static_cast<Eigen::Index>(cur.size());
  Eigen::MatrixXd Q(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index s = 0; s < r; ++s) Q(i, s) = std::min(1.0, std::norm(overlap(prop[s], cur[i])));
  return Q;
}

Eigen::MatrixXd q_matrix(const ProductFormula& pf, const Statevector& psi, double t_j, double dt, int k0,
                         const std::vector<int>& steps) {
  if (!(dt > 0)) throw InvalidArgument("q_matrix: dt must be > 0");
  if (k0 < 1) throw InvalidArgument("q_matrix: k0 must be >= 1");
  std::vector<Statevector> prop;
  for (const auto& s : trotter_states(pf, psi, t_j, steps)) prop.push_back(pf.repeat(s, dt / k0, k0));
  return q_matrix(prop, trotter_states(pf, psi, t_j + dt, steps));
}

Eigen::VectorXd l_exact(const Statevector& exact, const std::vector<Statevector>& states) {
  Eigen::VectorXd L(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) L[i] = std::min(1.0, std::norm(overlap(exact, states[i])));
  return L;
}

Eigen::VectorXd l_exact(const ProductFormula& pf, const SpectralOracle& oracle, const Statevector& psi, double t,
                        const std::vector<int>& steps) {
  return l_exact(oracle.evolve(psi, t), trotter_states(pf, psi, t, steps));
}

Projection dynamic_project(const Eigen::MatrixXd& M, const Eigen::VectorXd& L) {
  const Eigen::Index r = L.size();
  if (r == 0 || M.rows() != r || M.cols() != r) throw InvalidArgument("dynamic_project: size mismatch");
  Projection out;
  if (r == 1) {
    out.c = Eigen::VectorXd::Ones(1);
    out.frobenius_sq = mixture_frobenius_sq(M, out.c, L);
    return out;
  }
  auto solve = [&](const Eigen::MatrixXd& Mm, bool& ok) {
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(r + 1, r + 1);
    K.topLeftCorner(r, r) = 2.0 * 0.5 * (Mm + Mm.transpose());
    K.topRightCorner(r, 1).setOnes();
    K.bottomLeftCorner(1, r).setOnes();
    Eigen::VectorXd rhs(r + 1);
    rhs.head(r) = 2.0 * L;
    rhs[r] = 1.0;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(K);
    qr.setThreshold(1e-15);
    ok = qr.rank() == r + 1;
    Eigen::VectorXd sol = qr.solve(rhs);
    // one step of refinement with the residual in extended precision
    using VecL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    const VecL res = rhs.cast<long double>() - K.cast<long double>() * sol.cast<long double>();
    sol += qr.solve(res.cast<double>());
    return Eigen::VectorXd(sol.head(r));
  };
  bool ok = false;
  out.c = solve(M, ok);
  if (!ok || !out.c.allFinite()) {
    const double ridge = 1e-12 * std::max(1.0, M.diagonal().cwiseAbs().maxCoeff());
    out.c = solve(M + ridge * Eigen::MatrixXd::Identity(r, r), ok);
    out.regularized = true;
  }
  out.frobenius_sq = mixture_frobenius_sq(M, out.c, L);
  return out;
}

namespace {

double spectral_norm(const Eigen::MatrixXd& E) {
  if (E.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(E);
  return svd.singularValues()[0];
}

Eigen::MatrixXd gaussian_rescaled(Rng& rng, Eigen::Index r, double eps) {
  Eigen::MatrixXd E(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j) E(i, j) = rng.normal();
  const double s = spectral_norm(E);
  return s > 0 ? Eigen::MatrixXd(E * (eps / s)) : Eigen::MatrixXd(E * 0.0);
}

}  // namespace

NoisyOverlaps inject_noise(const Eigen::MatrixXd& M, const Eigen::MatrixXd& Q, double eps, std::uint64_t seed,
                           std::uint64_t index) {
  if (!(eps >= 0)) throw InvalidArgument("inject_noise: eps must be >= 0");
  if (M.rows() != M.cols() || Q.rows() != M.rows() || Q.cols() != M.cols())
    throw InvalidArgument("inject_noise: size mismatch");
  NoisyOverlaps out{M, Q, 0.0, 0.0};
  if (eps == 0.0) return out;
  const Eigen::Index r = M.rows();
  Rng rng(seed, Stream::Noise, index);
  const Eigen::MatrixXd E1 = gaussian_rescaled(rng, r, eps);
  const Eigen::MatrixXd E2 = gaussian_rescaled(rng, r, eps);
  Eigen::MatrixXd Mb = (M + E1).cwiseMax(0.0);
  Mb = 0.5 * (Mb + Mb.transpose()).eval();
  Mb.diagonal().setOnes();
  out.M = Mb;
  out.A = (Q + E2).cwiseMax(0.0);
  out.m_deviation = spectral_norm(out.M - M);
  out.a_deviation = spectral_norm(out.A - Q);
  return out;
}

double minimax_objective(const Eigen::MatrixXd& Mbar, const Eigen::VectorXd& b, const Eigen::VectorXd& x, double eps) {
  return (Mbar * x - b).norm() + eps * x.norm();
}

MinimaxStep minimax_step(const Eigen::MatrixXd& Mbar, const Eigen::MatrixXd& Abar, const Eigen::VectorXd& c_prev,
                         double eps) {
  const Eigen::Index r = c_prev.size();
  if (r == 0 || Mbar.rows() != r || Mbar.cols() != r || Abar.rows() != r || Abar.cols() != r)
    throw InvalidArgument("minimax_step: size mismatch");
  if (!(eps >= 0)) throw InvalidArgument("minimax_step: eps must be >= 0");
  const Eigen::VectorXd b = Abar * c_prev;
  MinimaxStep out;
  if (r == 1) {
    out.x = Eigen::VectorXd::Ones(1);
    out.objective = minimax_objective(Mbar, b, out.x, eps);
    return out;
  }
  // x = x0 + N z with N an orthonormal basis of the complement of 1
  const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(r, 1.0 / r);
  Eigen::HouseholderQR<Eigen::MatrixXd> hq(Eigen::MatrixXd::Ones(r, 1));
  const Eigen::MatrixXd Qfull = hq.householderQ() * Eigen::MatrixXd::Identity(r, r);
  const Eigen::MatrixXd N = Qfull.rightCols(r - 1);
  const Eigen::MatrixXd A = Mbar * N;
  const Eigen::VectorXd bp = b - Mbar * x0;

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
  Eigen::VectorXd z = cod.solve(bp);
  if (eps == 0.0) {
    out.x = x0 + N * z;
    out.objective = minimax_objective(Mbar, b, out.x, 0.0);
    out.gap = (A.transpose() * (A * z - bp)).norm() * std::max(1.0, z.norm());
    return out;
  }

  const double scale = std::max(1.0, bp.norm());
  auto fmu = [&](const Eigen::VectorXd& zz, double mu) {
    const Eigen::VectorXd w = A * zz - bp;
    const Eigen::VectorXd y = x0 + N * zz;
    return std::sqrt(w.squaredNorm() + mu * mu) + eps * std::sqrt(y.squaredNorm() + mu * mu);
  };
  double mu = 1e-2 * scale;
  int iters = 0;
  const int cap = 2000;
  auto certificate = [&](const Eigen::VectorXd& zz, double m) {
    const Eigen::VectorXd x = x0 + N * zz;
    const Eigen::VectorXd w = Mbar * x - b;
    const double f = w.norm() + eps * x.norm();
    // u = 0 is always dual feasible with value eps / sqrt(r)
    double dual = eps / std::sqrt(double(r));
    const Eigen::VectorXd u = w / std::sqrt(w.squaredNorm() + m * m);
    const Eigen::VectorXd a = Mbar.transpose() * u;
    const double sa = a.sum();
    const double disc = sa * sa - double(r) * (a.squaredNorm() - eps * eps);
    if (disc >= 0) dual = std::max(dual, (sa + std::sqrt(disc)) / r - u.dot(b));
    return std::pair<double, double>{f, f - dual};
  };
  double gap = INFINITY;
  while (true) {
    for (int it = 0; it < 200; ++it, ++iters) {
      const Eigen::VectorXd w = A * z - bp;
      const Eigen::VectorXd y = x0 + N * z;
      const double p1 = std::sqrt(w.squaredNorm() + mu * mu);
      const double p2 = std::sqrt(y.squaredNorm() + mu * mu);
      const Eigen::VectorXd g1 = A.transpose() * w, g2 = N.transpose() * y;
      const Eigen::VectorXd g = g1 / p1 + eps * g2 / p2;
      Eigen::MatrixXd Hs = A.transpose() * A / p1 - g1 * g1.transpose() / (p1 * p1 * p1) +
                           eps * (Eigen::MatrixXd::Identity(r - 1, r - 1) / p2 - g2 * g2.transpose() / (p2 * p2 * p2));
      Hs = 0.5 * (Hs + Hs.transpose()).eval();
      Hs.diagonal().array() += 1e-15 * (1.0 + Hs.diagonal().cwiseAbs().maxCoeff());
      Eigen::LDLT<Eigen::MatrixXd> ldlt(Hs);
      Eigen::VectorXd dz = -ldlt.solve(g);
      double dec = -g.dot(dz);
      if (!std::isfinite(dec) || dec < 0) {
        dz = -g;
        dec = g.squaredNorm();
      }
      if (dec < 1e-26 * scale) break;
      const double f0 = fmu(z, mu);
      double step = 1.0;
      while (step > 1e-12 && fmu(z + step * dz, mu) > f0 - 0.25 * step * dec) step *= 0.5;
      if (step <= 1e-12) break;
      z += step * dz;
    }
    const auto [f, g] = certificate(z, mu);
    gap = g;
    if (gap <= 1e-10 || mu < 1e-16 * scale) break;
    if (iters > cap) break;
    mu *= 0.1;
  }
  out.x = x0 + N * z;
  out.objective = minimax_objective(Mbar, b, out.x, eps);
  out.gap = gap;
  out.iterations = iters;
  if (!(gap <= 1e-9)) {
    std::vector<double> best(out.x.data(), out.x.data() + out.x.size());
    throw SolverFailure("minimax_step: objective gap not certified", best, gap);
  }
  return out;
}

std::vector<double> time_grid(double t0, double dt, double T) {
  if (!(dt > 0)) throw InvalidArgument("time grid: dt must be > 0");
  if (!(t0 < T)) throw InvalidArgument("time grid: t0 must be < T");
  const double steps = (T - t0) / dt;
  const long J = std::lround(steps);
  if (std::abs(steps - J) > 1e-6) throw InvalidArgument("time grid: dt does not divide T - t0");
  std::vector<double> t;
  for (long j = 0; j <= J; ++j) t.push_back(t0 + j * dt);
  return t;
}

MinimaxRun minimax_run(const ProductFormula& pf, const SpectralOracle& oracle, const Statevector& psi,
                       const MinimaxConfig& cfg, bool keep_states) {
  if (cfg.steps.empty()) throw InvalidArgument("minimax_run: empty step tuple");
  if (cfg.k0 < 1) throw InvalidArgument("minimax_run: k0 must be >= 1");
  if (!(cfg.eps >= 0)) throw InvalidArgument("minimax_run: eps must be >= 0");
  MinimaxRun run;
  run.t = time_grid(cfg.t0, cfg.dt, cfg.T);
  const std::size_t G = run.t.size();
  const auto r = static_cast<Eigen::Index>(cfg.steps.size());
  if (cfg.c0 && cfg.c0->size() != r) throw InvalidArgument("minimax_run: initial vector has wrong length");

  std::vector<std::vector<Statevector>> states(G);
  std::vector<Statevector> exact(G);
  parallel_for(G, cfg.threads, [&](std::size_t j) {
    states[j] = trotter_states(pf, psi, run.t[j], cfg.steps);
    exact[j] = oracle.evolve(psi, run.t[j]);
  });
  run.M.resize(G);
  run.Mbar.resize(G);
  run.Q.resize(G);
  run.Abar.resize(G);
  run.L.resize(G);
  run.c_exact.resize(G);
  run.err_exactdata.resize(G);
  run.m_deviation.resize(G);
  parallel_for(G, cfg.threads, [&](std::size_t j) {
    run.M[j] = gram_matrix(states[j]);
    run.L[j] = l_exact(exact[j], states[j]);
    if (j > 0) {
      std::vector<Statevector> prop;
      for (const auto& s : states[j - 1]) prop.push_back(pf.repeat(s, cfg.dt / cfg.k0, cfg.k0));
      run.Q[j] = q_matrix(prop, states[j]);
    } else {
      run.Q[j] = Eigen::MatrixXd::Zero(r, r);
    }
    const NoisyOverlaps nz = inject_noise(run.M[j], run.Q[j], cfg.eps, cfg.seed, j);
    run.Mbar[j] = nz.M;
    run.Abar[j] = nz.A;
    run.m_deviation[j] = nz.m_deviation;
    run.c_exact[j] = dynamic_project(run.M[j], run.L[j]).c;
    std::vector<double> ce(run.c_exact[j].data(), run.c_exact[j].data() + r);
    run.err_exactdata[j] = mpf_frobenius(exact[j], states[j], ce);
  });

  run.c.resize(G);
  run.objective.assign(G, 0.0);
  run.gap.assign(G, 0.0);
  run.c[0] = cfg.c0 ? *cfg.c0 : run.c_exact[0];
  for (std::size_t j = 1; j < G; ++j) {
    const MinimaxStep st = minimax_step(run.Mbar[j], run.Abar[j], run.c[j - 1], cfg.eps);
    run.c[j] = st.x;
    run.objective[j] = st.objective;
    run.gap[j] = st.gap;
  }
  run.err_estimate.resize(G);
  run.l1_condition.resize(G);
  for (std::size_t j = 0; j < G; ++j) {
    std::vector<double> c(run.c[j].data(), run.c[j].data() + r);
    run.err_estimate[j] = mpf_frobenius(exact[j], states[j], c);
    run.l1_condition[j] = run.c[j].cwiseAbs().sum();
  }
  if (keep_states) run.states = std::move(states);
  return run;
}

std::vector<Eigen::VectorXd> dynamic_recursion(const MinimaxRun& run) {
  std::vector<Eigen::VectorXd> c(run.t.size());
  c[0] = run.c[0];
  for (std::size_t j = 1; j < run.t.size(); ++j) {
    const Eigen::MatrixXd& Mb = run.Mbar[j];
    c[j] = dynamic_project(Mb.transpose() * Mb, Mb.transpose() * (run.Abar[j] * c[j - 1])).c;
  }
  return c;
}

Eigen::MatrixXd pseudo_inverse_sym(const Eigen::MatrixXd& P, double rel_cutoff) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (P + P.transpose()));
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev[i]) > rel_cutoff * top) inv[i] = 1.0 / ev[i];
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

std::vector<Theorem2Step> theorem2_bound(const Theorem2Inputs& in) {
  const std::size_t G = in.Mbar.size();
  if (G < 2) throw InvalidArgument("theorem2_bound: need at least two grid points");
  if (in.Abar.size() != G || in.c_hat.size() != G || in.c_exact_norms.size() != G || in.gamma.size() != G)
    throw InvalidArgument("theorem2_bound: input sequences must have equal length");
  const Eigen::Index r = in.c_exact0.size();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(r, r);
  const Eigen::MatrixXd J1 = Eigen::MatrixXd::Ones(r, r);
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(r);
  const double e2 = in.eps * in.eps;

  std::vector<Theorem2Step> out;
  for (std::size_t j = 1; j < G; ++j) {
    Eigen::MatrixXd P = in.Mbar[0].transpose() * in.Mbar[0] + J1 + e2 * I;
    Eigen::VectorXd rv = one + in.c_exact0;
    double alpha = 1.0 + in.c_exact0.squaredNorm();
    for (std::size_t s = 1; s <= j; ++s) {
      const Eigen::MatrixXd& Mb = in.Mbar[s];
      const Eigen::MatrixXd& Ab = in.Abar[s];
      const Eigen::MatrixXd Wp = pseudo_inverse_sym(P + Ab.transpose() * Ab);
      const double q = s < j ? 2.0 : 1.0;
      const Eigen::MatrixXd MA = Mb.transpose() * Ab;
      alpha = alpha + 1.0 - rv.dot(Wp * rv);
      rv = MA * Wp * rv + one;
      P = J1 + q * e2 * I + Mb.transpose() * Mb - MA * Wp * MA.transpose();
      P = 0.5 * (P + P.transpose()).eval();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()[0] < -1e-10 * es.eigenvalues().cwiseAbs().maxCoeff())
      throw NumericalDegeneracy("theorem2_bound: P lost positive definiteness at step " + std::to_string(j));
    double sum_gamma = 0;
    for (std::size_t s = 0; s < j; ++s) sum_gamma += std::sqrt(double(r)) * in.gamma[s];
    double psi = 2.0 * in.eps * in.c_exact_norms[j];
    for (std::size_t s = 1; s < j; ++s) psi += 4.0 * in.eps * in.c_exact_norms[s];
    Theorem2Step st;
    st.P = P;
    st.alpha = alpha;
    st.r = rv;
    st.beta_hat = std::pow(sum_gamma + psi, 2) - alpha + in.c_hat[j].dot(P * in.c_hat[j]);
    if (st.beta_hat < 0)
      throw NumericalDegeneracy("theorem2_bound: negative beta at step " + std::to_string(j));
    const Eigen::MatrixXd Pp = pseudo_inverse_sym(P);
    st.bound.resize(r);
    for (Eigen::Index i = 0; i < r; ++i) st.bound[i] = 2.0 * std::sqrt(st.beta_hat) * std::sqrt(std::max(0.0, Pp(i, i)));
    st.bound_max = st.bound.maxCoeff();
    out.push_back(std::move(st));
  }
  return out;
}

double gamma_term(double theorem1_value, double alpha_p, int p, double dt, int k0) {
  double f = 1;
  for (int i = 2; i <= p + 1; ++i) f *= i;
  return theorem1_value + 2.0 * alpha_p * std::pow(dt, p + 1) / (f * std::pow(double(k0), p));
}

}  // namespace mpflab
