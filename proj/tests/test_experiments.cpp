#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mpflab/errors.hpp"
#include "mpflab/experiments.hpp"

using namespace mpflab;

TEST(Config, ParseAndTypedGetters) {
  std::istringstream in("# header\nn = 6\nsteps = 4, 13, 17  # tuple\nratio=0.5\nflag = true\nseed = 18446744073709551615\n");
  const auto cfg = Config::parse(in);
  EXPECT_EQ(cfg.get_int("n", 0), 6);
  EXPECT_EQ(cfg.get_ints("steps", {}), (std::vector<int>{4, 13, 17}));
  EXPECT_DOUBLE_EQ(cfg.get_double("ratio", 0), 0.5);
  EXPECT_TRUE(cfg.get_bool("flag", false));
  EXPECT_EQ(cfg.get_u64("seed", 0), 18446744073709551615ull);
  EXPECT_EQ(cfg.get_string("absent", "dflt"), "dflt");
  EXPECT_EQ(cfg.effective().at("absent"), "dflt");
  EXPECT_TRUE(cfg.unused().empty());
}

TEST(Config, Errors) {
  std::istringstream bad("n 6\n");
  EXPECT_THROW(Config::parse(bad), InvalidArgument);
  Config cfg;
  cfg.set("n", "six");
  cfg.set("extra", "1");
  EXPECT_THROW(cfg.get_int("n", 0), InvalidArgument);
  EXPECT_EQ(cfg.unused(), (std::vector<std::string>{"extra"}));
  EXPECT_THROW(Config::load("/nonexistent/path.cfg"), InvalidArgument);
}

TEST(Grid, LinearAndLog) {
  const auto lin = make_grid(0.0, 1.0, 5, "linear");
  EXPECT_EQ(lin, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  const auto lg = make_grid(0.01, 1.0, 3, "log");
  EXPECT_NEAR(lg[1], 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(lg.back(), 1.0);
  EXPECT_EQ(make_grid(2.0, 2.0, 1, "linear"), (std::vector<double>{2.0}));
  EXPECT_THROW(make_grid(0.0, 1.0, 3, "log"), InvalidArgument);
  EXPECT_THROW(make_grid(0.0, 1.0, 3, "cubic"), InvalidArgument);
}

TEST(FitScaling, RecoversExactPowerLaw) {
  std::vector<ScalingRow> rows;
  for (double n : {4.0, 6.0, 10.0})
    for (double t : {0.2, 0.5, 1.3})
      for (double k : {2.0, 7.0}) rows.push_back({n, t, k, 0.3 * std::pow(n, 2.1) * std::pow(t, 5.5) / std::pow(k, 3.0)});
  const auto f = fit_scaling(rows, {});
  EXPECT_NEAR(f.a, 0.3, 1e-10);
  EXPECT_NEAR(f.b, 2.1, 1e-10);
  EXPECT_NEAR(f.c, 5.5, 1e-10);
  EXPECT_NEAR(f.d, 3.0, 1e-10);
  EXPECT_LT(f.rms_log_residual, 1e-10);
  const auto fixed = fit_scaling(rows, {2.1, 5.5, 3.0});
  EXPECT_NEAR(fixed.a, 0.3, 1e-12);
}

TEST(FitScaling, DegenerateDesignRejected) {
  std::vector<ScalingRow> rows{{6, 0.5, 1, 1e-3}, {6, 1.0, 1, 2e-3}};
  EXPECT_THROW(fit_scaling(rows, {}), InvalidArgument);
  EXPECT_THROW(fit_scaling({{6, 0.5, 1, -1.0}}, {2.0, 1.0, 0.0}), InvalidArgument);
  EXPECT_THROW(fit_scaling({}, {}), InvalidArgument);
}

TEST(Slope, LogLogAndWindow) {
  std::vector<double> t, y;
  for (int i = 1; i <= 20; ++i) {
    t.push_back(0.1 * i);
    y.push_back(std::min(0.5, 1e-3 * std::pow(0.1 * i, 6)));
  }
  const auto idx = presaturation_window(t, y);
  ASSERT_FALSE(idx.empty());
  const double hi = t[idx.back()];
  EXPECT_LE(y[idx.back()], 0.05);
  EXPECT_GT(y[idx.back() + 1], 0.05);
  EXPECT_GE(t[idx.front()], hi / 2);
  std::vector<double> wt, wy;
  for (auto i : idx) {
    wt.push_back(t[i]);
    wy.push_back(y[i]);
  }
  EXPECT_NEAR(loglog_slope(wt, wy), 6.0, 1e-10);
  EXPECT_TRUE(presaturation_window({1.0}, {1.0}).empty());
}

TEST(Sweeps, FitColumnsAndOrdering) {
  const auto s = make_heisenberg_setup(10, 1, 2);
  const auto scheme = solve_coefficients(2, {4, 13, 17});
  const auto ts = make_grid(0.0, 3.0, 7, "linear");
  const auto rows = mpf_sweep(s, scheme, ts, 4, false);
  EXPECT_NEAR(rows[0].mpf_error, 0.0, 1e-12);
  EXPECT_NEAR(rows[0].trotter_error_best_k, 0.0, 1e-12);
  EXPECT_TRUE(std::isnan(rows[0].theorem1_bound));
  const auto& r2 = rows[4];
  ASSERT_DOUBLE_EQ(r2.t, 2.0);
  EXPECT_NEAR(r2.fit_value, 0.06 * 100 * 64 * scheme.objective, 1e-12);
  for (const auto& r : rows) {
    if (r.t < 0.5) continue;
    EXPECT_LT(r.mpf_error, r.trotter_error_best_k) << r.t;
    EXPECT_LE(r.trotter_error_best_k, r.lemma1_bound);
  }
}

TEST(Sweeps, TrotterFitShape) {
  const auto s = make_heisenberg_setup(8, 1, 2);
  const auto rows = trotter_sweep(s, {4, 8}, {0.25, 0.5}, 2);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.fit_value, 0.6 * 8 * std::pow(r.t, 3) / (r.k * r.k), 1e-14);
    EXPECT_GT(r.trotter_error / r.fit_value, 0.1);
    EXPECT_LT(r.trotter_error / r.fit_value, 10.0);
    EXPECT_LE(r.trotter_error, r.lemma1_bound);
  }
}

TEST(Setup, LimitsAndCustomHamiltonian) {
  EXPECT_THROW(make_heisenberg_setup(13, 1, 2), ResourceLimit);
  EXPECT_THROW(make_heisenberg_setup(4, 1, 3), InvalidArgument);
  const auto H = PauliSumOp::from_terms(3, {{1.0, "XXI"}, {0.5, "IZZ"}, {0.3, "ZII"}, {0.7, "IYY"}});
  const auto groups = commuting_groups(H);
  PauliSumOp sum(3);
  for (const auto& g : groups) {
    EXPECT_TRUE(g.pairwise_commuting());
    sum = sum + g;
  }
  EXPECT_TRUE(sum.approx_equal(H, 1e-15));
  const auto s = make_custom_setup(H, 2);
  EXPECT_TRUE(s.pf.hamiltonian().approx_equal(H, 1e-14));
  EXPECT_EQ(s.n, 3);
}

TEST(Scenarios, HeaderDeterminismAndErrors) {
  Config cfg;
  cfg.set("n", "4");
  cfg.set("t_count", "3");
  const auto a = run_scenario("trotter-sweep", cfg, 1);
  const auto b = run_scenario("trotter-sweep", cfg, 3);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rfind("# mpf-lab schema v1\n# scenario = trotter-sweep\n", 0), 0u);
  EXPECT_NE(a.find("# n = 4\n"), std::string::npos);
  Config bad = cfg;
  bad.set("bogus", "1");
  EXPECT_THROW(run_scenario("trotter-sweep", bad, 1), InvalidArgument);
  EXPECT_THROW(run_scenario("no-such-scenario", cfg, 1), InvalidArgument);
  Config big;
  big.set("n", "9");
  EXPECT_THROW(run_scenario("bound-eval", big, 1), ResourceLimit);
  EXPECT_EQ(scenario_names().size(), 6u);
}

TEST(Scenarios, CustomHamiltonianFile) {
  const std::string path = ::testing::TempDir() + "custom_h.txt";
  {
    std::ofstream f(path);
    f << "# two-qubit model\n1.0 XX\n0.5 ZI\n-0.4 IZ\n";
  }
  Config cfg;
  cfg.set("hamiltonian", path);
  cfg.set("t_count", "2");
  cfg.set("steps", "1,2");
  const auto out = run_scenario("trotter-sweep", cfg, 1);
  EXPECT_NE(out.find("# hamiltonian = " + path), std::string::npos);
  std::remove(path.c_str());
}

TEST(Format, RoundTripDigits) {
  const double v = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(v)), v);
}
