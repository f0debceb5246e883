#include <cmath>

#include <gtest/gtest.h>

#include "critising/dynamics.hpp"
#include "critising/error.hpp"
#include "critising/partition.hpp"
#include "critising/philox.hpp"
#include "oracles.hpp"

namespace critising {
namespace {

TEST(Philox, KnownAnswers) {
  using C = Philox4x32::Counter;
  EXPECT_EQ(Philox4x32::block({0, 0, 0, 0}, {0, 0}),
            (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                              {0xffffffff, 0xffffffff}),
            (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                              {0xa4093822, 0x299f31d0}),
            (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, StreamsDiffer) {
  Philox4x32 a(1, 0), b(1, 1), c(1, 0);
  int same = 0;
  for (int k = 0; k < 64; ++k) {
    const auto x = a();
    same += x == b();
    EXPECT_EQ(x, c());
  }
  EXPECT_LT(same, 2);
  Philox4x32 u(5, 0);
  for (int k = 0; k < 1000; ++k) {
    const double x = u.uniform();
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
  }
}

TEST(SpinState, CachedSums) {
  SpinState s({1, 1, -1, 1, -1, -1}, 3);
  EXPECT_EQ(s.magnetization(), 0);
  EXPECT_EQ(s.cloud_magnetization(), (std::vector<std::int64_t>{1, -1}));
  s.set(2, 1);
  s.set(4, 1);
  EXPECT_EQ(s.magnetization(), 4);
  EXPECT_EQ(s.cloud_magnetization(), (std::vector<std::int64_t>{3, 1}));
  EXPECT_THROW(SpinState({1, 0}, 1), Error);
}

TEST(Glauber, Reproducible) {
  GlauberOptions o;
  o.steps = 5000;
  o.stride = 7;
  o.seed = 42;
  const auto inst = make_instance(complete_graph(4), 8, 0.14, 0.01);
  const auto a = glauber_run(inst, o);
  const auto b = glauber_run(inst, o);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.sample_steps.size(), 5000u / 7);
  EXPECT_EQ(a.cloud_m.size(), a.m.size() * 4);
  o.replica = 1;
  EXPECT_NE(glauber_run(inst, o).m, a.m);
}

TEST(Glauber, CloudSumsMatchTotal) {
  GlauberOptions o;
  o.steps = 2000;
  o.seed = 3;
  const auto traj = glauber_run(make_instance(random_regular(6, 3, 1), 6, 0.2, 0.03), o);
  for (std::size_t k = 0; k < traj.m.size(); ++k) {
    std::int64_t sum = 0;
    for (int v = 0; v < 6; ++v) sum += traj.cloud_m[k * 6 + v];
    ASSERT_EQ(sum, traj.m[k]);
  }
}

TEST(Glauber, FreeSpinsHaveUnitVariance) {
  GlauberOptions o;
  o.steps = 2'000'000;
  o.stride = 1000;
  o.seed = 7;
  const std::int64_t n = 10000;
  const auto traj = glauber_run(CurieWeiss{n, 0.0}, o);
  double sq = 0.0;
  for (auto m : traj.m) sq += static_cast<double>(m) * static_cast<double>(m);
  EXPECT_NEAR(sq / traj.m.size() / n, 1.0, 0.05 * 3);
}

TEST(Glauber, SingleSpinIsFair) {
  GlauberOptions o;
  o.steps = 200000;
  o.seed = 1;
  const auto traj = glauber_run(CurieWeiss{1, 0.7}, o);
  double plus = 0.0;
  for (auto m : traj.m) plus += m > 0;
  EXPECT_NEAR(plus / traj.m.size(), 0.5, 0.01);
}

// Long-run frequencies against exact Boltzmann weights, with a per-state
// band of four binomial standard deviations inflated for autocorrelation.
void expect_boltzmann(const Eigen::MatrixXd& J, std::uint64_t steps, std::uint64_t seed) {
  const int n = static_cast<int>(J.rows());
  const auto p = oracle::boltzmann(J);
  std::vector<double> counts(p.size(), 0.0);
  GlauberOptions o;
  o.steps = steps;
  o.seed = seed;
  o.record_clouds = false;
  o.stride = steps;
  glauber_run(J, o, [&](std::uint64_t, const SpinState& s) {
    std::uint64_t mask = 0;
    for (int i = 0; i < n; ++i) mask |= std::uint64_t(s[i] < 0) << i;
    counts[mask] += 1.0;
  });
  // Chi-square with an effective sample size of steps / n (one sweep).
  const double eff = static_cast<double>(steps) / n;
  double chi2 = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double f = counts[k] / static_cast<double>(steps);
    chi2 += eff * (f - p[k]) * (f - p[k]) / p[k];
  }
  const double dof = static_cast<double>(p.size() - 1);
  // 0.1% upper quantile via the Wilson-Hilferty approximation.
  const double z = 3.090;
  const double q = dof * std::pow(1 - 2 / (9 * dof) + z * std::sqrt(2 / (9 * dof)), 3);
  EXPECT_LT(chi2, q);
}

TEST(Glauber, DetailedBalanceThreeSpins) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Constant(3, 3, 0.4 / 3);
  J.diagonal().setZero();
  expect_boltzmann(J, 10'000'000, 11);
}

TEST(Glauber, StationaryGadget) {
  const auto inst = make_instance(Graph(2, {{0, 1}}), 4, 0.3, 0.15);
  expect_boltzmann(materialize_dense(inst), 20'000'000, 12);
}

TEST(Glauber, FieldDrift) {
  GlauberOptions o;
  o.steps = 300000;
  o.seed = 2;
  o.drift_check_interval = 100000;
  const auto inst = make_instance(random_regular(8, 3, 2), 10, 0.1, 0.02);
  EXPECT_LE(glauber_run(materialize_dense(inst), o).max_field_drift, 1e-9);
  EXPECT_LE(glauber_run(inst, o).max_field_drift, 1e-9);
  EXPECT_LE(glauber_run(CurieWeiss{500, 1.0}, o).max_field_drift, 1e-9);
}

TEST(Glauber, BurnIn) {
  EXPECT_EQ(default_burn_in(1), 0u);
  EXPECT_EQ(default_burn_in(100), static_cast<std::uint64_t>(std::ceil(1000 * std::log(100.0))));
}

TEST(CurieWeiss, ExactMean) {
  // N = 2: m in {-2, 0, 2} with weights e^(beta/2) * {1, 2 e^(-beta), 1}... in
  // closed form E|m| = 4 e^(b/2) / (2 e^(b/2) + 2 e^(-b/2)).
  const double b = 0.8;
  EXPECT_NEAR(curie_weiss_mean_abs_m(2, b),
              4 * std::exp(b / 2) / (2 * std::exp(b / 2) + 2 * std::exp(-b / 2)), 1e-14);
}

TEST(CurieWeiss, SimulationMatchesExact) {
  GlauberOptions o;
  o.steps = 4'000'000;
  o.stride = 64;
  o.seed = 9;
  for (double beta : {0.5, 1.0, 1.5}) {
    const auto traj = glauber_run(CurieWeiss{64, beta}, o);
    double sum = 0.0;
    for (auto m : traj.m) sum += std::abs(static_cast<double>(m));
    const double exact = curie_weiss_mean_abs_m(64, beta);
    EXPECT_NEAR(sum / traj.m.size(), exact, 0.03 * exact) << beta;
  }
}

TEST(Exponent, NeedsFourSizes) {
  ExponentOptions o;
  o.sizes = {16, 32, 64};
  EXPECT_THROW(magnetization_exponent(o), Error);
}

TEST(PhaseOccupancy, StrongCouplingOpposes) {
  const auto inst = make_instance(Graph(2, {{0, 1}}), 16, 0.08, 0.05);
  GlauberOptions o;
  o.steps = 400000;
  o.seed = 4;
  const auto shares = phase_occupancy(inst, o);
  ASSERT_FALSE(shares.empty());
  EXPECT_EQ(shares.front().pattern.to_string(), "+-");
  EXPECT_GT(shares.front().fraction, 0.8);
  // Exact orthant ranking agrees.
  EXPECT_GT(orthant_logZ(inst, CutAssignment::parse("+-")).log_z.value,
            orthant_logZ(inst, CutAssignment::parse("++")).log_z.value);
}

TEST(PhaseOccupancy, DecoupledIsUniform) {
  const auto inst = make_instance(Graph(3, {}), 15, 0.0, 0.0);
  GlauberOptions o;
  o.steps = 400000;
  o.stride = 50;
  o.seed = 5;
  const auto shares = phase_occupancy(inst, o);
  ASSERT_EQ(shares.size(), 4u);
  for (const auto& s : shares) EXPECT_NEAR(s.fraction, 0.25, 0.03);
}

TEST(PhaseOccupancy, CompleteGraphPrefersMaxCuts) {
  LabOverrides lo;
  lo.t = 8;
  lo.bhat = 2;
  lo.uhat = 3;
  const auto inst = build_instance(complete_graph(4), lab_params(0.48, 1.1, lo));
  GlauberOptions o;
  o.steps = 2'000'000;
  o.seed = 6;
  const auto shares = phase_occupancy(inst, o);
  ASSERT_FALSE(shares.empty());
  EXPECT_EQ(shares.front().cut, 4);
}

}  // namespace
}  // namespace critising
