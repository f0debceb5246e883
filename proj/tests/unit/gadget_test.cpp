#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "critising/error.hpp"
#include "critising/gadget.hpp"
#include "critising/landscape.hpp"

namespace critising {
namespace {

// Reference values evaluated independently at 30 digits.
constexpr double kBeta8_2 = 0.137326536083513711;
constexpr double kBeta4_1 = 0.274653072167027423;
constexpr double kGamma8_2_3 = 0.00827754766814302133;

TEST(Couplings, BetaFromBhat) {
  EXPECT_NEAR(beta_from_bhat(8, 2.0), kBeta8_2, 1e-15);
  EXPECT_NEAR(beta_from_bhat(4, 1.0), kBeta4_1, 1e-15);
  // Small-bias limit is 1/t.
  EXPECT_NEAR(beta_from_bhat(1 << 20, 1e-3) * (1 << 20), 1.0, 1e-14);
  EXPECT_THROW(beta_from_bhat(8, 0.0), Error);
  EXPECT_THROW(beta_from_bhat(8, 4.0), Error);
}

TEST(Couplings, GammaFromUhat) {
  EXPECT_NEAR(gamma_from_uhat(8, 2.0, 3.0, 3), kGamma8_2_3, 1e-15);
  EXPECT_THROW(gamma_from_uhat(8, 2.0, 2.0, 3), Error);
  EXPECT_THROW(gamma_from_uhat(8, 2.0, 4.0, 3), Error);
}

TEST(Couplings, GammaPositiveAndIncreasingInUhat) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 10000; ++k) {
    const std::int64_t t = 2 * (1 + static_cast<std::int64_t>(unit(rng) * 5000));
    const double half = t / 2.0;
    const double bhat = half * (0.01 + 0.9 * unit(rng));
    const double uhat = bhat + (half - bhat) * (0.01 + 0.98 * unit(rng));
    const double g = gamma_from_uhat(t, bhat, uhat, 3);
    ASSERT_GT(g, 0.0) << t << ' ' << bhat << ' ' << uhat;
    const double uhat2 = uhat + (half - uhat) * 0.5;
    ASSERT_GT(gamma_from_uhat(t, bhat, uhat2, 3), g);
  }
}

TEST(Schedule, PaperModeSmallEpsilonBoundary) {
  const GadgetParams p = schedule_params(4, 0.48, 2.0);
  EXPECT_EQ(p.mode, ScheduleMode::kPaper);
  EXPECT_EQ(p.C, 7);
  EXPECT_DOUBLE_EQ(p.delta, 0.08);
  EXPECT_DOUBLE_EQ(p.delta_prime, 0.04);
  EXPECT_EQ(p.t, 16384);
  EXPECT_DOUBLE_EQ(p.c, 1.0 / 8.0);
  EXPECT_NEAR(p.bhat, std::pow(16384.0, 0.83), 1e-9);
  EXPECT_NEAR(p.uhat, p.bhat + std::pow(16384.0, 0.79), 1e-9);
  EXPECT_DOUBLE_EQ(p.beta, beta_from_bhat(p.t, p.bhat));
  // N = n^(C+1).
  EXPECT_EQ(4 * p.t, 65536);
}

TEST(Schedule, Errors) {
  try {
    schedule_params(4, 0.01, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOverflow);
  }
  EXPECT_THROW(schedule_params(4, 0.48, 1.0), Error);
  EXPECT_THROW(schedule_params(3, 0.48, 2.0), Error);
  EXPECT_THROW(schedule_params(4, 0.5, 2.0), Error);
}

TEST(Schedule, LabMode) {
  LabOverrides o;
  o.t = 8;
  o.bhat = 2.0;
  o.uhat = 3.0;
  const GadgetParams p = lab_params(0.48, 1.1, o);
  EXPECT_EQ(p.mode, ScheduleMode::kLab);
  EXPECT_NEAR(p.beta, kBeta8_2, 1e-15);
  EXPECT_NEAR(p.gamma, kGamma8_2_3, 1e-15);

  LabOverrides d;
  d.t = 1024;
  const GadgetParams q = lab_params(0.12, 1.1, d);
  EXPECT_EQ(q.bhat, std::round(std::pow(1024.0, 0.77)));
  EXPECT_NEAR(q.uhat, q.bhat + std::pow(1024.0, 0.76), 1e-12);
  EXPECT_DOUBLE_EQ(q.beta, beta_from_bhat(1024, q.bhat));

  // The default bias rounds onto t/2 when t is this small.
  LabOverrides tiny;
  tiny.t = 64;
  EXPECT_THROW(lab_params(0.48, 1.1, tiny), Error);

  LabOverrides odd;
  odd.t = 7;
  EXPECT_THROW(lab_params(0.48, 1.1, odd), Error);
}

TEST(Schedule, InverseTemperatureNearOneOverT) {
  for (int k = 8; k <= 20; ++k) {
    const double t = std::ldexp(1.0, k);
    const double delta = 0.08;
    const double bhat = std::pow(t, 0.75 + delta);
    if (2 * bhat / t > 0.5) continue;
    const double bt = beta_from_bhat(static_cast<std::int64_t>(t), bhat) * t;
    EXPECT_LE(bt, 1.0 + 8.0 * std::pow(t, -0.5 + 2 * delta)) << k;
    EXPECT_GE(bt, 1.0);
  }
}

TEST(Instance, SingleVertexMatrix) {
  const auto inst = make_instance(Graph(1, {}), 2, 0.5, 0.0);
  const Eigen::MatrixXd J = materialize_dense(inst);
  Eigen::MatrixXd expect(2, 2);
  expect << 0, 0.5, 0.5, 0;
  EXPECT_EQ(J, expect);
}

TEST(Instance, PathMatrix) {
  const auto inst = make_instance(Graph(2, {{0, 1}}), 2, 0.3, 0.1);
  const Eigen::MatrixXd J = materialize_dense(inst);
  Eigen::MatrixXd expect(4, 4);
  expect << 0, 0.3, -0.1, -0.1,
            0.3, 0, -0.1, -0.1,
            -0.1, -0.1, 0, 0.3,
            -0.1, -0.1, 0.3, 0;
  EXPECT_EQ(J, expect);
}

TEST(Instance, CompleteGraphRowSums) {
  const double beta = 0.2, gamma = 0.05;
  const auto inst = make_instance(complete_graph(4), 2, beta, gamma);
  const Eigen::MatrixXd J = materialize_dense(inst);
  for (Eigen::Index i = 0; i < J.rows(); ++i) {
    EXPECT_NEAR(J.row(i).sum(), beta - gamma * 2 * 3, 1e-15);
  }
}

TEST(Instance, SymmetryAndNonzeroCount) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = random_regular(8, 3, seed);
    const std::int64_t t = 6;
    const auto inst = make_instance(g, t, 0.11, 0.02);
    const Eigen::MatrixXd J = materialize_dense(inst);
    EXPECT_TRUE(J.isApprox(J.transpose(), 0.0));
    EXPECT_EQ(J.diagonal().cwiseAbs().sum(), 0.0);
    const std::int64_t nonzeros = (J.array() != 0.0).count();
    EXPECT_EQ(nonzeros, 8 * t * (t - 1) + 2 * static_cast<std::int64_t>(g.num_edges()) * t * t);
  }
}

TEST(Instance, DenseCap) {
  const auto inst = make_instance(complete_graph(4), 3000, 0.001, 0.0001);
  EXPECT_THROW(materialize_dense(inst), Error);
}

TEST(Instance, BuildRejectsInvalid) {
  GadgetParams p;
  p.t = 8;
  p.bhat = 5;
  p.uhat = 6;
  p.beta = 1;
  p.gamma = 1;
  p.tau = 1.1;
  EXPECT_THROW(build_instance(complete_graph(4), p), Error);
  EXPECT_THROW(make_instance(complete_graph(4), 8, -0.1, 0.0), Error);
}

}  // namespace
}  // namespace critising
