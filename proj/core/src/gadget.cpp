#include "critising/gadget.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "critising/error.hpp"
#include "critising/landscape.hpp"

namespace critising {

namespace {

void require_even_cloud(std::int64_t t) {
  require(t >= 2 && t % 2 == 0, ErrorCode::kPrecondition,
          "cloud size t must be a positive even integer, got " + std::to_string(t));
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

double beta_from_bhat(std::int64_t t, double bhat) {
  require_even_cloud(t);
  const double half = static_cast<double>(t) / 2.0;
  require(bhat > 0.0 && bhat < half, ErrorCode::kDomain,
          "bhat must lie in (0, t/2); got " + num(bhat) + " with t = " + std::to_string(t));
  const double td = static_cast<double>(t);
  return (2.0 + g_mono_excess(2.0 * bhat / td)) / (2.0 * td);
}

double gamma_from_uhat(std::int64_t t, double bhat, double uhat, int max_degree) {
  require_even_cloud(t);
  const double half = static_cast<double>(t) / 2.0;
  require(max_degree >= 1, ErrorCode::kPrecondition, "max degree must be at least 1");
  require(bhat > 0.0 && bhat < uhat && uhat < half, ErrorCode::kDomain,
          "need 0 < bhat < uhat < t/2; got bhat = " + num(bhat) + ", uhat = " + num(uhat) +
              ", t = " + std::to_string(t));
  const double td = static_cast<double>(t);
  const double excess = g_mono_excess(2.0 * uhat / td) - g_mono_excess(2.0 * bhat / td);
  return excess / (2.0 * td * max_degree);
}

GadgetParams schedule_params(int n, double epsilon, double tau, int max_degree) {
  require(n >= 4, ErrorCode::kPrecondition, "paper schedule needs n >= 4");
  require(epsilon > 0.0 && epsilon < 0.5, ErrorCode::kPrecondition,
          "epsilon must lie in (0, 1/2)");
  require(tau > 1.0, ErrorCode::kPrecondition, "tau must exceed 1");

  GadgetParams p;
  p.mode = ScheduleMode::kPaper;
  p.epsilon = epsilon;
  p.tau = tau;
  p.max_degree = max_degree;
  p.delta = epsilon / 6.0;
  p.delta_prime = epsilon / 12.0;
  p.C = static_cast<int>(std::ceil(3.0 / epsilon));
  p.c = 1.0 / (p.C + 1);

  std::int64_t t = 1;
  for (int k = 0; k < p.C; ++k) {
    require(t <= kMaxCloudSize / n, ErrorCode::kOverflow,
            "t = n^C = " + std::to_string(n) + "^" + std::to_string(p.C) +
                " exceeds the representable range 2^53");
    t *= n;
  }
  require_even_cloud(t);
  p.t = t;
  const double td = static_cast<double>(t);
  p.bhat = std::pow(td, 0.75 + p.delta);
  p.uhat = p.bhat + std::pow(td, 0.75 + p.delta_prime);
  require(p.bhat < td / 2.0, ErrorCode::kDomain,
          "bhat = t^(3/4+delta) is not below t/2 for t = " + std::to_string(t));
  require(p.uhat < td / 2.0, ErrorCode::kDomain,
          "uhat = bhat + t^(3/4+delta') is not below t/2 for t = " + std::to_string(t));
  p.beta = beta_from_bhat(t, p.bhat);
  p.gamma = gamma_from_uhat(t, p.bhat, p.uhat, max_degree);
  return p;
}

GadgetParams lab_params(double epsilon, double tau, const LabOverrides& overrides,
                        int max_degree) {
  require(epsilon > 0.0, ErrorCode::kPrecondition, "epsilon must be positive");
  require(tau > 1.0, ErrorCode::kPrecondition, "tau must exceed 1");
  require_even_cloud(overrides.t);

  GadgetParams p;
  p.mode = ScheduleMode::kLab;
  p.epsilon = epsilon;
  p.tau = tau;
  p.max_degree = max_degree;
  p.delta = overrides.delta.value_or(epsilon / 6.0);
  p.delta_prime = overrides.delta_prime.value_or(epsilon / 12.0);
  p.C = static_cast<int>(std::ceil(3.0 / epsilon));
  p.c = 1.0 / (p.C + 1);
  p.t = overrides.t;
  const double td = static_cast<double>(p.t);

  p.bhat = std::round(overrides.bhat.value_or(std::pow(td, 0.75 + p.delta)));
  require(p.bhat >= 1.0 && p.bhat < td / 2.0, ErrorCode::kDomain,
          "rounded bhat = " + num(p.bhat) + " must lie in [1, t/2); override --bhat");
  p.uhat = overrides.uhat.value_or(p.bhat + std::pow(td, 0.75 + p.delta_prime));
  require(p.uhat > p.bhat && p.uhat < td / 2.0, ErrorCode::kDomain,
          "uhat = " + num(p.uhat) + " must lie in (bhat, t/2); override --uhat");
  p.beta = beta_from_bhat(p.t, p.bhat);
  p.gamma = gamma_from_uhat(p.t, p.bhat, p.uhat, max_degree);
  return p;
}

void validate(const GadgetParams& p) {
  require_even_cloud(p.t);
  const double half = static_cast<double>(p.t) / 2.0;
  require(p.bhat > 0.0 && p.bhat < p.uhat && p.uhat < half, ErrorCode::kDomain,
          "parameters must satisfy 0 < bhat < uhat < t/2");
  require(std::isfinite(p.beta) && p.beta > 0.0 && std::isfinite(p.gamma) && p.gamma > 0.0,
          ErrorCode::kDomain, "couplings must be positive and finite");
  require(p.tau > 1.0, ErrorCode::kPrecondition, "tau must exceed 1");
  require(p.max_degree >= 1, ErrorCode::kPrecondition, "max degree must be at least 1");
}

IsingInstance make_instance(Graph base, std::int64_t t, double beta, double gamma) {
  require(t >= 1, ErrorCode::kPrecondition, "cloud size must be positive");
  require(std::isfinite(beta) && beta >= 0.0 && std::isfinite(gamma) && gamma >= 0.0,
          ErrorCode::kDomain, "couplings must be nonnegative and finite");
  require(t <= kMaxCloudSize / std::max(1, base.num_vertices()), ErrorCode::kOverflow,
          "N = n t is not representable");
  return IsingInstance{std::move(base), t, beta, gamma};
}

IsingInstance build_instance(const Graph& g, const GadgetParams& p) {
  validate(p);
  require(g.max_degree() <= p.max_degree, ErrorCode::kPrecondition,
          "graph max degree " + std::to_string(g.max_degree()) +
              " exceeds the schedule's degree " + std::to_string(p.max_degree));
  return make_instance(g, p.t, p.beta, p.gamma);
}

Eigen::MatrixXd materialize_dense(const IsingInstance& inst, std::int64_t cap) {
  const std::int64_t n_spins = inst.num_spins();
  require(n_spins <= cap, ErrorCode::kTooLarge,
          "dense matrix of size N = " + std::to_string(n_spins) + " exceeds cap " +
              std::to_string(cap));
  const auto t = static_cast<Eigen::Index>(inst.t);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n_spins, n_spins);
  for (int v = 0; v < inst.base.num_vertices(); ++v) {
    J.block(v * t, v * t, t, t).setConstant(inst.beta);
    for (Eigen::Index i = 0; i < t; ++i) J(v * t + i, v * t + i) = 0.0;
  }
  for (const auto& e : inst.base.edges()) {
    J.block(e.u * t, e.v * t, t, t).setConstant(-inst.gamma);
    J.block(e.v * t, e.u * t, t, t).setConstant(-inst.gamma);
  }
  return J;
}

}  // namespace critising
