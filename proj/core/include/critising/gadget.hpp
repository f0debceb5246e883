#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "critising/graph.hpp"

namespace critising {

enum class ScheduleMode { kPaper, kLab };

// Full parameter schedule of the cloud gadget. In paper mode every field is
// derived from (n, epsilon, tau); in lab mode t, bhat and uhat are chosen
// freely and only the coupling formulas are shared.
struct GadgetParams {
  ScheduleMode mode = ScheduleMode::kLab;
  double epsilon = 0.0;
  double tau = 0.0;
  int C = 0;
  double delta = 0.0;
  double delta_prime = 0.0;
  std::int64_t t = 0;
  double bhat = 0.0;
  double uhat = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double c = 0.0;
  int max_degree = 3;

  friend bool operator==(const GadgetParams&, const GadgetParams&) = default;
};

// Largest cloud size accepted by the schedule: keeps t and every b in
// [-t/2, t/2] exactly representable as doubles.
inline constexpr std::int64_t kMaxCloudSize = std::int64_t{1} << 53;

// Intra-cloud coupling making bhat the maximizer of the cloud profile on
// b >= 0: beta = ln((t + 2 bhat) / (t - 2 bhat)) / (4 bhat).
double beta_from_bhat(std::int64_t t, double bhat);

// Inter-cloud coupling so that beta + max_degree * gamma equals the same
// expression evaluated at uhat.
double gamma_from_uhat(std::int64_t t, double bhat, double uhat, int max_degree);

// Paper schedule: delta = eps/6, delta' = eps/12, C = ceil(3/eps),
// c = 1/(C+1), t = n^C, bhat = t^(3/4+delta), uhat = bhat + t^(3/4+delta').
GadgetParams schedule_params(int n, double epsilon, double tau, int max_degree = 3);

struct LabOverrides {
  std::int64_t t = 0;
  std::optional<double> bhat;   // default round(t^(3/4+delta))
  std::optional<double> uhat;   // default bhat + t^(3/4+delta')
  std::optional<double> delta;  // default epsilon/6
  std::optional<double> delta_prime;  // default epsilon/12
};

// Lab schedule at desk scale. bhat is rounded to an integer and beta is
// computed from the rounded value, so the integer point is the exact
// maximizer of the cloud profile.
GadgetParams lab_params(double epsilon, double tau, const LabOverrides& overrides,
                        int max_degree = 3);

// Checks the invariants of a parameter set; throws Error on violation.
void validate(const GadgetParams& p);

// Structured G_t(beta, gamma): clouds of size t on each base vertex with
// weight beta inside a cloud and -gamma between clouds of adjacent vertices.
struct IsingInstance {
  Graph base;
  std::int64_t t = 0;
  double beta = 0.0;
  double gamma = 0.0;

  std::int64_t num_spins() const { return base.num_vertices() * t; }
};

// Accepts nonnegative couplings so that decoupled (gamma = 0) and free
// (beta = 0) instances can be expressed; gadget parameters are positive.
IsingInstance make_instance(Graph base, std::int64_t t, double beta, double gamma);
IsingInstance build_instance(const Graph& g, const GadgetParams& p);

inline constexpr std::int64_t kDefaultDenseCap = 10000;

// Dense interaction matrix; spin (v, i) has index v * t + i.
Eigen::MatrixXd materialize_dense(const IsingInstance& inst,
                                  std::int64_t cap = kDefaultDenseCap);

}  // namespace critising
