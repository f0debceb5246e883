#pragma once

#include <cstdint>
#include <vector>

#include "critising/gadget.hpp"
#include "critising/graph.hpp"

namespace critising {

// Continuous cloud biases, |b[v]| <= t/2.
using RealBiasVector = std::vector<double>;

// H(x) = -(x ln x + (1-x) ln(1-x)), with 0 ln 0 = 0.
double entropy(double x);

// ln 2 - H(1/2 + x/2) for x in [-1, 1], accurate for small |x|.
double entropy_deficit(double x);

// Cloud free-energy profile Q(b) = 2 beta b^2 + t H(1/2 + b/t).
double q_profile(double b, std::int64_t t, double beta);

// dQ/db = 4 beta b - ln((t + 2b) / (t - 2b)), for |b| < t/2.
double q_derivative(double b, std::int64_t t, double beta);

// y -> ln((1+y)/(1-y)) / y on (0, 1), extended by continuity to 2 at 0.
double g_mono(double y);

// g_mono(y) - 2, without the cancellation of the direct difference.
double g_mono_excess(double y);

struct QScan {
  double argmax = 0.0;
  double value = 0.0;
  bool boundary = false;  // maximum at b = 0 (or t/2)
  int sign_changes = 0;   // sign changes of dQ/db on the open grid (0, t/2)
};

// Grid search on [0, t/2] with the given step, then bisection of dQ/db
// inside the winning grid cell.
QScan q_maximizer_scan(std::int64_t t, double beta, double grid_step);

// Phi(b) = sum_v Q(b_v) - 4 gamma sum_{uv in E} b_u b_v.
double phi(const IsingInstance& inst, const RealBiasVector& b);

// Component v: 4 beta b_v - 4 gamma S_v - ln((t + 2 b_v)/(t - 2 b_v)) with
// S_v the sum of neighbouring biases. Requires |b_v| < t/2.
std::vector<double> phi_gradient(const IsingInstance& inst, const RealBiasVector& b);

struct OrthantAscentOptions {
  int max_sweeps = 100000;
  double tolerance_scale = 1e-10;   // residual target is tolerance_scale * t
  double boundary_inset_scale = 1e-12;  // eta = scale * t
  double uhat_slack_scale = 1e-6;   // allowed excess over uhat, times t
  std::vector<double> start_magnitudes;  // empty: start at a_v * bhat
};

struct OrthantMaximum {
  RealBiasVector b;
  double value = 0.0;
  double residual = 0.0;
  int sweeps = 0;
  bool converged = false;
  double max_abs_bias = 0.0;
  bool within_uhat = false;
  // Spread of final values over the start points; 0 for a single start.
  double multistart_spread = 0.0;
};

// Maximizes Phi over {b : signs[v] * b[v] in [0, t/2 - eta]} by round-robin
// exact coordinate maximization. Non-convergence is reported in the result.
OrthantMaximum maximize_phi_orthant(const Graph& g, const GadgetParams& p,
                                    const CutAssignment& signs,
                                    const OrthantAscentOptions& options = {});

struct BinomialBounds {
  double lower = 0.0;
  double exact = 0.0;
  double upper = 0.0;
};

// t H(1/2 + b/t) - ln(t+1) <= ln C(t, t/2 + b) <= t H(1/2 + b/t).
BinomialBounds binomial_entropy_gap(std::int64_t t, std::int64_t b);

struct QbExpansion {
  double exact_gap = 0.0;  // Q(bhat) - Q(0) with beta from bhat
  double leading = 0.0;    // (4/3) bhat^4 / t^3
  double residual = 0.0;
};

QbExpansion qb_expansion_check(std::int64_t t, double bhat);

}  // namespace critising
