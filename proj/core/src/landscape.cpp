#include "critising/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "critising/error.hpp"
#include "critising/partition.hpp"

namespace critising {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

void require_cloud(std::int64_t t) {
  require(t >= 2 && t % 2 == 0, ErrorCode::kPrecondition, "cloud size must be even and >= 2");
}

void require_in_box(double b, std::int64_t t) {
  require(std::abs(b) <= static_cast<double>(t) / 2.0, ErrorCode::kDomain,
          "bias outside [-t/2, t/2]");
}

// Bisection of a function that is positive at lo and non-positive at hi.
template <class F>
double bisect_sign_change(F&& f, double lo, double hi) {
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double entropy(double x) {
  require(x >= 0.0 && x <= 1.0, ErrorCode::kDomain, "entropy argument outside [0, 1]");
  return -(xlogx(x) + xlogx(1.0 - x));
}

double entropy_deficit(double x) {
  require(x >= -1.0 && x <= 1.0, ErrorCode::kDomain, "deficit argument outside [-1, 1]");
  const double ax = std::abs(x);
  if (ax == 1.0) return kLn2;
  return 0.5 * ((1.0 + ax) * std::log1p(ax) + (1.0 - ax) * std::log1p(-ax));
}

double q_profile(double b, std::int64_t t, double beta) {
  require_cloud(t);
  require_in_box(b, t);
  const double td = static_cast<double>(t);
  return 2.0 * beta * b * b + td * (kLn2 - entropy_deficit(2.0 * b / td));
}

double q_derivative(double b, std::int64_t t, double beta) {
  require_cloud(t);
  const double td = static_cast<double>(t);
  require(std::abs(b) < td / 2.0, ErrorCode::kDomain, "dQ/db is unbounded at |b| = t/2");
  return 4.0 * beta * b - 2.0 * std::atanh(2.0 * b / td);
}

double g_mono_excess(double y) {
  require(y >= 0.0 && y < 1.0, ErrorCode::kDomain, "g_mono argument outside [0, 1)");
  if (y < 0.25) {
    // 2 sum_{k>=1} y^(2k) / (2k+1); terms shrink by at least 16x.
    const double y2 = y * y;
    double term = y2;
    double sum = 0.0;
    for (int k = 1; k < 40; ++k) {
      const double add = term / (2 * k + 1);
      sum += add;
      if (add < 1e-18 * sum) break;
      term *= y2;
    }
    return 2.0 * sum;
  }
  return 2.0 * std::atanh(y) / y - 2.0;
}

double g_mono(double y) {
  require(y >= 0.0 && y < 1.0, ErrorCode::kDomain, "g_mono argument outside [0, 1)");
  if (y < 1e-4) {
    const double y2 = y * y;
    return 2.0 * (1.0 + y2 / 3.0 + y2 * y2 / 5.0);
  }
  return 2.0 * std::atanh(y) / y;
}

QScan q_maximizer_scan(std::int64_t t, double beta, double grid_step) {
  require_cloud(t);
  require(grid_step > 0.0, ErrorCode::kPrecondition, "grid step must be positive");
  const double half = static_cast<double>(t) / 2.0;
  const auto cells = static_cast<std::int64_t>(std::floor(half / grid_step));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(cells) + 2);
  for (std::int64_t k = 0; k <= cells; ++k) grid.push_back(static_cast<double>(k) * grid_step);
  if (grid.back() < half) grid.push_back(half);

  std::size_t best = 0;
  double best_value = q_profile(0.0, t, beta);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double value = q_profile(grid[k], t, beta);
    if (value > best_value) {
      best_value = value;
      best = k;
    }
  }

  QScan scan;
  int previous = 0;
  for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
    const double d = q_derivative(grid[k], t, beta);
    const int sign = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (sign != 0) {
      if (previous != 0 && sign != previous) ++scan.sign_changes;
      previous = sign;
    }
  }

  // The interior maximum lies in the cells around the best grid point.
  const double upper_limit = std::nextafter(half, 0.0);
  const double lo = best == 0 ? 0.0 : grid[best - 1];
  const double hi = best + 1 < grid.size() ? std::min(grid[best + 1], upper_limit) : upper_limit;
  auto deriv = [&](double b) { return q_derivative(b, t, beta); };
  const double probe_lo = lo == 0.0 ? std::min(hi, grid_step) * 1e-9 : lo;
  if (probe_lo < hi && deriv(probe_lo) > 0.0 && deriv(hi) <= 0.0) {
    scan.argmax = bisect_sign_change(deriv, probe_lo, hi);
    scan.value = q_profile(scan.argmax, t, beta);
    scan.boundary = false;
    if (scan.value < best_value) {
      scan.argmax = grid[best];
      scan.value = best_value;
      scan.boundary = best == 0 || best + 1 == grid.size();
    }
  } else {
    scan.argmax = grid[best];
    scan.value = best_value;
    scan.boundary = best == 0 || best + 1 == grid.size();
  }
  return scan;
}

double phi(const IsingInstance& inst, const RealBiasVector& b) {
  require_cloud(inst.t);
  require(static_cast<int>(b.size()) == inst.base.num_vertices(), ErrorCode::kLengthMismatch,
          "bias vector length differs from n");
  double total = 0.0;
  for (double bv : b) total += q_profile(bv, inst.t, inst.beta);
  double cross = 0.0;
  for (const auto& e : inst.base.edges()) cross += b[e.u] * b[e.v];
  return total - 4.0 * inst.gamma * cross;
}

std::vector<double> phi_gradient(const IsingInstance& inst, const RealBiasVector& b) {
  require_cloud(inst.t);
  const int n = inst.base.num_vertices();
  require(static_cast<int>(b.size()) == n, ErrorCode::kLengthMismatch,
          "bias vector length differs from n");
  const double half = static_cast<double>(inst.t) / 2.0;
  for (double bv : b) {
    require(std::abs(bv) < half, ErrorCode::kDomain,
            "gradient of Phi is unbounded on the boundary |b_v| = t/2");
  }
  std::vector<double> grad(n);
  for (int v = 0; v < n; ++v) {
    double s = 0.0;
    for (int u : inst.base.neighbors(v)) s += b[u];
    grad[v] = q_derivative(b[v], inst.t, inst.beta) - 4.0 * inst.gamma * s;
  }
  return grad;
}

namespace {

// Maximizer over s in [0, upper] of Q(s) - k s. The derivative
// 4 beta s - 2 atanh(2s/t) - k is concave in s, so the maximum is at 0 or at
// the larger root of the derivative.
double coordinate_argmax(double k, std::int64_t t, double beta, double upper) {
  const double td = static_cast<double>(t);
  auto deriv = [&](double s) { return 4.0 * beta * s - 2.0 * std::atanh(2.0 * s / td) - k; };
  const double bt = beta * td;
  double peak = bt > 1.0 ? 0.5 * td * std::sqrt(1.0 - 1.0 / bt) : 0.0;
  peak = std::min(peak, upper);
  if (deriv(peak) <= 0.0) return 0.0;
  const double root = deriv(upper) >= 0.0 ? upper : bisect_sign_change(deriv, peak, upper);
  if (k <= 0.0) return root;
  const double gain = 2.0 * beta * root * root - td * entropy_deficit(2.0 * root / td) - k * root;
  return gain > 0.0 ? root : 0.0;
}

}  // namespace

OrthantMaximum maximize_phi_orthant(const Graph& g, const GadgetParams& p,
                                    const CutAssignment& signs,
                                    const OrthantAscentOptions& options) {
  validate(p);
  const int n = g.num_vertices();
  require(signs.size() == n, ErrorCode::kLengthMismatch, "sign pattern length differs from n");
  require(g.max_degree() <= p.max_degree, ErrorCode::kPrecondition,
          "graph degree exceeds the schedule's degree");
  const double td = static_cast<double>(p.t);
  const double cap = g_mono(2.0 * p.uhat / td) / (2.0 * td);
  require(p.beta + p.max_degree * p.gamma <= cap * (1.0 + 1e-12), ErrorCode::kPrecondition,
          "beta + max_degree * gamma exceeds the coupling implied by uhat");

  const IsingInstance inst = make_instance(g, p.t, p.beta, p.gamma);
  const double upper = td / 2.0 - options.boundary_inset_scale * td;
  const double tolerance = options.tolerance_scale * td;
  std::vector<double> starts = options.start_magnitudes;
  if (starts.empty()) starts.push_back(p.bhat);

  auto residual_of = [&](const RealBiasVector& b) {
    double worst = 0.0;
    for (int v = 0; v < n; ++v) {
      double s = 0.0;
      for (int u : g.neighbors(v)) s += b[u];
      const double a = signs[v];
      const double mag = a * b[v];
      const double d = a * (4.0 * p.beta * b[v] - 2.0 * std::atanh(2.0 * b[v] / td) -
                            4.0 * p.gamma * s);
      double r = std::abs(d);
      if (mag <= 0.0) r = std::max(0.0, d);
      if (mag >= upper) r = std::max(0.0, -d);
      worst = std::max(worst, r);
    }
    return worst;
  };

  std::vector<OrthantMaximum> runs;
  for (double start : starts) {
    OrthantMaximum run;
    run.b.resize(n);
    const double s0 = std::clamp(start, 0.0, upper);
    for (int v = 0; v < n; ++v) run.b[v] = signs[v] * s0;
    run.residual = residual_of(run.b);
    while (run.residual >= tolerance && run.sweeps < options.max_sweeps) {
      for (int v = 0; v < n; ++v) {
        double s = 0.0;
        for (int u : g.neighbors(v)) s += run.b[u];
        const double k = 4.0 * p.gamma * signs[v] * s;
        run.b[v] = signs[v] * coordinate_argmax(k, p.t, p.beta, upper);
      }
      ++run.sweeps;
      run.residual = residual_of(run.b);
    }
    run.converged = run.residual < tolerance;
    run.value = phi(inst, run.b);
    for (double bv : run.b) run.max_abs_bias = std::max(run.max_abs_bias, std::abs(bv));
    run.within_uhat = run.max_abs_bias <= p.uhat + options.uhat_slack_scale * td;
    runs.push_back(std::move(run));
  }

  auto best = std::max_element(runs.begin(), runs.end(), [](const auto& x, const auto& y) {
    return x.value < y.value;
  });
  const auto [lo, hi] = std::minmax_element(
      runs.begin(), runs.end(), [](const auto& x, const auto& y) { return x.value < y.value; });
  OrthantMaximum result = *best;
  result.multistart_spread = hi->value - lo->value;
  return result;
}

BinomialBounds binomial_entropy_gap(std::int64_t t, std::int64_t b) {
  require_cloud(t);
  require(std::abs(b) <= t / 2, ErrorCode::kDomain, "bias outside [-t/2, t/2]");
  const double td = static_cast<double>(t);
  BinomialBounds out;
  out.upper = td * (kLn2 - entropy_deficit(2.0 * static_cast<double>(b) / td));
  out.lower = out.upper - std::log1p(td);
  out.exact = log_binomial(t, t / 2 + b);
  return out;
}

QbExpansion qb_expansion_check(std::int64_t t, double bhat) {
  require_cloud(t);
  const double td = static_cast<double>(t);
  require(bhat >= 0.0 && bhat <= td / 4.0, ErrorCode::kDomain, "need 0 <= bhat <= t/4");
  QbExpansion out;
  if (bhat == 0.0) return out;
  const double beta = beta_from_bhat(t, bhat);
  out.exact_gap = 2.0 * beta * bhat * bhat - td * entropy_deficit(2.0 * bhat / td);
  const double r = bhat / td;
  out.leading = (4.0 / 3.0) * bhat * r * r * r;
  out.residual = out.exact_gap - out.leading;
  return out;
}

}  // namespace critising
