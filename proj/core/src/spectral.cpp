#include "critising/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "critising/error.hpp"

namespace critising {

std::vector<double> SpectrumReport::eigenvalues() const {
  std::vector<double> out;
  for (const auto& g : groups) out.insert(out.end(), static_cast<std::size_t>(g.multiplicity), g.value);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> jacobi_eigenvalues(const Eigen::MatrixXd& input, double tolerance,
                                       int max_sweeps) {
  require(input.rows() == input.cols(), ErrorCode::kNotSymmetric, "matrix must be square");
  Eigen::MatrixXd a = input;
  const Eigen::Index n = a.rows();
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    }
    return std::sqrt(2.0 * s);
  };
  int sweep = 0;
  for (; sweep < max_sweeps && off_norm() > tolerance * scale; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation zeroing a(p, q).
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  require(off_norm() <= tolerance * scale, ErrorCode::kNoConvergence,
          "Jacobi eigensolver did not converge in " + std::to_string(max_sweeps) + " sweeps");
  std::vector<double> eig(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

Eigen::MatrixXd adjacency_matrix(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.num_vertices(), g.num_vertices());
  for (const auto& e : g.edges()) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  return a;
}

SpectrumReport structured_spectrum(const IsingInstance& inst) {
  const auto adj = jacobi_eigenvalues(adjacency_matrix(inst.base));
  const double td = static_cast<double>(inst.t);
  SpectrumReport r;
  for (double lam : adj) r.groups.push_back({inst.beta * (td - 1.0) - inst.gamma * td * lam, 1});
  const std::int64_t rest = inst.base.num_vertices() * (inst.t - 1);
  if (rest > 0) r.groups.push_back({-inst.beta, rest});
  r.lambda_min = std::numeric_limits<double>::infinity();
  r.lambda_max = -std::numeric_limits<double>::infinity();
  for (const auto& g : r.groups) {
    r.lambda_min = std::min(r.lambda_min, g.value);
    r.lambda_max = std::max(r.lambda_max, g.value);
  }
  if (r.groups.empty()) r.lambda_min = r.lambda_max = 0.0;
  r.diameter = r.lambda_max - r.lambda_min;
  r.norm_intra = td * inst.beta;
  double spread = 0.0;
  for (double lam : adj) spread = std::max(spread, std::abs(lam));
  r.norm_inter = td * inst.gamma * spread;
  r.num_spins = inst.num_spins();
  return r;
}

namespace {

void require_dense_symmetric(const Eigen::MatrixXd& J) {
  require(J.rows() == J.cols(), ErrorCode::kNotSymmetric, "matrix must be square");
  require(J.rows() <= kDenseSpectrumCap, ErrorCode::kTooLarge,
          "dense eigensolve capped at N = " + std::to_string(kDenseSpectrumCap));
  if (J.size() == 0) return;
  const double scale = std::max(1.0, J.cwiseAbs().maxCoeff());
  require((J - J.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale, ErrorCode::kNotSymmetric,
          "matrix is not symmetric");
}

}  // namespace

std::vector<double> dense_eigenvalues(const Eigen::MatrixXd& J) {
  require_dense_symmetric(J);
  if (J.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(J, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, ErrorCode::kNoConvergence,
          "dense eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

ExtremeEigenvalues dense_spectral_diameter(const Eigen::MatrixXd& J) {
  const auto eig = dense_eigenvalues(J);
  if (eig.empty()) return {};
  return {eig.front(), eig.back()};
}

DiameterCheck diameter_bound_check(const Graph& g, const GadgetParams& p) {
  const auto inst = build_instance(g, p);
  const auto spec = structured_spectrum(inst);
  const double td = static_cast<double>(p.t);
  DiameterCheck out;
  out.actual = spec.diameter;
  out.bound = td * p.beta + 2.0 * p.max_degree * td * p.gamma;
  out.paper_bound = 1.0 + 8.0 * std::pow(td, -0.5 + 2.0 * p.delta);
  out.within_bound = out.actual <= out.bound * (1.0 + 1e-12);
  if (p.mode == ScheduleMode::kPaper) {
    const double n_spins = static_cast<double>(g.num_vertices()) * td;
    out.window_bound = 1.0 + std::pow(n_spins, -0.5 + p.epsilon);
    out.within_window = out.actual <= out.window_bound;
  } else {
    out.window_bound = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

PsdShift psd_shift(const IsingInstance& inst) {
  const auto spec = structured_spectrum(inst);
  PsdShift out;
  out.lambda_min = spec.lambda_min;
  out.log_k_shift = -0.5 * spec.lambda_min * static_cast<double>(spec.num_spins);
  out.shifted_min = std::numeric_limits<double>::infinity();
  for (const auto& g : spec.groups) out.shifted_min = std::min(out.shifted_min, g.value - spec.lambda_min);
  out.shifted_norm = spec.diameter;
  return out;
}

PsdShift psd_shift(const Eigen::MatrixXd& J) {
  const auto eig = dense_eigenvalues(J);
  PsdShift out;
  if (eig.empty()) return out;
  out.lambda_min = eig.front();
  out.log_k_shift = -0.5 * out.lambda_min * static_cast<double>(J.rows());
  Eigen::MatrixXd shifted = J;
  shifted.diagonal().array() -= out.lambda_min;
  const auto shifted_eig = dense_eigenvalues(shifted);
  out.shifted_min = shifted_eig.front();
  out.shifted_norm = std::max(std::abs(shifted_eig.front()), std::abs(shifted_eig.back()));
  return out;
}

}  // namespace critising
