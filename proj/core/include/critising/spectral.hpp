#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "critising/gadget.hpp"

namespace critising {

struct EigenGroup {
  double value = 0.0;
  std::int64_t multiplicity = 0;
};

struct SpectrumReport {
  // beta(t-1) - gamma t lambda_i(A) for each adjacency eigenvalue, then -beta
  // with multiplicity n(t-1).
  std::vector<EigenGroup> groups;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double diameter = 0.0;
  double norm_intra = 0.0;  // ||J1||_2 = t beta
  double norm_inter = 0.0;  // ||J2||_2 = t gamma max|lambda(A)|
  std::int64_t num_spins = 0;

  // Expanded, ascending. Only sensible for moderate N.
  std::vector<double> eigenvalues() const;
};

// Cyclic Jacobi on a symmetric matrix; returns eigenvalues ascending.
std::vector<double> jacobi_eigenvalues(const Eigen::MatrixXd& a, double tolerance = 1e-12,
                                       int max_sweeps = 100);

Eigen::MatrixXd adjacency_matrix(const Graph& g);

SpectrumReport structured_spectrum(const IsingInstance& inst);

inline constexpr std::int64_t kDenseSpectrumCap = 4000;

struct ExtremeEigenvalues {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double diameter() const { return lambda_max - lambda_min; }
};

// Dense self-adjoint solve of the full matrix; used as an oracle.
ExtremeEigenvalues dense_spectral_diameter(const Eigen::MatrixXd& J);
std::vector<double> dense_eigenvalues(const Eigen::MatrixXd& J);

struct DiameterCheck {
  double actual = 0.0;
  double bound = 0.0;         // t beta + 2 max_degree t gamma
  double paper_bound = 0.0;   // 1 + 8 t^(-1/2 + 2 delta)
  double window_bound = 0.0;  // 1 + N^(-1/2 + epsilon), paper mode only
  bool within_bound = false;
  bool within_window = true;
};

DiameterCheck diameter_bound_check(const Graph& g, const GadgetParams& p);

struct PsdShift {
  double lambda_min = 0.0;
  double log_k_shift = 0.0;  // -lambda_min N / 2
  double shifted_min = 0.0;  // smallest eigenvalue of J - lambda_min I
  double shifted_norm = 0.0; // equals the spectral diameter
};

PsdShift psd_shift(const IsingInstance& inst);
PsdShift psd_shift(const Eigen::MatrixXd& J);

}  // namespace critising
