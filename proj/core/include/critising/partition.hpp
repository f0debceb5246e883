#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "critising/gadget.hpp"
#include "critising/graph.hpp"
#include "critising/log_weight.hpp"

namespace critising {

// Integer cloud biases: cloud v holds t/2 + b[v] spins equal to +1.
using MagVector = std::vector<std::int64_t>;

inline constexpr int kBruteForceMaxSpins = 24;
inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000'000;

struct EnumerationResult {
  LogWeight log_z;
  std::uint64_t terms = 0;
};

// log sum over sigma in {-1,1}^N of exp(sigma^T J sigma / 2).
EnumerationResult brute_force_logZ(const Eigen::MatrixXd& J, int threads = 1);

// ln C(t, k) through lgamma.
double log_binomial(std::int64_t t, std::int64_t k);

// Natural log of the total Boltzmann weight of all spin configurations whose
// cloud biases equal b.
LogWeight contribution(const IsingInstance& inst, const MagVector& b);

// Log of exp(sigma^T J sigma / 2) recovered from the per-cloud biases alone.
double energy_from_biases(const IsingInstance& inst, const MagVector& b);

// Per-cloud biases of a configuration in (v, i) -> v * t + i layout.
MagVector biases_of(const IsingInstance& inst, const std::vector<int>& spins);

std::uint64_t magnetization_terms(const IsingInstance& inst);

// Sum over every MagVector in odometer order (last vertex fastest).
EnumerationResult magnetization_logZ(const IsingInstance& inst,
                                     std::uint64_t budget = kDefaultEnumerationBudget,
                                     int threads = 1);

// Same sum restricted to signs[v] * b[v] >= 0 for all v.
EnumerationResult orthant_logZ(const IsingInstance& inst, const CutAssignment& signs,
                               std::uint64_t budget = kDefaultEnumerationBudget,
                               int threads = 1);

}  // namespace critising
