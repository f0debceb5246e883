#pragma once

// Reference computations used only by tests. Each one follows the plain
// definition and shares no code path with the library routine it checks.

#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "critising/gadget.hpp"
#include "critising/graph.hpp"

namespace critising::oracle {

// Maximum over all 2^n side assignments, counting cut edges directly.
inline std::int64_t max_cut(const Graph& g) {
  const int n = g.num_vertices();
  std::int64_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::int64_t cut = 0;
    for (const auto& e : g.edges()) cut += ((mask >> e.u) & 1U) != ((mask >> e.v) & 1U);
    best = std::max(best, cut);
  }
  return best;
}

inline double half_quadratic_form(const Eigen::MatrixXd& J, const std::vector<int>& sigma) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < J.rows(); ++i) {
    for (Eigen::Index j = 0; j < J.cols(); ++j) total += sigma[i] * J(i, j) * sigma[j];
  }
  return 0.5 * total;
}

inline std::vector<int> spins_of(std::uint64_t mask, int n) {
  std::vector<int> s(n);
  for (int i = 0; i < n; ++i) s[i] = ((mask >> i) & 1U) ? -1 : 1;
  return s;
}

// Direct 2^N sum with a max shift; O(4^N N^0) but trivially correct.
inline double log_partition(const Eigen::MatrixXd& J) {
  const int n = static_cast<int>(J.rows());
  std::vector<double> e;
  e.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    e.push_back(half_quadratic_form(J, spins_of(mask, n)));
  }
  double mx = e[0];
  for (double x : e) mx = std::max(mx, x);
  double s = 0.0;
  for (double x : e) s += std::exp(x - mx);
  return mx + std::log(s);
}

// Boltzmann probabilities of every state, indexed by mask.
inline std::vector<double> boltzmann(const Eigen::MatrixXd& J) {
  const int n = static_cast<int>(J.rows());
  const double log_z = log_partition(J);
  std::vector<double> p;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    p.push_back(std::exp(half_quadratic_form(J, spins_of(mask, n)) - log_z));
  }
  return p;
}

// Central difference of f along coordinate v.
template <class F>
double central_difference(F&& f, std::vector<double> x, int v, double h) {
  x[v] += h;
  const double up = f(x);
  x[v] -= 2.0 * h;
  const double down = f(x);
  return (up - down) / (2.0 * h);
}

// The prism graph (two triangles joined by a perfect matching); the second
// 3-regular graph on six vertices besides K_{3,3}.
inline Graph prism() {
  return Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
}

}  // namespace critising::oracle
