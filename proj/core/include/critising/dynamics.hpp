#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "critising/gadget.hpp"
#include "critising/graph.hpp"

namespace critising {

// Complete graph with J = (beta / N)(11^T - I).
struct CurieWeiss {
  std::int64_t num_spins = 0;
  double beta = 0.0;
};

using GlauberModel = std::variant<CurieWeiss, IsingInstance, Eigen::MatrixXd>;

std::int64_t num_spins(const GlauberModel& model);
int num_clouds(const GlauberModel& model);

// Spins with cached total and per-cloud magnetization (a single cloud for
// non-gadget models).
class SpinState {
 public:
  SpinState(std::vector<int> spins, std::int64_t cloud_size);

  const std::vector<int>& spins() const { return spins_; }
  int operator[](std::int64_t i) const { return spins_[i]; }
  std::int64_t magnetization() const { return m_; }
  const std::vector<std::int64_t>& cloud_magnetization() const { return cloud_m_; }
  std::int64_t cloud_size() const { return cloud_size_; }
  void set(std::int64_t i, int spin);

 private:
  std::vector<int> spins_;
  std::int64_t cloud_size_;
  std::int64_t m_ = 0;
  std::vector<std::int64_t> cloud_m_;
};

enum class InitialState { kRandom, kAllPlus };

struct GlauberOptions {
  std::uint64_t steps = 0;   // recorded steps after burn-in
  std::uint64_t stride = 1;  // sample every stride steps
  std::uint64_t seed = 0;
  std::uint64_t replica = 0;
  std::optional<std::uint64_t> burn_in;  // default ceil(10 N ln N)
  InitialState init = InitialState::kRandom;
  // Dense models keep the local field incrementally; it is recomputed from
  // scratch at this interval and the largest discrepancy is reported.
  std::uint64_t drift_check_interval = 100000;
  bool record_clouds = true;
};

std::uint64_t default_burn_in(std::int64_t num_spins);

struct Trajectory {
  std::uint64_t seed = 0;
  std::uint64_t replica = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t steps = 0;
  std::uint64_t stride = 1;
  int clouds = 1;
  std::vector<std::uint64_t> sample_steps;
  std::vector<std::int64_t> m;
  std::vector<std::int64_t> cloud_m;  // row-major: sample k, cloud v
  double max_field_drift = 0.0;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

// Called after every post-burn-in step with the 1-based step index.
using StepObserver = std::function<void(std::uint64_t, const SpinState&)>;

// Heat-bath single-site updates: site i uniform, sigma_i = +1 with
// probability 1 / (1 + exp(-2 h_i)), h = J sigma.
Trajectory glauber_run(const GlauberModel& model, const GlauberOptions& options,
                       const StepObserver& observer = {});

struct SizeEstimate {
  std::int64_t num_spins = 0;
  double mean_abs_m = 0.0;
  double stderr_abs_m = 0.0;  // across replicas
};

struct ExponentFit {
  double alpha = 0.0;
  double alpha_stderr = 0.0;
  double intercept = 0.0;
  std::vector<SizeEstimate> sizes;
};

struct ExponentOptions {
  double beta = 1.0;
  std::vector<std::int64_t> sizes;
  std::uint64_t sweeps = 2000;  // recorded sweeps per replica
  int replicas = 32;
  std::uint64_t seed = 0;
  int threads = 1;
};

// Least-squares fit of ln E|m| against ln N on complete graphs.
ExponentFit magnetization_exponent(const ExponentOptions& options);

// Exact E|m| for the complete-graph model by summing over magnetizations.
double curie_weiss_mean_abs_m(std::int64_t num_spins, double beta);

struct PatternShare {
  CutAssignment pattern;  // canonical: vertex 0 on '+'
  std::int64_t cut = 0;
  double fraction = 0.0;
};

// Time fraction of each cloud sign pattern (cloud sum > 0 is '+'), merged
// with its global flip, most frequent first.
std::vector<PatternShare> phase_occupancy(const IsingInstance& inst,
                                          const GlauberOptions& options);

}  // namespace critising
