#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "critising/gadget.hpp"
#include "critising/graph.hpp"
#include "critising/log_weight.hpp"
#include "critising/partition.hpp"

namespace critising {

struct ReductionCertificate {
  GadgetParams params;
  std::int64_t A = 0;
  int num_vertices = 0;
  std::int64_t num_edges = 0;
  double log_t1 = 0.0;
  double log_t2 = 0.0;
  double ln_k_instance = 0.0;  // -beta n t / 2
  double lambda_min = 0.0;
  double ln_k_shift = 0.0;     // -lambda_min N / 2
  double spectral_diameter = 0.0;
  double num_spins = 0.0;      // N = n t; a double because paper-mode N can be huge
  double gap = 0.0;            // log_t1 - log_t2
  double required_gap = 0.0;   // 2 N^c

  friend bool operator==(const ReductionCertificate&, const ReductionCertificate&) = default;
};

// The cut term uses 2A - |E|, which is 2A - (3/2) n on 3-regular graphs.
// bhat enters through round(bhat), the configuration that realizes it.
LogWeight compute_T1(const Graph& g, const GadgetParams& p, std::int64_t A);
LogWeight compute_T2(const Graph& g, const GadgetParams& p, std::int64_t A);

// Right-hand side of the T1/T2 gap chain:
// -2 n ln(t+1) + 4 gamma [bhat^2 (2A - |E|) - uhat^2 (2A/tau - |E|)].
double gap_chain_lower_bound(const Graph& g, const GadgetParams& p, std::int64_t A);

ReductionCertificate build_certificate(const Graph& g, const GadgetParams& p,
                                       std::int64_t A);

enum class GapDecision {
  kMaxCutAtLeastA,
  kAllCutsBelowAOverTau,
  kIndeterminate,
};

std::string_view to_string(GapDecision d);

// log_zhat estimates log Z of the psd-shifted matrix within ln_r.
GapDecision decide_gap(double log_zhat, double ln_r, const ReductionCertificate& cert);

struct OrthantShare {
  CutAssignment signs;
  std::int64_t cut = 0;
  double log_z = 0.0;
};

struct SmallVerification {
  double log_z = 0.0;
  double log_t1 = 0.0;
  double log_t2 = 0.0;
  std::int64_t max_cut = 0;
  bool t1_applicable = false;  // max cut >= A
  bool t1_holds = false;
  bool t2_applicable = false;  // max cut <= A / tau
  bool t2_holds = false;       // reported, never asserted
  std::uint64_t terms = 0;
  // One entry per orthant with vertex 0 on '+', largest log_z first.
  std::vector<OrthantShare> orthants;
};

// Exact small-instance check. Throws kVerificationFailed when the max cut is
// at least A but log Z < log T1.
SmallVerification verify_small(const Graph& g, const GadgetParams& p, std::int64_t A,
                               bool with_orthants = false,
                               std::uint64_t budget = kDefaultEnumerationBudget,
                               int threads = 1);

}  // namespace critising
