#include "critising/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "critising/error.hpp"
#include "critising/landscape.hpp"
#include "critising/spectral.hpp"

namespace critising {

namespace {

double ln_k_instance(const Graph& g, const GadgetParams& p) {
  return -0.5 * p.beta * static_cast<double>(g.num_vertices()) * static_cast<double>(p.t);
}

void require_cut_bound(const Graph& g, const GadgetParams& p, std::int64_t A) {
  const double edges = static_cast<double>(g.num_edges());
  require(static_cast<double>(A) >= p.tau * edges / 2.0 * (1.0 - 1e-12),
          ErrorCode::kPrecondition,
          "A = " + std::to_string(A) + " is below tau |E| / 2");
}

}  // namespace

LogWeight compute_T1(const Graph& g, const GadgetParams& p, std::int64_t A) {
  validate(p);
  require(A <= static_cast<std::int64_t>(g.num_edges()), ErrorCode::kPrecondition,
          "A exceeds the number of edges");
  require_cut_bound(g, p, A);
  const auto b = static_cast<std::int64_t>(std::llround(p.bhat));
  require(b >= 0 && b <= p.t / 2, ErrorCode::kDomain, "round(bhat) outside [0, t/2]");
  const double n = g.num_vertices();
  const double bd = static_cast<double>(b);
  const double cut_term = 2.0 * static_cast<double>(A) - static_cast<double>(g.num_edges());
  return {ln_k_instance(g, p) + n * log_binomial(p.t, p.t / 2 + b) +
          2.0 * p.beta * n * bd * bd + 4.0 * p.gamma * bd * bd * cut_term};
}

LogWeight compute_T2(const Graph& g, const GadgetParams& p, std::int64_t A) {
  validate(p);
  const double edges = static_cast<double>(g.num_edges());
  const double cut_term = 2.0 * static_cast<double>(A) / p.tau - edges;
  require(cut_term >= -1e-12 * edges, ErrorCode::kPrecondition,
          "A / tau is below |E| / 2, so the cut factor of T2 would be negative");
  const double n = g.num_vertices();
  return {ln_k_instance(g, p) + n * std::log1p(static_cast<double>(p.t)) +
          n * q_profile(p.bhat, p.t, p.beta) + 4.0 * p.gamma * p.uhat * p.uhat * cut_term};
}

double gap_chain_lower_bound(const Graph& g, const GadgetParams& p, std::int64_t A) {
  const double edges = static_cast<double>(g.num_edges());
  const double a = static_cast<double>(A);
  const double n = g.num_vertices();
  return -2.0 * n * std::log1p(static_cast<double>(p.t)) +
         4.0 * p.gamma *
             (p.bhat * p.bhat * (2.0 * a - edges) - p.uhat * p.uhat * (2.0 * a / p.tau - edges));
}

ReductionCertificate build_certificate(const Graph& g, const GadgetParams& p, std::int64_t A) {
  validate(p);
  if (p.mode == ScheduleMode::kPaper) {
    require(g.is_regular(3) && p.max_degree == 3, ErrorCode::kPrecondition,
            "paper mode needs a 3-regular base graph");
  }
  require_cut_bound(g, p, A);

  ReductionCertificate cert;
  cert.params = p;
  cert.A = A;
  cert.num_vertices = g.num_vertices();
  cert.num_edges = static_cast<std::int64_t>(g.num_edges());
  cert.log_t1 = compute_T1(g, p, A).value;
  cert.log_t2 = compute_T2(g, p, A).value;
  cert.ln_k_instance = ln_k_instance(g, p);
  const auto inst = build_instance(g, p);
  const auto shift = psd_shift(inst);
  cert.lambda_min = shift.lambda_min;
  cert.ln_k_shift = shift.log_k_shift;
  cert.spectral_diameter = shift.shifted_norm;
  cert.num_spins = static_cast<double>(g.num_vertices()) * static_cast<double>(p.t);
  cert.gap = cert.log_t1 - cert.log_t2;
  cert.required_gap = 2.0 * std::pow(cert.num_spins, p.c);
  if (p.mode == ScheduleMode::kPaper) {
    require(cert.gap >= cert.required_gap, ErrorCode::kVerificationFailed,
            "log T1 - log T2 = " + std::to_string(cert.gap) + " is below 2 N^c = " +
                std::to_string(cert.required_gap) + "; n is too small for this epsilon");
  }
  return cert;
}

std::string_view to_string(GapDecision d) {
  switch (d) {
    case GapDecision::kMaxCutAtLeastA: return "MAXCUT_AT_LEAST_A";
    case GapDecision::kAllCutsBelowAOverTau: return "ALL_CUTS_BELOW_A_OVER_TAU";
    case GapDecision::kIndeterminate: return "INDETERMINATE";
  }
  return "INDETERMINATE";
}

GapDecision decide_gap(double log_zhat, double ln_r, const ReductionCertificate& cert) {
  require(ln_r >= 0.0, ErrorCode::kPrecondition, "approximation factor ln R must be >= 0");
  const double estimate = log_zhat - cert.ln_k_shift;
  if (estimate - ln_r >= cert.log_t1) return GapDecision::kMaxCutAtLeastA;
  if (cert.log_t2 >= estimate + ln_r) return GapDecision::kAllCutsBelowAOverTau;
  return GapDecision::kIndeterminate;
}

SmallVerification verify_small(const Graph& g, const GadgetParams& p, std::int64_t A,
                               bool with_orthants, std::uint64_t budget, int threads) {
  const auto inst = build_instance(g, p);
  SmallVerification out;
  const auto exact = magnetization_logZ(inst, budget, threads);
  out.log_z = exact.log_z.value;
  out.terms = exact.terms;
  out.log_t1 = compute_T1(g, p, A).value;
  out.log_t2 = compute_T2(g, p, A).value;
  out.max_cut = max_cut_exact(g, threads).size;
  const double slack = 1e-9 * std::max(1.0, std::abs(out.log_z));
  out.t1_applicable = out.max_cut >= A;
  out.t1_holds = out.log_z + slack >= out.log_t1;
  out.t2_applicable = static_cast<double>(out.max_cut) <= static_cast<double>(A) / p.tau;
  out.t2_holds = out.log_z <= out.log_t2 + slack;
  require(!out.t1_applicable || out.t1_holds, ErrorCode::kVerificationFailed,
          "max cut " + std::to_string(out.max_cut) + " >= A but log Z = " +
              std::to_string(out.log_z) + " < log T1 = " + std::to_string(out.log_t1));

  if (with_orthants) {
    const int n = g.num_vertices();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
      const auto signs = CutAssignment::from_mask(n, mask << 1);
      const auto part = orthant_logZ(inst, signs, budget, threads);
      out.orthants.push_back({signs, cut_size(g, signs), part.log_z.value});
    }
    std::stable_sort(out.orthants.begin(), out.orthants.end(),
                     [](const auto& x, const auto& y) { return x.log_z > y.log_z; });
  }
  return out;
}

}  // namespace critising
