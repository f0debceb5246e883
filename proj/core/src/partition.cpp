#include "critising/partition.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "critising/error.hpp"
#include "parallel.hpp"

namespace critising {

namespace {

double lgamma_safe(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

void require_partition_instance(const IsingInstance& inst) {
  require(inst.t >= 2 && inst.t % 2 == 0, ErrorCode::kPrecondition,
          "partition functions over cloud biases need an even cloud size");
  require(inst.base.num_vertices() >= 1, ErrorCode::kPrecondition,
          "instance has no vertices");
}

// Gray-code walk over the low spins of one chunk; the high spins are fixed
// by the chunk index.
LogWeight brute_force_chunk(const Eigen::MatrixXd& J, int walked, std::uint64_t chunk) {
  const int n = static_cast<int>(J.rows());
  Eigen::VectorXd sigma(n);
  for (int i = 0; i < n; ++i) {
    const bool minus = i >= walked && ((chunk >> (i - walked)) & 1U);
    sigma[i] = minus ? -1.0 : 1.0;
  }
  Eigen::VectorXd h = J * sigma;
  double energy = 0.5 * sigma.dot(h);
  LogSumExp acc;
  acc.add(energy);
  const std::uint64_t steps = std::uint64_t{1} << walked;
  constexpr std::uint64_t kResync = 4096;
  for (std::uint64_t k = 1; k < steps; ++k) {
    const int i = std::countr_zero(k);
    const double s = sigma[i];
    energy -= 2.0 * s * (h[i] - J(i, i) * s);
    h.noalias() -= (2.0 * s) * J.col(i);
    sigma[i] = -s;
    if (k % kResync == 0) {
      h.noalias() = J * sigma;
      energy = 0.5 * sigma.dot(h);
    }
    acc.add(energy);
  }
  return acc.result();
}

struct Range {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::uint64_t size() const { return static_cast<std::uint64_t>(hi - lo + 1); }
};

std::uint64_t checked_product(const std::vector<Range>& ranges) {
  std::uint64_t total = 1;
  for (const auto& r : ranges) {
    std::uint64_t next = 0;
    if (__builtin_mul_overflow(total, r.size(), &next)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total = next;
  }
  return total;
}

// Log-sum-exp of contributions over the box of cloud biases given by
// `ranges`, in odometer order with the last vertex fastest. Work is split by
// the value of vertex 0 and the per-value partial sums are folded in order.
EnumerationResult enumerate_box(const IsingInstance& inst, const std::vector<Range>& ranges,
                                std::uint64_t budget, int threads) {
  const int n = inst.base.num_vertices();
  const std::int64_t half = inst.t / 2;
  const std::uint64_t terms = checked_product(ranges);
  require(terms <= budget, ErrorCode::kBudgetExceeded,
          "enumeration needs " +
              (terms == std::numeric_limits<std::uint64_t>::max() ? std::string("> 2^64")
                                                                  : std::to_string(terms)) +
              " terms; budget is " + std::to_string(budget));

  // site[v][k]: ln C(t, t/2 + b) + 2 beta b^2 for b = ranges[v].lo + k.
  std::vector<std::vector<double>> site(n);
  for (int v = 0; v < n; ++v) {
    for (std::int64_t b = ranges[v].lo; b <= ranges[v].hi; ++b) {
      const double bd = static_cast<double>(b);
      site[v].push_back(log_binomial(inst.t, half + b) + 2.0 * inst.beta * bd * bd);
    }
  }
  std::vector<std::vector<int>> earlier(n);
  for (const auto& e : inst.base.edges()) earlier[e.v].push_back(e.u);  // u < v
  const double coupling = 4.0 * inst.gamma;

  const int num_chunks = static_cast<int>(ranges[0].size());
  std::vector<LogWeight> partial(num_chunks);
  detail::for_each_chunk(num_chunks, threads, [&](int chunk) {
    std::vector<std::int64_t> b(n);
    std::vector<double> prefix(n + 1, 0.0);
    std::vector<double> block(ranges[n - 1].size());
    LogSumExp acc;
    b[0] = ranges[0].lo + chunk;
    prefix[1] = site[0][chunk];

    auto fold_last = [&] {
      const int last = n - 1;
      double field = 0.0;
      for (int u : earlier[last]) field += static_cast<double>(b[u]);
      const double base = prefix[last];
      for (std::size_t k = 0; k < block.size(); ++k) {
        const double bl = static_cast<double>(ranges[last].lo + static_cast<std::int64_t>(k));
        block[k] = base + site[last][k] - coupling * bl * field;
      }
      acc.add_block(block);
    };

    if (n == 1) {
      acc.add(prefix[1]);
      partial[chunk] = acc.result();
      return;
    }
    // Iterative odometer over vertices 1..n-2; vertex n-1 is folded as a block.
    int v = 1;
    for (int w = 1; w < n - 1; ++w) b[w] = ranges[w].lo;
    auto extend = [&](int w) {
      double field = 0.0;
      for (int u : earlier[w]) field += static_cast<double>(b[u]);
      const double bw = static_cast<double>(b[w]);
      prefix[w + 1] = prefix[w] + site[w][b[w] - ranges[w].lo] - coupling * bw * field;
    };
    for (int w = 1; w < n - 1; ++w) extend(w);
    while (true) {
      fold_last();
      // Advance the odometer on vertices 1..n-2.
      v = n - 2;
      while (v >= 1 && b[v] == ranges[v].hi) {
        b[v] = ranges[v].lo;
        --v;
      }
      if (v < 1) break;
      ++b[v];
      for (int w = v; w < n - 1; ++w) extend(w);
    }
    partial[chunk] = acc.result();
  });

  LogSumExp total;
  for (const auto& w : partial) total.add(w);
  const double ln_k = -0.5 * inst.beta * static_cast<double>(n) * static_cast<double>(inst.t);
  return {LogWeight{ln_k} * total.result(), terms};
}

}  // namespace

EnumerationResult brute_force_logZ(const Eigen::MatrixXd& J, int threads) {
  require(J.rows() == J.cols(), ErrorCode::kNotSymmetric, "interaction matrix must be square");
  const int n = static_cast<int>(J.rows());
  require(n <= kBruteForceMaxSpins, ErrorCode::kTooLarge,
          "brute force enumerates 2^N states; N = " + std::to_string(n) + " exceeds " +
              std::to_string(kBruteForceMaxSpins));
  if (n == 0) return {LogWeight::one(), 1};
  const int fixed = std::min(n, 4);
  const int walked = n - fixed;
  const int num_chunks = 1 << fixed;
  std::vector<LogWeight> partial(num_chunks);
  detail::for_each_chunk(num_chunks, threads, [&](int chunk) {
    partial[chunk] = brute_force_chunk(J, walked, static_cast<std::uint64_t>(chunk));
  });
  LogSumExp total;
  for (const auto& w : partial) total.add(w);
  return {total.result(), std::uint64_t{1} << n};
}

double log_binomial(std::int64_t t, std::int64_t k) {
  require(k >= 0 && k <= t, ErrorCode::kDomain, "binomial index out of range");
  if (k == 0 || k == t) return 0.0;
  const double td = static_cast<double>(t);
  const double kd = static_cast<double>(k);
  return lgamma_safe(td + 1.0) - lgamma_safe(kd + 1.0) - lgamma_safe(td - kd + 1.0);
}

double energy_from_biases(const IsingInstance& inst, const MagVector& b) {
  require(static_cast<int>(b.size()) == inst.base.num_vertices(), ErrorCode::kLengthMismatch,
          "bias vector length differs from n");
  double quad = 0.0;
  for (auto bv : b) quad += static_cast<double>(bv) * static_cast<double>(bv);
  double cross = 0.0;
  for (const auto& e : inst.base.edges()) {
    cross += static_cast<double>(b[e.u]) * static_cast<double>(b[e.v]);
  }
  const double ln_k =
      -0.5 * inst.beta * static_cast<double>(b.size()) * static_cast<double>(inst.t);
  return ln_k + 2.0 * inst.beta * quad - 4.0 * inst.gamma * cross;
}

LogWeight contribution(const IsingInstance& inst, const MagVector& b) {
  require_partition_instance(inst);
  require(static_cast<int>(b.size()) == inst.base.num_vertices(), ErrorCode::kLengthMismatch,
          "bias vector length differs from n");
  const std::int64_t half = inst.t / 2;
  double entropy = 0.0;
  for (auto bv : b) {
    require(bv >= -half && bv <= half, ErrorCode::kDomain,
            "cloud bias " + std::to_string(bv) + " outside [-t/2, t/2]");
    entropy += log_binomial(inst.t, half + bv);
  }
  return {entropy + energy_from_biases(inst, b)};
}

MagVector biases_of(const IsingInstance& inst, const std::vector<int>& spins) {
  require(static_cast<std::int64_t>(spins.size()) == inst.num_spins(),
          ErrorCode::kLengthMismatch, "configuration length differs from N");
  MagVector b(inst.base.num_vertices(), 0);
  for (std::size_t i = 0; i < spins.size(); ++i) {
    b[i / static_cast<std::size_t>(inst.t)] += spins[i];
  }
  for (auto& bv : b) {
    require(bv % 2 == 0, ErrorCode::kPrecondition, "odd cloud magnetization");
    bv /= 2;
  }
  return b;
}

std::uint64_t magnetization_terms(const IsingInstance& inst) {
  std::vector<Range> ranges(inst.base.num_vertices(), Range{-inst.t / 2, inst.t / 2});
  return checked_product(ranges);
}

EnumerationResult magnetization_logZ(const IsingInstance& inst, std::uint64_t budget,
                                     int threads) {
  require_partition_instance(inst);
  std::vector<Range> ranges(inst.base.num_vertices(), Range{-inst.t / 2, inst.t / 2});
  return enumerate_box(inst, ranges, budget, threads);
}

EnumerationResult orthant_logZ(const IsingInstance& inst, const CutAssignment& signs,
                               std::uint64_t budget, int threads) {
  require_partition_instance(inst);
  require(signs.size() == inst.base.num_vertices(), ErrorCode::kLengthMismatch,
          "sign pattern length differs from n");
  const std::int64_t half = inst.t / 2;
  std::vector<Range> ranges;
  for (int v = 0; v < signs.size(); ++v) {
    ranges.push_back(signs[v] > 0 ? Range{0, half} : Range{-half, 0});
  }
  return enumerate_box(inst, ranges, budget, threads);
}

}  // namespace critising
