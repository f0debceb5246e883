#include "critising/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "critising/error.hpp"
#include "critising/partition.hpp"
#include "critising/philox.hpp"
#include "parallel.hpp"

namespace critising {

std::int64_t num_spins(const GlauberModel& model) {
  struct Visitor {
    std::int64_t operator()(const CurieWeiss& cw) const { return cw.num_spins; }
    std::int64_t operator()(const IsingInstance& inst) const { return inst.num_spins(); }
    std::int64_t operator()(const Eigen::MatrixXd& J) const { return J.rows(); }
  };
  return std::visit(Visitor{}, model);
}

int num_clouds(const GlauberModel& model) {
  if (const auto* inst = std::get_if<IsingInstance>(&model)) return inst->base.num_vertices();
  return 1;
}

SpinState::SpinState(std::vector<int> spins, std::int64_t cloud_size)
    : spins_(std::move(spins)), cloud_size_(cloud_size) {
  const auto n = static_cast<std::int64_t>(spins_.size());
  require(cloud_size_ >= 1 && n % cloud_size_ == 0, ErrorCode::kPrecondition,
          "spin count must be a multiple of the cloud size");
  cloud_m_.assign(static_cast<std::size_t>(n / cloud_size_), 0);
  for (std::int64_t i = 0; i < n; ++i) {
    require(spins_[i] == 1 || spins_[i] == -1, ErrorCode::kDomain, "spins must be +1 or -1");
    m_ += spins_[i];
    cloud_m_[static_cast<std::size_t>(i / cloud_size_)] += spins_[i];
  }
}

void SpinState::set(std::int64_t i, int spin) {
  const int old = spins_[i];
  if (old == spin) return;
  spins_[i] = spin;
  m_ += spin - old;
  cloud_m_[static_cast<std::size_t>(i / cloud_size_)] += spin - old;
}

std::uint64_t default_burn_in(std::int64_t n) {
  if (n <= 1) return 0;
  const double nd = static_cast<double>(n);
  return static_cast<std::uint64_t>(std::ceil(10.0 * nd * std::log(nd)));
}

namespace {

// Unbiased integer in [0, bound) (Lemire's multiply-shift with rejection).
std::uint32_t bounded(Philox4x32& rng, std::uint32_t bound) {
  std::uint64_t product = static_cast<std::uint64_t>(rng()) * bound;
  auto low = static_cast<std::uint32_t>(product);
  if (low < bound) {
    const std::uint32_t threshold = static_cast<std::uint32_t>(-bound) % bound;
    while (low < threshold) {
      product = static_cast<std::uint64_t>(rng()) * bound;
      low = static_cast<std::uint32_t>(product);
    }
  }
  return static_cast<std::uint32_t>(product >> 32);
}

// Local field h_i = (J sigma)_i for each model, maintained so that one
// evaluation costs O(1) (complete graph), O(degree) (gadget) or O(1) after
// an O(N) update per flip (dense).
class FieldEngine {
 public:
  FieldEngine(const GlauberModel& model, const SpinState& state) : model_(model) {
    if (const auto* J = std::get_if<Eigen::MatrixXd>(&model_)) {
      Eigen::VectorXd sigma(J->rows());
      for (Eigen::Index i = 0; i < J->rows(); ++i) sigma[i] = state[i];
      h_ = (*J) * sigma;
    }
  }

  double field(std::int64_t i, const SpinState& state) const {
    if (const auto* cw = std::get_if<CurieWeiss>(&model_)) {
      return cw->beta / static_cast<double>(cw->num_spins) *
             static_cast<double>(state.magnetization() - state[i]);
    }
    if (const auto* inst = std::get_if<IsingInstance>(&model_)) {
      const auto v = static_cast<int>(i / inst->t);
      const auto& cloud = state.cloud_magnetization();
      std::int64_t across = 0;
      for (int u : inst->base.neighbors(v)) across += cloud[u];
      return inst->beta * static_cast<double>(cloud[v] - state[i]) -
             inst->gamma * static_cast<double>(across);
    }
    return h_[i];
  }

  void flipped(std::int64_t i, int new_spin) {
    if (const auto* J = std::get_if<Eigen::MatrixXd>(&model_)) {
      h_.noalias() += (2.0 * new_spin) * J->col(i);
    }
  }

  // Largest |h_i - (J sigma)_i| with the right side recomputed from spins.
  double drift(const SpinState& state) const {
    const auto n = static_cast<std::int64_t>(state.spins().size());
    double worst = 0.0;
    if (const auto* J = std::get_if<Eigen::MatrixXd>(&model_)) {
      Eigen::VectorXd sigma(n);
      for (std::int64_t i = 0; i < n; ++i) sigma[i] = state[i];
      worst = ((*J) * sigma - h_).cwiseAbs().maxCoeff();
    } else if (const auto* cw = std::get_if<CurieWeiss>(&model_)) {
      std::int64_t total = 0;
      for (int s : state.spins()) total += s;
      const double scale = cw->beta / static_cast<double>(n);
      for (std::int64_t i = 0; i < n; ++i) {
        const double direct = scale * static_cast<double>(total - state[i]);
        worst = std::max(worst, std::abs(direct - field(i, state)));
      }
    } else {
      const auto& inst = std::get<IsingInstance>(model_);
      std::vector<std::int64_t> cloud(inst.base.num_vertices(), 0);
      for (std::int64_t i = 0; i < n; ++i) cloud[i / inst.t] += state[i];
      for (std::int64_t i = 0; i < n; ++i) {
        const auto v = static_cast<int>(i / inst.t);
        std::int64_t across = 0;
        for (int u : inst.base.neighbors(v)) across += cloud[u];
        const double direct = inst.beta * static_cast<double>(cloud[v] - state[i]) -
                              inst.gamma * static_cast<double>(across);
        worst = std::max(worst, std::abs(direct - field(i, state)));
      }
    }
    return worst;
  }

 private:
  const GlauberModel& model_;
  Eigen::VectorXd h_;
};

std::int64_t cloud_size_of(const GlauberModel& model) {
  if (const auto* inst = std::get_if<IsingInstance>(&model)) return inst->t;
  return num_spins(model);
}

}  // namespace

Trajectory glauber_run(const GlauberModel& model, const GlauberOptions& options,
                       const StepObserver& observer) {
  const std::int64_t n = num_spins(model);
  require(n >= 1, ErrorCode::kPrecondition, "model has no spins");
  require(n <= std::int64_t{1} << 31, ErrorCode::kTooLarge, "too many spins");
  require(options.steps >= 1, ErrorCode::kPrecondition, "steps must be >= 1");
  require(options.stride >= 1, ErrorCode::kPrecondition, "stride must be >= 1");
  if (const auto* J = std::get_if<Eigen::MatrixXd>(&model)) {
    require(J->rows() == J->cols(), ErrorCode::kNotSymmetric, "matrix must be square");
  }

  Philox4x32 rng(options.seed, options.replica);
  std::vector<int> init(static_cast<std::size_t>(n), 1);
  if (options.init == InitialState::kRandom) {
    for (auto& s : init) s = (rng() & 1U) ? 1 : -1;
  }
  SpinState state(std::move(init), cloud_size_of(model));
  FieldEngine engine(model, state);

  Trajectory traj;
  traj.seed = options.seed;
  traj.replica = options.replica;
  traj.burn_in = options.burn_in.value_or(default_burn_in(n));
  traj.steps = options.steps;
  traj.stride = options.stride;
  traj.clouds = options.record_clouds ? num_clouds(model) : 0;

  const auto bound = static_cast<std::uint32_t>(n);
  auto step = [&] {
    const std::int64_t i = bounded(rng, bound);
    const double h = engine.field(i, state);
    const double p_plus = 1.0 / (1.0 + std::exp(-2.0 * h));
    const int spin = rng.uniform() < p_plus ? 1 : -1;
    if (spin != state[i]) {
      state.set(i, spin);
      engine.flipped(i, spin);
    }
  };

  const std::uint64_t total = traj.burn_in + options.steps;
  for (std::uint64_t k = 1; k <= total; ++k) {
    step();
    if (options.drift_check_interval > 0 && k % options.drift_check_interval == 0) {
      traj.max_field_drift = std::max(traj.max_field_drift, engine.drift(state));
    }
    if (k <= traj.burn_in) continue;
    const std::uint64_t recorded = k - traj.burn_in;
    if (observer) observer(recorded, state);
    if (recorded % options.stride == 0) {
      traj.sample_steps.push_back(recorded);
      traj.m.push_back(state.magnetization());
      if (options.record_clouds) {
        const auto& cloud = state.cloud_magnetization();
        traj.cloud_m.insert(traj.cloud_m.end(), cloud.begin(), cloud.end());
      }
    }
  }
  return traj;
}

double curie_weiss_mean_abs_m(std::int64_t n, double beta) {
  require(n >= 1, ErrorCode::kPrecondition, "need at least one spin");
  const double nd = static_cast<double>(n);
  std::vector<double> log_w;
  std::vector<double> abs_m;
  for (std::int64_t k = 0; k <= n; ++k) {
    const double m = static_cast<double>(2 * k - n);
    log_w.push_back(log_binomial(n, k) + beta * (m * m - nd) / (2.0 * nd));
    abs_m.push_back(std::abs(m));
  }
  const double log_z = log_sum_exp(log_w).value;
  double mean = 0.0;
  for (std::size_t k = 0; k < log_w.size(); ++k) mean += abs_m[k] * std::exp(log_w[k] - log_z);
  return mean;
}

ExponentFit magnetization_exponent(const ExponentOptions& options) {
  require(options.sizes.size() >= 4, ErrorCode::kPrecondition,
          "exponent fit needs at least 4 system sizes");
  require(options.replicas >= 1 && options.sweeps >= 1, ErrorCode::kPrecondition,
          "need at least one replica and one sweep");
  const int num_sizes = static_cast<int>(options.sizes.size());
  const int replicas = options.replicas;
  std::vector<double> replica_mean(static_cast<std::size_t>(num_sizes) * replicas);

  detail::for_each_chunk(num_sizes * replicas, options.threads, [&](int job) {
    const int size_index = job / replicas;
    const int r = job % replicas;
    const std::int64_t n = options.sizes[size_index];
    GlauberOptions run;
    run.steps = options.sweeps * static_cast<std::uint64_t>(n);
    run.stride = static_cast<std::uint64_t>(n);
    run.seed = options.seed;
    run.replica = (static_cast<std::uint64_t>(size_index) << 32) | static_cast<std::uint64_t>(r);
    run.record_clouds = false;
    run.drift_check_interval = 0;
    const auto traj = glauber_run(CurieWeiss{n, options.beta}, run);
    double sum = 0.0;
    for (auto m : traj.m) sum += std::abs(static_cast<double>(m));
    replica_mean[job] = sum / static_cast<double>(traj.m.size());
  });

  ExponentFit fit;
  std::vector<double> x;
  std::vector<double> y;
  for (int s = 0; s < num_sizes; ++s) {
    SizeEstimate est;
    est.num_spins = options.sizes[s];
    double mean = 0.0;
    for (int r = 0; r < replicas; ++r) mean += replica_mean[s * replicas + r];
    mean /= replicas;
    double var = 0.0;
    for (int r = 0; r < replicas; ++r) {
      const double d = replica_mean[s * replicas + r] - mean;
      var += d * d;
    }
    est.mean_abs_m = mean;
    est.stderr_abs_m = replicas > 1 ? std::sqrt(var / (replicas - 1) / replicas) : 0.0;
    fit.sizes.push_back(est);
    x.push_back(std::log(static_cast<double>(est.num_spins)));
    y.push_back(std::log(mean));
  }
  const double k = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  require(sxx > 0.0, ErrorCode::kPrecondition, "system sizes must not all be equal");
  fit.alpha = sxy / sxx;
  fit.intercept = my - fit.alpha * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.alpha * x[i]);
    rss += r * r;
  }
  fit.alpha_stderr = std::sqrt(rss / (k - 2.0) / sxx);
  return fit;
}

std::vector<PatternShare> phase_occupancy(const IsingInstance& inst,
                                          const GlauberOptions& options) {
  const int n = inst.base.num_vertices();
  require(n >= 1 && n <= 62, ErrorCode::kTooLarge, "pattern histogram supports 1..62 clouds");
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t samples = 0;
  auto observer = [&](std::uint64_t step, const SpinState& state) {
    if (step % options.stride != 0) return;
    const auto& cloud = state.cloud_magnetization();
    std::uint64_t mask = 0;
    for (int v = 0; v < n; ++v) {
      if (cloud[v] <= 0) mask |= std::uint64_t{1} << v;
    }
    if (mask & 1U) mask ^= (std::uint64_t{1} << n) - 1;
    ++counts[mask];
    ++samples;
  };
  GlauberOptions run = options;
  run.record_clouds = false;
  glauber_run(inst, run, observer);

  std::vector<PatternShare> out;
  for (const auto& [mask, count] : counts) {
    PatternShare share;
    share.pattern = CutAssignment::from_mask(n, mask);
    share.cut = cut_size(inst.base, share.pattern);
    share.fraction = static_cast<double>(count) / static_cast<double>(samples);
    out.push_back(std::move(share));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.fraction > b.fraction; });
  return out;
}

}  // namespace critising
