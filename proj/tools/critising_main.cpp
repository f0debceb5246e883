// Command-line front end. Every subcommand writes one JSON document (and,
// for glauber, optionally a CSV trajectory). Exit codes: 0 success, 1 domain
// error, 2 usage error.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "critising/dynamics.hpp"
#include "critising/error.hpp"
#include "critising/gadget.hpp"
#include "critising/graph.hpp"
#include "critising/landscape.hpp"
#include "critising/partition.hpp"
#include "critising/reduction.hpp"
#include "critising/report.hpp"
#include "critising/spectral.hpp"

namespace {

using critising::ErrorCode;
using nlohmann::json;

struct Config {
  std::string graph;
  std::string output;
  std::string mode = "lab";
  double epsilon = 0.48;
  double tau = 1.1;
  std::optional<std::int64_t> t;
  std::optional<double> bhat;
  std::optional<double> uhat;
  std::optional<double> delta;
  std::optional<double> delta_prime;
  int max_degree = 3;
  std::optional<double> beta;
  std::optional<double> gamma;
  std::uint64_t seed = 0;
  int threads = 1;
};

// Gadget-parameter flags shared by every subcommand that builds an instance.
void add_param_flags(CLI::App* app, Config& cfg) {
  app->add_option("--graph", cfg.graph, "Edge-list file");
  app->add_option("--mode", cfg.mode, "Parameter schedule")->check(CLI::IsMember({"lab", "paper"}));
  app->add_option("--epsilon", cfg.epsilon, "Window exponent slack");
  app->add_option("--tau", cfg.tau, "Max-cut gap factor");
  app->add_option("--t", cfg.t, "Cloud size (lab mode)");
  app->add_option("--bhat", cfg.bhat, "Target cloud bias (lab mode)");
  app->add_option("--uhat", cfg.uhat, "Bias cap (lab mode)");
  app->add_option("--delta", cfg.delta, "Exponent for bhat (lab mode)");
  app->add_option("--delta-prime", cfg.delta_prime, "Exponent for uhat - bhat (lab mode)");
  app->add_option("--max-degree", cfg.max_degree, "Degree used in the inter-cloud coupling");
  app->add_option("--beta", cfg.beta, "Intra-cloud coupling; bypasses the schedule");
  app->add_option("--gamma", cfg.gamma, "Inter-cloud coupling magnitude (with --beta)");
}

void add_common_flags(CLI::App* app, Config& cfg) {
  app->add_option("--seed", cfg.seed, "Random seed");
  app->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  app->add_option("--output", cfg.output, "Output path (default stdout)");
}

critising::Graph load_graph(const Config& cfg) {
  critising::require(!cfg.graph.empty(), ErrorCode::kPrecondition, "--graph is required");
  return critising::read_graph_file(cfg.graph);
}

critising::GadgetParams make_params(const Config& cfg, int n) {
  if (cfg.mode == "paper") return critising::schedule_params(n, cfg.epsilon, cfg.tau, cfg.max_degree);
  critising::require(cfg.t.has_value(), ErrorCode::kPrecondition, "lab mode needs --t");
  critising::LabOverrides o;
  o.t = *cfg.t;
  o.bhat = cfg.bhat;
  o.uhat = cfg.uhat;
  o.delta = cfg.delta;
  o.delta_prime = cfg.delta_prime;
  return critising::lab_params(cfg.epsilon, cfg.tau, o, cfg.max_degree);
}

// Either raw couplings (--t --beta [--gamma]) or a gadget schedule.
struct Built {
  critising::IsingInstance inst;
  std::optional<critising::GadgetParams> params;
};

Built make_model(const Config& cfg, const critising::Graph& g) {
  if (cfg.beta) {
    critising::require(cfg.t.has_value(), ErrorCode::kPrecondition, "--beta needs --t");
    return {critising::make_instance(g, *cfg.t, *cfg.beta, cfg.gamma.value_or(0.0)), std::nullopt};
  }
  const auto p = make_params(cfg, g.num_vertices());
  return {critising::build_instance(g, p), p};
}

void emit(const Config& cfg, const std::string& kind, json body) {
  const json doc = critising::make_document(kind, std::move(body));
  if (cfg.output.empty()) {
    critising::write_json(std::cout, doc);
    return;
  }
  std::ofstream os(cfg.output);
  critising::require(static_cast<bool>(os), ErrorCode::kIo, "cannot open " + cfg.output);
  critising::write_json(os, doc);
  critising::require(static_cast<bool>(os), ErrorCode::kIo, "write failed: " + cfg.output);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<std::int64_t> parse_sizes(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      critising::fail(ErrorCode::kMalformedInput, "bad size list: " + text);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cloud-gadget Ising reduction toolkit"};
  app.require_subcommand(1);
  Config cfg;

  // maxcut
  auto* maxcut = app.add_subcommand("maxcut", "Exact maximum cut of a small graph");
  maxcut->add_option("--graph", cfg.graph, "Edge-list file")->required();
  add_common_flags(maxcut, cfg);

  // partition
  std::string method = "mag";
  std::string signs;
  std::uint64_t budget = critising::kDefaultEnumerationBudget;
  auto* partition = app.add_subcommand("partition", "Exact log partition function");
  partition->add_option("--method", method, "brute | mag | orthant")
      ->check(CLI::IsMember({"brute", "mag", "orthant"}));
  partition->add_option("--signs", signs, "Orthant as a +/- string (method orthant)");
  partition->add_option("--budget", budget, "Maximum number of magnetization vectors");
  add_param_flags(partition, cfg);
  add_common_flags(partition, cfg);

  // reduce
  std::int64_t cut_bound = 0;
  auto* reduce = app.add_subcommand("reduce", "Build a reduction certificate");
  reduce->add_option("--A", cut_bound, "Claimed cut bound")->required();
  add_param_flags(reduce, cfg);
  add_common_flags(reduce, cfg);

  // decide
  std::string cert_path;
  double log_zhat = 0.0;
  double ln_r = 0.0;
  auto* decide = app.add_subcommand("decide", "Gap decision from a certificate and an estimate");
  decide->add_option("--certificate", cert_path, "Certificate JSON file")->required();
  decide->add_option("--logzhat", log_zhat, "Estimate of log Z of the shifted matrix")->required();
  decide->add_option("--lnr", ln_r, "Log of the approximation factor");
  add_common_flags(decide, cfg);

  // landscape
  bool scan_q = false;
  bool maximize = false;
  double grid = 0.0;
  auto* landscape = app.add_subcommand("landscape", "Cloud profile scan and orthant maximization");
  landscape->add_flag("--scan-q", scan_q, "Locate the maximizer of the cloud profile");
  landscape->add_flag("--maximize", maximize, "Maximize the aggregate potential on an orthant");
  landscape->add_option("--signs", signs, "Orthant as a +/- string");
  landscape->add_option("--grid", grid, "Scan step (default t/1000)");
  add_param_flags(landscape, cfg);
  add_common_flags(landscape, cfg);

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Spectrum, diameter bound and psd shift");
  add_param_flags(spectrum, cfg);
  add_common_flags(spectrum, cfg);

  // glauber
  std::int64_t spins = 0;
  std::uint64_t steps = 0;
  std::uint64_t stride = 1;
  std::optional<std::uint64_t> burn_in;
  int replicas = 1;
  std::string csv_path;
  std::string sizes_text;
  std::uint64_t sweeps = 2000;
  auto* glauber = app.add_subcommand("glauber", "Heat-bath Glauber dynamics");
  glauber->add_option("--N", spins, "Complete-graph size (without --graph)");
  glauber->add_option("--steps", steps, "Recorded steps per replica");
  glauber->add_option("--stride", stride, "Sampling stride");
  glauber->add_option("--burn-in", burn_in, "Discarded steps (default ceil(10 N ln N))");
  glauber->add_option("--replicas", replicas, "Independent replicas")->check(CLI::PositiveNumber);
  glauber->add_option("--csv", csv_path, "Trajectory CSV path");
  glauber->add_option("--sizes", sizes_text, "Comma-separated sizes: fit the |m| exponent");
  glauber->add_option("--sweeps", sweeps, "Sweeps per replica for the exponent fit");
  add_param_flags(glauber, cfg);
  add_common_flags(glauber, cfg);

  // verify
  bool with_orthants = false;
  auto* verify = app.add_subcommand("verify", "Exact small-instance check of the certificates");
  verify->add_option("--A", cut_bound, "Claimed cut bound")->required();
  verify->add_flag("--orthants", with_orthants, "Include the per-orthant decomposition");
  verify->add_option("--budget", budget, "Maximum number of magnetization vectors");
  add_param_flags(verify, cfg);
  add_common_flags(verify, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*maxcut) {
      const auto g = load_graph(cfg);
      const auto r = critising::max_cut_exact(g, cfg.threads);
      emit(cfg, "maxcut", {{"size", r.size}, {"witness", r.witness.to_string()}});
    } else if (*partition) {
      const auto g = load_graph(cfg);
      const auto model = make_model(cfg, g);
      const auto start = std::chrono::steady_clock::now();
      critising::EnumerationResult r;
      if (method == "brute") {
        r = critising::brute_force_logZ(critising::materialize_dense(model.inst), cfg.threads);
      } else if (method == "mag") {
        r = critising::magnetization_logZ(model.inst, budget, cfg.threads);
      } else {
        critising::require(!signs.empty(), ErrorCode::kPrecondition, "method orthant needs --signs");
        r = critising::orthant_logZ(model.inst, critising::CutAssignment::parse(signs), budget,
                                    cfg.threads);
      }
      json body{{"method", method}, {"logZ", r.log_z.value}, {"terms", r.terms},
                {"seconds", seconds_since(start)}};
      if (model.params) body["params"] = critising::to_json(*model.params);
      emit(cfg, "partition", std::move(body));
    } else if (*reduce) {
      const auto g = load_graph(cfg);
      const auto p = make_params(cfg, g.num_vertices());
      emit(cfg, "certificate", critising::to_json(critising::build_certificate(g, p, cut_bound)));
    } else if (*decide) {
      std::ifstream is(cert_path);
      critising::require(static_cast<bool>(is), ErrorCode::kIo, "cannot open " + cert_path);
      json doc;
      try {
        doc = json::parse(is);
      } catch (const json::exception& e) {
        critising::fail(ErrorCode::kMalformedInput, std::string("certificate: ") + e.what());
      }
      const auto cert = critising::certificate_from_json(doc);
      const auto d = critising::decide_gap(log_zhat, ln_r, cert);
      emit(cfg, "decision",
           {{"decision", std::string(critising::to_string(d))},
            {"logzhat", log_zhat},
            {"lnr", ln_r},
            {"log_t1", cert.log_t1},
            {"log_t2", cert.log_t2},
            {"ln_k_shift", cert.ln_k_shift}});
    } else if (*landscape) {
      critising::require(scan_q != maximize, ErrorCode::kPrecondition,
                         "choose exactly one of --scan-q and --maximize");
      if (scan_q) {
        critising::require(cfg.t.has_value(), ErrorCode::kPrecondition, "--scan-q needs --t");
        double beta = 0.0;
        if (cfg.beta) {
          beta = *cfg.beta;
        } else {
          critising::require(cfg.bhat.has_value(), ErrorCode::kPrecondition,
                             "--scan-q needs --beta or --bhat");
          beta = critising::beta_from_bhat(*cfg.t, *cfg.bhat);
        }
        const double step = grid > 0.0 ? grid : static_cast<double>(*cfg.t) / 1000.0;
        const auto r = critising::q_maximizer_scan(*cfg.t, beta, step);
        emit(cfg, "q_scan",
             {{"t", *cfg.t},
              {"beta", beta},
              {"argmax", r.argmax},
              {"value", r.value},
              {"boundary", r.boundary},
              {"sign_changes", r.sign_changes}});
      } else {
        const auto g = load_graph(cfg);
        const auto p = make_params(cfg, g.num_vertices());
        critising::require(!signs.empty(), ErrorCode::kPrecondition, "--maximize needs --signs");
        const auto cut = critising::CutAssignment::parse(signs);
        const auto r = critising::maximize_phi_orthant(g, p, cut);
        json body = critising::to_json(r);
        body["signs"] = signs;
        body["uhat"] = p.uhat;
        body["uhat_bound"] = p.uhat + 1e-6 * static_cast<double>(p.t);
        body["params"] = critising::to_json(p);
        emit(cfg, "orthant_maximum", std::move(body));
      }
    } else if (*spectrum) {
      const auto g = load_graph(cfg);
      const auto model = make_model(cfg, g);
      const auto s = critising::structured_spectrum(model.inst);
      const auto shift = critising::psd_shift(model.inst);
      json body = critising::to_json(s);
      const double bound = static_cast<double>(model.inst.t) *
                           (model.inst.beta + 2.0 * g.max_degree() * model.inst.gamma);
      body["bound"] = bound;
      body["psd_shift"] = {{"lambda_min", shift.lambda_min},
                           {"ln_k_shift", shift.log_k_shift},
                           {"shifted_min", shift.shifted_min},
                           {"shifted_norm", shift.shifted_norm}};
      if (model.params) {
        const auto check = critising::diameter_bound_check(g, *model.params);
        body["bound"] = check.bound;
        body["paper_bound"] = check.paper_bound;
        body["window_bound"] = check.window_bound;
        body["params"] = critising::to_json(*model.params);
      }
      emit(cfg, "spectrum", std::move(body));
    } else if (*glauber) {
      if (!sizes_text.empty()) {
        critising::require(cfg.beta.has_value(), ErrorCode::kPrecondition, "--sizes needs --beta");
        critising::ExponentOptions o;
        o.beta = *cfg.beta;
        o.sizes = parse_sizes(sizes_text);
        o.sweeps = sweeps;
        o.replicas = replicas;
        o.seed = cfg.seed;
        o.threads = cfg.threads;
        emit(cfg, "exponent_fit", critising::to_json(critising::magnetization_exponent(o)));
      } else {
        critising::require(steps >= 1, ErrorCode::kPrecondition, "--steps is required");
        critising::GlauberModel model;
        if (cfg.graph.empty()) {
          critising::require(spins >= 1 && cfg.beta.has_value(), ErrorCode::kPrecondition,
                             "complete-graph runs need --N and --beta");
          model = critising::CurieWeiss{spins, *cfg.beta};
        } else {
          model = make_model(cfg, load_graph(cfg)).inst;
        }
        std::vector<critising::Trajectory> runs;
        json summary = json::array();
        for (int r = 0; r < replicas; ++r) {
          critising::GlauberOptions o;
          o.steps = steps;
          o.stride = stride;
          o.seed = cfg.seed;
          o.replica = static_cast<std::uint64_t>(r);
          o.burn_in = burn_in;
          runs.push_back(critising::glauber_run(model, o));
          const auto& tr = runs.back();
          double abs_sum = 0.0;
          double sq_sum = 0.0;
          for (auto m : tr.m) {
            abs_sum += std::abs(static_cast<double>(m));
            sq_sum += static_cast<double>(m) * static_cast<double>(m);
          }
          const double k = static_cast<double>(tr.m.size());
          summary.push_back({{"replica", tr.replica},
                             {"burn_in", tr.burn_in},
                             {"samples", tr.m.size()},
                             {"mean_abs_m", abs_sum / k},
                             {"mean_m2", sq_sum / k},
                             {"final_m", tr.m.back()},
                             {"max_field_drift", tr.max_field_drift}});
        }
        if (!csv_path.empty()) {
          std::ofstream os(csv_path);
          critising::require(static_cast<bool>(os), ErrorCode::kIo, "cannot open " + csv_path);
          critising::write_trajectory_csv(os, runs);
        }
        emit(cfg, "glauber",
             {{"num_spins", critising::num_spins(model)},
              {"seed", cfg.seed},
              {"steps", steps},
              {"stride", stride},
              {"replicas", summary}});
      }
    } else if (*verify) {
      const auto g = load_graph(cfg);
      const auto p = make_params(cfg, g.num_vertices());
      const auto v =
          critising::verify_small(g, p, cut_bound, with_orthants, budget, cfg.threads);
      json body = critising::to_json(v);
      body["A"] = cut_bound;
      body["params"] = critising::to_json(p);
      emit(cfg, "verification", std::move(body));
    }
  } catch (const critising::Error& e) {
    std::cerr << "error (" << critising::to_string(e.code()) << "): " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
