#include "critising/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "critising/error.hpp"

namespace critising {

using nlohmann::json;

json to_json(const GadgetParams& p) {
  return json{
      {"mode", p.mode == ScheduleMode::kPaper ? "paper" : "lab"},
      {"epsilon", p.epsilon},
      {"tau", p.tau},
      {"C", p.C},
      {"delta", p.delta},
      {"delta_prime", p.delta_prime},
      {"t", p.t},
      {"bhat", p.bhat},
      {"uhat", p.uhat},
      {"beta", p.beta},
      {"gamma", p.gamma},
      {"c", p.c},
      {"max_degree", p.max_degree},
  };
}

GadgetParams params_from_json(const json& j) {
  try {
    GadgetParams p;
    const auto mode = j.at("mode").get<std::string>();
    require(mode == "paper" || mode == "lab", ErrorCode::kMalformedInput,
            "mode must be \"paper\" or \"lab\"");
    p.mode = mode == "paper" ? ScheduleMode::kPaper : ScheduleMode::kLab;
    p.epsilon = j.at("epsilon").get<double>();
    p.tau = j.at("tau").get<double>();
    p.C = j.at("C").get<int>();
    p.delta = j.at("delta").get<double>();
    p.delta_prime = j.at("delta_prime").get<double>();
    p.t = j.at("t").get<std::int64_t>();
    p.bhat = j.at("bhat").get<double>();
    p.uhat = j.at("uhat").get<double>();
    p.beta = j.at("beta").get<double>();
    p.gamma = j.at("gamma").get<double>();
    p.c = j.at("c").get<double>();
    p.max_degree = j.at("max_degree").get<int>();
    return p;
  } catch (const json::exception& e) {
    fail(ErrorCode::kMalformedInput, std::string("gadget parameters: ") + e.what());
  }
}

json to_json(const ReductionCertificate& cert) {
  return json{
      {"params", to_json(cert.params)},
      {"A", cert.A},
      {"num_vertices", cert.num_vertices},
      {"num_edges", cert.num_edges},
      {"log_t1", cert.log_t1},
      {"log_t2", cert.log_t2},
      {"ln_k_instance", cert.ln_k_instance},
      {"lambda_min", cert.lambda_min},
      {"ln_k_shift", cert.ln_k_shift},
      {"spectral_diameter", cert.spectral_diameter},
      {"num_spins", cert.num_spins},
      {"gap", cert.gap},
      {"required_gap", cert.required_gap},
  };
}

ReductionCertificate certificate_from_json(const json& j) {
  try {
    ReductionCertificate c;
    c.params = params_from_json(j.at("params"));
    c.A = j.at("A").get<std::int64_t>();
    c.num_vertices = j.at("num_vertices").get<int>();
    c.num_edges = j.at("num_edges").get<std::int64_t>();
    c.log_t1 = j.at("log_t1").get<double>();
    c.log_t2 = j.at("log_t2").get<double>();
    c.ln_k_instance = j.at("ln_k_instance").get<double>();
    c.lambda_min = j.at("lambda_min").get<double>();
    c.ln_k_shift = j.at("ln_k_shift").get<double>();
    c.spectral_diameter = j.at("spectral_diameter").get<double>();
    c.num_spins = j.at("num_spins").get<double>();
    c.gap = j.at("gap").get<double>();
    c.required_gap = j.at("required_gap").get<double>();
    return c;
  } catch (const json::exception& e) {
    fail(ErrorCode::kMalformedInput, std::string("certificate: ") + e.what());
  }
}

json to_json(const SpectrumReport& s) {
  json groups = json::array();
  for (const auto& g : s.groups) groups.push_back({{"value", g.value}, {"multiplicity", g.multiplicity}});
  return json{
      {"eigenvalues", groups},
      {"lambda_min", s.lambda_min},
      {"lambda_max", s.lambda_max},
      {"diameter", s.diameter},
      {"norm_intra", s.norm_intra},
      {"norm_inter", s.norm_inter},
      {"num_spins", s.num_spins},
  };
}

json to_json(const OrthantMaximum& m) {
  return json{
      {"b", m.b},
      {"value", m.value},
      {"residual", m.residual},
      {"sweeps", m.sweeps},
      {"converged", m.converged},
      {"max_abs_bias", m.max_abs_bias},
      {"within_uhat", m.within_uhat},
      {"multistart_spread", m.multistart_spread},
  };
}

json to_json(const SmallVerification& v) {
  json orthants = json::array();
  for (const auto& o : v.orthants) {
    orthants.push_back({{"signs", o.signs.to_string()}, {"cut", o.cut}, {"log_z", o.log_z}});
  }
  return json{
      {"log_z", v.log_z},
      {"log_t1", v.log_t1},
      {"log_t2", v.log_t2},
      {"max_cut", v.max_cut},
      {"t1_applicable", v.t1_applicable},
      {"t1_holds", v.t1_holds},
      {"t2_applicable", v.t2_applicable},
      {"t2_holds", v.t2_holds},
      {"terms", v.terms},
      {"orthants", orthants},
  };
}

json to_json(const ExponentFit& fit) {
  json sizes = json::array();
  for (const auto& s : fit.sizes) {
    sizes.push_back({{"N", s.num_spins}, {"mean_abs_m", s.mean_abs_m}, {"stderr", s.stderr_abs_m}});
  }
  return json{{"alpha", fit.alpha},
              {"alpha_stderr", fit.alpha_stderr},
              {"intercept", fit.intercept},
              {"sizes", sizes}};
}

namespace {

void write_string(std::ostream& os, const std::string& s) {
  os << json(s).dump();
}

void write_value(std::ostream& os, const json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* newline = indent > 0 ? "\n" : "";
  const char* colon = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << newline;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',' << newline;
        first = false;
        os << pad;
        write_string(os, it.key());
        os << colon;
        write_value(os, it.value(), indent, depth + 1);
      }
      os << newline << close_pad << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[' << newline;
      bool first = true;
      for (const auto& item : j) {
        if (!first) os << ',' << newline;
        first = false;
        os << pad;
        write_value(os, item, indent, depth + 1);
      }
      os << newline << close_pad << ']';
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        os << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      std::string text(buf);
      // Keep floats recognizable as floats after a round trip.
      if (text.find_first_of(".eEn") == std::string::npos) text += ".0";
      os << text;
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

void write_json(std::ostream& os, const json& j, int indent) {
  write_value(os, j, indent, 0);
  os << '\n';
}

std::string dump_json(const json& j, int indent) {
  std::ostringstream os;
  write_json(os, j, indent);
  return os.str();
}

json make_document(const std::string& kind, json body) {
  json doc = json::object();
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = kind;
  for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
  return doc;
}

void write_trajectory_csv(std::ostream& os, const std::vector<Trajectory>& runs) {
  const int clouds = runs.empty() ? 0 : runs.front().clouds;
  os << "replica,step,m";
  if (clouds > 1) {
    for (int v = 0; v < clouds; ++v) os << ",c" << v;
  }
  os << '\n';
  for (const auto& run : runs) {
    for (std::size_t k = 0; k < run.m.size(); ++k) {
      os << run.replica << ',' << run.sample_steps[k] << ',' << run.m[k];
      if (clouds > 1) {
        for (int v = 0; v < clouds; ++v) {
          os << ',' << run.cloud_m[k * static_cast<std::size_t>(clouds) + static_cast<std::size_t>(v)];
        }
      }
      os << '\n';
    }
  }
}

}  // namespace critising
