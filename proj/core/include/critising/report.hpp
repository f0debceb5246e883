#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "critising/dynamics.hpp"
#include "critising/gadget.hpp"
#include "critising/landscape.hpp"
#include "critising/reduction.hpp"
#include "critising/spectral.hpp"

namespace critising {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const GadgetParams& p);
GadgetParams params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ReductionCertificate& cert);
ReductionCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SpectrumReport& s);
nlohmann::json to_json(const OrthantMaximum& m);
nlohmann::json to_json(const SmallVerification& v);
nlohmann::json to_json(const ExponentFit& fit);

// Writes JSON with every floating-point number at 17 significant digits.
// Non-finite numbers become null.
void write_json(std::ostream& os, const nlohmann::json& j, int indent = 2);
std::string dump_json(const nlohmann::json& j, int indent = 2);

// Adds schema_version and the document kind to a top-level object.
nlohmann::json make_document(const std::string& kind, nlohmann::json body);

// Header: "replica,step,m" followed by "c0,c1,..." when clouds > 1.
void write_trajectory_csv(std::ostream& os, const std::vector<Trajectory>& runs);

}  // namespace critising
