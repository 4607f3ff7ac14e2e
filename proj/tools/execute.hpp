#pragma once

#include <ostream>
#include <string>

#include "capi.hpp"
#include "config.hpp"
#include "json.hpp"

namespace gbcli {

struct Summary {
  double s = 0.0;
  gb_region region = GB_REGION_CLASSICAL;
};

/// Runs one command, writing its artifacts under cfg.out_dir.
Summary execute(const RunConfig& cfg, unsigned threads);

/// "<command> S=<value> region=<class>".
std::string summary_line(Command command, const Summary& summary);

ModelPtr make_model(const RunConfig& cfg);
ScenarioPtr make_scenario(const RunConfig& cfg, gb_scenario_kind kind, const gb_model* model);

/// Sample document: settings, counts per pair, S-hat and its standard error.
nlohmann::ordered_json sample_document(const RunConfig& cfg, const gb_estimate& estimate,
                                       double s_exact);

/// Rebuilds an estimate from the counts of a sample document.
gb_estimate estimate_from_document(const nlohmann::json& doc, const std::string& source);

}  // namespace gbcli
