#pragma once

// JSON forms of models, reports and trajectories. Reports use a fixed key
// order and 9 significant digits so identical runs give identical bytes;
// models keep full double precision.

#include <string>
#include <vector>

#include "ogtt/pipeline.hpp"

namespace ogtt {

// {"w": [w0, w1], "b": b, "c": c, "scaling": {"a": {"shift", "scale"}, "alpha": {...}}}
std::string model_to_json(const SvmModel& model);
// Throws ModelError on malformed or invalid models.
SvmModel model_from_json(const std::string& text);

std::string report_to_json(const CohortReport& report);

// Parses a report and checks that its aggregates match the ones recomputed
// from its entries; InputError otherwise.
CohortReport report_from_json(const std::string& text);

std::string trajectories_to_json(const TrackResult& result);

std::string fits_to_json(const std::vector<OgttRecord>& records, const std::vector<FitResult>& fits);

}  // namespace ogtt
