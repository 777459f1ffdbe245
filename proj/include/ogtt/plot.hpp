#pragma once

// Scatter of fitted (A, alpha) indices coloured by ADA category, with the
// classifier's decision line and its margin strip (|w . x + b| <= 1).

#include <string>

#include "ogtt/pipeline.hpp"

namespace ogtt {

enum class PlotFormat { Svg, Csv };

// Converged entries only. The decision line carries its endpoints in data
// coordinates as data-a1/data-alpha1/data-a2/data-alpha2 attributes.
std::string render_svg(const CohortReport& report);

// patient_id,A,alpha,category,predicted,distance - one row per entry.
std::string render_plot_csv(const CohortReport& report);

// Throws IoError when the file cannot be written.
void emit_plot(const CohortReport& report, const std::string& path, PlotFormat format);

// Writes `content` to `path`, IoError on failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace ogtt
