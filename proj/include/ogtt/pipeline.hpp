#pragma once

// End-to-end processing of a cohort: fit every record, judge model
// applicability, label with ADA rules, train or load the linear classifier and
// aggregate accuracy figures. Also longitudinal tracking of patients with
// repeat tests.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ogtt/ada.hpp"
#include "ogtt/applicability.hpp"
#include "ogtt/estimation.hpp"
#include "ogtt/svm.hpp"

namespace ogtt {

inline constexpr const char* kToolVersion = "0.1.0";

// Fits records on `threads` workers (0 = hardware concurrency). Output order
// matches input order. Non-converged fits come back with converged == false
// and the best-effort parameters.
std::vector<FitResult> fit_all(const std::vector<OgttRecord>& records, const FitConfig& config, unsigned threads = 0);

struct TrainMode {
    double c = kDefaultSvmC;
};
struct LoadMode {
    SvmModel model;
};
using SvmSetup = std::variant<TrainMode, LoadMode>;

struct PipelineOptions {
    FitConfig fit = default_fit_config();
    ApplicabilityThresholds thresholds{};
    SvmSetup svm = TrainMode{};
    bool filter = false;
    unsigned threads = 0;
};

struct ReportEntry {
    std::string patient_id;
    Category category = Category::NGT;
    AckermanParams params;
    double error_abs = 0.0;
    bool converged = false;
    ApplicabilityVerdict verdict;
    // Included in training and in the aggregates: converged, and applicable
    // when the filter is on.
    bool evaluated = false;
    // Present for every converged entry.
    std::optional<Prediction> prediction;
};

struct Aggregates {
    std::size_t total = 0;
    std::size_t nonconverged = 0;
    std::size_t applicable = 0;
    std::size_t evaluated = 0;
    double kept_fraction = 0.0;  // applicable / converged
    AccuracyReport accuracy;
    std::vector<GroupAngle> progression;  // NGT, IGT group, T2DM when present
    bool clockwise = false;
};

struct Provenance {
    std::string config_hash;
    std::string input_digest;
    std::string tool_version = kToolVersion;
};

struct CohortReport {
    std::vector<ReportEntry> entries;
    Aggregates aggregates;
    SvmModel model;
    bool filter = false;
    Provenance provenance;
};

// Throws InputError on an empty cohort and PipelineError/TrainingError when
// no model can be trained.
CohortReport run_pipeline(const std::vector<OgttRecord>& records, const PipelineOptions& options);

// Aggregates from entries alone; the report's stored aggregates must equal
// this. Index coordinates are rounded to the report's 9 significant digits
// first so the result is reproducible from a serialized report.
Aggregates compute_aggregates(const std::vector<ReportEntry>& entries, const SvmModel& model);

// FNV-1a 64-bit digest rendered as "fnv1a64:<16 hex digits>".
std::string digest(const std::string& bytes);
std::string config_fingerprint(const PipelineOptions& options);

struct TrajectoryPoint {
    std::int64_t order = 0;  // seq value, or file position when seq is absent
    IndexPoint point;
    AdaLabel label;
    FitResult fit;
    std::optional<double> signed_distance;
};

struct Trajectory {
    std::string patient_id;
    std::vector<TrajectoryPoint> points;
};

struct TrackResult {
    std::vector<Trajectory> trajectories;
    std::vector<std::string> warnings;
};

// Groups records by patient id (first appearance order) and fits each one.
// Patients with a single record are skipped; if none has two or more, the
// result is empty with a warning. Within a patient either every record has a
// seq key or none does, and keys must be distinct, otherwise InputError.
TrackResult track(const std::vector<OgttRecord>& records, const FitConfig& config,
                  const std::optional<SvmModel>& model = std::nullopt);

// Rounds to 9 significant digits, the precision of JSON reports.
double round_sig9(double value);

}  // namespace ogtt
