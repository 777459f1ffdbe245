#pragma once

// Decides whether a fitted Ackerman curve is an acceptable description of an
// OGTT record. The model applies when omega < 0.09 rad/min (at most two
// oscillations over the test; equivalently a period above 2*pi/0.09, about
// 70 min) and one of the following holds, checked in order:
//
//   Cond1  error_abs < 4.5 mg/dl
//   Cond2  |G90 - G120| < 4.5 mg/dl and error_abs < 5 mg/dl
//   Cond3  |G90 - G120| >= 4.5 mg/dl and error_abs < 7.5 mg/dl
//
// |G90 - G120| == 4.5 is assigned to Cond3 so every input gets a verdict.

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "ogtt/config.hpp"
#include "ogtt/estimation.hpp"
#include "ogtt/model.hpp"

namespace ogtt {

struct ApplicabilityThresholds {
    double omega_max = 0.09;      // rad/min, strict
    double cond1_error = 4.5;     // mg/dl
    double shape_delta_g = 4.5;   // mg/dl, |G90 - G120|
    double cond2_error = 5.0;     // mg/dl
    double cond3_error = 7.5;     // mg/dl

    friend bool operator==(const ApplicabilityThresholds&, const ApplicabilityThresholds&) = default;
};

enum class Condition : std::uint8_t { None, Cond1, Cond2, Cond3 };

struct ApplicabilityVerdict {
    bool applicable = false;
    bool omega_ok = false;
    Condition condition = Condition::None;
    double delta_g = 0.0;    // |G90 - G120|, mg/dl
    double error_abs = 0.0;  // mg/dl

    friend bool operator==(const ApplicabilityVerdict&, const ApplicabilityVerdict&) = default;
};

// The decision rule on its three inputs.
ApplicabilityVerdict evaluate_criteria(double omega, double delta_g, double error_abs,
                                       const ApplicabilityThresholds& t = {});

// Same rule with the frequency test stated on the period: T > 2*pi/omega_max.
ApplicabilityVerdict evaluate_criteria_by_period(double period_minutes, double delta_g, double error_abs,
                                                 const ApplicabilityThresholds& t = {});

// Throws InputError when fit.error_abs does not match the record and the
// fitted parameters.
ApplicabilityVerdict check_applicability(const OgttRecord& record, const FitResult& fit,
                                         const ApplicabilityThresholds& t = {});

struct FittedRecord {
    OgttRecord record;
    FitResult fit;
};

struct JudgedRecord {
    OgttRecord record;
    FitResult fit;
    ApplicabilityVerdict verdict;
};

struct FilterResult {
    std::vector<JudgedRecord> kept;
    std::vector<JudgedRecord> rejected;
    double kept_fraction = 0.0;
};

// Partitions in input order. Throws InputError on an empty list.
FilterResult filter_population(const std::vector<FittedRecord>& fits, const ApplicabilityThresholds& t = {});

std::string_view to_string(Condition condition);

// Reads and removes omega_max, cond1_error, shape_delta_g, cond2_error,
// cond3_error from `kv`.
ApplicabilityThresholds take_applicability_keys(KeyValues& kv, ApplicabilityThresholds base = {});

}  // namespace ogtt
