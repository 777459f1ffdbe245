#pragma once

// Ackerman's closed-form glucose response after an oral load:
//
//   G(t) = G0 + A * exp(-alpha * t) * cos(omega * t - delta)
//
// Time is in minutes and concentrations in mg/dl throughout the library
// (1 mmol/l of glucose is about 18 mg/dl).

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>

namespace ogtt {

inline constexpr std::size_t kSampleCount = 5;

// Sampling schedule of a 2 h OGTT, minutes after the load.
inline constexpr std::array<double, kSampleCount> kSampleTimes{0.0, 30.0, 60.0, 90.0, 120.0};

// Upper sanity bound for a measured concentration, mg/dl.
inline constexpr double kMaxConcentration = 1000.0;

using Samples = std::array<double, kSampleCount>;

struct AckermanParams {
    double g0 = 0.0;     // baseline (fasting steady state), mg/dl
    double a = 0.0;      // peak glucose concentration amplitude, mg/dl
    double alpha = 0.0;  // mean glucose removal rate, 1/min
    double omega = 0.0;  // angular frequency, rad/min
    double delta = 0.0;  // phase, rad, kept in [-pi, pi)

    friend bool operator==(const AckermanParams&, const AckermanParams&) = default;
};

enum class Sex : std::uint8_t { Unspecified, Female, Male };

struct OgttRecord {
    std::string patient_id;
    Sex sex = Sex::Unspecified;
    std::optional<int> age;
    Samples g{};  // concentrations at kSampleTimes, mg/dl
    // Ordering key for repeat tests of the same patient.
    std::optional<std::int64_t> seq;

    double fasting() const { return g[0]; }
    double two_hour() const { return g[4]; }

    friend bool operator==(const OgttRecord&, const OgttRecord&) = default;
};

// Wraps an angle into [-pi, pi).
double normalize_phase(double radians);

// Throws ParameterError unless every field is finite, g0, a, alpha, omega are
// strictly positive and delta lies in [-pi, pi).
void validate(const AckermanParams& params);

// Same checks but admits a == 0, the degenerate flat curve.
void validate_allow_flat(const AckermanParams& params);

// Throws InputError unless all five concentrations are finite, positive and
// below kMaxConcentration.
void validate(const OgttRecord& record);

double evaluate(const AckermanParams& params, double t_minutes);

// evaluate() at each of kSampleTimes, in order.
Samples predict_at_sample_times(const AckermanParams& params);

// Mean absolute deviation between the record and the curve over the five
// sample times.
double error_abs(const OgttRecord& record, const AckermanParams& params);

// Oscillation period 2*pi/omega in minutes.
double period(const AckermanParams& params);
double period(double omega);

std::string to_string(Sex sex);

}  // namespace ogtt
