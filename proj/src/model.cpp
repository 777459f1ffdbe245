#include "ogtt/model.hpp"

#include <cmath>
#include <sstream>

#include "ogtt/errors.hpp"

namespace ogtt {

namespace {

constexpr double kPi = std::numbers::pi;

void check_params(const AckermanParams& p, bool allow_flat) {
    const bool finite = std::isfinite(p.g0) && std::isfinite(p.a) && std::isfinite(p.alpha) &&
                        std::isfinite(p.omega) && std::isfinite(p.delta);
    if (!finite) throw ParameterError("Ackerman parameters must be finite");
    if (p.g0 <= 0.0) throw ParameterError("g0 must be positive");
    if (allow_flat ? p.a < 0.0 : p.a <= 0.0) throw ParameterError("amplitude a must be positive");
    if (p.alpha <= 0.0) throw ParameterError("alpha must be positive");
    if (p.omega <= 0.0) throw ParameterError("omega must be positive");
    if (p.delta < -kPi || p.delta >= kPi) throw ParameterError("delta must lie in [-pi, pi)");
}

double evaluate_unchecked(const AckermanParams& p, double t) {
    return p.g0 + p.a * std::exp(-p.alpha * t) * std::cos(p.omega * t - p.delta);
}

}  // namespace

double normalize_phase(double radians) {
    double r = std::fmod(radians + kPi, 2.0 * kPi);
    if (r < 0.0) r += 2.0 * kPi;
    r -= kPi;
    // fmod can land exactly on +pi after the shift back.
    if (r >= kPi) r -= 2.0 * kPi;
    return r;
}

void validate(const AckermanParams& params) { check_params(params, false); }

void validate_allow_flat(const AckermanParams& params) { check_params(params, true); }

void validate(const OgttRecord& record) {
    for (std::size_t i = 0; i < kSampleCount; ++i) {
        const double v = record.g[i];
        if (!std::isfinite(v) || v <= 0.0 || v >= kMaxConcentration) {
            std::ostringstream msg;
            msg << "record '" << record.patient_id << "': g" << static_cast<int>(kSampleTimes[i])
                << " = " << v << " is not a valid concentration";
            throw InputError(msg.str());
        }
    }
}

double evaluate(const AckermanParams& params, double t_minutes) {
    validate_allow_flat(params);
    if (!(t_minutes >= 0.0) || !std::isfinite(t_minutes)) {
        throw ParameterError("evaluation time must be finite and non-negative");
    }
    return evaluate_unchecked(params, t_minutes);
}

Samples predict_at_sample_times(const AckermanParams& params) {
    validate_allow_flat(params);
    Samples out{};
    for (std::size_t i = 0; i < kSampleCount; ++i) out[i] = evaluate_unchecked(params, kSampleTimes[i]);
    return out;
}

double error_abs(const OgttRecord& record, const AckermanParams& params) {
    const Samples pred = predict_at_sample_times(params);
    double total = 0.0;
    for (std::size_t i = 0; i < kSampleCount; ++i) total += std::abs(record.g[i] - pred[i]);
    return total / static_cast<double>(kSampleCount);
}

double period(double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw ParameterError("period needs omega > 0");
    return 2.0 * kPi / omega;
}

double period(const AckermanParams& params) { return period(params.omega); }

std::string to_string(Sex sex) {
    switch (sex) {
        case Sex::Female: return "F";
        case Sex::Male: return "M";
        case Sex::Unspecified: break;
    }
    return "";
}

}  // namespace ogtt
