#include "ogtt/applicability.hpp"

#include <cmath>

namespace ogtt {

namespace {

Condition first_condition(double delta_g, double error_abs, const ApplicabilityThresholds& t) {
    if (error_abs < t.cond1_error) return Condition::Cond1;
    if (delta_g < t.shape_delta_g) return error_abs < t.cond2_error ? Condition::Cond2 : Condition::None;
    return error_abs < t.cond3_error ? Condition::Cond3 : Condition::None;
}

ApplicabilityVerdict make_verdict(bool omega_ok, double delta_g, double error_abs, const ApplicabilityThresholds& t) {
    ApplicabilityVerdict v;
    v.omega_ok = omega_ok;
    v.condition = first_condition(delta_g, error_abs, t);
    v.applicable = omega_ok && v.condition != Condition::None;
    v.delta_g = delta_g;
    v.error_abs = error_abs;
    return v;
}

}  // namespace

ApplicabilityVerdict evaluate_criteria(double omega, double delta_g, double error_abs,
                                       const ApplicabilityThresholds& t) {
    return make_verdict(omega < t.omega_max, delta_g, error_abs, t);
}

ApplicabilityVerdict evaluate_criteria_by_period(double period_minutes, double delta_g, double error_abs,
                                                 const ApplicabilityThresholds& t) {
    return make_verdict(period_minutes > period(t.omega_max), delta_g, error_abs, t);
}

ApplicabilityVerdict check_applicability(const OgttRecord& record, const FitResult& fit,
                                         const ApplicabilityThresholds& t) {
    validate(record);
    const double recomputed = error_abs(record, fit.params);
    if (!(std::abs(recomputed - fit.error_abs) <= 1e-9 * std::max(1.0, std::abs(recomputed)))) {
        throw InputError("fit result does not belong to record '" + record.patient_id + "'");
    }
    return evaluate_criteria(fit.params.omega, std::abs(record.g[3] - record.g[4]), fit.error_abs, t);
}

FilterResult filter_population(const std::vector<FittedRecord>& fits, const ApplicabilityThresholds& t) {
    if (fits.empty()) throw InputError("filter_population needs at least one record");
    FilterResult out;
    for (const auto& [record, fit] : fits) {
        JudgedRecord judged{record, fit, check_applicability(record, fit, t)};
        (judged.verdict.applicable ? out.kept : out.rejected).push_back(std::move(judged));
    }
    out.kept_fraction = static_cast<double>(out.kept.size()) / static_cast<double>(fits.size());
    return out;
}

std::string_view to_string(Condition condition) {
    switch (condition) {
        case Condition::None: return "none";
        case Condition::Cond1: return "cond1";
        case Condition::Cond2: return "cond2";
        case Condition::Cond3: return "cond3";
    }
    return "?";
}

ApplicabilityThresholds take_applicability_keys(KeyValues& kv, ApplicabilityThresholds t) {
    auto take = [&](const char* key, double& field) {
        if (auto it = kv.find(key); it != kv.end()) {
            field = parse_double(it->second, key);
            kv.erase(it);
        }
    };
    take("omega_limit", t.omega_max);
    take("cond1_error", t.cond1_error);
    take("shape_delta_g", t.shape_delta_g);
    take("cond2_error", t.cond2_error);
    take("cond3_error", t.cond3_error);
    if (!(t.omega_max > 0.0)) throw InputError("omega_limit must be positive");
    return t;
}

}  // namespace ogtt
