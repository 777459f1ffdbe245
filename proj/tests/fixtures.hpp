#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "ogtt/synth.hpp"

namespace fixtures {

// Reference cluster layout with a fixed count per category.
inline std::vector<ogtt::ClusterSpec> clusters_of_size(int count) {
    auto specs = ogtt::reference_clusters();
    for (auto& s : specs) s.count = count;
    return specs;
}

inline std::vector<ogtt::OgttRecord> noisy_cohort(int per_category, double sigma, std::uint64_t seed) {
    return ogtt::records_of(
        ogtt::generate_cohort(clusters_of_size(per_category), {ogtt::NoiseKind::Gaussian, sigma, seed + 100}, seed));
}

// Reference proportions scaled down by `divisor`.
inline std::vector<ogtt::OgttRecord> scaled_cohort(int divisor, double sigma, std::uint64_t seed) {
    auto specs = ogtt::reference_clusters();
    for (auto& s : specs) s.count = std::max(1, s.count / divisor);
    return ogtt::records_of(ogtt::generate_cohort(specs, {ogtt::NoiseKind::Gaussian, sigma, seed + 100}, seed));
}

// Noiseless record for one category, checked to carry that ADA label.
inline ogtt::OgttRecord clean_record(ogtt::Category c, std::uint64_t seed, const std::string& id) {
    for (std::uint64_t s = seed;; ++s) {
        for (auto& spec : clusters_of_size(1)) {
            if (spec.category != c) continue;
            auto r = ogtt::generate_cohort({spec}, {}, s).front().record;
            if (ogtt::classify_record(r).category != c) continue;
            r.patient_id = id;
            return r;
        }
    }
}

// Alternating curve: the only close fit oscillates at the sampling Nyquist
// rate, well above any admissible omega.
inline ogtt::OgttRecord zigzag_record(const std::string& id) {
    ogtt::OgttRecord r;
    r.patient_id = id;
    r.g = {90.0, 200.0, 90.0, 200.0, 90.0};
    return r;
}

}  // namespace fixtures
