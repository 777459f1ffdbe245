#pragma once

// Synthetic OGTT cohorts with known generating parameters.
//
// Each cluster draws (A, alpha) from a normal distribution truncated by
// rejection, and g0, omega, delta uniformly from their ranges. Records are the
// forward-evaluated curve at the five sample times plus optional Gaussian
// noise, clamped to [40, 600] mg/dl.
//
// Seeding: cluster k uses mt19937_64(mix(seed, k)) for parameters and
// mt19937_64(mix(noise.seed, mix(seed, k))) for noise, where mix is the
// SplitMix64 finalizer of (a + 0x9e3779b97f4a7c15 * (b + 1)).

#include <cstdint>
#include <string>
#include <vector>

#include "ogtt/ada.hpp"
#include "ogtt/estimation.hpp"
#include "ogtt/model.hpp"

namespace ogtt {

struct ClusterSpec {
    Category category = Category::NGT;
    double center_a = 0.0;      // mg/dl
    double center_alpha = 0.0;  // 1/min
    double spread_a = 0.0;      // standard deviation, mg/dl
    double spread_alpha = 0.0;  // standard deviation, 1/min
    Interval g0_range;
    Interval omega_range;
    Interval delta_range;
    int count = 1;
};

enum class NoiseKind : std::uint8_t { None, Gaussian };

struct NoiseSpec {
    NoiseKind kind = NoiseKind::None;
    double sigma = 0.0;  // mg/dl
    std::uint64_t seed = 0;
};

struct SyntheticRecord {
    OgttRecord record;
    AckermanParams truth;
    Category intended = Category::NGT;
};

inline constexpr double kSynthMinConcentration = 40.0;
inline constexpr double kSynthMaxConcentration = 600.0;

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

// Throws InputError for empty/invalid specs and GenerationError when 100
// consecutive draws for one record fall outside the default fit bounds.
std::vector<SyntheticRecord> generate_cohort(const std::vector<ClusterSpec>& specs, const NoiseSpec& noise,
                                             std::uint64_t seed);

// Cluster layout for the reference cohort: 687 NGT, 102 IFG, 186 IGT,
// 106 IFG-IGT, 129 T2DM. The positions are invented; they place the category
// centroids clockwise in the (A, alpha) plane and make the ADA rules recover
// the intended category from the generated curves.
std::vector<ClusterSpec> reference_clusters();

// The reference cohort with Gaussian noise of kReferenceNoiseSigma.
// Throws GenerationError if fewer than 90% of records receive their intended
// ADA category.
inline constexpr double kReferenceNoiseSigma = 2.0;
std::vector<SyntheticRecord> default_reference_cohort(std::uint64_t seed = 0);

// Fraction of records whose ADA category equals the intended one.
double ada_agreement(const std::vector<SyntheticRecord>& cohort);

std::vector<OgttRecord> records_of(const std::vector<SyntheticRecord>& cohort);

// Ground-truth side file: [{"patient_id", "category", "g0", "a", "alpha",
// "omega", "delta"}, ...].
std::string ground_truth_json(const std::vector<SyntheticRecord>& cohort);

}  // namespace ogtt
