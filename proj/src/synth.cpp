#include "ogtt/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "json.hpp"

namespace ogtt {

namespace {

bool within_fit_bounds(const AckermanParams& p, double fasting, const FitConfig& bounds) {
    return bounds.a.contains(p.a) && bounds.alpha.contains(p.alpha) && bounds.omega.contains(p.omega) &&
           p.g0 >= bounds.g0_factor.lo * fasting && p.g0 <= bounds.g0_factor.hi * fasting;
}

void check_spec(const ClusterSpec& s) {
    const bool ok = s.count >= 1 && s.center_a > 0.0 && s.center_alpha > 0.0 && s.spread_a >= 0.0 &&
                    s.spread_alpha >= 0.0 && s.g0_range.lo > 0.0 && s.g0_range.lo <= s.g0_range.hi &&
                    s.omega_range.lo > 0.0 && s.omega_range.lo <= s.omega_range.hi &&
                    s.delta_range.lo >= -std::numbers::pi && s.delta_range.hi < std::numbers::pi &&
                    s.delta_range.lo <= s.delta_range.hi;
    if (!ok) throw InputError("invalid cluster spec for " + std::string(to_string(s.category)));
}

std::string patient_id(Category category, std::size_t index) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "SYN-%s-%05zu", std::string(to_string(category)).c_str(), index);
    return buf;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<SyntheticRecord> generate_cohort(const std::vector<ClusterSpec>& specs, const NoiseSpec& noise,
                                             std::uint64_t seed) {
    if (specs.empty()) throw InputError("generate_cohort needs at least one cluster");
    if (!(noise.sigma >= 0.0) || !std::isfinite(noise.sigma)) throw InputError("noise sigma must be >= 0");
    for (const auto& s : specs) check_spec(s);

    const FitConfig bounds = default_fit_config();
    std::vector<SyntheticRecord> cohort;
    for (std::size_t k = 0; k < specs.size(); ++k) {
        const ClusterSpec& spec = specs[k];
        const std::uint64_t cluster_seed = mix_seed(seed, k);
        std::mt19937_64 rng(cluster_seed);
        std::mt19937_64 noise_rng(mix_seed(noise.seed, cluster_seed));
        // Separate distributions: normal_distribution caches a spare variate.
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::normal_distribution<double> noise_gauss(0.0, 1.0);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        auto uniform = [&](const Interval& i) { return i.lo + (i.hi - i.lo) * unit(rng); };

        for (int n = 0; n < spec.count; ++n) {
            AckermanParams p;
            Samples curve{};
            int attempts = 0;
            while (true) {
                if (++attempts > 100) {
                    throw GenerationError("cluster " + std::string(to_string(spec.category)) +
                                          ": 100 consecutive parameter draws rejected");
                }
                p.a = spec.center_a + spec.spread_a * gauss(rng);
                p.alpha = spec.center_alpha + spec.spread_alpha * gauss(rng);
                p.g0 = uniform(spec.g0_range);
                p.omega = uniform(spec.omega_range);
                p.delta = normalize_phase(uniform(spec.delta_range));
                if (!(p.a > 0.0) || !(p.alpha > 0.0)) continue;
                curve = predict_at_sample_times(p);
                if (curve[0] <= 0.0 || !within_fit_bounds(p, curve[0], bounds)) continue;
                break;
            }
            SyntheticRecord r;
            r.truth = p;
            r.intended = spec.category;
            r.record.patient_id = patient_id(spec.category, cohort.size() + 1);
            for (std::size_t i = 0; i < kSampleCount; ++i) {
                double v = curve[i];
                if (noise.kind == NoiseKind::Gaussian) v += noise.sigma * noise_gauss(noise_rng);
                r.record.g[i] = std::clamp(v, kSynthMinConcentration, kSynthMaxConcentration);
            }
            cohort.push_back(std::move(r));
        }
    }
    return cohort;
}

std::vector<ClusterSpec> reference_clusters() {
    // Calibrated so that G(0) and G(120) land in each category's ADA region.
    // delta near pi/2 keeps G(0) close to g0; omega and delta set where the
    // damped oscillation sits at t = 120.
    return {
        {Category::NGT, 100.0, 0.025, 12.0, 0.003, {78.0, 92.0}, {0.03, 0.05}, {1.50, 1.65}, 687},
        {Category::IFG, 100.0, 0.024, 12.0, 0.003, {106.0, 116.0}, {0.03, 0.05}, {1.52, 1.62}, 102},
        {Category::IGT, 310.0, 0.012, 20.0, 0.0010, {86.0, 95.0}, {0.011, 0.015}, {1.56, 1.64}, 186},
        {Category::IFG_IGT, 260.0, 0.013, 20.0, 0.0010, {110.0, 120.0}, {0.011, 0.015}, {1.57, 1.60}, 106},
        {Category::T2DM, 200.0, 0.003, 20.0, 0.0006, {100.0, 125.0}, {0.011, 0.015}, {1.50, 1.65}, 129},
    };
}

double ada_agreement(const std::vector<SyntheticRecord>& cohort) {
    if (cohort.empty()) return 0.0;
    std::size_t agree = 0;
    for (const auto& r : cohort) agree += classify_record(r.record).category == r.intended ? 1 : 0;
    return static_cast<double>(agree) / static_cast<double>(cohort.size());
}

std::vector<SyntheticRecord> default_reference_cohort(std::uint64_t seed) {
    const NoiseSpec noise{NoiseKind::Gaussian, kReferenceNoiseSigma, mix_seed(seed, 0xada)};
    auto cohort = generate_cohort(reference_clusters(), noise, seed);
    const double agreement = ada_agreement(cohort);
    if (agreement < 0.9) {
        std::ostringstream msg;
        msg << "reference cohort calibration failed: ADA agreement " << agreement << " < 0.9";
        for (Category c : kAllCategories) {
            std::size_t n = 0;
            std::size_t hit = 0;
            for (const auto& r : cohort) {
                if (r.intended != c) continue;
                ++n;
                hit += classify_record(r.record).category == c ? 1 : 0;
            }
            msg << "; " << to_string(c) << ' ' << hit << '/' << n;
        }
        throw GenerationError(msg.str());
    }
    return cohort;
}

std::vector<OgttRecord> records_of(const std::vector<SyntheticRecord>& cohort) {
    std::vector<OgttRecord> out;
    out.reserve(cohort.size());
    for (const auto& r : cohort) out.push_back(r.record);
    return out;
}

std::string ground_truth_json(const std::vector<SyntheticRecord>& cohort) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : cohort) {
        nlohmann::ordered_json e;
        e["patient_id"] = r.record.patient_id;
        e["category"] = std::string(to_string(r.intended));
        e["g0"] = r.truth.g0;
        e["a"] = r.truth.a;
        e["alpha"] = r.truth.alpha;
        e["omega"] = r.truth.omega;
        e["delta"] = r.truth.delta;
        arr.push_back(std::move(e));
    }
    return arr.dump(2) + "\n";
}

}  // namespace ogtt
