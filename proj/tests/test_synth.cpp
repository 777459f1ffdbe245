#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "ogtt/errors.hpp"
#include "ogtt/synth.hpp"

using namespace ogtt;

namespace {

std::vector<ClusterSpec> small_specs(int count) {
    return {
        {Category::NGT, 100.0, 0.025, 12.0, 0.003, {78.0, 92.0}, {0.03, 0.05}, {1.50, 1.65}, count},
        {Category::T2DM, 200.0, 0.003, 20.0, 0.0006, {100.0, 125.0}, {0.011, 0.015}, {1.50, 1.65}, count},
    };
}

}  // namespace

TEST_CASE("noiseless records reproduce the generating curve exactly") {
    const auto cohort = generate_cohort(small_specs(50), NoiseSpec{}, 3);
    REQUIRE(cohort.size() == 100);
    for (const auto& r : cohort) {
        const auto curve = predict_at_sample_times(r.truth);
        bool clamped = false;
        for (double v : curve) clamped = clamped || v < kSynthMinConcentration || v > kSynthMaxConcentration;
        if (!clamped) CHECK(error_abs(r.record, r.truth) == 0.0);
        CHECK_NOTHROW(validate(r.record));
    }
    CHECK(cohort.front().record.patient_id == "SYN-NGT-00001");
    CHECK(cohort.back().record.patient_id == "SYN-T2DM-00100");
}

TEST_CASE("draws respect the default fit bounds") {
    const FitConfig b = default_fit_config();
    for (const auto& r : generate_cohort(reference_clusters(), NoiseSpec{}, 1)) {
        CHECK(b.a.contains(r.truth.a));
        CHECK(b.alpha.contains(r.truth.alpha));
        CHECK(b.omega.contains(r.truth.omega));
        const double fasting = evaluate(r.truth, 0.0);
        CHECK(r.truth.g0 >= 0.5 * fasting);
        CHECK(r.truth.g0 <= 1.5 * fasting);
    }
}

TEST_CASE("same seed gives the same cohort") {
    const NoiseSpec noise{NoiseKind::Gaussian, 2.0, 77};
    const auto x = generate_cohort(small_specs(30), noise, 5);
    const auto y = generate_cohort(small_specs(30), noise, 5);
    const auto z = generate_cohort(small_specs(30), noise, 6);
    REQUIRE(x.size() == y.size());
    bool any_diff = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(x[i].record.g == y[i].record.g);
        CHECK(x[i].truth.a == y[i].truth.a);
        any_diff = any_diff || x[i].record.g != z[i].record.g;
    }
    CHECK(any_diff);
    CHECK(ground_truth_json(x) == ground_truth_json(y));
}

TEST_CASE("noise seed changes only the noise") {
    const auto a = generate_cohort(small_specs(20), NoiseSpec{NoiseKind::Gaussian, 2.0, 1}, 4);
    const auto b = generate_cohort(small_specs(20), NoiseSpec{NoiseKind::Gaussian, 2.0, 2}, 4);
    bool differ = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].truth.a == b[i].truth.a);
        CHECK(a[i].truth.delta == b[i].truth.delta);
        differ = differ || a[i].record.g != b[i].record.g;
    }
    CHECK(differ);
}

TEST_CASE("gaussian noise has the requested scale") {
    const double sigma = 3.0;
    const auto noisy = generate_cohort(small_specs(500), NoiseSpec{NoiseKind::Gaussian, sigma, 11}, 2);
    const auto clean = generate_cohort(small_specs(500), NoiseSpec{}, 2);
    REQUIRE(noisy.size() == 1000);
    double sum = 0.0;
    double sum_signed = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < noisy.size(); ++i) {
        for (std::size_t k = 0; k < kSampleCount; ++k) {
            const double d = noisy[i].record.g[k] - clean[i].record.g[k];
            sum += std::abs(d);
            sum_signed += d;
            ++n;
        }
    }
    const double expected = sigma * std::sqrt(2.0 / std::numbers::pi);
    CHECK(std::abs(sum / n - expected) <= 0.2 * expected);
    CHECK(std::abs(sum_signed / n) < 0.2);
}

TEST_CASE("reference cohort") {
    const auto cohort = default_reference_cohort(0);
    CHECK(cohort.size() == 1210);
    CHECK(ada_agreement(cohort) >= 0.9);
    std::array<int, 5> counts{};
    for (const auto& r : cohort) ++counts[static_cast<std::size_t>(r.intended)];
    CHECK(counts[static_cast<std::size_t>(Category::NGT)] == 687);
    CHECK(counts[static_cast<std::size_t>(Category::IFG)] == 102);
    CHECK(counts[static_cast<std::size_t>(Category::IGT)] == 186);
    CHECK(counts[static_cast<std::size_t>(Category::IFG_IGT)] == 106);
    CHECK(counts[static_cast<std::size_t>(Category::T2DM)] == 129);

    // NGT curves look physiological: fasting below 100, a post-load rise.
    double fasting = 0.0;
    double peak = 0.0;
    int n = 0;
    for (const auto& r : cohort) {
        if (r.intended != Category::NGT) continue;
        fasting += r.record.fasting();
        peak += *std::max_element(r.record.g.begin(), r.record.g.end());
        ++n;
    }
    fasting /= n;
    peak /= n;
    CHECK(fasting > 70.0);
    CHECK(fasting < 100.0);
    CHECK(peak > fasting + 20.0);
}

TEST_CASE("generation errors") {
    auto impossible = small_specs(1);
    impossible[0].center_a = 1000.0;
    impossible[0].spread_a = 0.0;
    CHECK_THROWS_AS(generate_cohort(impossible, NoiseSpec{}, 0), GenerationError);
    CHECK_THROWS_AS(generate_cohort({}, NoiseSpec{}, 0), InputError);
    auto bad = small_specs(1);
    bad[0].count = 0;
    CHECK_THROWS_AS(generate_cohort(bad, NoiseSpec{}, 0), InputError);
    CHECK_THROWS_AS(generate_cohort(small_specs(1), NoiseSpec{NoiseKind::Gaussian, -1.0, 0}, 0), InputError);
}

TEST_CASE("mix_seed spreads nearby inputs") {
    CHECK(mix_seed(0, 0) != mix_seed(0, 1));
    CHECK(mix_seed(1, 0) != mix_seed(0, 1));
    CHECK(mix_seed(42, 7) == mix_seed(42, 7));
}

TEST_CASE("gaussian noise with zero sigma equals no noise") {
    const auto none = generate_cohort(small_specs(10), NoiseSpec{}, 9);
    const auto zero = generate_cohort(small_specs(10), NoiseSpec{NoiseKind::Gaussian, 0.0, 5}, 9);
    for (std::size_t i = 0; i < none.size(); ++i) CHECK(none[i].record.g == zero[i].record.g);
}
