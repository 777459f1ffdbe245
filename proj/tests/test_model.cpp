#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "ogtt/errors.hpp"
#include "ogtt/model.hpp"

using namespace ogtt;

namespace {

AckermanParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return {60.0 + 80.0 * u(rng), 1.0 + 300.0 * u(rng), 0.001 + 0.099 * u(rng), 0.005 + 0.195 * u(rng),
            normalize_phase(-3.14159 + 6.28318 * u(rng))};
}

OgttRecord record_from(const Samples& g) {
    OgttRecord r;
    r.patient_id = "p";
    r.g = g;
    return r;
}

}  // namespace

TEST_CASE("evaluate at t = 0 with zero phase is g0 + a") {
    const AckermanParams p{90.0, 60.0, 0.02, 0.05, 0.0};
    CHECK(evaluate(p, 0.0) == 150.0);
}

TEST_CASE("zero amplitude gives a flat curve") {
    const AckermanParams p{90.0, 0.0, 0.02, 0.05, 0.3};
    for (double t : {0.0, 17.0, 60.0, 120.0, 500.0}) CHECK(evaluate(p, t) == 90.0);
    CHECK_THROWS_AS(validate(p), ParameterError);
}

TEST_CASE("closed form matches values computed independently") {
    // Reference values from an independent scalar evaluation.
    const AckermanParams p{90.0, 60.0, 0.02, 0.05, 1.0};
    CHECK(evaluate(p, 0.0) == doctest::Approx(122.41813835208839).epsilon(1e-14));
    const Samples expected{122.41813835208839, 118.89765129591856, 82.47953889158565, 80.71228504338968,
                           91.54399517344953};
    const Samples got = predict_at_sample_times(p);
    for (std::size_t i = 0; i < kSampleCount; ++i) CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-13));
}

TEST_CASE("predictions are evaluate() at the sample times") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
        const AckermanParams p = random_params(rng);
        const Samples s = predict_at_sample_times(p);
        for (std::size_t i = 0; i < kSampleCount; ++i) CHECK(s[i] == evaluate(p, kSampleTimes[i]));
    }
    CHECK(predict_at_sample_times({90.0, 60.0, 0.02, 0.05, 0.0})[0] == 150.0);
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(evaluate({90.0, 60.0, 0.0, 0.05, 0.0}, 1.0), ParameterError);
    CHECK_THROWS_AS(evaluate({90.0, 60.0, 0.02, -0.05, 0.0}, 1.0), ParameterError);
    CHECK_THROWS_AS(evaluate({-1.0, 60.0, 0.02, 0.05, 0.0}, 1.0), ParameterError);
    CHECK_THROWS_AS(evaluate({90.0, 60.0, 0.02, 0.05, 3.2}, 1.0), ParameterError);
    CHECK_THROWS_AS(evaluate({90.0, NAN, 0.02, 0.05, 0.0}, 1.0), ParameterError);
    CHECK_THROWS_AS(evaluate({90.0, 60.0, 0.02, 0.05, 0.0}, -1.0), ParameterError);
}

TEST_CASE("error_abs") {
    const AckermanParams p{90.0, 60.0, 0.02, 0.05, 1.0};
    const Samples pred = predict_at_sample_times(p);
    CHECK(error_abs(record_from(pred), p) == 0.0);

    Samples shifted = pred;
    for (double& v : shifted) v += 5.0;
    CHECK(error_abs(record_from(shifted), p) == doctest::Approx(5.0).epsilon(1e-12));

    Samples mixed = pred;
    const Samples residuals{0.0, 5.0, -10.0, 5.0, 0.0};
    for (std::size_t i = 0; i < kSampleCount; ++i) mixed[i] += residuals[i];
    CHECK(error_abs(record_from(mixed), p) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("error_abs vanishes only on exact agreement") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> which(0, 4);
    for (int k = 0; k < 100; ++k) {
        const AckermanParams p = random_params(rng);
        Samples g = predict_at_sample_times(p);
        bool valid = true;
        for (double v : g) valid = valid && v > 0.0;
        if (!valid) continue;
        CHECK(error_abs(record_from(g), p) < 1e-9);
        g[static_cast<std::size_t>(which(rng))] += 0.01;
        CHECK(error_abs(record_from(g), p) > 1e-9);
    }
}

TEST_CASE("period") {
    CHECK(period(0.09) == doctest::Approx(69.81317007977319).epsilon(1e-14));
    CHECK(period(0.09) == doctest::Approx(70.0).epsilon(0.01));
    CHECK(period(2.0 * std::numbers::pi) == doctest::Approx(1.0));
    CHECK(period(std::numbers::pi) == doctest::Approx(2.0));
    CHECK_THROWS_AS(period(0.0), ParameterError);
    CHECK_THROWS_AS(period(-0.1), ParameterError);
}

TEST_CASE("curve properties over random parameters") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> time(0.0, 240.0);
    for (int k = 0; k < 500; ++k) {
        const AckermanParams p = random_params(rng);
        CHECK(evaluate(p, 0.0) == doctest::Approx(p.g0 + p.a * std::cos(p.delta)).epsilon(1e-12));
        const double t = time(rng);
        CHECK(std::abs(evaluate(p, t) - p.g0) <= p.a * std::exp(-p.alpha * t) * (1.0 + 1e-12));
        // Period strictly decreasing in omega; the omega and period forms of
        // the 0.09 threshold agree.
        CHECK(period(p.omega * 1.001) < period(p));
        CHECK((p.omega < 0.09) == (period(p) > period(0.09)));
    }
    CHECK_FALSE(period(0.09) > period(0.09));
}

TEST_CASE("phase normalization") {
    CHECK(normalize_phase(std::numbers::pi) == doctest::Approx(-std::numbers::pi));
    CHECK(normalize_phase(-std::numbers::pi) == doctest::Approx(-std::numbers::pi));
    CHECK(normalize_phase(7.0) == doctest::Approx(7.0 - 2.0 * std::numbers::pi));
    for (double x = -20.0; x < 20.0; x += 0.37) {
        const double n = normalize_phase(x);
        CHECK(n >= -std::numbers::pi);
        CHECK(n < std::numbers::pi);
        CHECK(std::cos(n) == doctest::Approx(std::cos(x)).epsilon(1e-9));
    }
}

TEST_CASE("record validation") {
    OgttRecord r = record_from({90, 150, 130, 110, 95});
    CHECK_NOTHROW(validate(r));
    r.g[4] = 0.0;
    CHECK_THROWS_AS(validate(r), InputError);
    r.g[4] = 1000.0;
    CHECK_THROWS_AS(validate(r), InputError);
    r.g[4] = INFINITY;
    CHECK_THROWS_AS(validate(r), InputError);
}
