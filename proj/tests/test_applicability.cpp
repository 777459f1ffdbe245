#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "ogtt/applicability.hpp"

using namespace ogtt;

namespace {

// A record/fit pair with prescribed omega, |G90 - G120| and error_abs. The
// amplitude is solved so the curve itself has the wanted G90 - G120; the
// residuals sit on t = 0, 30, 60 only.
FittedRecord planted(double omega, double delta_g, double error_abs_target) {
    AckermanParams p{90.0, 1.0, 0.01, omega, 0.5};
    const double k = std::exp(-90.0 * p.alpha) * std::cos(90.0 * omega - p.delta) -
                     std::exp(-120.0 * p.alpha) * std::cos(120.0 * omega - p.delta);
    p.a = delta_g / std::abs(k);
    if (p.a == 0.0) p.a = 1.0;
    FittedRecord fr;
    fr.record.patient_id = "planted";
    fr.record.g = predict_at_sample_times(p);
    const double r = error_abs_target * 5.0 / 3.0;
    for (std::size_t i = 0; i < 3; ++i) fr.record.g[i] += (i % 2 == 0) ? r : -r;
    fr.fit.params = p;
    fr.fit.error_abs = error_abs(fr.record, p);
    return fr;
}

}  // namespace

TEST_CASE("decision examples") {
    CHECK_FALSE(evaluate_criteria(0.10, 2.0, 1.0).applicable);
    CHECK_FALSE(evaluate_criteria(0.10, 2.0, 1.0).omega_ok);

    for (double dg : {0.0, 2.0, 4.5, 10.0, 50.0}) {
        const auto v = evaluate_criteria(0.05, dg, 4.0);
        CHECK(v.applicable);
        CHECK(v.condition == Condition::Cond1);
    }
    const auto cond3 = evaluate_criteria(0.05, 10.0, 6.0);
    CHECK(cond3.applicable);
    CHECK(cond3.condition == Condition::Cond3);

    const auto none = evaluate_criteria(0.05, 2.0, 6.0);
    CHECK_FALSE(none.applicable);
    CHECK(none.condition == Condition::None);

    CHECK_FALSE(evaluate_criteria(0.09, 2.0, 1.0).applicable);
}

TEST_CASE("boundaries") {
    // error_abs == 4.5 is not Cond1 but still Cond2 with a flat tail.
    CHECK(evaluate_criteria(0.05, 2.0, 4.5).condition == Condition::Cond2);
    CHECK(evaluate_criteria(0.05, 2.0, 5.0).condition == Condition::None);
    CHECK(evaluate_criteria(0.05, 10.0, 7.5).condition == Condition::None);
    // delta_g == 4.5 belongs to Cond3.
    CHECK(evaluate_criteria(0.05, 4.5, 4.7).condition == Condition::Cond3);
    CHECK(evaluate_criteria(0.05, 4.5, 6.0).condition == Condition::Cond3);
}

TEST_CASE("truth table over all sixteen regions") {
    struct Row {
        double error;
        double delta_g;
        double omega;
        Condition condition;
        bool applicable;
    };
    // error bands: <4.5, [4.5,5), [5,7.5), >=7.5; delta_g: <4.5, >=4.5; omega: <0.09, >=0.09
    const Row table[] = {
        {3.0, 2.0, 0.05, Condition::Cond1, true},   {3.0, 10.0, 0.05, Condition::Cond1, true},
        {4.7, 2.0, 0.05, Condition::Cond2, true},   {4.7, 10.0, 0.05, Condition::Cond3, true},
        {6.0, 2.0, 0.05, Condition::None, false},   {6.0, 10.0, 0.05, Condition::Cond3, true},
        {8.0, 2.0, 0.05, Condition::None, false},   {8.0, 10.0, 0.05, Condition::None, false},
        {3.0, 2.0, 0.10, Condition::Cond1, false},  {3.0, 10.0, 0.10, Condition::Cond1, false},
        {4.7, 2.0, 0.10, Condition::Cond2, false},  {4.7, 10.0, 0.10, Condition::Cond3, false},
        {6.0, 2.0, 0.10, Condition::None, false},   {6.0, 10.0, 0.10, Condition::Cond3, false},
        {8.0, 2.0, 0.10, Condition::None, false},   {8.0, 10.0, 0.10, Condition::None, false},
    };
    for (const Row& row : table) {
        CAPTURE(row.error);
        CAPTURE(row.delta_g);
        CAPTURE(row.omega);
        const auto v = evaluate_criteria(row.omega, row.delta_g, row.error);
        CHECK(v.condition == row.condition);
        CHECK(v.applicable == row.applicable);
        CHECK(v.omega_ok == (row.omega < 0.09));
    }
}

TEST_CASE("check_applicability on record/fit pairs") {
    const auto a = planted(0.05, 10.0, 6.0);
    const auto v = check_applicability(a.record, a.fit);
    CHECK(v.delta_g == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(v.error_abs == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(v.condition == Condition::Cond3);
    CHECK(v.applicable);

    const auto b = planted(0.05, 2.0, 6.0);
    CHECK_FALSE(check_applicability(b.record, b.fit).applicable);

    const auto c = planted(0.10, 2.0, 1.0);
    CHECK_FALSE(check_applicability(c.record, c.fit).omega_ok);

    // A fit that does not belong to the record.
    FitResult wrong = a.fit;
    wrong.error_abs += 0.5;
    CHECK_THROWS_AS(check_applicability(a.record, wrong), InputError);
}

TEST_CASE("filter_population") {
    std::vector<FittedRecord> good(10, planted(0.05, 2.0, 1.0));
    std::vector<FittedRecord> bad(10, planted(0.12, 2.0, 1.0));

    CHECK(filter_population(good).kept_fraction == 1.0);
    CHECK(filter_population(bad).kept_fraction == 0.0);

    std::vector<FittedRecord> mix;
    for (int i = 0; i < 10; ++i) {
        auto fr = i % 10 < 7 ? planted(0.05, 10.0, 6.0) : planted(0.05, 2.0, 6.0);
        fr.record.patient_id = "p" + std::to_string(i);
        mix.push_back(fr);
    }
    const auto result = filter_population(mix);
    CHECK(result.kept_fraction == 0.7);
    REQUIRE(result.kept.size() == 7);
    REQUIRE(result.rejected.size() == 3);
    CHECK(result.kept.front().record.patient_id == "p0");
    CHECK(result.rejected.front().record.patient_id == "p7");

    CHECK_THROWS_AS(filter_population({}), InputError);
}

TEST_CASE("properties") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> omega(0.005, 0.2);
    std::uniform_real_distribution<double> dg(0.0, 20.0);
    std::uniform_real_distribution<double> err(0.0, 12.0);
    for (int k = 0; k < 5000; ++k) {
        const double w = omega(rng);
        const double d = dg(rng);
        const double e1 = err(rng);
        const double e2 = err(rng);
        const auto hi = evaluate_criteria(w, d, std::max(e1, e2));
        const auto lo = evaluate_criteria(w, d, std::min(e1, e2));
        // Lowering the error never revokes applicability.
        if (hi.applicable) CHECK(lo.applicable);
        // Cond1 wins whenever it holds.
        if (e1 < 4.5) CHECK(evaluate_criteria(w, d, e1).condition == Condition::Cond1);
        // Frequency and period forms agree.
        CHECK(evaluate_criteria(w, d, e1) == evaluate_criteria_by_period(period(w), d, e1));
        CHECK(hi.applicable == (hi.omega_ok && hi.condition != Condition::None));
    }
    for (double w : {0.0899, 0.08999999, 0.09, 0.09000001, 0.0901}) {
        CHECK(evaluate_criteria(w, 1.0, 1.0) == evaluate_criteria_by_period(period(w), 1.0, 1.0));
    }
}

TEST_CASE("thresholds from config keys") {
    KeyValues kv = parse_key_values("omega_limit = 0.1\ncond3_error = 8\nomega_max = 0.3\n");
    const auto t = take_applicability_keys(kv);
    CHECK(t.omega_max == 0.1);
    CHECK(t.cond3_error == 8.0);
    CHECK(t.cond1_error == 4.5);
    CHECK(kv.size() == 1);  // omega_max is the fit bound, left for the fit keys
    CHECK(kv.count("omega_max") == 1);
    CHECK(evaluate_criteria(0.095, 2.0, 1.0, t).applicable);
}
