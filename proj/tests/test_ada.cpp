#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ogtt/ada.hpp"
#include "ogtt/errors.hpp"

using namespace ogtt;

namespace {

OgttRecord record(double g0, double g30, double g60, double g90, double g120) {
    OgttRecord r;
    r.patient_id = "p";
    r.g = {g0, g30, g60, g90, g120};
    return r;
}

}  // namespace

TEST_CASE("threshold examples") {
    CHECK(classify_ada(126, 150).category == Category::T2DM);
    CHECK(classify_ada(110, 150).category == Category::IFG_IGT);
    CHECK(classify_ada(95, 120).category == Category::NGT);
    CHECK(classify_ada(100, 139).category == Category::IFG);
    CHECK(classify_ada(99, 140).category == Category::IGT);
    CHECK(classify_ada(99, 200).category == Category::T2DM);
}

TEST_CASE("binary label is +1 only for NGT") {
    CHECK(classify_ada(95, 120).binary == Glycemia::Normoglycemic);
    for (auto [f, h] : {std::pair{126.0, 150.0}, {110.0, 150.0}, {100.0, 139.0}, {99.0, 140.0}}) {
        CHECK(classify_ada(f, h).binary == Glycemia::Dysglycemic);
    }
    CHECK(sign_of(Glycemia::Normoglycemic) == 1);
    CHECK(sign_of(Glycemia::Dysglycemic) == -1);
}

TEST_CASE("record classification uses only t = 0 and t = 120") {
    CHECK(classify_record(record(126, 180, 170, 150, 100)).category == Category::T2DM);
    CHECK(classify_record(record(90, 180, 160, 130, 120)).category == Category::NGT);
    CHECK(classify_record(record(105, 180, 200, 210, 210)).category == Category::T2DM);
}

TEST_CASE("non-integer values between the listed ranges stay impaired") {
    CHECK(classify_ada(125.5, 120).category == Category::IFG);
    CHECK(classify_ada(90, 199.5).category == Category::IGT);
    CHECK(classify_ada(99.9, 139.9).category == Category::NGT);
}

TEST_CASE("invalid input") {
    CHECK_THROWS_AS(classify_ada(0, 120), InputError);
    CHECK_THROWS_AS(classify_ada(90, -1), InputError);
    CHECK_THROWS_AS(classify_ada(NAN, 120), InputError);
    CHECK_THROWS_AS(classify_ada(90, INFINITY), InputError);
}

TEST_CASE("monotone in both inputs") {
    for (int f = 50; f <= 400; f += 3) {
        for (int h = 50; h <= 400; h += 3) {
            const int here = severity_rank(classify_ada(f, h).category);
            CHECK(severity_rank(classify_ada(f + 1, h).category) >= here);
            CHECK(severity_rank(classify_ada(f, h + 1).category) >= here);
        }
    }
}

TEST_CASE("category names round-trip") {
    for (Category c : kAllCategories) CHECK(parse_category(to_string(c)) == c);
    CHECK(to_string(Category::IFG_IGT) == "IFG-IGT");
    CHECK_FALSE(parse_category("IFG_IGT").has_value());
}
