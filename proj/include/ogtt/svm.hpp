#pragma once

// Soft-margin linear classifier in the (A, alpha) index plane.
//
// Features are standardized per axis before training; the model keeps the
// shift/scale pair so raw (A, alpha) inputs can be scored later. Training
// minimizes the primal
//
//   P(w, b) = 1/2 |w|^2 + c * sum_j max(0, 1 - y_j (w . x_j + b))
//
// through its dual with pairwise (SMO) coordinate updates. The bias for a
// given w is then chosen by exact line search on the hinge sum, and the best
// primal point seen so far is kept, so the reported objective trace never
// increases. Iteration stops when the duality gap falls below tol * P.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ogtt/ada.hpp"

namespace ogtt {

using Vec2 = std::array<double, 2>;

struct AxisScaling {
    double shift = 0.0;
    double scale = 1.0;

    friend bool operator==(const AxisScaling&, const AxisScaling&) = default;
};

// x_scaled = (x - shift) / scale, per axis: [0] = A, [1] = alpha.
struct FeatureScaling {
    AxisScaling a;
    AxisScaling alpha;

    Vec2 apply(double a_value, double alpha_value) const {
        return {(a_value - a.shift) / a.scale, (alpha_value - alpha.shift) / alpha.scale};
    }
    Vec2 invert(const Vec2& scaled) const {
        return {scaled[0] * a.scale + a.shift, scaled[1] * alpha.scale + alpha.shift};
    }
    static FeatureScaling identity() { return {}; }

    friend bool operator==(const FeatureScaling&, const FeatureScaling&) = default;
};

struct IndexPoint {
    double a = 0.0;      // peak glucose concentration, mg/dl
    double alpha = 0.0;  // mean glucose removal rate, 1/min
    Glycemia label = Glycemia::Normoglycemic;
    Category category = Category::NGT;
    std::string patient_id;
};

// Builds a point with the label implied by the category; InputError unless
// a > 0 and alpha > 0.
IndexPoint make_index_point(double a, double alpha, Category category, std::string patient_id = {});

struct SvmModel {
    Vec2 w{};
    double b = 0.0;
    double c = 1.0;
    FeatureScaling scaling;

    friend bool operator==(const SvmModel&, const SvmModel&) = default;
};

inline constexpr double kDefaultSvmC = 1.0;
inline constexpr double kDefaultSvmTol = 1e-6;

// Solver output on already scaled features.
struct LinearSvmSolution {
    Vec2 w{};
    double b = 0.0;
    double objective = 0.0;           // primal at (w, b)
    double dual_objective = 0.0;
    std::vector<double> trace;        // incumbent primal objective per check
    int iterations = 0;
};

// Throws TrainingError for a single class, mismatched sizes or c <= 0.
LinearSvmSolution solve_linear_svm(std::span<const Vec2> x, std::span<const int> y, double c,
                                   double tol = kDefaultSvmTol);

double hinge_objective(const Vec2& w, double b, std::span<const Vec2> x, std::span<const int> y, double c);

// Mean / population standard deviation of each axis. An axis with zero spread
// keeps scale 1.
FeatureScaling standardize(std::span<const IndexPoint> points);

struct TrainOutcome {
    SvmModel model;
    LinearSvmSolution solution;
};

TrainOutcome train_with_diagnostics(std::span<const IndexPoint> points, double c = kDefaultSvmC,
                                    double tol = kDefaultSvmTol);

// Throws TrainingError on single-class input, identical points, or when the
// optimum has w = 0.
SvmModel train(std::span<const IndexPoint> points, double c = kDefaultSvmC, double tol = kDefaultSvmTol);

// ModelError unless w is finite and non-zero, c > 0 and scales are positive.
void validate(const SvmModel& model);

struct Prediction {
    Glycemia label = Glycemia::Normoglycemic;
    double signed_distance = 0.0;  // in scaled feature space
};

// A point exactly on the line is normoglycemic.
Prediction predict(const SvmModel& model, double a, double alpha);

// w . scale(x) + b
double decision_value(const SvmModel& model, double a, double alpha);

struct CategoryAccuracy {
    std::size_t count = 0;
    std::size_t correct = 0;
    double accuracy = 0.0;
};

struct AccuracyReport {
    std::size_t total = 0;
    std::size_t correct = 0;
    double overall = 0.0;
    // Indexed by Category; empty when the category has no members.
    std::array<std::optional<CategoryAccuracy>, 5> per_category{};
    // confusion[actual][predicted], index 0 = normoglycemic, 1 = dysglycemic.
    std::array<std::array<std::size_t, 2>, 2> confusion{};
    // T2DM points predicted normoglycemic.
    std::size_t t2dm_as_normoglycemic = 0;
};

AccuracyReport accuracy_report(const SvmModel& model, std::span<const IndexPoint> points);

// Tallies an accuracy report from already computed predictions.
AccuracyReport tally_accuracy(std::span<const IndexPoint> points, std::span<const Glycemia> predicted);

inline std::size_t confusion_index(Glycemia g) { return g == Glycemia::Normoglycemic ? 0 : 1; }
inline std::size_t category_index(Category c) { return static_cast<std::size_t>(c); }

// A set of categories pooled into one centroid.
using CategoryGroup = std::vector<Category>;

struct GroupAngle {
    CategoryGroup group;
    Vec2 centroid{};   // scaled coordinates
    double angle = 0.0;  // radians in (-pi, pi], about the center
    std::size_t count = 0;
};

// One group per category, in kAllCategories order.
std::vector<CategoryGroup> single_category_groups();

// NGT, IGT + IFG-IGT, T2DM.
std::vector<CategoryGroup> progression_groups();

// Centroid of each group in scaled space and its angle about `center` (the
// centroid of all points when absent). `scaling` defaults to standardize().
// Throws InputError when fewer than two groups are requested or a group has no
// points.
std::vector<GroupAngle> progression_angles(std::span<const IndexPoint> points,
                                           const std::vector<CategoryGroup>& groups = single_category_groups(),
                                           std::optional<Vec2> center = std::nullopt,
                                           std::optional<FeatureScaling> scaling = std::nullopt);

// True when the angles, taken in sequence, turn strictly clockwise by less
// than one full revolution in total.
bool is_clockwise(std::span<const double> angles);

std::string group_name(const CategoryGroup& group);

}  // namespace ogtt
