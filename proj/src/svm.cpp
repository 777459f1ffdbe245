#include "ogtt/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "ogtt/errors.hpp"

namespace ogtt {

namespace {

double dot(const Vec2& u, const Vec2& v) { return u[0] * v[0] + u[1] * v[1]; }

// Minimizer of sum_j max(0, 1 - y_j (s_j + b)) over b. The function is convex
// and piecewise linear with kinks at b = y_j - s_j, so the minimum is attained
// at one of them. Among equal minima the one nearest `hint` wins.
class BiasSearch {
public:
    BiasSearch(std::span<const double> scores, std::span<const int> y) {
        for (std::size_t j = 0; j < scores.size(); ++j) {
            // y = +1 contributes max(0, t - b); y = -1 contributes max(0, b - u).
            if (y[j] > 0) pos_.push_back(1.0 - scores[j]);
            else neg_.push_back(-1.0 - scores[j]);
        }
        std::sort(pos_.begin(), pos_.end());
        std::sort(neg_.begin(), neg_.end());
        pos_prefix_.assign(pos_.size() + 1, 0.0);
        neg_prefix_.assign(neg_.size() + 1, 0.0);
        for (std::size_t k = 0; k < pos_.size(); ++k) pos_prefix_[k + 1] = pos_prefix_[k] + pos_[k];
        for (std::size_t k = 0; k < neg_.size(); ++k) neg_prefix_[k + 1] = neg_prefix_[k] + neg_[k];
    }

    double loss(double b) const {
        // pos terms with t > b
        const auto p = static_cast<std::size_t>(std::upper_bound(pos_.begin(), pos_.end(), b) - pos_.begin());
        const double pos_sum = (pos_prefix_.back() - pos_prefix_[p]) - static_cast<double>(pos_.size() - p) * b;
        // neg terms with u < b
        const auto n = static_cast<std::size_t>(std::lower_bound(neg_.begin(), neg_.end(), b) - neg_.begin());
        const double neg_sum = static_cast<double>(n) * b - neg_prefix_[n];
        return pos_sum + neg_sum;
    }

    std::pair<double, double> minimize(double hint) const {
        double best_b = hint;
        double best_loss = loss(hint);
        auto consider = [&](double b) {
            const double l = loss(b);
            if (l < best_loss || (l == best_loss && std::abs(b - hint) < std::abs(best_b - hint))) {
                best_b = b;
                best_loss = l;
            }
        };
        for (double t : pos_) consider(t);
        for (double u : neg_) consider(u);
        return {best_b, best_loss};
    }

private:
    std::vector<double> pos_, neg_;
    std::vector<double> pos_prefix_, neg_prefix_;
};

}  // namespace

IndexPoint make_index_point(double a, double alpha, Category category, std::string patient_id) {
    if (!(a > 0.0) || !(alpha > 0.0) || !std::isfinite(a) || !std::isfinite(alpha)) {
        throw InputError("index point needs positive finite A and alpha");
    }
    return {a, alpha, binary_of(category), category, std::move(patient_id)};
}

double hinge_objective(const Vec2& w, double b, std::span<const Vec2> x, std::span<const int> y, double c) {
    double hinge = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        hinge += std::max(0.0, 1.0 - static_cast<double>(y[j]) * (dot(w, x[j]) + b));
    }
    return 0.5 * dot(w, w) + c * hinge;
}

LinearSvmSolution solve_linear_svm(std::span<const Vec2> x, std::span<const int> y, double c, double tol) {
    const std::size_t n = x.size();
    if (n != y.size()) throw TrainingError("feature and label counts differ");
    if (!(c > 0.0) || !std::isfinite(c)) throw TrainingError("regularization constant c must be positive");
    if (!(tol > 0.0)) throw TrainingError("tolerance must be positive");
    bool has_pos = false;
    bool has_neg = false;
    for (int label : y) {
        if (label == 1) has_pos = true;
        else if (label == -1) has_neg = true;
        else throw TrainingError("labels must be +1 or -1");
    }
    if (!has_pos || !has_neg) throw TrainingError("training needs points of both classes");

    // Dual: minimize 1/2 a'Qa - sum(a), 0 <= a <= c, sum(y a) = 0, with
    // Q_ij = y_i y_j x_i.x_j. w = sum(y a x) is kept up to date so the
    // gradient G_t = y_t (w . x_t) - 1 is available in O(1).
    std::vector<double> alpha(n, 0.0);
    Vec2 w{0.0, 0.0};
    double alpha_sum = 0.0;
    std::vector<double> scores(n);

    LinearSvmSolution best;
    best.objective = std::numeric_limits<double>::infinity();

    const int max_iterations = 200000 + 200 * static_cast<int>(n);
    const int check_every = 8;
    constexpr double kKktEps = 1e-12;
    constexpr double kTau = 1e-12;

    auto gradient = [&](std::size_t t) { return static_cast<double>(y[t]) * dot(w, x[t]) - 1.0; };
    auto in_up = [&](std::size_t t) { return (y[t] > 0 && alpha[t] < c) || (y[t] < 0 && alpha[t] > 0.0); };
    auto in_low = [&](std::size_t t) { return (y[t] > 0 && alpha[t] > 0.0) || (y[t] < 0 && alpha[t] < c); };

    // Bias estimate from free multipliers, as in LIBSVM.
    auto dual_bias = [&]() {
        double ub = std::numeric_limits<double>::infinity();
        double lb = -std::numeric_limits<double>::infinity();
        double free_sum = 0.0;
        int free_count = 0;
        for (std::size_t t = 0; t < n; ++t) {
            const double yg = static_cast<double>(y[t]) * gradient(t);
            if (alpha[t] >= c) {
                if (y[t] < 0) ub = std::min(ub, yg);
                else lb = std::max(lb, yg);
            } else if (alpha[t] <= 0.0) {
                if (y[t] > 0) ub = std::min(ub, yg);
                else lb = std::max(lb, yg);
            } else {
                free_sum += yg;
                ++free_count;
            }
        }
        double rho = 0.0;
        if (free_count > 0) rho = free_sum / free_count;
        else if (std::isfinite(ub) && std::isfinite(lb)) rho = 0.5 * (ub + lb);
        else if (std::isfinite(ub)) rho = ub;
        else if (std::isfinite(lb)) rho = lb;
        return -rho;
    };

    // Returns the relative duality gap after updating the incumbent.
    auto check = [&](int iteration) {
        for (std::size_t t = 0; t < n; ++t) scores[t] = dot(w, x[t]);
        const BiasSearch search(scores, y);
        const auto [b, hinge] = search.minimize(dual_bias());
        const double primal = 0.5 * dot(w, w) + c * hinge;
        const double dual = alpha_sum - 0.5 * dot(w, w);
        if (primal < best.objective) {
            best.w = w;
            best.b = b;
            best.objective = primal;
        }
        best.dual_objective = std::max(best.dual_objective, dual);
        best.trace.push_back(best.objective);
        best.iterations = iteration;
        return (best.objective - best.dual_objective) / std::max(std::abs(best.objective), 1e-300);
    };

    best.dual_objective = -std::numeric_limits<double>::infinity();
    for (int iteration = 0;; ++iteration) {
        // Maximal violating pair.
        double g_max = -std::numeric_limits<double>::infinity();
        double g_min = std::numeric_limits<double>::infinity();
        std::size_t i = n;
        std::size_t j = n;
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -static_cast<double>(y[t]) * gradient(t);
            if (in_up(t) && v > g_max) {
                g_max = v;
                i = t;
            }
            if (in_low(t) && v < g_min) {
                g_min = v;
                j = t;
            }
        }
        const bool kkt_done = i == n || j == n || g_max - g_min < kKktEps;
        if (kkt_done || iteration % check_every == 0 || iteration >= max_iterations) {
            const double gap = check(iteration);
            if (kkt_done || gap <= tol || iteration >= max_iterations) break;
        }

        const double kii = dot(x[i], x[i]);
        const double kjj = dot(x[j], x[j]);
        const double kij = dot(x[i], x[j]);
        double quad = kii + kjj - 2.0 * kij;
        if (quad <= 0.0) quad = kTau;
        const double gi = gradient(i);
        const double gj = gradient(j);
        const double old_i = alpha[i];
        const double old_j = alpha[j];
        double& ai = alpha[i];
        double& aj = alpha[j];
        if (y[i] != y[j]) {
            const double delta = (-gi - gj) / quad;
            const double diff = ai - aj;
            ai += delta;
            aj += delta;
            if (diff > 0.0) {
                if (aj < 0.0) {
                    aj = 0.0;
                    ai = diff;
                }
            } else if (ai < 0.0) {
                ai = 0.0;
                aj = -diff;
            }
            if (diff > 0.0) {
                if (ai > c) {
                    ai = c;
                    aj = c - diff;
                }
            } else if (aj > c) {
                aj = c;
                ai = c + diff;
            }
        } else {
            const double delta = (gi - gj) / quad;
            const double sum = ai + aj;
            ai -= delta;
            aj += delta;
            if (sum > c) {
                if (ai > c) {
                    ai = c;
                    aj = sum - c;
                }
            } else if (aj < 0.0) {
                aj = 0.0;
                ai = sum;
            }
            if (sum > c) {
                if (aj > c) {
                    aj = c;
                    ai = sum - c;
                }
            } else if (ai < 0.0) {
                ai = 0.0;
                aj = sum;
            }
        }
        const double di = (ai - old_i) * static_cast<double>(y[i]);
        const double dj = (aj - old_j) * static_cast<double>(y[j]);
        w[0] += di * x[i][0] + dj * x[j][0];
        w[1] += di * x[i][1] + dj * x[j][1];
        alpha_sum += (ai - old_i) + (aj - old_j);
    }
    return best;
}

FeatureScaling standardize(std::span<const IndexPoint> points) {
    if (points.empty()) throw InputError("cannot standardize an empty point set");
    const double n = static_cast<double>(points.size());
    double mean_a = 0.0;
    double mean_alpha = 0.0;
    for (const auto& p : points) {
        mean_a += p.a;
        mean_alpha += p.alpha;
    }
    mean_a /= n;
    mean_alpha /= n;
    double var_a = 0.0;
    double var_alpha = 0.0;
    for (const auto& p : points) {
        var_a += (p.a - mean_a) * (p.a - mean_a);
        var_alpha += (p.alpha - mean_alpha) * (p.alpha - mean_alpha);
    }
    const double sd_a = std::sqrt(var_a / n);
    const double sd_alpha = std::sqrt(var_alpha / n);
    return {{mean_a, sd_a > 0.0 ? sd_a : 1.0}, {mean_alpha, sd_alpha > 0.0 ? sd_alpha : 1.0}};
}

TrainOutcome train_with_diagnostics(std::span<const IndexPoint> points, double c, double tol) {
    if (points.empty()) throw TrainingError("no training points");
    const bool all_same = std::all_of(points.begin(), points.end(), [&](const IndexPoint& p) {
        return p.a == points[0].a && p.alpha == points[0].alpha;
    });
    if (all_same) throw TrainingError("all training points are identical");

    TrainOutcome out;
    out.model.c = c;
    out.model.scaling = standardize(points);
    std::vector<Vec2> x;
    std::vector<int> y;
    x.reserve(points.size());
    y.reserve(points.size());
    for (const auto& p : points) {
        x.push_back(out.model.scaling.apply(p.a, p.alpha));
        y.push_back(sign_of(p.label));
    }
    out.solution = solve_linear_svm(x, y, c, tol);
    out.model.w = out.solution.w;
    out.model.b = out.solution.b;
    if (out.model.w[0] == 0.0 && out.model.w[1] == 0.0) {
        throw TrainingError("training produced a zero weight vector; the classes are not linearly distinguishable");
    }
    return out;
}

SvmModel train(std::span<const IndexPoint> points, double c, double tol) {
    return train_with_diagnostics(points, c, tol).model;
}

void validate(const SvmModel& m) {
    const bool finite = std::isfinite(m.w[0]) && std::isfinite(m.w[1]) && std::isfinite(m.b);
    if (!finite || (m.w[0] == 0.0 && m.w[1] == 0.0)) throw ModelError("model has no valid weight vector");
    if (!(m.c > 0.0)) throw ModelError("model regularization constant must be positive");
    const bool scales_ok = m.scaling.a.scale > 0.0 && m.scaling.alpha.scale > 0.0 &&
                           std::isfinite(m.scaling.a.scale) && std::isfinite(m.scaling.alpha.scale) &&
                           std::isfinite(m.scaling.a.shift) && std::isfinite(m.scaling.alpha.shift);
    if (!scales_ok) throw ModelError("model feature scaling is invalid");
}

double decision_value(const SvmModel& model, double a, double alpha) {
    return dot(model.w, model.scaling.apply(a, alpha)) + model.b;
}

Prediction predict(const SvmModel& model, double a, double alpha) {
    validate(model);
    const double f = decision_value(model, a, alpha);
    return {f >= 0.0 ? Glycemia::Normoglycemic : Glycemia::Dysglycemic, f / std::sqrt(dot(model.w, model.w))};
}

AccuracyReport tally_accuracy(std::span<const IndexPoint> points, std::span<const Glycemia> predicted) {
    if (points.empty()) throw InputError("accuracy report needs at least one point");
    if (points.size() != predicted.size()) throw InputError("prediction count does not match point count");
    AccuracyReport r;
    std::array<CategoryAccuracy, 5> tallies{};
    for (std::size_t k = 0; k < points.size(); ++k) {
        const auto& p = points[k];
        const bool hit = predicted[k] == p.label;
        ++r.total;
        r.correct += hit ? 1 : 0;
        ++r.confusion[confusion_index(p.label)][confusion_index(predicted[k])];
        auto& t = tallies[category_index(p.category)];
        ++t.count;
        t.correct += hit ? 1 : 0;
        if (p.category == Category::T2DM && predicted[k] == Glycemia::Normoglycemic) ++r.t2dm_as_normoglycemic;
    }
    r.overall = static_cast<double>(r.correct) / static_cast<double>(r.total);
    for (std::size_t c = 0; c < tallies.size(); ++c) {
        if (tallies[c].count == 0) continue;
        tallies[c].accuracy = static_cast<double>(tallies[c].correct) / static_cast<double>(tallies[c].count);
        r.per_category[c] = tallies[c];
    }
    return r;
}

AccuracyReport accuracy_report(const SvmModel& model, std::span<const IndexPoint> points) {
    validate(model);
    std::vector<Glycemia> predicted;
    predicted.reserve(points.size());
    for (const auto& p : points) predicted.push_back(predict(model, p.a, p.alpha).label);
    return tally_accuracy(points, predicted);
}

std::vector<CategoryGroup> single_category_groups() {
    std::vector<CategoryGroup> groups;
    for (Category c : kAllCategories) groups.push_back({c});
    return groups;
}

std::vector<CategoryGroup> progression_groups() {
    return {{Category::NGT}, {Category::IGT, Category::IFG_IGT}, {Category::T2DM}};
}

std::vector<GroupAngle> progression_angles(std::span<const IndexPoint> points, const std::vector<CategoryGroup>& groups,
                                           std::optional<Vec2> center, std::optional<FeatureScaling> scaling) {
    if (groups.size() < 2) throw InputError("progression angles need at least two category groups");
    if (points.empty()) throw InputError("progression angles need points");
    const FeatureScaling s = scaling ? *scaling : standardize(points);

    Vec2 overall{0.0, 0.0};
    for (const auto& p : points) {
        const Vec2 v = s.apply(p.a, p.alpha);
        overall[0] += v[0];
        overall[1] += v[1];
    }
    overall[0] /= static_cast<double>(points.size());
    overall[1] /= static_cast<double>(points.size());
    const Vec2 origin = center ? *center : overall;

    std::vector<GroupAngle> out;
    for (const auto& group : groups) {
        GroupAngle g;
        g.group = group;
        for (const auto& p : points) {
            if (std::find(group.begin(), group.end(), p.category) == group.end()) continue;
            const Vec2 v = s.apply(p.a, p.alpha);
            g.centroid[0] += v[0];
            g.centroid[1] += v[1];
            ++g.count;
        }
        if (g.count == 0) throw InputError("no points for category group " + group_name(group));
        g.centroid[0] /= static_cast<double>(g.count);
        g.centroid[1] /= static_cast<double>(g.count);
        g.angle = std::atan2(g.centroid[1] - origin[1], g.centroid[0] - origin[0]);
        out.push_back(std::move(g));
    }
    return out;
}

bool is_clockwise(std::span<const double> angles) {
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < angles.size(); ++k) {
        double step = std::fmod(angles[k] - angles[k + 1], kTwoPi);
        if (step < 0.0) step += kTwoPi;
        if (step <= 0.0) return false;
        total += step;
    }
    return total < kTwoPi;
}

std::string group_name(const CategoryGroup& group) {
    std::string name;
    for (Category c : group) {
        if (!name.empty()) name += '+';
        name += to_string(c);
    }
    return name;
}

}  // namespace ogtt
