#pragma once

// Reference computations for tests. Nothing here calls into the library's
// solver or objective code.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle {

using P2 = std::array<double, 2>;

inline double svm_objective(double w0, double w1, double b, const std::vector<P2>& x, const std::vector<int>& y,
                            double c) {
    double h = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double m = 1.0 - y[j] * (w0 * x[j][0] + w1 * x[j][1] + b);
        if (m > 0.0) h += m;
    }
    return 0.5 * (w0 * w0 + w1 * w1) + c * h;
}

// Population-standardized copy of the points.
inline std::vector<P2> standardized(const std::vector<P2>& x) {
    std::array<double, 2> mean{0, 0};
    std::array<double, 2> sd{0, 0};
    for (const auto& p : x) {
        mean[0] += p[0];
        mean[1] += p[1];
    }
    mean[0] /= x.size();
    mean[1] /= x.size();
    for (const auto& p : x) {
        sd[0] += (p[0] - mean[0]) * (p[0] - mean[0]);
        sd[1] += (p[1] - mean[1]) * (p[1] - mean[1]);
    }
    sd[0] = std::sqrt(sd[0] / x.size());
    sd[1] = std::sqrt(sd[1] / x.size());
    std::vector<P2> out;
    for (const auto& p : x) {
        out.push_back({(p[0] - mean[0]) / (sd[0] > 0 ? sd[0] : 1.0), (p[1] - mean[1]) / (sd[1] > 0 ? sd[1] : 1.0)});
    }
    return out;
}

struct GridOptimum {
    double w0, w1, b, objective;
};

// Exhaustive search on a 41^3 grid over (w0, w1, b), re-centred and narrowed
// around the best cell for `rounds` passes. The objective is convex, so the
// narrowing cannot lose the global basin.
inline GridOptimum grid_minimum(const std::vector<P2>& x, const std::vector<int>& y, double c, int rounds = 10) {
    double max_norm = 0.0;
    for (const auto& p : x) max_norm = std::max(max_norm, std::hypot(p[0], p[1]));
    double rw = std::sqrt(2.0 * c * static_cast<double>(x.size())) + 1.0;
    double rb = 1.0 + rw * max_norm;
    GridOptimum best{0, 0, 0, std::numeric_limits<double>::infinity()};
    double cw0 = 0, cw1 = 0, cb = 0;
    constexpr int n = 40;
    for (int round = 0; round < rounds; ++round) {
        for (int i = 0; i <= n; ++i) {
            const double w0 = cw0 - rw + 2.0 * rw * i / n;
            for (int j = 0; j <= n; ++j) {
                const double w1 = cw1 - rw + 2.0 * rw * j / n;
                for (int k = 0; k <= n; ++k) {
                    const double b = cb - rb + 2.0 * rb * k / n;
                    const double o = svm_objective(w0, w1, b, x, y, c);
                    if (o < best.objective) best = {w0, w1, b, o};
                }
            }
        }
        cw0 = best.w0;
        cw1 = best.w1;
        cb = best.b;
        rw *= 0.25;
        rb *= 0.25;
    }
    return best;
}

// Best training accuracy any straight line can reach, by enumerating
// directions finely and every threshold between consecutive projections.
inline double best_linear_accuracy(const std::vector<P2>& x, const std::vector<int>& y) {
    std::size_t best = 0;
    const int directions = 3600;
    for (int d = 0; d < directions; ++d) {
        const double th = 2.0 * std::numbers::pi * d / directions;
        std::vector<std::pair<double, int>> proj;
        for (std::size_t j = 0; j < x.size(); ++j) proj.push_back({std::cos(th) * x[j][0] + std::sin(th) * x[j][1], y[j]});
        std::sort(proj.begin(), proj.end());
        // Threshold before element k: everything at index >= k is +1.
        for (std::size_t k = 0; k <= proj.size(); ++k) {
            std::size_t hit = 0;
            for (std::size_t m = 0; m < proj.size(); ++m) hit += ((m >= k) == (proj[m].second > 0)) ? 1 : 0;
            best = std::max(best, hit);
        }
    }
    return static_cast<double>(best) / static_cast<double>(x.size());
}

}  // namespace oracle
