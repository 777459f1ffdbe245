#include "ogtt/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace ogtt {

namespace {

constexpr std::size_t kDim = 5;
using Point = std::array<double, kDim>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_periodic(const Interval& delta) { return delta.width() >= kTwoPi - 1e-12; }

double radical_inverse(std::uint64_t index, std::uint64_t base) {
    double result = 0.0;
    double f = 1.0 / static_cast<double>(base);
    while (index > 0) {
        result += f * static_cast<double>(index % base);
        index /= base;
        f /= static_cast<double>(base);
    }
    return result;
}

double unit_from_bits(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

// Maps optimizer coordinates in [0, 1]^5 to parameters and back.
class Scaling {
public:
    Scaling(const ParamBounds& bounds, bool periodic_delta)
        : lo_{bounds.g0.lo, bounds.a.lo, bounds.alpha.lo, bounds.omega.lo, bounds.delta.lo},
          width_{bounds.g0.width(), bounds.a.width(), bounds.alpha.width(), bounds.omega.width(),
                 periodic_delta ? kTwoPi : bounds.delta.width()},
          periodic_delta_(periodic_delta) {}

    // Projects a trial point into the feasible box.
    Point project(Point u) const {
        for (std::size_t d = 0; d < kDim; ++d) {
            if (d == 4 && periodic_delta_) {
                u[d] -= std::floor(u[d]);
            } else {
                u[d] = std::clamp(u[d], 0.0, 1.0);
            }
        }
        return u;
    }

    AckermanParams to_params(const Point& u) const {
        AckermanParams p;
        p.g0 = lo_[0] + u[0] * width_[0];
        p.a = lo_[1] + u[1] * width_[1];
        p.alpha = lo_[2] + u[2] * width_[2];
        p.omega = lo_[3] + u[3] * width_[3];
        p.delta = lo_[4] + u[4] * width_[4];
        if (periodic_delta_) p.delta = normalize_phase(p.delta);
        return p;
    }

private:
    Point lo_;
    Point width_;
    bool periodic_delta_;
};

double sum_squared_residuals(const OgttRecord& record, const AckermanParams& p) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < kSampleCount; ++i) {
        const double t = kSampleTimes[i];
        const double r = record.g[i] - (p.g0 + p.a * std::exp(-p.alpha * t) * std::cos(p.omega * t - p.delta));
        ssr += r * r;
    }
    return ssr;
}

double prior_penalty(const OgttRecord& record, const AckermanParams& p, const ParamBounds& b) {
    const double u_g0 = (p.g0 - b.g0.lo) / b.g0.width();
    const double u_fasting = (record.fasting() - b.g0.lo) / b.g0.width();
    const double u_alpha = (p.alpha - b.alpha.lo) / b.alpha.width();
    const double u_omega = (p.omega - b.omega.lo) / b.omega.width();
    return (u_g0 - u_fasting) * (u_g0 - u_fasting) + (u_alpha - 0.5) * (u_alpha - 0.5) +
           (u_omega - 0.5) * (u_omega - 0.5);
}

struct Candidate {
    AckermanParams params;
    double objective = 0.0;
    bool converged = false;
};

// Lower objective first; ties go to the smaller omega, then the smaller |delta|.
bool better(const Candidate& x, const Candidate& y) {
    if (x.objective != y.objective) return x.objective < y.objective;
    if (x.params.omega != y.params.omega) return x.params.omega < y.params.omega;
    return std::abs(x.params.delta) < std::abs(y.params.delta);
}

class NelderMead {
public:
    NelderMead(const Scaling& scaling, const OgttRecord& record, const ParamBounds& bounds,
               const FitConfig& config)
        : scaling_(scaling), record_(record), bounds_(bounds), config_(config) {}

    Candidate run(const Point& start) const {
        int budget = config_.max_iterations;
        Point best = scaling_.project(start);
        bool converged = false;
        double best_value = value(best);
        // A converged simplex is restarted around its best vertex; the search
        // ends once a restart no longer improves the objective.
        double step = 0.1;
        while (budget > 0) {
            const auto [point, f, ok] = descend(best, step, budget);
            const bool improved = f < best_value;
            if (f <= best_value) {
                best = point;
                best_value = f;
            }
            converged = ok;
            if (!ok || !improved) break;
            step = 0.02;
        }
        const AckermanParams params = scaling_.to_params(best);
        return {params, fit_objective(record_, params, config_), converged};
    }

private:
    struct Outcome {
        Point point;
        double value;
        bool converged;
    };

    double value(const Point& u) const {
        const AckermanParams p = scaling_.to_params(u);
        return sum_squared_residuals(record_, p) + config_.prior_weight * prior_penalty(record_, p, bounds_);
    }

    Outcome descend(const Point& origin, double step, int& budget) const {
        std::array<Point, kDim + 1> simplex;
        std::array<double, kDim + 1> f;
        simplex[0] = origin;
        for (std::size_t d = 0; d < kDim; ++d) {
            Point v = origin;
            v[d] += (v[d] + step <= 1.0) ? step : -step;
            simplex[d + 1] = scaling_.project(v);
        }
        for (std::size_t k = 0; k <= kDim; ++k) f[k] = value(simplex[k]);

        std::array<std::size_t, kDim + 1> order;
        while (true) {
            for (std::size_t k = 0; k <= kDim; ++k) order[k] = k;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return f[i] < f[j]; });
            const std::size_t lo = order[0];
            const std::size_t hi = order[kDim];
            const std::size_t next_hi = order[kDim - 1];

            double diameter = 0.0;
            for (std::size_t k = 0; k <= kDim; ++k) {
                for (std::size_t d = 0; d < kDim; ++d) {
                    diameter = std::max(diameter, std::abs(simplex[k][d] - simplex[lo][d]));
                }
            }
            if (diameter < config_.convergence_tol) return {simplex[lo], f[lo], true};
            if (budget <= 0) return {simplex[lo], f[lo], false};
            --budget;

            Point centroid{};
            for (std::size_t k = 0; k <= kDim; ++k) {
                if (k == hi) continue;
                for (std::size_t d = 0; d < kDim; ++d) centroid[d] += simplex[k][d] / static_cast<double>(kDim);
            }
            auto along = [&](double t) {
                Point p;
                for (std::size_t d = 0; d < kDim; ++d) p[d] = centroid[d] + t * (simplex[hi][d] - centroid[d]);
                return scaling_.project(p);
            };

            const Point reflected = along(-1.0);
            const double f_reflected = value(reflected);
            if (f_reflected < f[lo]) {
                const Point expanded = along(-2.0);
                const double f_expanded = value(expanded);
                if (f_expanded < f_reflected) {
                    simplex[hi] = expanded;
                    f[hi] = f_expanded;
                } else {
                    simplex[hi] = reflected;
                    f[hi] = f_reflected;
                }
                continue;
            }
            if (f_reflected < f[next_hi]) {
                simplex[hi] = reflected;
                f[hi] = f_reflected;
                continue;
            }
            const bool outside = f_reflected < f[hi];
            const Point contracted = along(outside ? -0.5 : 0.5);
            const double f_contracted = value(contracted);
            if (f_contracted < (outside ? f_reflected : f[hi])) {
                simplex[hi] = contracted;
                f[hi] = f_contracted;
                continue;
            }
            // Shrink toward the best vertex.
            for (std::size_t k = 0; k <= kDim; ++k) {
                if (k == lo) continue;
                Point p;
                for (std::size_t d = 0; d < kDim; ++d) {
                    p[d] = simplex[lo][d] + 0.5 * (simplex[k][d] - simplex[lo][d]);
                }
                simplex[k] = scaling_.project(p);
                f[k] = value(simplex[k]);
            }
        }
    }

    const Scaling& scaling_;
    const OgttRecord& record_;
    const ParamBounds& bounds_;
    const FitConfig& config_;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw InputError("invalid fit config: " + what);
}

bool finite_interval(const Interval& i) { return std::isfinite(i.lo) && std::isfinite(i.hi) && i.lo < i.hi; }

}  // namespace

FitConfig default_fit_config() { return FitConfig{}; }

void validate(const FitConfig& c) {
    require(finite_interval(c.g0_factor) && c.g0_factor.lo > 0.0, "g0 factor bounds");
    require(finite_interval(c.a) && c.a.lo > 0.0, "a bounds");
    require(finite_interval(c.alpha) && c.alpha.lo > 0.0, "alpha bounds");
    require(finite_interval(c.omega) && c.omega.lo > 0.0, "omega bounds");
    require(finite_interval(c.delta) && c.delta.lo >= -std::numbers::pi && c.delta.hi <= std::numbers::pi,
            "delta bounds must lie within [-pi, pi]");
    require(c.n_starts >= 1, "n_starts must be >= 1");
    require(std::isfinite(c.prior_weight) && c.prior_weight >= 0.0, "prior_weight must be >= 0");
    require(c.max_iterations >= 1, "max_iterations must be >= 1");
    require(std::isfinite(c.convergence_tol) && c.convergence_tol > 0.0, "convergence_tol must be > 0");
}

ParamBounds resolve_bounds(const OgttRecord& record, const FitConfig& config) {
    const double g = record.fasting();
    return {{config.g0_factor.lo * g, config.g0_factor.hi * g}, config.a, config.alpha, config.omega, config.delta};
}

double fit_objective(const OgttRecord& record, const AckermanParams& params, const FitConfig& config) {
    return sum_squared_residuals(record, params) +
           config.prior_weight * prior_penalty(record, params, resolve_bounds(record, config));
}

FitResult fit(const OgttRecord& record, const FitConfig& config) {
    validate(record);
    validate(config);

    const ParamBounds bounds = resolve_bounds(record, config);
    const Scaling scaling(bounds, is_periodic(config.delta));
    const NelderMead search(scaling, record, bounds, config);

    // Halton points with a seed-dependent Cranley-Patterson shift. Start k
    // never depends on n_starts, so more starts can only improve the result.
    std::mt19937_64 rng(config.seed);
    Point shift;
    for (double& s : shift) s = unit_from_bits(rng());
    constexpr std::array<std::uint64_t, kDim> primes{2, 3, 5, 7, 11};

    Candidate best;
    bool have_best = false;
    bool any_converged = false;
    for (int k = 0; k < config.n_starts; ++k) {
        Point start;
        for (std::size_t d = 0; d < kDim; ++d) {
            const double h = radical_inverse(static_cast<std::uint64_t>(k) + 1, primes[d]) + shift[d];
            start[d] = h - std::floor(h);
        }
        const Candidate c = search.run(start);
        any_converged = any_converged || c.converged;
        if (!have_best || better(c, best)) {
            best = c;
            have_best = true;
        }
    }

    FitResult result;
    result.params = best.params;
    const Samples pred = predict_at_sample_times(best.params);
    double total = 0.0;
    for (std::size_t i = 0; i < kSampleCount; ++i) {
        result.residuals[i] = record.g[i] - pred[i];
        total += std::abs(result.residuals[i]);
    }
    result.error_abs = total / static_cast<double>(kSampleCount);
    result.objective = best.objective;
    result.converged = any_converged;
    result.starts_tried = config.n_starts;
    if (!any_converged) {
        throw NonConvergenceError("no start converged for record '" + record.patient_id + "'", result);
    }
    return result;
}

std::string to_key_value(const FitConfig& c) {
    std::ostringstream out;
    auto interval = [&](const char* name, const Interval& i) {
        out << name << "_min = " << format_double(i.lo) << '\n';
        out << name << "_max = " << format_double(i.hi) << '\n';
    };
    interval("g0_factor", c.g0_factor);
    interval("a", c.a);
    interval("alpha", c.alpha);
    interval("omega", c.omega);
    interval("delta", c.delta);
    out << "n_starts = " << c.n_starts << '\n';
    out << "prior_weight = " << format_double(c.prior_weight) << '\n';
    out << "seed = " << c.seed << '\n';
    out << "max_iterations = " << c.max_iterations << '\n';
    out << "convergence_tol = " << format_double(c.convergence_tol) << '\n';
    return out.str();
}

FitConfig take_fit_keys(KeyValues& kv, FitConfig c) {
    auto take = [&](const std::string& key, auto&& apply) {
        if (auto it = kv.find(key); it != kv.end()) {
            apply(it->second, key);
            kv.erase(it);
        }
    };
    auto interval = [&](const std::string& name, Interval& i) {
        take(name + "_min", [&](const std::string& v, const std::string& k) { i.lo = parse_double(v, k); });
        take(name + "_max", [&](const std::string& v, const std::string& k) { i.hi = parse_double(v, k); });
    };
    interval("g0_factor", c.g0_factor);
    interval("a", c.a);
    interval("alpha", c.alpha);
    interval("omega", c.omega);
    interval("delta", c.delta);
    take("n_starts", [&](const std::string& v, const std::string& k) { c.n_starts = static_cast<int>(parse_int(v, k)); });
    take("prior_weight", [&](const std::string& v, const std::string& k) { c.prior_weight = parse_double(v, k); });
    take("seed", [&](const std::string& v, const std::string& k) { c.seed = parse_uint(v, k); });
    take("max_iterations",
         [&](const std::string& v, const std::string& k) { c.max_iterations = static_cast<int>(parse_int(v, k)); });
    take("convergence_tol", [&](const std::string& v, const std::string& k) { c.convergence_tol = parse_double(v, k); });
    validate(c);
    return c;
}

FitConfig parse_fit_config(const std::string& text) {
    KeyValues kv = parse_key_values(text);
    FitConfig c = take_fit_keys(kv);
    if (!kv.empty()) throw InputError("unknown fit config key '" + kv.begin()->first + "'");
    return c;
}

}  // namespace ogtt
