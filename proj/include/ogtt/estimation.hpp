#pragma once

// Point estimation of Ackerman parameters from a single OGTT record.
//
// The estimate minimizes a penalized least-squares objective
//
//   sum_i (G_i - G(t_i))^2 + lambda * [ (u_g0 - u_fasting)^2 + (u_alpha - 1/2)^2 + (u_omega - 1/2)^2 ]
//
// where u_x is parameter x rescaled to [0, 1] over its search bounds and
// u_fasting is the measured fasting value in the same coordinates. This is a
// MAP estimate under independent Gaussian priors centred on the fasting value
// and on the middle of the alpha and omega ranges.
//
// Five samples and five parameters make the problem exactly determined and
// multimodal, so a bounded Nelder-Mead search is run from a fixed sequence of
// quasi-random starting points and the lowest objective wins.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "ogtt/config.hpp"
#include "ogtt/errors.hpp"
#include "ogtt/model.hpp"

namespace ogtt {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

struct FitConfig {
    // g0 bounds are multiples of the measured fasting concentration.
    Interval g0_factor{0.5, 1.5};
    Interval a{1.0, 400.0};
    Interval alpha{0.001, 0.1};
    Interval omega{0.005, 0.2};
    Interval delta{-std::numbers::pi, std::numbers::pi};
    int n_starts = 16;
    double prior_weight = 0.01;
    std::uint64_t seed = 0;
    int max_iterations = 2000;   // per start
    double convergence_tol = 1e-6;  // simplex diameter, scaled coordinates

    friend bool operator==(const FitConfig&, const FitConfig&) = default;
};

struct FitResult {
    AckermanParams params;
    double error_abs = 0.0;
    Samples residuals{};  // G_i - G_i^pred
    double objective = 0.0;
    bool converged = false;
    int starts_tried = 0;

    friend bool operator==(const FitResult&, const FitResult&) = default;
};

// Thrown by fit() when no start met the convergence criterion. The best
// result found is still available.
class NonConvergenceError : public PipelineError {
public:
    NonConvergenceError(const std::string& what, FitResult best)
        : PipelineError(what), best_(std::move(best)) {}
    const FitResult& best() const { return best_; }

private:
    FitResult best_;
};

FitConfig default_fit_config();

// Throws InputError on empty or non-finite bounds, non-positive alpha/omega
// lower bounds, n_starts < 1 and similar.
void validate(const FitConfig& config);

// Absolute parameter bounds for a given record (g0 bounds depend on the
// measured fasting value).
struct ParamBounds {
    Interval g0, a, alpha, omega, delta;
};
ParamBounds resolve_bounds(const OgttRecord& record, const FitConfig& config);

// Penalized objective for a parameter set; fit() reports exactly this value.
double fit_objective(const OgttRecord& record, const AckermanParams& params, const FitConfig& config);

FitResult fit(const OgttRecord& record, const FitConfig& config = default_fit_config());

// Plain-text "key = value" form, one key per line, '#' starts a comment.
std::string to_key_value(const FitConfig& config);
// Unknown keys are rejected.
FitConfig parse_fit_config(const std::string& text);
// Applies and removes the fit keys found in `kv`, leaving any others.
FitConfig take_fit_keys(KeyValues& kv, FitConfig base = default_fit_config());

}  // namespace ogtt
