#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "rng.hpp"

namespace mtvq {

/// Gain schedule a_k = a / (k + 1 + A)^alpha, c_k = c / (k + 1)^gamma.
struct SpsaSettings {
    std::size_t iterations = 300;
    /// Step gain. Zero or negative selects calibration from `target_step`.
    double a = 0.0;
    double c = 0.1;
    double stability = 30.0; // A
    double alpha = 0.602;
    double gamma = 0.101;
    /// Calibrated `a` makes the first update move each angle by about this much.
    double target_step = 0.15;
    std::size_t calibration_samples = 25;
};

struct SpsaResult {
    std::vector<double> theta;
    /// Mean of the two perturbed objective values at each iteration.
    std::vector<double> trace;
    double a = 0.0; // step gain actually used
};

using Objective = std::function<double(std::span<const double>)>;

namespace detail {

inline double checked_eval(const Objective &objective, std::span<const double> theta,
                           std::size_t iteration) {
    const double value = objective(theta);
    if (!std::isfinite(value)) {
        fail(ErrorKind::Numeric, "objective returned " + std::to_string(value) +
                                     " at SPSA iteration " + std::to_string(iteration));
    }
    return value;
}

inline void perturb(std::span<const double> theta, std::span<const double> delta, double step,
                    std::vector<double> &plus, std::vector<double> &minus) {
    for (std::size_t p = 0; p < theta.size(); ++p) {
        plus[p] = theta[p] + step * delta[p];
        minus[p] = theta[p] - step * delta[p];
    }
}

} // namespace detail

/// Picks `a` so that the expected first update has magnitude `target_step`
/// per component, from the average simultaneous-perturbation slope at theta.
inline double calibrate_spsa_gain(const Objective &objective, std::span<const double> theta,
                                  const SpsaSettings &settings, RngStream &rng) {
    const std::size_t n = theta.size();
    std::vector<double> delta(n), plus(n), minus(n);
    double slope = 0.0;
    const std::size_t samples = settings.calibration_samples == 0 ? 1 : settings.calibration_samples;
    for (std::size_t s = 0; s < samples; ++s) {
        for (auto &d : delta) {
            d = rng.rademacher();
        }
        detail::perturb(theta, delta, settings.c, plus, minus);
        const double f_plus = detail::checked_eval(objective, plus, 0);
        const double f_minus = detail::checked_eval(objective, minus, 0);
        slope += std::abs(f_plus - f_minus) / (2.0 * settings.c);
    }
    slope /= static_cast<double>(samples);
    const double base = settings.target_step * std::pow(1.0 + settings.stability, settings.alpha);
    return slope > 0.0 ? base / slope : base;
}

/// Simultaneous perturbation stochastic approximation. Each iteration draws a
/// Rademacher direction, evaluates the objective at theta +/- c_k * delta and
/// steps against the two-point gradient estimate.
inline SpsaResult spsa_minimize(const Objective &objective, std::vector<double> theta,
                                const SpsaSettings &settings, RngStream &rng) {
    if (settings.iterations == 0) {
        fail(ErrorKind::Range, "SPSA needs at least one iteration");
    }
    if (!(settings.c > 0.0)) {
        fail(ErrorKind::Range, "SPSA perturbation c must be positive");
    }
    for (const double value : theta) {
        if (!std::isfinite(value)) {
            fail(ErrorKind::Numeric, "initial SPSA parameters must be finite");
        }
    }

    SpsaResult result;
    result.a = settings.a > 0.0 ? settings.a : calibrate_spsa_gain(objective, theta, settings, rng);
    result.trace.reserve(settings.iterations);

    const std::size_t n = theta.size();
    std::vector<double> delta(n), plus(n), minus(n);
    for (std::size_t k = 0; k < settings.iterations; ++k) {
        const double kk = static_cast<double>(k);
        const double a_k = result.a / std::pow(kk + 1.0 + settings.stability, settings.alpha);
        const double c_k = settings.c / std::pow(kk + 1.0, settings.gamma);
        for (auto &d : delta) {
            d = rng.rademacher();
        }
        detail::perturb(theta, delta, c_k, plus, minus);
        const double f_plus = detail::checked_eval(objective, plus, k);
        const double f_minus = detail::checked_eval(objective, minus, k);
        const double slope = (f_plus - f_minus) / (2.0 * c_k);
        for (std::size_t p = 0; p < n; ++p) {
            // delta_p is +/-1, so dividing by it equals multiplying.
            theta[p] -= a_k * slope * delta[p];
        }
        result.trace.push_back(0.5 * (f_plus + f_minus));
    }
    result.theta = std::move(theta);
    return result;
}

} // namespace mtvq
