// Least-squares slope extraction for growth-rate experiments.

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "torus/common.hpp"

namespace torus {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS residual of the fit
    int n = 0;
};

/// Ordinary least squares y ~ slope * x + intercept.
inline FitResult fit_linear(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_linear: need >= 2 points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    FitResult r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (r.slope * x[i] + r.intercept);
        ss += e * e;
    }
    r.residual = std::sqrt(ss / n);
    r.n = static_cast<int>(x.size());
    return r;
}

/// Fit of log(y) against log(x); the slope is the growth exponent.
inline FitResult fit_loglog(std::span<const double> x, std::span<const double> y) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0.0 || y[i] <= 0.0) throw std::invalid_argument("fit_loglog: values must be positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return fit_linear(lx, ly);
}

/// Fit of log2(y) against a plain index; the slope is the dyadic decay rate.
inline FitResult fit_log2_vs_index(std::span<const double> idx, std::span<const double> y) {
    std::vector<double> ly(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] <= 0.0) throw std::invalid_argument("fit_log2_vs_index: values must be positive");
        ly[i] = std::log2(y[i]);
    }
    return fit_linear(idx, ly);
}

}  // namespace torus
