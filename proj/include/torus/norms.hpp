// Norms and Orlicz-type functionals of trigonometric polynomials.
//
// L^p for even integer p is computed by a rectangle rule at resolution
// > p*K per dimension, which is exact for trigonometric polynomials.
// Other p use an oversampled rectangle rule and are flagged approximate.
// The sup norm is a grid maximum plus one parabolic refinement step per
// dimension and is a lower estimate of the true L^infty norm.

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "torus/trig_poly.hpp"

namespace torus {

struct LpResult {
    double value = 0.0;
    std::vector<int> log2res;  // per-dimension quadrature resolution actually used
    bool exact = false;
};

namespace detail {

inline bool is_even_integer(double p) {
    if (p < 2.0) return false;
    const double r = std::round(p);
    return std::abs(p - r) == 0.0 && static_cast<long long>(r) % 2 == 0;
}

inline std::vector<int> quadrature_log2res(const TrigPoly& f, double p, int oversample, bool& exact) {
    std::vector<int> lr(static_cast<std::size_t>(f.dim()));
    exact = is_even_integer(p);
    for (std::size_t j = 0; j < lr.size(); ++j) {
        const std::size_t K = static_cast<std::size_t>(f.halfdeg()[j]);
        std::size_t n;
        if (exact) {
            n = next_pow2(static_cast<std::size_t>(p) * K + 1);
        } else {
            n = next_pow2(std::max<std::size_t>(1, static_cast<std::size_t>(oversample) * (2 * K + 1)));
        }
        // evaluate() needs 2^L > 2K regardless
        n = std::max(n, next_pow2(2 * K + 1));
        lr[j] = log2_exact(n);
    }
    return lr;
}

}  // namespace detail

/// L^p norm with quadrature metadata. p >= 1, oversample >= 1.
inline LpResult lp_norm_info(const TrigPoly& f, double p, int oversample = 8,
                             std::size_t mem_budget = default_mem_budget) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    if (oversample < 1) throw std::invalid_argument("lp_norm: oversample must be >= 1");
    LpResult res;
    bool exact = false;
    res.log2res = detail::quadrature_log2res(f, p, oversample, exact);
    res.exact = exact;
    bool all_zero = true;
    for (const cplx& c : f.table())
        if (c != cplx{0.0, 0.0}) { all_zero = false; break; }
    if (all_zero) return res;

    SampleGrid g = evaluate(f, res.log2res, mem_budget);
    double acc = 0.0;
    for (const cplx& v : g.values()) acc += std::pow(std::abs(v), p);
    acc /= static_cast<double>(g.values().size());
    res.value = std::pow(acc, 1.0 / p);
    return res;
}

inline double lp_norm(const TrigPoly& f, double p, int oversample = 8,
                      std::size_t mem_budget = default_mem_budget) {
    return lp_norm_info(f, p, oversample, mem_budget).value;
}

/// Grid maximum of |f| followed by one per-dimension parabolic refinement step.
/// Lower estimate of the true sup norm. oversample >= 2.
inline double linf_estimate(const TrigPoly& f, int oversample = 8,
                            std::size_t mem_budget = default_mem_budget) {
    if (oversample < 2) throw std::invalid_argument("linf_estimate: oversample must be >= 2");
    std::vector<int> lr(static_cast<std::size_t>(f.dim()));
    for (std::size_t j = 0; j < lr.size(); ++j) {
        const std::size_t K = static_cast<std::size_t>(f.halfdeg()[j]);
        lr[j] = log2_exact(next_pow2(std::max<std::size_t>(2, static_cast<std::size_t>(oversample) * (2 * K + 1))));
    }
    SampleGrid g = evaluate(f, lr, mem_budget);

    double best = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < g.values().size(); ++i) {
        const double a = std::abs(g.values()[i]);
        if (a > best) { best = a; arg = i; }
    }

    // decode argmax into coordinates
    const auto& shape = g.shape();
    const auto strides = row_major_strides(shape);
    std::vector<double> x(shape.size());
    std::vector<std::size_t> s(shape.size());
    for (std::size_t j = 0; j < shape.size(); ++j) {
        s[j] = (arg / strides[j]) % shape[j];
        x[j] = static_cast<double>(s[j]) / static_cast<double>(shape[j]);
    }

    // one parabolic step per dimension through the grid neighbours, then a
    // direct re-evaluation at the shifted point
    for (std::size_t j = 0; j < shape.size(); ++j) {
        const double h = 1.0 / static_cast<double>(shape[j]);
        const std::size_t sj = s[j];
        const std::size_t prev = (sj + shape[j] - 1) % shape[j];
        const std::size_t next = (sj + 1) % shape[j];
        const std::size_t base = arg - sj * strides[j];
        const double ym = std::abs(g.values()[base + prev * strides[j]]);
        const double y0 = std::abs(g.values()[arg]);
        const double yp = std::abs(g.values()[base + next * strides[j]]);
        const double denom = ym - 2.0 * y0 + yp;
        if (denom >= 0.0) continue;  // no interior maximum of the parabola
        double delta = 0.5 * h * (ym - yp) / denom;
        delta = std::clamp(delta, -0.5 * h, 0.5 * h);
        std::vector<double> xs = x;
        xs[j] = x[j] + delta;
        if (xs[j] < 0.0) xs[j] += 1.0;
        const double cand = std::abs(eval_at(f, xs));
        if (cand > best) {
            best = cand;
            x = xs;
        }
    }
    return best;
}

/// Rectangle-rule value of int |f| log^r(1+|f|), r > 0.
inline double orlicz_functional(const TrigPoly& f, double r, int oversample = 8,
                                std::size_t mem_budget = default_mem_budget) {
    if (r <= 0.0) throw std::invalid_argument("orlicz_functional: r must be > 0");
    if (oversample < 1) throw std::invalid_argument("orlicz_functional: oversample must be >= 1");
    std::vector<int> lr(static_cast<std::size_t>(f.dim()));
    for (std::size_t j = 0; j < lr.size(); ++j) {
        const std::size_t K = static_cast<std::size_t>(f.halfdeg()[j]);
        lr[j] = log2_exact(next_pow2(std::max<std::size_t>(1, static_cast<std::size_t>(oversample) * (2 * K + 1))));
    }
    SampleGrid g = evaluate(f, lr, mem_budget);
    double acc = 0.0;
    for (const cplx& v : g.values()) {
        const double a = std::abs(v);
        acc += a * std::pow(std::log1p(a), r);
    }
    return acc / static_cast<double>(g.values().size());
}

/// Rectangle-rule mean of |v|^p over an existing grid, ^(1/p).
inline double grid_lp_norm(const SampleGrid& g, double p) {
    double acc = 0.0;
    for (const cplx& v : g.values()) acc += std::pow(std::abs(v), p);
    return std::pow(acc / static_cast<double>(g.values().size()), 1.0 / p);
}

}  // namespace torus
