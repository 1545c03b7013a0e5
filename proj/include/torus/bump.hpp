// The canonical smooth cutoff eta and the dyadic family phi_k.
//
// eta is even, C^infty, supported in (-2,2) with eta == 1 on [-1,1]. The
// transition on [1,2] is the normalised integral of t -> exp(-1/(t(1-t))):
//
//   eta(1+u) = 1 - F(u)/F(1),   F(u) = int_0^u exp(-1/(t(1-t))) dt.
//
// F is tabulated once on a 2^-16-step lattice (per-cell 64-node
// Gauss-Legendre) and read back through 4-point cubic interpolation; the
// plateau values 0 and 1 are returned exactly. phi(xi) = eta(xi) - eta(2 xi),
// phi_0 = eta, phi_k(xi) = phi(2^-k xi).

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "torus/common.hpp"

namespace torus {

namespace detail {

/// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration.
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(static_cast<std::size_t>(n));
    weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = x;
        weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
}

}  // namespace detail

class BumpSpec {
public:
    static const BumpSpec& canonical() {
        static const BumpSpec instance;
        return instance;
    }

    double eta(double xi) const {
        const double a = std::abs(xi);
        if (a <= 1.0) return 1.0;
        if (a >= 2.0) return 0.0;
        // interpolation can over/undershoot by ~1 ulp at the flat ends
        return std::clamp(1.0 - cumulative(a - 1.0) / z_, 0.0, 1.0);
    }

    /// phi_0 = eta; phi_k(xi) = eta(2^-k xi) - eta(2^-k+1 xi) for k >= 1.
    double phi(int k, double xi) const {
        if (k == 0) return eta(xi);
        const double t = std::ldexp(xi, -k);
        return eta(t) - eta(2.0 * t);
    }

    double normalisation() const { return z_; }

private:
    static constexpr int lattice_log2 = 16;
    static constexpr std::size_t cells = std::size_t{1} << lattice_log2;

    BumpSpec() {
        std::vector<double> xs, ws;
        detail::gauss_legendre(64, xs, ws);
        table_.resize(cells + 1);
        table_[0] = 0.0;
        const double h = std::ldexp(1.0, -lattice_log2);
        double sum = 0.0, comp = 0.0;  // Kahan-compensated cumulative sum
        for (std::size_t c = 0; c < cells; ++c) {
            const double a = static_cast<double>(c) * h;
            const double mid = a + 0.5 * h, half = 0.5 * h;
            double cell = 0.0;
            for (std::size_t q = 0; q < xs.size(); ++q) cell += ws[q] * transition(mid + half * xs[q]);
            cell *= half;
            const double y = cell - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            table_[c + 1] = sum;
        }
        z_ = table_[cells];
    }

    static double transition(double t) {
        if (t <= 0.0 || t >= 1.0) return 0.0;
        return std::exp(-1.0 / (t * (1.0 - t)));
    }

    /// F(u) for u in [0,1], 4-point cubic Lagrange on the lattice.
    double cumulative(double u) const {
        if (u <= 0.0) return 0.0;
        if (u >= 1.0) return z_;
        const double pos = std::ldexp(u, lattice_log2);
        long long i = static_cast<long long>(std::floor(pos));
        i = std::min<long long>(std::max<long long>(i - 1, 0), static_cast<long long>(cells) - 3);
        const double t = pos - static_cast<double>(i);  // in [0,3] relative to the stencil start
        const double y0 = table_[static_cast<std::size_t>(i)];
        const double y1 = table_[static_cast<std::size_t>(i) + 1];
        const double y2 = table_[static_cast<std::size_t>(i) + 2];
        const double y3 = table_[static_cast<std::size_t>(i) + 3];
        const double l0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
        const double l1 = t * (t - 2.0) * (t - 3.0) / 2.0;
        const double l2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
        const double l3 = t * (t - 1.0) * (t - 2.0) / 6.0;
        return y0 * l0 + y1 * l1 + y2 * l2 + y3 * l3;
    }

    std::vector<double> table_;
    double z_ = 1.0;
};

inline double eta_eval(double xi) { return BumpSpec::canonical().eta(xi); }
inline double phi_eval(int k, double xi) { return BumpSpec::canonical().phi(k, xi); }

}  // namespace torus
