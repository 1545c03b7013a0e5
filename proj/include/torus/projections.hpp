// Smooth and rough Littlewood-Paley projections and the Psi^{(s)} operators
// as coefficient-space multipliers, plus the sup-norm square sums.

#pragma once

#include "torus/norms.hpp"
#include "torus/psi.hpp"
#include "torus/trig_poly.hpp"

namespace torus {

enum class Projector { Smooth, Rough };

namespace detail {

inline int ceil_log2_int(int n) {
    int l = 0;
    while ((1 << l) < n) ++l;
    return l;
}

/// Rough band k: {0} for k = 0, else {n : 2^{k-1} <= |n| <= 2^k - 1}.
inline bool in_rough_band(long long n, int k) {
    if (k == 0) return n == 0;
    const long long a = std::llabs(n);
    return (1LL << (k - 1)) <= a && a <= (1LL << k) - 1;
}

}  // namespace detail

/// Largest projection index that can be nonzero per dimension.
inline std::vector<int> projection_index_bound(const TrigPoly& f, Projector which) {
    std::vector<int> out(static_cast<std::size_t>(f.dim()));
    for (std::size_t j = 0; j < out.size(); ++j) {
        const int K = f.halfdeg()[j];
        if (K == 0) {
            out[j] = 0;
        } else if (which == Projector::Smooth) {
            out[j] = detail::ceil_log2_int(K) + 1;  // phi_k vanishes on [-K,K] beyond
        } else {
            int l = 0;
            while ((1LL << l) - 1 < K) ++l;  // band l still meets [-K,K]
            out[j] = l;
        }
    }
    return out;
}

/// Delta~_k f: coefficientwise multiply by prod_j phi_{k_j}(r_j); the result
/// is trimmed to the dyadic annulus support.
inline TrigPoly smooth_project(const TrigPoly& f, const std::vector<int>& k) {
    const auto& bump = BumpSpec::canonical();
    std::vector<int> hd(static_cast<std::size_t>(f.dim()));
    for (std::size_t j = 0; j < hd.size(); ++j) {
        const long long bound = (k[j] == 0) ? 1 : (1LL << (k[j] + 1)) - 1;
        hd[j] = static_cast<int>(std::min<long long>(bound, f.halfdeg()[j]));
    }
    TrigPoly out(hd, f.real_valued());
    for (std::size_t i = 0; i < out.table_size(); ++i) {
        auto r = out.frequency_of(i);
        cplx c = f.coeff(r);
        if (c == cplx{0.0, 0.0}) continue;
        double w = 1.0;
        for (std::size_t j = 0; j < hd.size(); ++j) w *= bump.phi(k[j], static_cast<double>(r[j]));
        out.table()[i] = c * w;
    }
    return out;
}

/// Delta_k f: sharp indicator restriction to the dyadic band, tensorised.
inline TrigPoly rough_project(const TrigPoly& f, const std::vector<int>& k) {
    std::vector<int> hd(static_cast<std::size_t>(f.dim()));
    for (std::size_t j = 0; j < hd.size(); ++j) {
        const long long bound = (k[j] == 0) ? 0 : (1LL << k[j]) - 1;
        hd[j] = static_cast<int>(std::min<long long>(bound, f.halfdeg()[j]));
    }
    TrigPoly out(hd, f.real_valued());
    for (std::size_t i = 0; i < out.table_size(); ++i) {
        auto r = out.frequency_of(i);
        bool inside = true;
        for (std::size_t j = 0; j < hd.size() && inside; ++j)
            inside = detail::in_rough_band(r[j], k[j]);
        if (inside) out.table()[i] = f.coeff(r);
    }
    return out;
}

/// Psi^{(s)}_k f: coefficientwise multiply by prod_j psi^{(s_j)}_{k_j}(r_j).
inline TrigPoly psi_operator(const TrigPoly& f, const std::vector<int>& k, const std::vector<int>& s) {
    const auto& spec = PsiSpec::canonical();
    TrigPoly out(f.halfdeg(), f.real_valued());
    for (std::size_t i = 0; i < f.table_size(); ++i) {
        const cplx c = f.table()[i];
        if (c == cplx{0.0, 0.0}) continue;
        auto r = f.frequency_of(i);
        cplx w{1.0, 0.0};
        for (std::size_t j = 0; j < k.size(); ++j) w *= spec.eval(k[j], s[j], static_cast<double>(r[j]));
        out.table()[i] = c * w;
    }
    return out;
}

/// (sum_k ||P_k f||_{L^inf}^2)^{1/2} over all index vectors that can be
/// nonzero for f's degree; each term through linf_estimate.
inline double sq_sum_inf(const TrigPoly& f, Projector which, int oversample = 8) {
    const auto kmax = projection_index_bound(f, which);
    const std::size_t d = kmax.size();
    std::vector<int> k(d, 0);
    double acc = 0.0;
    while (true) {
        const TrigPoly p = (which == Projector::Smooth) ? smooth_project(f, k) : rough_project(f, k);
        bool nonzero = false;
        for (const cplx& c : p.table())
            if (c != cplx{0.0, 0.0}) { nonzero = true; break; }
        if (nonzero) {
            const double s = linf_estimate(p, oversample);
            acc += s * s;
        }
        std::size_t j = d;
        bool done = true;
        while (j-- > 0) {
            if (k[j] < kmax[j]) {
                ++k[j];
                for (std::size_t q = j + 1; q < d; ++q) k[q] = 0;
                done = false;
                break;
            }
        }
        if (done) break;
    }
    return std::sqrt(acc);
}

}  // namespace torus
