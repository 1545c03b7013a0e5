// Classical kernels and synthesis of the cutoff symbols as trigonometric
// polynomials on T.

#pragma once

#include "torus/psi.hpp"
#include "torus/trig_poly.hpp"

namespace torus {

/// Fejer kernel of order n: coefficients 1 - |j|/(n+1) on [-n, n].
inline TrigPoly fejer_poly(int n) {
    if (n < 0) throw std::invalid_argument("fejer_poly: order must be >= 0");
    TrigPoly f({n}, true);
    for (long long j = -n; j <= n; ++j) {
        const std::array<long long, 1> k{j};
        f.at(k) = cplx{1.0 - static_cast<double>(std::llabs(j)) / (n + 1.0), 0.0};
    }
    return f;
}

/// de la Vallee Poussin kernel V_{2^N} = 2 K_{2^{N+1}-1} - K_{2^N-1}:
/// coefficients 1 on [-2^N, 2^N], linear decay to 0 at |j| = 2^{N+1}.
inline TrigPoly vallee_poussin_poly(int N) {
    if (N < 0) throw std::invalid_argument("vallee_poussin_poly: N must be >= 0");
    const long long lo = 1LL << N, hi = 2 * lo;
    TrigPoly f({static_cast<int>(hi - 1)}, true);
    for (long long j = -(hi - 1); j <= hi - 1; ++j) {
        const long long a = std::llabs(j);
        const double c = (a <= lo) ? 1.0 : 2.0 - static_cast<double>(a) / static_cast<double>(lo);
        const std::array<long long, 1> k{j};
        f.at(k) = cplx{c, 0.0};
    }
    return f;
}

/// K^{(s)}_k(x) = sum_r psi^{(s)}(2^-k r) e^{2 pi i r x} (PsiSpec symbol).
inline TrigPoly synthesize_kernel_psi(int k, int s) {
    const auto& spec = PsiSpec::canonical();
    const long long R = spec.support_bound(k);
    TrigPoly f({static_cast<int>(R)});
    bool real = true;
    for (long long r = -R; r <= R; ++r) {
        const cplx c = spec.eval(k, s, static_cast<double>(r));
        const std::array<long long, 1> key{r};
        f.at(key) = c;
        if (c.imag() != 0.0 && s == 0) real = false;
    }
    // s = 0: real even symbol; s = +-1: odd imaginary symbol, still a real kernel
    f.set_real_valued(real);
    return f;
}

/// Kernel of the smooth projection: coefficients phi_k(r).
inline TrigPoly synthesize_kernel_phi(int k) {
    const auto& bump = BumpSpec::canonical();
    const long long R = (k == 0) ? 1 : (1LL << (k + 1)) - 1;  // phi_k(r) == 0 for |r| >= 2^{k+1}
    TrigPoly f({static_cast<int>(R)}, true);
    for (long long r = -R; r <= R; ++r) {
        const std::array<long long, 1> key{r};
        f.at(key) = cplx{bump.phi(k, static_cast<double>(r)), 0.0};
    }
    return f;
}

}  // namespace torus
