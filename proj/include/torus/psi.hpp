// The widened annular cutoff psi and its derivative family psi^{(s)}.
//
//   delta(xi) = eta(xi/2)            (even, supp in (-4,4), == 1 on [-2,2])
//   psi(xi)   = delta(xi) - delta(8 xi)
//
// so psi == 1 on 1/2 <= |xi| <= 2 and supp psi in {1/4 <= |xi| <= 4}; in
// particular psi_k phi_k = phi_k pointwise. The dilation factor 8 (rather
// than 2) is what makes the plateau cover supp phi.
//
//   psi^{(s)}(xi) = (i 2 pi xi)^s psi(xi),  s in {-1,0,1},  psi^{(-1)}(0) := 0
//   psi_k = psi(2^-k .) for k >= 1,  psi_0 = delta.

#pragma once

#include "torus/bump.hpp"

namespace torus {

class PsiSpec {
public:
    static const PsiSpec& canonical() {
        static const PsiSpec instance;
        return instance;
    }

    double delta(double xi) const { return bump_->eta(0.5 * xi); }

    double psi(double xi) const { return delta(xi) - delta(8.0 * xi); }

    /// Base symbol of Psi_k before the (i 2 pi .)^s factor.
    double base(int k, double xi) const {
        if (k == 0) return delta(xi);
        return psi(std::ldexp(xi, -k));
    }

    /// psi^{(s)}_k evaluated at integer-scale xi: (i 2 pi 2^-k xi)^s base_k(xi).
    cplx eval(int k, int s, double xi) const {
        const double b = base(k, xi);
        if (s == 0) return {b, 0.0};
        const double scaled = two_pi * std::ldexp(xi, -k);
        if (s == 1) return cplx{0.0, scaled} * b;
        if (s == -1) {
            if (xi == 0.0 || b == 0.0) return {0.0, 0.0};
            return b / cplx{0.0, scaled};
        }
        throw std::invalid_argument("psi_eval: s must be in {-1,0,1}");
    }

    /// Largest |r| with a possibly nonzero symbol value.
    long long support_bound(int k) const {
        if (k == 0) return 3;                       // delta(r) == 0 for |r| >= 4
        return (1LL << (k + 2)) - 1;                // psi(2^-k r) == 0 for |r| >= 2^{k+2}
    }

private:
    PsiSpec() : bump_(&BumpSpec::canonical()) {}
    const BumpSpec* bump_;
};

inline cplx psi_eval(int k, int s, double xi) { return PsiSpec::canonical().eval(k, s, xi); }

}  // namespace torus
