// Seeded random trigonometric polynomials for experiments and tests.
//
// All draws go through a fixed 64-bit generator and hand-rolled transforms
// so that a given seed produces the same coefficients on every platform.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "torus/trig_poly.hpp"

namespace torus {

enum class CoeffLaw {
    ComplexGaussian,   // independent CN(0,1): Re, Im ~ N(0, 1/2)
    UnimodularPhase,   // e^{2 pi i theta}, theta uniform
    RandomSign,        // +1 or -1
};

namespace detail {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform01() {  // in [0,1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double gaussian() {  // Box-Muller, one value per call (pair cached)
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01(), u2 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = two_pi * u2;
        spare_ = rad * std::sin(ang);
        have_spare_ = true;
        return rad * std::cos(ang);
    }

    double sign() { return (gen_() & 1u) ? 1.0 : -1.0; }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline cplx draw(Rng& rng, CoeffLaw law) {
    switch (law) {
        case CoeffLaw::ComplexGaussian: {
            const double re = rng.gaussian() * 0.7071067811865476;
            const double im = rng.gaussian() * 0.7071067811865476;
            return {re, im};
        }
        case CoeffLaw::UnimodularPhase: {
            const double ang = two_pi * rng.uniform01();
            return {std::cos(ang), std::sin(ang)};
        }
        case CoeffLaw::RandomSign:
            return {rng.sign(), 0.0};
    }
    return {0.0, 0.0};
}

/// Per-cell seed derivation (splitmix64 mix) so parallel sweep cells are
/// independent of scheduling order.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t cell) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (cell + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Random polynomial with the given law on the full coefficient box.
/// With real_valued set, coefficients are conjugate-symmetrised.
inline TrigPoly random_poly(int dim, const std::vector<int>& halfdeg, std::uint64_t seed, CoeffLaw law,
                            bool real_valued = false) {
    if (static_cast<std::size_t>(dim) != halfdeg.size())
        throw std::invalid_argument("random_poly: dim/halfdeg mismatch");
    TrigPoly f(halfdeg, real_valued);
    detail::Rng rng(seed);
    if (!real_valued) {
        for (std::size_t i = 0; i < f.table_size(); ++i) f.table()[i] = detail::draw(rng, law);
        return f;
    }
    // fill frequencies that are lexicographically positive, mirror the rest
    for (std::size_t i = 0; i < f.table_size(); ++i) {
        auto k = f.frequency_of(i);
        int cmp = 0;  // sign of k vs 0 in lexicographic order
        for (long long kj : k) {
            if (kj > 0) { cmp = 1; break; }
            if (kj < 0) { cmp = -1; break; }
        }
        if (cmp < 0) continue;
        if (cmp == 0) {
            f.table()[i] = cplx{detail::draw(rng, law).real(), 0.0};
            continue;
        }
        const cplx c = detail::draw(rng, law);
        f.table()[i] = c;
        std::vector<long long> neg(k.size());
        for (std::size_t j = 0; j < k.size(); ++j) neg[j] = -k[j];
        f.table()[f.flat_index(neg)] = std::conj(c);
    }
    return f;
}

/// Random polynomial supported on an explicit frequency list (an E-polynomial).
inline TrigPoly random_poly_on_support(const std::vector<std::vector<long long>>& support,
                                       const std::vector<int>& halfdeg, std::uint64_t seed, CoeffLaw law) {
    TrigPoly f(halfdeg);
    detail::Rng rng(seed);
    for (const auto& k : support) {
        if (!f.in_bounds(k)) throw std::out_of_range("random_poly_on_support: point outside halfdeg");
        f.at(k) = detail::draw(rng, law);
    }
    return f;
}

}  // namespace torus
