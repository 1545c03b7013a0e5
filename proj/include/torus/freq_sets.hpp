// J-block geometry of Z^d: the bands +-{2^n-1, ..., 2^{n+1}-2}, the counting
// quantity D_E, the Oberlin block-sum condition, multiplier application,
// dominant-set extraction and lacunary product generators.
//
// Bands of one sign partition their half-axis; the two sign-0 bands are both
// {0}, so as *sets* the band products partition Z^d. Counting and argmax
// selection work over one canonical key per product.

#pragma once

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "torus/trig_poly.hpp"

namespace torus {

struct JBand {
    int sign = +1;  // +1 or -1
    int gen = 0;    // n >= 0

    /// {2^n-1, ..., 2^{n+1}-2} or its mirror.
    bool contains(long long x) const {
        const long long lo = (1LL << gen) - 1, hi = (1LL << (gen + 1)) - 2;
        return sign > 0 ? (x >= lo && x <= hi) : (x >= -hi && x <= -lo);
    }

    long long cardinality() const { return 1LL << gen; }
};

/// Generation of the unique band of sign(x) containing x (x = 0 -> gen 0).
inline int band_generation(long long x) {
    const long long a = std::llabs(x);
    int n = 0;
    while ((1LL << (n + 1)) - 1 <= a) ++n;  // smallest n with a <= 2^{n+1}-2
    return n;
}

/// Canonical key of the band containing x, with the two sign-0 bands merged:
/// 0 for x = 0, +(n+1) for x > 0, -(n+1) for x < 0.
inline long long band_key(long long x) {
    if (x == 0) return 0;
    const long long n = band_generation(x);
    return x > 0 ? n + 1 : -(n + 1);
}

class FreqSet {
public:
    FreqSet(int dim, std::vector<std::vector<long long>> points) : dim_(dim), pts_(std::move(points)) {
        if (dim_ <= 0) throw std::invalid_argument("FreqSet: dimension must be positive");
        for (const auto& p : pts_)
            if (static_cast<int>(p.size()) != dim_) throw std::invalid_argument("FreqSet: point dimension mismatch");
        std::sort(pts_.begin(), pts_.end());
        pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
    }

    int dim() const { return dim_; }
    std::size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    const std::vector<std::vector<long long>>& points() const { return pts_; }

    /// Per-dimension bound max |k_j| (0 for the empty set).
    std::vector<long long> bounding_halfdeg() const {
        std::vector<long long> out(static_cast<std::size_t>(dim_), 0);
        for (const auto& p : pts_)
            for (std::size_t j = 0; j < out.size(); ++j) out[j] = std::max(out[j], std::llabs(p[j]));
        return out;
    }

private:
    int dim_;
    std::vector<std::vector<long long>> pts_;
};

/// D_E = sup over band products of #(E intersect product). Exact.
inline long long d_e_count(const FreqSet& E) {
    if (E.empty()) throw std::invalid_argument("d_e_count: E must be non-empty");
    std::map<std::vector<long long>, long long> counts;
    long long best = 0;
    for (const auto& p : E.points()) {
        std::vector<long long> key(p.size());
        for (std::size_t j = 0; j < p.size(); ++j) key[j] = band_key(p[j]);
        best = std::max(best, ++counts[key]);
    }
    return best;
}

class MultiplierSymbol {
public:
    using Rule1d = std::function<cplx(long long)>;
    using RuleNd = std::function<cplx(const std::vector<long long>&)>;

    static MultiplierSymbol product(std::vector<Rule1d> rules) {
        MultiplierSymbol m;
        m.dim_ = static_cast<int>(rules.size());
        m.rules1d_ = std::move(rules);
        return m;
    }

    static MultiplierSymbol generic(int dim, RuleNd rule) {
        MultiplierSymbol m;
        m.dim_ = dim;
        m.rule_ = std::move(rule);
        return m;
    }

    int dim() const { return dim_; }
    bool factorizes() const { return !rules1d_.empty(); }

    cplx eval(const std::vector<long long>& k) const {
        if (factorizes()) {
            cplx w{1.0, 0.0};
            for (std::size_t j = 0; j < rules1d_.size(); ++j) w *= rules1d_[j](k[j]);
            return w;
        }
        return rule_(k);
    }

    cplx eval1d(std::size_t axis, long long k) const {
        if (!factorizes()) throw std::logic_error("MultiplierSymbol: not a product symbol");
        return rules1d_[axis](k);
    }

private:
    MultiplierSymbol() = default;
    int dim_ = 0;
    std::vector<Rule1d> rules1d_;
    RuleNd rule_;
};

/// The sharpness multiplier 1/sqrt(k_1 ... k_d) on the positive orthant.
inline MultiplierSymbol sharpness_multiplier(int dim) {
    std::vector<MultiplierSymbol::Rule1d> rules(
        static_cast<std::size_t>(dim),
        [](long long k) { return k > 0 ? cplx{1.0 / std::sqrt(static_cast<double>(k)), 0.0} : cplx{0.0, 0.0}; });
    return MultiplierSymbol::product(std::move(rules));
}

struct OberlinResult {
    double sup = 0.0;
    std::vector<long long> argmax;  // per-dimension N for product symbols, joint N vector otherwise
    long long nmax = 0;
    bool factorized = false;
};

/// Block sums S_j(N) = sum_{N <= |k| <= 2N} |m_j(k)|^2 for one factor of a
/// product symbol, N = 0..nmax (N = 0 block is {0}). Prefix-sum evaluation.
inline std::vector<double> oberlin_block_sums_1d(const MultiplierSymbol& m, std::size_t axis, long long nmax) {
    std::vector<double> pos(static_cast<std::size_t>(2 * nmax + 1), 0.0);
    std::vector<double> neg(static_cast<std::size_t>(2 * nmax + 1), 0.0);
    for (long long k = 1; k <= 2 * nmax; ++k) {
        pos[static_cast<std::size_t>(k)] = pos[static_cast<std::size_t>(k - 1)] + std::norm(m.eval1d(axis, k));
        neg[static_cast<std::size_t>(k)] = neg[static_cast<std::size_t>(k - 1)] + std::norm(m.eval1d(axis, -k));
    }
    std::vector<double> out(static_cast<std::size_t>(nmax + 1));
    out[0] = std::norm(m.eval1d(axis, 0));
    for (long long N = 1; N <= nmax; ++N) {
        out[static_cast<std::size_t>(N)] = pos[static_cast<std::size_t>(2 * N)] - pos[static_cast<std::size_t>(N - 1)] +
                                           neg[static_cast<std::size_t>(2 * N)] - neg[static_cast<std::size_t>(N - 1)];
    }
    return out;
}

/// max over N in [0, nmax]^d of the Oberlin block sums; a lower bound for the
/// true sup over all N. Product symbols factorise: sup of the product equals
/// the product of per-dimension sups.
inline OberlinResult oberlin_sup(const MultiplierSymbol& m, long long nmax) {
    if (nmax < 1) throw std::invalid_argument("oberlin_sup: nmax must be >= 1");
    OberlinResult res;
    res.nmax = nmax;
    res.factorized = m.factorizes();
    if (m.factorizes()) {
        res.sup = 1.0;
        res.argmax.resize(static_cast<std::size_t>(m.dim()));
        for (int j = 0; j < m.dim(); ++j) {
            const auto sums = oberlin_block_sums_1d(m, static_cast<std::size_t>(j), nmax);
            std::size_t arg = 0;
            for (std::size_t i = 1; i < sums.size(); ++i)
                if (sums[i] > sums[arg]) arg = i;
            res.sup *= sums[arg];
            res.argmax[static_cast<std::size_t>(j)] = static_cast<long long>(arg);
        }
        return res;
    }
    // generic: direct enumeration (meant for small nmax)
    const std::size_t d = static_cast<std::size_t>(m.dim());
    std::vector<long long> N(d, 0);
    std::vector<long long> k(d);
    while (true) {
        // sum over the block prod_j ({N_j..2N_j} U {-2N_j..-N_j}), {0} if N_j = 0
        double block = 0.0;
        std::function<void(std::size_t)> rec = [&](std::size_t j) {
            if (j == d) {
                block += std::norm(m.eval(k));
                return;
            }
            if (N[j] == 0) {
                k[j] = 0;
                rec(j + 1);
                return;
            }
            for (long long a = N[j]; a <= 2 * N[j]; ++a) {
                k[j] = a;
                rec(j + 1);
                k[j] = -a;
                rec(j + 1);
            }
        };
        rec(0);
        if (block > res.sup) {
            res.sup = block;
            res.argmax = N;
        }
        std::size_t j = d;
        bool done = true;
        while (j-- > 0) {
            if (N[j] < nmax) {
                ++N[j];
                for (std::size_t q = j + 1; q < d; ++q) N[q] = 0;
                done = false;
                break;
            }
        }
        if (done) break;
    }
    return res;
}

/// Coefficientwise product m(k) fhat(k).
inline TrigPoly multiplier_apply(const MultiplierSymbol& m, const TrigPoly& f) {
    TrigPoly out(f.halfdeg());
    for (std::size_t i = 0; i < f.table_size(); ++i) {
        const cplx c = f.table()[i];
        if (c == cplx{0.0, 0.0}) continue;
        out.table()[i] = c * m.eval(f.frequency_of(i));
    }
    return out;
}

/// (sum_k |m(k) fhat(k)|^2)^{1/2}, exact finite sum.
inline double weighted_l2(const MultiplierSymbol& m, const TrigPoly& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.table_size(); ++i) {
        const cplx c = f.table()[i];
        if (c == cplx{0.0, 0.0}) continue;
        acc += std::norm(c * m.eval(f.frequency_of(i)));
    }
    return std::sqrt(acc);
}

/// (sum_{k in E} |fhat(k)|^2)^{1/2}, exact sum over E intersect supp fhat.
inline double zygmund_lhs(const TrigPoly& f, const FreqSet& E) {
    double acc = 0.0;
    for (const auto& p : E.points()) acc += std::norm(f.coeff(p));
    return std::sqrt(acc);
}

/// One argmax frequency per band product meeting supp fhat; ties broken by
/// lexicographic minimality. The result always has D_E = 1 because distinct
/// band products are disjoint as sets.
inline FreqSet dominant_set(const TrigPoly& f) {
    std::map<std::vector<long long>, std::pair<double, std::vector<long long>>> best;
    for (std::size_t i = 0; i < f.table_size(); ++i) {
        const cplx c = f.table()[i];
        if (c == cplx{0.0, 0.0}) continue;
        auto k = f.frequency_of(i);
        std::vector<long long> key(k.size());
        for (std::size_t j = 0; j < k.size(); ++j) key[j] = band_key(k[j]);
        const double mag = std::abs(c);
        auto it = best.find(key);
        if (it == best.end() || mag > it->second.first ||
            (mag == it->second.first && k < it->second.second)) {
            best[key] = {mag, k};
        }
    }
    std::vector<std::vector<long long>> pts;
    pts.reserve(best.size());
    for (auto& [key, val] : best) pts.push_back(std::move(val.second));
    return FreqSet(f.dim(), std::move(pts));
}

/// {(base^{a_1}, ..., base^{a_d}) : 1 <= a_j <= count}. Starting the exponents
/// at 1 keeps one point per band (the generation-1 band {1,2} would otherwise
/// hold both base^0 = 1 and 2), so the set has D_E = 1.
inline FreqSet lacunary_product(long long base, int count, int dim) {
    if (base < 2) throw std::invalid_argument("lacunary_product: base must be >= 2");
    if (count < 1 || dim < 1) throw std::invalid_argument("lacunary_product: count and dim must be >= 1");
    std::vector<long long> powers(static_cast<std::size_t>(count));
    long long v = 1;
    for (int a = 1; a <= count; ++a) {
        if (v > (1LL << 62) / base) throw std::overflow_error("lacunary_product: base^count overflows");
        v *= base;
        powers[static_cast<std::size_t>(a - 1)] = v;
    }
    std::vector<std::vector<long long>> pts;
    std::vector<int> idx(static_cast<std::size_t>(dim), 0);
    while (true) {
        std::vector<long long> p(static_cast<std::size_t>(dim));
        for (std::size_t j = 0; j < p.size(); ++j) p[j] = powers[static_cast<std::size_t>(idx[j])];
        pts.push_back(std::move(p));
        std::size_t j = static_cast<std::size_t>(dim);
        bool done = true;
        while (j-- > 0) {
            if (idx[j] < count - 1) {
                ++idx[j];
                for (std::size_t q = j + 1; q < static_cast<std::size_t>(dim); ++q) idx[q] = 0;
                done = false;
                break;
            }
        }
        if (done) break;
    }
    return FreqSet(dim, std::move(pts));
}

/// Exact l1 coefficient sum over Lambda.
inline double sidon_sum(const TrigPoly& f, const FreqSet& lambda) {
    double acc = 0.0;
    for (const auto& p : lambda.points()) acc += std::abs(f.coeff(p));
    return acc;
}

/// Plain text serialisation: one point per line, comma-separated integers.
inline void write_freqset(std::ostream& os, const FreqSet& E) {
    for (const auto& p : E.points()) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (j) os << ',';
            os << p[j];
        }
        os << '\n';
    }
}

inline FreqSet read_freqset(std::istream& is) {
    std::vector<std::vector<long long>> pts;
    std::string line;
    int dim = -1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<long long> p;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) p.push_back(std::stoll(tok));
        if (dim < 0) dim = static_cast<int>(p.size());
        if (static_cast<int>(p.size()) != dim)
            throw std::invalid_argument("read_freqset: inconsistent tuple length");
        pts.push_back(std::move(p));
    }
    if (dim < 0) throw std::invalid_argument("read_freqset: empty input");
    return FreqSet(dim, std::move(pts));
}

}  // namespace torus
