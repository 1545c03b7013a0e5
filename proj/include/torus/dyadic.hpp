// d-parameter dyadic conditional expectations, martingale differences,
// square functions and the L^inf -> L^inf norms of E_m Psi_k and D_m Psi_k.
//
// Cell averages of trigonometric polynomials are computed in coefficient
// space through the closed form
//
//   avg_{[a,b)} e^{2 pi i r x} = (e^{2 pi i r b} - e^{2 pi i r a}) / (2 pi i r (b-a)),
//
// with all phase arguments reduced by integer arithmetic (a, b are dyadic
// rationals), so the martingale identities hold to roundoff rather than to
// quadrature accuracy.

#pragma once

#include <map>
#include <vector>

#include "torus/norms.hpp"
#include "torus/psi.hpp"
#include "torus/trig_poly.hpp"

namespace torus {

class PiecewiseDyadic {
public:
    PiecewiseDyadic(std::vector<int> levels, std::vector<cplx> values)
        : levels_(std::move(levels)), values_(std::move(values)) {
        shape_.resize(levels_.size());
        for (std::size_t j = 0; j < levels_.size(); ++j) {
            if (levels_[j] < 0) throw std::invalid_argument("PiecewiseDyadic: negative level");
            shape_[j] = std::size_t{1} << levels_[j];
        }
        if (values_.size() != shape_product(shape_))
            throw std::invalid_argument("PiecewiseDyadic: value count mismatch");
    }

    static PiecewiseDyadic zeros(std::vector<int> levels) {
        std::vector<std::size_t> shape(levels.size());
        for (std::size_t j = 0; j < levels.size(); ++j) shape[j] = std::size_t{1} << levels[j];
        return PiecewiseDyadic(std::move(levels), std::vector<cplx>(shape_product(shape), cplx{0.0, 0.0}));
    }

    int dim() const { return static_cast<int>(levels_.size()); }
    const std::vector<int>& levels() const { return levels_; }
    const std::vector<std::size_t>& shape() const { return shape_; }
    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }

    /// Integral over T^d (cells have equal measure, so this is the plain mean).
    cplx integral() const {
        cplx acc{0.0, 0.0};
        for (const cplx& v : values_) acc += v;
        return acc / static_cast<double>(values_.size());
    }

    double lp_norm(double p) const {
        if (p < 1.0) throw std::invalid_argument("pd_lp_norm: p must be >= 1");
        double acc = 0.0;
        for (const cplx& v : values_) acc += std::pow(std::abs(v), p);
        return std::pow(acc / static_cast<double>(values_.size()), 1.0 / p);
    }

    double linf() const {
        double m = 0.0;
        for (const cplx& v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Exact representation at a finer level vector (values repeat over children).
    PiecewiseDyadic refined_to(const std::vector<int>& fine) const {
        for (std::size_t j = 0; j < levels_.size(); ++j)
            if (fine[j] < levels_[j]) throw std::invalid_argument("refined_to: target coarser than source");
        if (fine == levels_) return *this;
        PiecewiseDyadic out = zeros(fine);
        const auto in_strides = row_major_strides(shape_);
        const std::size_t d = levels_.size();
        const std::size_t n = out.values_.size();
        std::vector<std::size_t> digits(d, 0);
        std::vector<int> shift(d);
        for (std::size_t j = 0; j < d; ++j) shift[j] = fine[j] - levels_[j];
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t src = 0;
            for (std::size_t j = 0; j < d; ++j) src += (digits[j] >> shift[j]) * in_strides[j];
            out.values_[i] = values_[src];
            for (std::size_t j = d; j-- > 0;) {  // row-major odometer
                if (++digits[j] < out.shape_[j]) break;
                digits[j] = 0;
            }
        }
        return out;
    }

    /// Exact coarsening by averaging sibling cells.
    PiecewiseDyadic coarsened_to(const std::vector<int>& coarse) const {
        for (std::size_t j = 0; j < levels_.size(); ++j)
            if (coarse[j] > levels_[j]) throw std::invalid_argument("coarsened_to: target finer than source");
        PiecewiseDyadic cur = *this;
        for (std::size_t j = 0; j < levels_.size(); ++j)
            while (cur.levels_[j] > coarse[j]) cur = cur.halved_along(j);
        return cur;
    }

private:
    PiecewiseDyadic halved_along(std::size_t axis) const {
        std::vector<int> lv = levels_;
        lv[axis] -= 1;
        PiecewiseDyadic out = zeros(lv);
        const auto in_strides = row_major_strides(shape_);
        const auto out_strides = row_major_strides(out.shape_);
        const std::size_t n = out.values_.size();
        for (std::size_t i = 0; i < n; ++i) {
            // decode out index, build the two source indices
            std::size_t rem = i, src = 0;
            for (std::size_t j = 0; j < out.shape_.size(); ++j) {
                std::size_t digit = (rem / out_strides[j]) % out.shape_[j];
                src += (j == axis ? 2 * digit : digit) * in_strides[j];
            }
            out.values_[i] = 0.5 * (values_[src] + values_[src + in_strides[axis]]);
        }
        return out;
    }

    std::vector<int> levels_;
    std::vector<std::size_t> shape_;
    std::vector<cplx> values_;
};

inline double pd_lp_norm(const PiecewiseDyadic& g, double p) { return g.lp_norm(p); }
inline double pd_linf(const PiecewiseDyadic& g) { return g.linf(); }

/// Exact L2 inner product of two piecewise-dyadic functions.
inline cplx pd_inner(const PiecewiseDyadic& a, const PiecewiseDyadic& b) {
    std::vector<int> common(a.levels().size());
    for (std::size_t j = 0; j < common.size(); ++j) common[j] = std::max(a.levels()[j], b.levels()[j]);
    const PiecewiseDyadic ra = a.refined_to(common), rb = b.refined_to(common);
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < ra.values().size(); ++i) acc += ra.values()[i] * std::conj(rb.values()[i]);
    return acc / static_cast<double>(ra.values().size());
}

inline PiecewiseDyadic pd_sub(const PiecewiseDyadic& a, const PiecewiseDyadic& b) {
    std::vector<int> common(a.levels().size());
    for (std::size_t j = 0; j < common.size(); ++j) common[j] = std::max(a.levels()[j], b.levels()[j]);
    PiecewiseDyadic ra = a.refined_to(common);
    const PiecewiseDyadic rb = b.refined_to(common);
    for (std::size_t i = 0; i < ra.values().size(); ++i) ra.values()[i] -= rb.values()[i];
    return ra;
}

inline PiecewiseDyadic pd_add(const PiecewiseDyadic& a, const PiecewiseDyadic& b) {
    std::vector<int> common(a.levels().size());
    for (std::size_t j = 0; j < common.size(); ++j) common[j] = std::max(a.levels()[j], b.levels()[j]);
    PiecewiseDyadic ra = a.refined_to(common);
    const PiecewiseDyadic rb = b.refined_to(common);
    for (std::size_t i = 0; i < ra.values().size(); ++i) ra.values()[i] += rb.values()[i];
    return ra;
}

namespace detail {

/// tau(r, [s 2^-m, (s+1) 2^-m)) for all cells s: matrix 2^m x (2K+1).
/// Phases are reduced with integer arithmetic so that cell averages of
/// aligned frequencies come out exactly zero.
inline std::vector<cplx> tau_matrix(int K, int m) {
    const long long cells = 1LL << m;
    const std::size_t n = 2 * static_cast<std::size_t>(K) + 1;
    std::vector<cplx> T(static_cast<std::size_t>(cells) * n);
    const double width = std::ldexp(1.0, -m);
    for (long long r = -K; r <= K; ++r) {
        cplx base;
        if (r == 0) {
            base = {1.0, 0.0};
        } else {
            const long long rho = ((r % cells) + cells) % cells;
            if (rho == 0) {
                base = {0.0, 0.0};
            } else {
                const cplx num = std::polar(1.0, two_pi * static_cast<double>(rho) / static_cast<double>(cells)) -
                                 cplx{1.0, 0.0};
                base = num / (cplx{0.0, two_pi * static_cast<double>(r)} * width);
            }
        }
        for (long long s = 0; s < cells; ++s) {
            const long long ph = ((r * s) % cells + cells) % cells;
            const cplx rot = std::polar(1.0, two_pi * static_cast<double>(ph) / static_cast<double>(cells));
            T[static_cast<std::size_t>(s) * n + static_cast<std::size_t>(r + K)] = rot * base;
        }
    }
    return T;
}

/// result[..., s, ...] = sum_t M[s*cols + t] data[..., t, ...] along one axis.
inline std::vector<cplx> apply_matrix_along_axis(const std::vector<cplx>& data, std::vector<std::size_t>& shape,
                                                 std::size_t axis, const std::vector<cplx>& mat,
                                                 std::size_t rows) {
    const std::size_t cols = shape[axis];
    std::vector<std::size_t> out_shape = shape;
    out_shape[axis] = rows;
    std::vector<cplx> out(shape_product(out_shape), cplx{0.0, 0.0});
    const auto in_strides = row_major_strides(shape);
    const auto out_strides = row_major_strides(out_shape);
    const std::size_t lines = shape_product(shape) / cols;
    std::vector<cplx> line(cols);
    for (std::size_t l = 0; l < lines; ++l) {
        std::size_t rem = l, in_base = 0, out_base = 0;
        for (std::size_t j = shape.size(); j-- > 0;) {
            if (j == axis) continue;
            const std::size_t digit = rem % shape[j];
            rem /= shape[j];
            in_base += digit * in_strides[j];
            out_base += digit * out_strides[j];
        }
        for (std::size_t t = 0; t < cols; ++t) line[t] = data[in_base + t * in_strides[axis]];
        for (std::size_t s = 0; s < rows; ++s) {
            cplx acc{0.0, 0.0};
            const cplx* row = mat.data() + s * cols;
            for (std::size_t t = 0; t < cols; ++t) acc += row[t] * line[t];
            out[out_base + s * out_strides[axis]] = acc;
        }
    }
    shape = out_shape;
    return out;
}

}  // namespace detail

/// E_m f: exact per-cell averages of f, levels m_j >= 0.
inline PiecewiseDyadic cond_exp(const TrigPoly& f, const std::vector<int>& levels) {
    if (static_cast<std::size_t>(f.dim()) != levels.size())
        throw std::invalid_argument("cond_exp: level vector dimension mismatch");
    std::size_t cells = 1;
    for (int l : levels) {
        if (l < 0) throw std::invalid_argument("cond_exp: negative level");
        cells <<= l;
    }
    check_grid_budget(cells);
    std::vector<cplx> data = f.table();
    std::vector<std::size_t> shape = f.shape();
    for (std::size_t j = 0; j < levels.size(); ++j) {
        const auto T = detail::tau_matrix(f.halfdeg()[j], levels[j]);
        data = detail::apply_matrix_along_axis(data, shape, j, T, std::size_t{1} << levels[j]);
    }
    return PiecewiseDyadic(levels, std::move(data));
}

/// D_m f by inclusion-exclusion over {m_j, m_j - 1}; D along a dimension with
/// m_j = 0 is E_0 in that dimension. Represented at levels m.
inline PiecewiseDyadic mart_diff(const TrigPoly& f, const std::vector<int>& levels) {
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < levels.size(); ++j)
        if (levels[j] >= 1) active.push_back(j);
    PiecewiseDyadic acc = PiecewiseDyadic::zeros(levels);
    const std::size_t subsets = std::size_t{1} << active.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        std::vector<int> lv = levels;
        int parity = 0;
        for (std::size_t b = 0; b < active.size(); ++b)
            if (mask & (std::size_t{1} << b)) {
                lv[active[b]] -= 1;
                parity ^= 1;
            }
        const PiecewiseDyadic term = cond_exp(f, lv).refined_to(levels);
        const double sign = parity ? -1.0 : 1.0;
        for (std::size_t i = 0; i < acc.values().size(); ++i) acc.values()[i] += sign * term.values()[i];
    }
    return acc;
}

/// (sum_{m <= mmax} |D_m f|^2)^{1/2} on the level-mmax grid.
/// All E tables come from one exact contraction at the finest level followed
/// by exact pair-averaging, so no quadrature enters.
inline PiecewiseDyadic square_function(const TrigPoly& f, const std::vector<int>& mmax) {
    const std::size_t d = mmax.size();
    if (static_cast<std::size_t>(f.dim()) != d)
        throw std::invalid_argument("square_function: dimension mismatch");

    // pyramid of E tables for every level vector <= mmax
    std::map<std::vector<int>, PiecewiseDyadic> pyramid;
    pyramid.emplace(mmax, cond_exp(f, mmax));
    // fill decreasing level sums by halving an already-present neighbour
    std::vector<std::vector<int>> order;
    {
        std::vector<int> l(d, 0);
        // enumerate all level vectors <= mmax
        while (true) {
            order.push_back(l);
            std::size_t j = d;
            while (j-- > 0) {
                if (l[j] < mmax[j]) {
                    ++l[j];
                    for (std::size_t q = j + 1; q < d; ++q) l[q] = 0;
                    break;
                }
                if (j == 0) goto done;
            }
        }
    done:;
        std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
            int sa = 0, sb = 0;
            for (int v : a) sa += v;
            for (int v : b) sb += v;
            return sa > sb;
        });
    }
    for (const auto& l : order) {
        if (pyramid.count(l)) continue;
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<int> parent = l;
            parent[j] += 1;
            auto it = pyramid.find(parent);
            if (parent[j] <= mmax[j] && it != pyramid.end()) {
                pyramid.emplace(l, it->second.coarsened_to(l));
                break;
            }
        }
    }

    // accumulate |D_m|^2 on the finest grid
    PiecewiseDyadic total = PiecewiseDyadic::zeros(mmax);
    for (const auto& m : order) {
        // D_m at its own level via inclusion-exclusion over the pyramid
        std::vector<std::size_t> active;
        for (std::size_t j = 0; j < d; ++j)
            if (m[j] >= 1) active.push_back(j);
        PiecewiseDyadic dm = PiecewiseDyadic::zeros(m);
        const std::size_t subsets = std::size_t{1} << active.size();
        for (std::size_t mask = 0; mask < subsets; ++mask) {
            std::vector<int> lv = m;
            int parity = 0;
            for (std::size_t b = 0; b < active.size(); ++b)
                if (mask & (std::size_t{1} << b)) {
                    lv[active[b]] -= 1;
                    parity ^= 1;
                }
            const PiecewiseDyadic term = pyramid.at(lv).refined_to(m);
            const double sign = parity ? -1.0 : 1.0;
            for (std::size_t i = 0; i < dm.values().size(); ++i) dm.values()[i] += sign * term.values()[i];
        }
        const PiecewiseDyadic fine = dm.refined_to(mmax);
        for (std::size_t i = 0; i < total.values().size(); ++i)
            total.values()[i] += cplx{std::norm(fine.values()[i]), 0.0};
    }
    for (cplx& v : total.values()) v = cplx{std::sqrt(v.real()), 0.0};
    return total;
}

/// Default truncation level per dimension: ceil(log2 degree) + 4.
inline std::vector<int> default_mmax(const TrigPoly& f) {
    std::vector<int> out(static_cast<std::size_t>(f.dim()));
    for (std::size_t j = 0; j < out.size(); ++j) {
        int l = 0;
        while ((1 << l) < std::max(1, f.halfdeg()[j])) ++l;
        out[j] = l + 4;
    }
    return out;
}

/// Crude a priori bound on the truncated square-function tail
/// (Bernstein per axis plus a union bound over the missing index region).
inline double square_function_tail_bound(const TrigPoly& f, const std::vector<int>& mmax, int oversample = 4) {
    const double sup = linf_estimate(f, oversample);
    const double d = static_cast<double>(f.dim());
    double acc = 0.0;
    for (std::size_t j = 0; j < mmax.size(); ++j) {
        double others = 1.0;
        for (std::size_t i = 0; i < mmax.size(); ++i)
            if (i != j) others *= static_cast<double>(mmax[i] + 2);
        acc += std::pow(2.0, d - 1.0) * 3.0 * 3.14159265358979323846 * f.halfdeg()[j] *
               std::ldexp(1.0, -mmax[j]) * others;
    }
    return acc * sup;
}

// ---------------------------------------------------------------------------
// Operator norms of E_m Psi_k and D_m Psi_k (Lemma-style compositions).
//
// The L^inf -> L^inf norm equals the L^1 norm of the row kernel
//   g(y) = sum_r psi^{(s)}_k(r) tau(r, I) e^{-2 pi i r y},
// which by translation covariance is independent of the cell I at a given
// level; kernels factorise across dimensions, so d-dimensional norms are
// products of one-dimensional ones.
// ---------------------------------------------------------------------------

struct OpNorm {
    double value = 0.0;
    int log2res = 0;  // quadrature resolution of the L1 evaluation
};

namespace detail {

/// tau over [0, 2^-m) against frequency r (origin cell, exact zero on aligned r).
inline cplx tau_origin(long long r, int m) {
    if (r == 0) return {1.0, 0.0};
    const long long cells = 1LL << m;
    const long long rho = ((r % cells) + cells) % cells;
    if (rho == 0) return {0.0, 0.0};
    const cplx num =
        std::polar(1.0, two_pi * static_cast<double>(rho) / static_cast<double>(cells)) - cplx{1.0, 0.0};
    return num / (cplx{0.0, two_pi * static_cast<double>(r)} * std::ldexp(1.0, -m));
}

/// Row kernel as a TrigPoly: coefficient at q is sym(-q) tau(-q).
template <typename SymbolFn, typename TauFn>
TrigPoly row_kernel(long long R, SymbolFn&& sym, TauFn&& tau) {
    TrigPoly g({static_cast<int>(R)});
    for (long long q = -R; q <= R; ++q) {
        const std::array<long long, 1> key{q};
        g.at(key) = sym(-q) * tau(-q);
    }
    return g;
}

}  // namespace detail

/// Exact L^inf -> L^inf norm of E_m Psi^{(s)}_k in one dimension.
inline OpNorm op_norm_epsi_1d(int m, int k, int s = 0, int oversample = 8) {
    const auto& spec = PsiSpec::canonical();
    const long long R = spec.support_bound(k);
    const TrigPoly g = detail::row_kernel(
        R, [&](long long r) { return spec.eval(k, s, static_cast<double>(r)); },
        [&](long long r) { return detail::tau_origin(r, m); });
    const LpResult l1 = lp_norm_info(g, 1.0, oversample);
    return OpNorm{l1.value, l1.log2res.empty() ? 0 : l1.log2res[0]};
}

/// Exact L^inf -> L^inf norm of D_m Psi_k in one dimension: the row kernel is
/// the difference of the level-m and level-(m-1) rows; both half-cell
/// positions are evaluated and the max taken.
inline OpNorm op_norm_dpsi_1d(int m, int k, int oversample = 8) {
    const auto& spec = PsiSpec::canonical();
    if (m == 0) {  // D_0 = E_0: only the r = 0 coefficient survives
        return OpNorm{std::abs(spec.eval(k, 0, 0.0)), 0};
    }
    const long long R = spec.support_bound(k);
    const auto sym = [&](long long r) { return spec.eval(k, 0, static_cast<double>(r)); };
    OpNorm best{0.0, 0};
    for (int half = 0; half < 2; ++half) {
        const TrigPoly g = detail::row_kernel(R, sym, [&](long long r) {
            cplx child = detail::tau_origin(r, m);
            if (half == 1) {
                // right sibling: shift the origin cell by 2^-m
                const long long cells = 1LL << m;
                const long long rho = ((r % cells) + cells) % cells;
                child *= std::polar(1.0, two_pi * static_cast<double>(rho) / static_cast<double>(cells));
            }
            return child - detail::tau_origin(r, m - 1);
        });
        const LpResult l1 = lp_norm_info(g, 1.0, oversample);
        if (l1.value > best.value) best.value = l1.value;
        best.log2res = l1.log2res.empty() ? 0 : l1.log2res[0];
    }
    return best;
}

/// d-dimensional norms as products of the one-dimensional factors.
inline double op_norm_epsi(const std::vector<int>& m, const std::vector<int>& k, const std::vector<int>& s,
                           int oversample = 8) {
    double prod = 1.0;
    for (std::size_t j = 0; j < m.size(); ++j) prod *= op_norm_epsi_1d(m[j], k[j], s[j], oversample).value;
    return prod;
}

inline double op_norm_dpsi(const std::vector<int>& m, const std::vector<int>& k, int oversample = 8) {
    double prod = 1.0;
    for (std::size_t j = 0; j < m.size(); ++j) prod *= op_norm_dpsi_1d(m[j], k[j], oversample).value;
    return prod;
}

}  // namespace torus
