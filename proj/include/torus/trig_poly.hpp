// Trigonometric polynomials on the d-torus.
//
// A TrigPoly is a dense complex coefficient table over the box
// prod_j [-K_j, K_j]; it represents f(x) = sum_k c(k) e^{2 pi i k.x}.
// A SampleGrid holds values of such a polynomial on the uniform dyadic
// grid x_j = s_j / 2^{L_j}. evaluate/analyze convert between the two and
// are mutually inverse whenever every 2^{L_j} exceeds twice the degree.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "torus/common.hpp"
#include "torus/fft.hpp"

namespace torus {

class TrigPoly {
public:
    explicit TrigPoly(std::vector<int> halfdeg, bool real_valued = false)
        : halfdeg_(std::move(halfdeg)), real_valued_(real_valued) {
        if (halfdeg_.empty()) throw std::invalid_argument("TrigPoly: dimension must be positive");
        shape_.resize(halfdeg_.size());
        for (std::size_t j = 0; j < halfdeg_.size(); ++j) {
            if (halfdeg_[j] < 0) throw std::invalid_argument("TrigPoly: halfdeg must be >= 0");
            shape_[j] = 2 * static_cast<std::size_t>(halfdeg_[j]) + 1;
        }
        strides_ = row_major_strides(shape_);
        coeffs_.assign(shape_product(shape_), cplx{0.0, 0.0});
    }

    static TrigPoly constant(int dim, cplx value) {
        TrigPoly f(std::vector<int>(static_cast<std::size_t>(dim), 0), value.imag() == 0.0);
        f.coeffs_[0] = value;
        return f;
    }

    int dim() const { return static_cast<int>(halfdeg_.size()); }
    const std::vector<int>& halfdeg() const { return halfdeg_; }
    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t table_size() const { return coeffs_.size(); }
    const std::vector<cplx>& table() const { return coeffs_; }
    std::vector<cplx>& table() { return coeffs_; }

    bool real_valued() const { return real_valued_; }
    void set_real_valued(bool v) { real_valued_ = v; }

    std::size_t flat_index(std::span<const long long> k) const {
        std::size_t idx = 0;
        for (std::size_t j = 0; j < halfdeg_.size(); ++j)
            idx += static_cast<std::size_t>(k[j] + halfdeg_[j]) * strides_[j];
        return idx;
    }

    bool in_bounds(std::span<const long long> k) const {
        for (std::size_t j = 0; j < halfdeg_.size(); ++j)
            if (k[j] < -halfdeg_[j] || k[j] > halfdeg_[j]) return false;
        return true;
    }

    /// Coefficient at frequency k; zero outside the declared box.
    cplx coeff(std::span<const long long> k) const {
        return in_bounds(k) ? coeffs_[flat_index(k)] : cplx{0.0, 0.0};
    }

    cplx& at(std::span<const long long> k) {
        if (!in_bounds(k)) throw std::out_of_range("TrigPoly::at: frequency outside declared halfdeg");
        return coeffs_[flat_index(k)];
    }

    /// Decodes a flat table position into its frequency vector.
    std::vector<long long> frequency_of(std::size_t flat) const {
        std::vector<long long> k(halfdeg_.size());
        for (std::size_t j = 0; j < halfdeg_.size(); ++j) {
            k[j] = static_cast<long long>((flat / strides_[j]) % shape_[j]) - halfdeg_[j];
        }
        return k;
    }

    /// Parseval l2 norm, exact finite sum.
    double l2_norm() const {
        double s = 0.0;
        for (const cplx& c : coeffs_) s += std::norm(c);
        return std::sqrt(s);
    }

    /// Tight per-dimension bounds of the nonzero coefficients (declared bound when empty).
    std::vector<int> support_halfdeg() const {
        std::vector<int> out(halfdeg_.size(), 0);
        bool any = false;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == cplx{0.0, 0.0}) continue;
            any = true;
            auto k = frequency_of(i);
            for (std::size_t j = 0; j < out.size(); ++j)
                out[j] = std::max(out[j], static_cast<int>(std::llabs(k[j])));
        }
        return any ? out : std::vector<int>(halfdeg_.size(), 0);
    }

    /// Copy into a smaller/larger declared box (coefficients outside are dropped/zero).
    TrigPoly resized(std::vector<int> new_halfdeg) const {
        TrigPoly out(std::move(new_halfdeg), real_valued_);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == cplx{0.0, 0.0}) continue;
            auto k = frequency_of(i);
            if (out.in_bounds(k)) out.coeffs_[out.flat_index(k)] = coeffs_[i];
        }
        return out;
    }

private:
    std::vector<int> halfdeg_;
    std::vector<std::size_t> shape_;
    std::vector<std::size_t> strides_;
    std::vector<cplx> coeffs_;
    bool real_valued_ = false;
};

class SampleGrid {
public:
    SampleGrid(std::vector<int> log2res, std::vector<cplx> values)
        : log2res_(std::move(log2res)), values_(std::move(values)) {
        shape_.resize(log2res_.size());
        for (std::size_t j = 0; j < log2res_.size(); ++j)
            shape_[j] = std::size_t{1} << log2res_[j];
        if (values_.size() != shape_product(shape_))
            throw std::invalid_argument("SampleGrid: value count does not match resolution");
    }

    int dim() const { return static_cast<int>(log2res_.size()); }
    const std::vector<int>& log2res() const { return log2res_; }
    const std::vector<std::size_t>& shape() const { return shape_; }
    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }

private:
    std::vector<int> log2res_;
    std::vector<std::size_t> shape_;
    std::vector<cplx> values_;
};

/// Tensor product: coeff(k, l) = fhat(k) ghat(l), halfdeg concatenated.
inline TrigPoly tensor_product(const TrigPoly& f, const TrigPoly& g) {
    std::vector<int> hd = f.halfdeg();
    hd.insert(hd.end(), g.halfdeg().begin(), g.halfdeg().end());
    TrigPoly out(std::move(hd), f.real_valued() && g.real_valued());
    const std::size_t ng = g.table_size();
    for (std::size_t i = 0; i < f.table_size(); ++i) {
        const cplx a = f.table()[i];
        if (a == cplx{0.0, 0.0}) continue;
        cplx* dst = out.table().data() + i * ng;
        const cplx* src = g.table().data();
        for (std::size_t l = 0; l < ng; ++l) dst[l] = a * src[l];
    }
    return out;
}

namespace detail {

inline void require_no_aliasing(const std::vector<int>& halfdeg, const std::vector<int>& log2res) {
    if (halfdeg.size() != log2res.size())
        throw std::invalid_argument("resolution dimension mismatch");
    for (std::size_t j = 0; j < halfdeg.size(); ++j) {
        if ((std::size_t{1} << log2res[j]) <= 2 * static_cast<std::size_t>(halfdeg[j]))
            throw resolution_error("resolution 2^" + std::to_string(log2res[j]) +
                                   " too small for halfdeg " + std::to_string(halfdeg[j]));
    }
}

}  // namespace detail

/// Samples f on the grid x_j = s_j / 2^{L_j}; exact to roundoff. Requires 2^{L_j} > 2 K_j.
inline SampleGrid evaluate(const TrigPoly& f, const std::vector<int>& log2res,
                           std::size_t mem_budget = default_mem_budget) {
    detail::require_no_aliasing(f.halfdeg(), log2res);
    std::vector<std::size_t> shape(log2res.size());
    for (std::size_t j = 0; j < shape.size(); ++j) shape[j] = std::size_t{1} << log2res[j];
    check_grid_budget(shape_product(shape), mem_budget);

    std::vector<cplx> data(shape_product(shape), cplx{0.0, 0.0});
    const auto strides = row_major_strides(shape);
    // scatter coefficients at wrapped indices
    for (std::size_t i = 0; i < f.table_size(); ++i) {
        const cplx c = f.table()[i];
        if (c == cplx{0.0, 0.0}) continue;
        auto k = f.frequency_of(i);
        std::size_t idx = 0;
        for (std::size_t j = 0; j < shape.size(); ++j) {
            const long long m = static_cast<long long>(shape[j]);
            idx += static_cast<std::size_t>(((k[j] % m) + m) % m) * strides[j];
        }
        data[idx] += c;
    }
    detail::fft_nd(data, shape, +1);
    return SampleGrid(log2res, std::move(data));
}

/// Exact Fourier coefficients of the unique degree-(halfdeg) interpolant of the samples.
inline TrigPoly analyze(const SampleGrid& g, const std::vector<int>& halfdeg) {
    detail::require_no_aliasing(halfdeg, g.log2res());
    std::vector<cplx> data = g.values();
    detail::fft_nd(data, g.shape(), -1);
    const double scale = 1.0 / static_cast<double>(shape_product(g.shape()));
    TrigPoly out(halfdeg);
    const auto strides = row_major_strides(g.shape());
    for (std::size_t i = 0; i < out.table_size(); ++i) {
        auto k = out.frequency_of(i);
        std::size_t idx = 0;
        for (std::size_t j = 0; j < g.shape().size(); ++j) {
            const long long m = static_cast<long long>(g.shape()[j]);
            idx += static_cast<std::size_t>(((k[j] % m) + m) % m) * strides[j];
        }
        out.table()[i] = data[idx] * scale;
    }
    return out;
}

/// Direct pointwise evaluation, O(table). x in [0,1)^d.
inline cplx eval_at(const TrigPoly& f, std::span<const double> x) {
    const int d = f.dim();
    // per-dimension phase tables e^{2 pi i k x_j}
    std::vector<std::vector<cplx>> phases(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        const int K = f.halfdeg()[static_cast<std::size_t>(j)];
        auto& ph = phases[static_cast<std::size_t>(j)];
        ph.resize(2 * static_cast<std::size_t>(K) + 1);
        for (int k = -K; k <= K; ++k) {
            const double ang = two_pi * static_cast<double>(k) * x[static_cast<std::size_t>(j)];
            ph[static_cast<std::size_t>(k + K)] = cplx{std::cos(ang), std::sin(ang)};
        }
    }
    cplx total{0.0, 0.0};
    for (std::size_t i = 0; i < f.table_size(); ++i) {
        const cplx c = f.table()[i];
        if (c == cplx{0.0, 0.0}) continue;
        auto k = f.frequency_of(i);
        cplx ph{1.0, 0.0};
        for (int j = 0; j < d; ++j)
            ph *= phases[static_cast<std::size_t>(j)]
                        [static_cast<std::size_t>(k[static_cast<std::size_t>(j)] + f.halfdeg()[static_cast<std::size_t>(j)])];
        total += c * ph;
    }
    return total;
}

/// Samples a sparse coefficient list (points[i] -> coeffs[i]) on a dyadic grid
/// without materialising a dense coefficient box. Frequencies may exceed the
/// grid Nyquist bound; samples are still the exact pointwise values.
inline SampleGrid evaluate_sparse(const std::vector<std::vector<long long>>& points,
                                  const std::vector<cplx>& coeffs, const std::vector<int>& log2res,
                                  std::size_t mem_budget = default_mem_budget) {
    if (points.size() != coeffs.size())
        throw std::invalid_argument("evaluate_sparse: points/coeffs size mismatch");
    std::vector<std::size_t> shape(log2res.size());
    for (std::size_t j = 0; j < shape.size(); ++j) shape[j] = std::size_t{1} << log2res[j];
    check_grid_budget(shape_product(shape), mem_budget);
    std::vector<cplx> data(shape_product(shape), cplx{0.0, 0.0});
    const auto strides = row_major_strides(shape);
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::size_t idx = 0;
        for (std::size_t j = 0; j < shape.size(); ++j) {
            const long long m = static_cast<long long>(shape[j]);
            idx += static_cast<std::size_t>(((points[i][j] % m) + m) % m) * strides[j];
        }
        data[idx] += coeffs[i];
    }
    detail::fft_nd(data, shape, +1);
    return SampleGrid(std::vector<int>(log2res), std::move(data));
}

}  // namespace torus
