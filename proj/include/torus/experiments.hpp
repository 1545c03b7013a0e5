// Experiment drivers: each packages one quantitative claim into a sweep with
// records, fitted growth rates and deterministic seeding.

#pragma once

#include <numeric>

#include "torus/dyadic.hpp"
#include "torus/freq_sets.hpp"
#include "torus/kernels.hpp"
#include "torus/norms.hpp"
#include "torus/projections.hpp"
#include "torus/random_poly.hpp"
#include "torus/sweep.hpp"

namespace torus {

struct HarnessConfig {
    std::uint64_t seed = 20240901;
    int oversample = 8;
    int grid_log2_cap = 12;  // per-dimension quadrature cap (2^cap points)
    std::size_t mem_budget = default_mem_budget;
    int threads = 2;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    std::vector<std::pair<std::string, FitResult>> fits;
    std::vector<std::pair<std::string, double>> summary;  // named scalar outcomes
};

namespace detail {

inline std::string resolution_string(const std::vector<int>& log2res) {
    std::string out;
    for (std::size_t j = 0; j < log2res.size(); ++j) {
        if (j) out += 'x';
        out += std::to_string(std::size_t{1} << log2res[j]);
    }
    return out;
}

/// Largest oversample factor whose quadrature grid stays within the
/// per-dimension cap (at least 1).
inline int capped_oversample(int want, int halfdeg, int grid_log2_cap) {
    const std::size_t cap = std::size_t{1} << grid_log2_cap;
    int ov = std::max(1, want);
    while (ov > 1 && next_pow2(static_cast<std::size_t>(ov) * (2 * static_cast<std::size_t>(halfdeg) + 1)) > cap)
        --ov;
    return ov;
}

/// Quadrature resolution used by orlicz_functional for a given oversample.
inline std::vector<int> orlicz_log2res(const TrigPoly& f, int oversample) {
    std::vector<int> lr(static_cast<std::size_t>(f.dim()));
    for (std::size_t j = 0; j < lr.size(); ++j) {
        const std::size_t K = static_cast<std::size_t>(f.halfdeg()[j]);
        lr[j] = log2_exact(next_pow2(std::max<std::size_t>(1, static_cast<std::size_t>(oversample) * (2 * K + 1))));
    }
    return lr;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// sharpness: f = V_{2^N} tensor ... tensor V_{2^N}; weighted l2 against
// m = 1/sqrt(k_1...k_d) on the positive orthant and the L log^{d/2} L
// functional, with log-log fits against N.
// ---------------------------------------------------------------------------
inline SweepResult sharpness_sweep(int d, int nmin, int nmax, const HarnessConfig& cfg) {
    if (d < 1 || d > 2) throw std::invalid_argument("sharpness_sweep: d must be 1 or 2");
    if (nmin < 1 || nmax < nmin) throw std::invalid_argument("sharpness_sweep: bad N range");
    if (nmax > 9) throw budget_error("sharpness_sweep: degree 2^{N+1} exceeds the 2^10 per-dimension budget");
    const MultiplierSymbol m = sharpness_multiplier(d);
    const double r = 0.5 * d;

    SweepResult out;
    const std::size_t cells = static_cast<std::size_t>(nmax - nmin + 1);
    out.records.resize(cells);
    parallel_for(
        cells,
        [&](std::size_t i) {
            const int N = nmin + static_cast<int>(i);
            TrigPoly v = vallee_poussin_poly(N);
            TrigPoly f = v;
            for (int j = 1; j < d; ++j) f = tensor_product(f, v);
            check_grid_budget(f.table_size(), cfg.mem_budget);

            const double w = weighted_l2(m, f);
            // restricted block sum (the lower-bound quantity in the sharpness
            // argument): coefficients 1 on [1, 2^N]^d
            double harm = 0.0;
            for (long long k = 1; k <= (1LL << N); ++k) harm += 1.0 / static_cast<double>(k);
            const double restricted = std::pow(harm, 0.5 * d);

            const int ov = detail::capped_oversample(cfg.oversample, f.halfdeg()[0], cfg.grid_log2_cap);
            const double orl = orlicz_functional(f, r, ov, cfg.mem_budget);

            SweepRecord rec;
            rec.experiment = "sharpness";
            rec.params = {{"dim", Cell{static_cast<long long>(d)}}, {"N", Cell{static_cast<long long>(N)}}};
            rec.measures = {{"weighted_l2", w},
                            {"restricted_block_l2", restricted},
                            {"orlicz", orl},
                            {"ratio_weighted_over_orlicz", w / orl}};
            rec.seed = cfg.seed;
            rec.resolution = detail::resolution_string(detail::orlicz_log2res(f, ov));
            rec.oversample = ov;
            rec.version = tool_version;
            out.records[i] = std::move(rec);
        },
        1 /* heavy memory per cell: keep serial */);

    std::vector<double> Ns, ws, orls, restr;
    for (const auto& rec : out.records) {
        Ns.push_back(static_cast<double>(std::get<long long>(rec.params[1].second)));
        ws.push_back(rec.measures[0].second);
        restr.push_back(rec.measures[1].second);
        orls.push_back(rec.measures[2].second);
    }
    out.fits.emplace_back("log_weighted_l2_vs_logN", fit_loglog(Ns, ws));
    out.fits.emplace_back("log_restricted_block_vs_logN", fit_loglog(Ns, restr));
    out.fits.emplace_back("log_orlicz_vs_logN", fit_loglog(Ns, orls));
    return out;
}

// ---------------------------------------------------------------------------
// lemma-decay: full (m,k) table of ||E_m Psi_k|| and ||D_m Psi_k|| with
// per-diagonal maxima and fitted decay exponents.
// ---------------------------------------------------------------------------
inline SweepResult lemma_decay_sweep(int d, int mkmax, int s, const HarnessConfig& cfg) {
    if (d < 1 || d > 2) throw std::invalid_argument("lemma_decay_sweep: d must be 1 or 2");
    if (mkmax < 2 || mkmax > 12) throw std::invalid_argument("lemma_decay_sweep: range must be within [2,12]");

    const std::size_t n = static_cast<std::size_t>(mkmax + 1);
    SweepResult out;
    out.records.resize(n * n);
    std::vector<OpNorm> e1(n * n), d1(n * n);
    parallel_for(
        n * n,
        [&](std::size_t i) {
            const int m = static_cast<int>(i / n), k = static_cast<int>(i % n);
            e1[i] = op_norm_epsi_1d(m, k, s, cfg.oversample);
            d1[i] = op_norm_dpsi_1d(m, k, cfg.oversample);
            SweepRecord rec;
            rec.experiment = "lemma-decay";
            rec.params = {{"dim", Cell{static_cast<long long>(d)}},
                          {"m", Cell{static_cast<long long>(m)}},
                          {"k", Cell{static_cast<long long>(k)}},
                          {"s", Cell{static_cast<long long>(s)}}};
            double ev = e1[i].value, dv = d1[i].value;
            if (d == 2) {  // tensor norms are products of the 1-d factors
                ev *= ev;
                dv *= dv;
            }
            rec.measures = {{"op_norm_epsi", ev}, {"op_norm_dpsi", dv}};
            rec.seed = cfg.seed;
            rec.resolution = std::to_string(std::size_t{1} << std::max(e1[i].log2res, d1[i].log2res));
            rec.oversample = cfg.oversample;
            rec.version = tool_version;
            out.records[i] = std::move(rec);
        },
        cfg.threads);

    // diagonal maxima over |k-m| = j (DPsi) and k-m = i in the m < k regime (EPsi)
    std::vector<double> aj(n, 0.0), bi(n, 0.0);
    for (std::size_t i = 0; i < n * n; ++i) {
        const int m = static_cast<int>(i / n), k = static_cast<int>(i % n);
        aj[static_cast<std::size_t>(std::abs(k - m))] = std::max(aj[static_cast<std::size_t>(std::abs(k - m))],
                                                                 d1[i].value);
        if (m < k) bi[static_cast<std::size_t>(k - m)] = std::max(bi[static_cast<std::size_t>(k - m)], e1[i].value);
    }
    for (std::size_t j = 0; j < n; ++j) {
        SweepRecord rec;
        rec.experiment = "lemma-decay";
        rec.params = {{"dim", Cell{static_cast<long long>(d)}},
                      {"m", Cell{std::string("diag")}},
                      {"k", Cell{static_cast<long long>(j)}},
                      {"s", Cell{static_cast<long long>(s)}}};
        rec.measures = {{"op_norm_epsi", bi[j]}, {"op_norm_dpsi", aj[j]}};
        rec.seed = cfg.seed;
        rec.resolution = "diagonal-max";
        rec.oversample = cfg.oversample;
        rec.version = tool_version;
        out.records.push_back(std::move(rec));
    }

    // fit over j in [2, 8] (clipped to the sweep), skipping structurally-zero
    // diagonals (short sweeps reach diagonals realised only by m = 0 pairs)
    const int jlo = 2, jhi = std::min(8, mkmax);
    std::vector<double> ja, avals, jb, bvals;
    for (int j = jlo; j <= jhi; ++j) {
        if (aj[static_cast<std::size_t>(j)] > 0.0) {
            ja.push_back(j);
            avals.push_back(aj[static_cast<std::size_t>(j)]);
        }
        if (bi[static_cast<std::size_t>(j)] > 0.0) {
            jb.push_back(j);
            bvals.push_back(bi[static_cast<std::size_t>(j)]);
        }
    }
    out.fits.emplace_back("dpsi_log2_decay_vs_j", fit_log2_vs_index(ja, avals));
    out.fits.emplace_back("epsi_log2_decay_vs_kminusm", fit_log2_vs_index(jb, bvals));
    return out;
}

// ---------------------------------------------------------------------------
// cww: ratio ||f||_p / (p^{d/2} ||Sf||_p) for random-sign polynomials, where
// Sf is the multi-parameter dyadic square function.
// ---------------------------------------------------------------------------
inline SweepResult cww_ratio_sweep(int d, const std::vector<int>& plist, int trials, int degree,
                                   const HarnessConfig& cfg) {
    if (d < 1 || d > 2) throw std::invalid_argument("cww_ratio_sweep: d must be 1 or 2");
    if (trials < 1) throw std::invalid_argument("cww_ratio_sweep: trials must be >= 1");
    for (int p : plist)
        if (p < 4 || p % 2 != 0) throw std::invalid_argument("cww_ratio_sweep: p must be even and >= 4");

    const std::vector<int> halfdeg(static_cast<std::size_t>(d), degree);
    const int pmax = *std::max_element(plist.begin(), plist.end());
    SweepResult out;
    out.records.resize(static_cast<std::size_t>(trials) * plist.size());
    std::vector<double> maxratio(plist.size(), 0.0);

    parallel_for(
        static_cast<std::size_t>(trials),
        [&](std::size_t t) {
            const TrigPoly f =
                random_poly(d, halfdeg, detail::mix_seed(cfg.seed, t), CoeffLaw::RandomSign);
            std::vector<int> mmax = default_mmax(f);
            const PiecewiseDyadic sf = square_function(f, mmax);
            // one grid at the finest requirement serves every even p <= pmax exactly
            std::vector<int> lr(static_cast<std::size_t>(d));
            for (std::size_t j = 0; j < lr.size(); ++j)
                lr[j] = log2_exact(next_pow2(static_cast<std::size_t>(pmax) * static_cast<std::size_t>(degree) + 1));
            const SampleGrid g = evaluate(f, lr, cfg.mem_budget);
            for (std::size_t pi = 0; pi < plist.size(); ++pi) {
                const int p = plist[pi];
                const double lhs = grid_lp_norm(g, p);
                const double rhs = sf.lp_norm(p);
                const double ratio = lhs / (std::pow(p, 0.5 * d) * rhs);
                SweepRecord rec;
                rec.experiment = "cww";
                rec.params = {{"dim", Cell{static_cast<long long>(d)}},
                              {"trial", Cell{static_cast<long long>(static_cast<long long>(t))}},
                              {"p", Cell{static_cast<long long>(p)}},
                              {"degree", Cell{static_cast<long long>(degree)}}};
                rec.measures = {{"lp", lhs}, {"sq_fn_lp", rhs}, {"ratio", ratio}};
                rec.seed = detail::mix_seed(cfg.seed, t);
                rec.resolution = detail::resolution_string(lr);
                rec.oversample = cfg.oversample;
                rec.version = tool_version;
                out.records[t * plist.size() + pi] = std::move(rec);
            }
        },
        cfg.threads);

    for (std::size_t pi = 0; pi < plist.size(); ++pi) {
        for (int t = 0; t < trials; ++t)
            maxratio[pi] = std::max(maxratio[pi],
                                    out.records[static_cast<std::size_t>(t) * plist.size() + pi].measures[2].second);
        out.summary.emplace_back("max_ratio_p" + std::to_string(plist[pi]), maxratio[pi]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// variant-lp: same ratio with the sup-norm square sum of smooth or rough
// projections on the right-hand side.
// ---------------------------------------------------------------------------
inline SweepResult variant_lp_ratio_sweep(int d, const std::vector<int>& plist, int trials, int degree,
                                          Projector projector, const HarnessConfig& cfg) {
    if (d < 1 || d > 2) throw std::invalid_argument("variant_lp_ratio_sweep: d must be 1 or 2");
    const std::vector<int> halfdeg(static_cast<std::size_t>(d), degree);
    const int pmax = *std::max_element(plist.begin(), plist.end());
    SweepResult out;
    out.records.resize(static_cast<std::size_t>(trials) * plist.size());
    parallel_for(
        static_cast<std::size_t>(trials),
        [&](std::size_t t) {
            const TrigPoly f =
                random_poly(d, halfdeg, detail::mix_seed(cfg.seed, t), CoeffLaw::RandomSign);
            const double rhs = sq_sum_inf(f, projector, cfg.oversample);
            std::vector<int> lr(static_cast<std::size_t>(d));
            for (std::size_t j = 0; j < lr.size(); ++j)
                lr[j] = log2_exact(next_pow2(static_cast<std::size_t>(pmax) * static_cast<std::size_t>(degree) + 1));
            const SampleGrid g = evaluate(f, lr, cfg.mem_budget);
            for (std::size_t pi = 0; pi < plist.size(); ++pi) {
                const int p = plist[pi];
                const LpResult lhs{grid_lp_norm(g, p), lr, true};
                const double ratio = lhs.value / (std::pow(p, 0.5 * d) * rhs);
                SweepRecord rec;
                rec.experiment = "variant-lp";
                rec.params = {{"dim", Cell{static_cast<long long>(d)}},
                              {"projector", Cell{std::string(projector == Projector::Smooth ? "smooth" : "rough")}},
                              {"trial", Cell{static_cast<long long>(static_cast<long long>(t))}},
                              {"p", Cell{static_cast<long long>(p)}},
                              {"degree", Cell{static_cast<long long>(degree)}}};
                rec.measures = {{"lp", lhs.value}, {"sq_sum_inf", rhs}, {"ratio", ratio}};
                rec.seed = detail::mix_seed(cfg.seed, t);
                rec.resolution = detail::resolution_string(lhs.log2res);
                rec.oversample = cfg.oversample;
                rec.version = tool_version;
                out.records[t * plist.size() + pi] = std::move(rec);
            }
        },
        cfg.threads);
    for (std::size_t pi = 0; pi < plist.size(); ++pi) {
        double mx = 0.0;
        for (int t = 0; t < trials; ++t)
            mx = std::max(mx, out.records[static_cast<std::size_t>(t) * plist.size() + pi].measures[2].second);
        out.summary.emplace_back("max_ratio_p" + std::to_string(plist[pi]), mx);
    }
    return out;
}

// ---------------------------------------------------------------------------
// lambda-p: Lambda(p) constants of an explicit frequency set from random-sign
// E-polynomials; ||f||_2 is exact, ||f||_p is a capped-grid rectangle rule on
// the exact samples (resolution recorded).
// ---------------------------------------------------------------------------
inline SweepResult lambda_p_sweep(const FreqSet& E, const std::vector<int>& plist, int trials,
                                  const HarnessConfig& cfg) {
    if (E.empty()) throw std::invalid_argument("lambda_p_sweep: E must be non-empty");
    const int d = E.dim();
    std::vector<int> lr(static_cast<std::size_t>(d), cfg.grid_log2_cap);
    SweepResult out;
    out.records.resize(static_cast<std::size_t>(trials) * plist.size());
    const double l2 = std::sqrt(static_cast<double>(E.size()));  // random signs: exact

    parallel_for(
        static_cast<std::size_t>(trials),
        [&](std::size_t t) {
            detail::Rng rng(detail::mix_seed(cfg.seed, t));
            std::vector<cplx> signs(E.size());
            for (auto& c : signs) c = cplx{rng.sign(), 0.0};
            const SampleGrid g = evaluate_sparse(E.points(), signs, lr, cfg.mem_budget);
            for (std::size_t pi = 0; pi < plist.size(); ++pi) {
                const int p = plist[pi];
                const double lp = grid_lp_norm(g, p);
                SweepRecord rec;
                rec.experiment = "lambda-p";
                rec.params = {{"dim", Cell{static_cast<long long>(d)}},
                              {"set_size", Cell{static_cast<long long>(static_cast<long long>(E.size()))}},
                              {"trial", Cell{static_cast<long long>(static_cast<long long>(t))}},
                              {"p", Cell{static_cast<long long>(p)}}};
                rec.measures = {{"lp", lp}, {"l2", l2}, {"ratio", lp / l2}};
                rec.seed = detail::mix_seed(cfg.seed, t);
                rec.resolution = detail::resolution_string(lr);
                rec.oversample = cfg.oversample;
                rec.version = tool_version;
                out.records[t * plist.size() + pi] = std::move(rec);
            }
        },
        cfg.threads);

    std::vector<double> ps, maxr;
    for (std::size_t pi = 0; pi < plist.size(); ++pi) {
        double mx = 0.0;
        for (int t = 0; t < trials; ++t)
            mx = std::max(mx, out.records[static_cast<std::size_t>(t) * plist.size() + pi].measures[2].second);
        out.summary.emplace_back("max_ratio_p" + std::to_string(plist[pi]), mx);
        ps.push_back(plist[pi]);
        maxr.push_back(mx);
    }
    out.fits.emplace_back("log_max_ratio_vs_logp", fit_loglog(ps, maxr));
    return out;
}

// ---------------------------------------------------------------------------
// exp-int: exponential integrability with the rough-projection normaliser.
// ---------------------------------------------------------------------------
inline double exp_integrability(const TrigPoly& f, double c1, int oversample = 8,
                                std::size_t mem_budget = default_mem_budget) {
    if (c1 <= 0.0) throw std::invalid_argument("exp_integrability: c1 must be > 0");
    const double normaliser = sq_sum_inf(f, Projector::Rough, oversample);
    if (normaliser == 0.0) throw std::invalid_argument("exp_integrability: degenerate f = 0");
    const double expo = 2.0 / static_cast<double>(f.dim());
    std::vector<int> lr(static_cast<std::size_t>(f.dim()));
    for (std::size_t j = 0; j < lr.size(); ++j) {
        const std::size_t K = static_cast<std::size_t>(f.halfdeg()[j]);
        lr[j] = log2_exact(next_pow2(std::max<std::size_t>(1, static_cast<std::size_t>(oversample) * (2 * K + 1))));
    }
    const SampleGrid g = evaluate(f, lr, mem_budget);
    double acc = 0.0;
    for (const cplx& v : g.values()) acc += std::exp(c1 * std::pow(std::abs(v) / normaliser, expo));
    return acc / static_cast<double>(g.values().size());
}

inline SweepResult exp_int_sweep(int d, int degree, int npolys, const std::vector<double>& c1list,
                                 const HarnessConfig& cfg) {
    const std::vector<int> halfdeg(static_cast<std::size_t>(d), degree);
    SweepResult out;
    out.records.resize(static_cast<std::size_t>(npolys) * c1list.size());
    parallel_for(
        static_cast<std::size_t>(npolys),
        [&](std::size_t t) {
            const TrigPoly f =
                random_poly(d, halfdeg, detail::mix_seed(cfg.seed, t), CoeffLaw::RandomSign);
            for (std::size_t ci = 0; ci < c1list.size(); ++ci) {
                const double val = exp_integrability(f, c1list[ci], cfg.oversample, cfg.mem_budget);
                SweepRecord rec;
                rec.experiment = "exp-int";
                rec.params = {{"dim", Cell{static_cast<long long>(d)}},
                              {"trial", Cell{static_cast<long long>(static_cast<long long>(t))}},
                              {"c1", Cell{c1list[ci]}},
                              {"degree", Cell{static_cast<long long>(degree)}}};
                rec.measures = {{"integral", val}};
                rec.seed = detail::mix_seed(cfg.seed, t);
                rec.resolution = "auto";
                rec.oversample = cfg.oversample;
                rec.version = tool_version;
                out.records[t * c1list.size() + ci] = std::move(rec);
            }
        },
        cfg.threads);
    for (std::size_t ci = 0; ci < c1list.size(); ++ci) {
        double mx = 0.0;
        for (int t = 0; t < npolys; ++t)
            mx = std::max(mx, out.records[static_cast<std::size_t>(t) * c1list.size() + ci].measures[0].second);
        out.summary.emplace_back("max_integral_c1_" + format_real(c1list[ci]), mx);
    }
    return out;
}

// ---------------------------------------------------------------------------
// oberlin: block sums of the canonical sharpness multiplier.
// ---------------------------------------------------------------------------
inline SweepResult oberlin_sweep(long long nmax, const HarnessConfig& cfg) {
    const MultiplierSymbol m = sharpness_multiplier(2);
    const OberlinResult res = oberlin_sup(m, nmax);
    const auto sums = oberlin_block_sums_1d(m, 0, std::min<long long>(nmax, 64));
    SweepResult out;
    for (std::size_t N = 0; N < sums.size(); ++N) {
        SweepRecord rec;
        rec.experiment = "oberlin";
        rec.params = {{"N", Cell{static_cast<long long>(static_cast<long long>(N))}}};
        rec.measures = {{"block_sum_1d", sums[N]}};
        rec.seed = cfg.seed;
        rec.resolution = std::to_string(nmax);
        rec.oversample = cfg.oversample;
        rec.version = tool_version;
        out.records.push_back(std::move(rec));
    }
    out.summary.emplace_back("oberlin_sup", res.sup);
    out.summary.emplace_back("argmax_N", static_cast<double>(res.argmax.empty() ? 0 : res.argmax[0]));
    return out;
}

}  // namespace torus
