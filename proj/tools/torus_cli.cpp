// Command-line harness: reproducible experiment sweeps with CSV + JSON
// manifest output.
//
//   torus sharpness   --dim 2 --n-min 4 --n-max 9 --out out/
//   torus lemma-decay --dim 1 --max 10 --out out/
//   torus cww         --dim 2 --p-list 4,8,16 --trials 50 --degree 64
//   torus variant-lp  --dim 2 --projector smooth ...
//   torus lambda-p    --base 2 --count 12 --dim 2 --p-list 4,8,16 --trials 50
//   torus oberlin     --nmax 1048576
//   torus exp-int     --dim 2 --degree 32 --polys 20 --c1-list 0.01,0.05,0.1
//   torus selftest
//
// Exit codes: 0 success, 1 budget/validation error, 2 bad arguments.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "torus/experiments.hpp"

namespace fs = std::filesystem;

namespace {

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

void emit(const torus::SweepResult& result, const std::string& experiment, const std::string& out_dir,
          const std::string& args, const torus::HarnessConfig& cfg) {
    fs::create_directories(out_dir);
    const fs::path csv_path = fs::path(out_dir) / (experiment + ".csv");
    {
        std::ofstream csv(csv_path, std::ios::binary);
        torus::write_csv(csv, result.records);
    }
    std::string resolution = result.records.empty() ? "" : result.records.front().resolution;
    {
        std::ofstream mf(fs::path(out_dir) / (experiment + "_manifest.json"));
        torus::write_manifest(mf, experiment, args, cfg.seed, resolution, cfg.oversample, std::time(nullptr));
    }
    std::cout << experiment << ": " << result.records.size() << " records -> " << csv_path.string() << "\n";
    for (const auto& [name, fit] : result.fits) {
        std::cout << "  fit " << name << ": slope=" << torus::format_real(fit.slope)
                  << " intercept=" << torus::format_real(fit.intercept)
                  << " residual=" << torus::format_real(fit.residual) << " n=" << fit.n << "\n";
    }
    for (const auto& [name, value] : result.summary)
        std::cout << "  " << name << " = " << torus::format_real(value) << "\n";
}

std::vector<int> parse_plist(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    if (out.empty()) throw CLI::ValidationError("--p-list", "empty p list");
    return out;
}

std::vector<double> parse_dlist(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

int run_selftest() {
    using namespace torus;
    int failures = 0;
    const auto check = [&](bool ok, const char* what) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << what << "\n";
        if (!ok) ++failures;
    };

    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double xi = -4096.0 + 8192.0 * i / 1000.0;
        double s = 0.0;
        for (int k = 0; k <= 13; ++k) s += phi_eval(k, xi);
        worst = std::max(worst, std::abs(s - 1.0));
    }
    check(worst < 1e-10, "partition of unity");

    const TrigPoly f = random_poly(1, {16}, 7, CoeffLaw::ComplexGaussian);
    const TrigPoly g = analyze(evaluate(f, {6}), f.halfdeg());
    double err = 0.0;
    for (std::size_t i = 0; i < f.table_size(); ++i) err = std::max(err, std::abs(f.table()[i] - g.table()[i]));
    check(err < 1e-12, "evaluate/analyze round trip");

    const PiecewiseDyadic e3 = cond_exp(f, {3});
    PiecewiseDyadic acc = PiecewiseDyadic::zeros({3});
    for (int m = 0; m <= 3; ++m) acc = pd_add(acc, mart_diff(f, {m}));
    const PiecewiseDyadic diff = pd_sub(acc, e3);
    check(diff.linf() < 1e-12, "martingale telescoping");

    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral experiments on the d-torus"};
    app.require_subcommand(1);
    app.fallthrough();  // accept global flags after the subcommand name

    torus::HarnessConfig cfg;
    std::string out_dir = "out";
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--oversample", cfg.oversample, "quadrature oversample factor")->capture_default_str();
    app.add_option("--grid-log2", cfg.grid_log2_cap, "per-dimension grid cap (log2)")->capture_default_str();
    app.add_option("--threads", cfg.threads, "worker threads for sweep cells")->capture_default_str();
    std::size_t budget_mib = cfg.mem_budget >> 20;
    app.add_option("--budget-mib", budget_mib, "grid memory budget in MiB")->capture_default_str();
    app.add_option("--out", out_dir, "output directory")->capture_default_str();

    // sharpness
    auto* sharp = app.add_subcommand("sharpness", "de la Vallee Poussin sharpness sweep");
    int dim = 2, nmin = 4, nmax = 9;
    sharp->add_option("--dim", dim, "dimension (1 or 2)")->capture_default_str();
    sharp->add_option("--n-min", nmin, "smallest N")->capture_default_str();
    sharp->add_option("--n-max", nmax, "largest N")->capture_default_str();

    // lemma-decay
    auto* lemma = app.add_subcommand("lemma-decay", "operator-norm decay of E_m Psi_k and D_m Psi_k");
    int ldim = 1, lmax = 10, ls = 0;
    lemma->add_option("--dim", ldim, "dimension (1 or 2)")->capture_default_str();
    lemma->add_option("--max", lmax, "largest m and k")->capture_default_str();
    lemma->add_option("--s", ls, "symbol derivative exponent in {-1,0,1}")->capture_default_str();

    // cww
    auto* cww = app.add_subcommand("cww", "martingale square-function ratio sweep");
    int cdim = 2, ctrials = 50, cdegree = 64;
    std::string cplist = "4,8,16";
    cww->add_option("--dim", cdim)->capture_default_str();
    cww->add_option("--p-list", cplist)->capture_default_str();
    cww->add_option("--trials", ctrials)->capture_default_str();
    cww->add_option("--degree", cdegree)->capture_default_str();

    // variant-lp
    auto* vlp = app.add_subcommand("variant-lp", "sup-norm square-sum ratio sweep");
    int vdim = 2, vtrials = 50, vdegree = 64;
    std::string vplist = "4,8,16", vproj = "smooth";
    vlp->add_option("--dim", vdim)->capture_default_str();
    vlp->add_option("--p-list", vplist)->capture_default_str();
    vlp->add_option("--trials", vtrials)->capture_default_str();
    vlp->add_option("--degree", vdegree)->capture_default_str();
    vlp->add_option("--projector", vproj, "smooth or rough")->capture_default_str();

    // lambda-p
    auto* lp = app.add_subcommand("lambda-p", "Lambda(p) constants of a lacunary product set");
    int pbase = 2, pcount = 12, pdim = 2, ptrials = 50;
    std::string pplist = "4,8,16", set_file;
    lp->add_option("--base", pbase)->capture_default_str();
    lp->add_option("--count", pcount)->capture_default_str();
    lp->add_option("--dim", pdim)->capture_default_str();
    lp->add_option("--p-list", pplist)->capture_default_str();
    lp->add_option("--trials", ptrials)->capture_default_str();
    lp->add_option("--set-file", set_file, "read E from a freq-set file instead of --base/--count");

    // oberlin
    auto* ob = app.add_subcommand("oberlin", "Oberlin block sums of 1/sqrt(k1 k2)");
    long long nmax_blocks = 1LL << 20;
    ob->add_option("--nmax", nmax_blocks)->capture_default_str();

    // exp-int
    auto* ei = app.add_subcommand("exp-int", "exponential integrability sweep");
    int edim = 2, edegree = 32, epolys = 20;
    std::string c1list = "0.01,0.05,0.1";
    ei->add_option("--dim", edim)->capture_default_str();
    ei->add_option("--degree", edegree)->capture_default_str();
    ei->add_option("--polys", epolys)->capture_default_str();
    ei->add_option("--c1-list", c1list)->capture_default_str();

    auto* st = app.add_subcommand("selftest", "quick internal smoke checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    cfg.mem_budget = budget_mib << 20;
    const std::string args = join_args(argc, argv);

    try {
        if (sharp->parsed()) {
            emit(torus::sharpness_sweep(dim, nmin, nmax, cfg), "sharpness", out_dir, args, cfg);
        } else if (lemma->parsed()) {
            emit(torus::lemma_decay_sweep(ldim, lmax, ls, cfg), "lemma-decay", out_dir, args, cfg);
        } else if (cww->parsed()) {
            emit(torus::cww_ratio_sweep(cdim, parse_plist(cplist), ctrials, cdegree, cfg), "cww", out_dir, args,
                 cfg);
        } else if (vlp->parsed()) {
            const torus::Projector proj =
                vproj == "rough" ? torus::Projector::Rough : torus::Projector::Smooth;
            if (vproj != "rough" && vproj != "smooth")
                throw std::invalid_argument("--projector must be smooth or rough");
            emit(torus::variant_lp_ratio_sweep(vdim, parse_plist(vplist), vtrials, vdegree, proj, cfg),
                 "variant-lp", out_dir, args, cfg);
        } else if (lp->parsed()) {
            torus::FreqSet E = [&] {
                if (!set_file.empty()) {
                    std::ifstream in(set_file);
                    if (!in.good()) throw std::invalid_argument("cannot read --set-file " + set_file);
                    return torus::read_freqset(in);
                }
                return torus::lacunary_product(pbase, pcount, pdim);
            }();
            emit(torus::lambda_p_sweep(E, parse_plist(pplist), ptrials, cfg), "lambda-p", out_dir, args, cfg);
        } else if (ob->parsed()) {
            emit(torus::oberlin_sweep(nmax_blocks, cfg), "oberlin", out_dir, args, cfg);
        } else if (ei->parsed()) {
            emit(torus::exp_int_sweep(edim, edegree, epolys, parse_dlist(c1list), cfg), "exp-int", out_dir, args,
                 cfg);
        } else if (st->parsed()) {
            return run_selftest();
        }
    } catch (const torus::budget_error& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
