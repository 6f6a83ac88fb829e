// pmq: command-line front end for the one-bit witness toolkit.
//
// Every subcommand echoes its fully resolved configuration (defaults and
// seeds included) to stderr, so a run can be reproduced from its log alone.
// stdout carries only the results; with the same flags and seed the bytes
// are identical across runs.
//
// Exit codes: 0 success, 1 usage error, 2 input error, 3 resource cap
// exceeded, 4 certification failed (ran correctly, inequality not strict).

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "pmq/bloch.hpp"
#include "pmq/certify.hpp"
#include "pmq/errors.hpp"
#include "pmq/gilbert.hpp"
#include "pmq/gisin.hpp"
#include "pmq/matrix.hpp"
#include "pmq/norms.hpp"
#include "pmq/rng.hpp"
#include "pmq/seesaw.hpp"

namespace {

template <class... Args>
std::string strf(const char* fmt, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

void log_line(const std::string& s) { std::fprintf(stderr, "# %s\n", s.c_str()); }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw pmq::Error("cannot open for writing: " + path);
    out << text;
    if (!out) throw pmq::Error("write failed: " + path);
}

pmq::Vec3 parse_vec3(const std::string& s) {
    pmq::Vec3 v;
    int used = 0;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf%n", &v.x, &v.y, &v.z, &used) != 3 ||
        used != static_cast<int>(s.size()))
        throw pmq::ParseError("expected a vector as x,y,z: " + s);
    return v;
}

// Vector files serve two layouts: n+m vectors (preparations then
// measurements) or, for a square witness, n vectors used on both sides.
pmq::BlochConfig config_from_vectors(const std::vector<pmq::Vec3>& vs, int n, int m) {
    pmq::BlochConfig cfg;
    const int count = static_cast<int>(vs.size());
    if (count == n + m) {
        cfg.a.assign(vs.begin(), vs.begin() + n);
        cfg.b.assign(vs.begin() + n, vs.end());
    } else if (count == n && n == m) {
        cfg.a = vs;
        cfg.b = vs;
    } else {
        throw pmq::Error(strf("vector file has %d entries; expected %d (rows+cols) or %d (square, both sides)",
                              count, n + m, n));
    }
    return cfg;
}

struct SolverFlags {
    int threads = 0;
    int depth = 3;
    double skip_frac = 0.75;
    std::int64_t guess = 0;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& sf) {
    cmd->add_option("--threads", sf.threads, "worker threads (0: PMQ_THREADS env, then all cores)");
    cmd->add_option("--depth", sf.depth, "tree depth at which subtrees become parallel tasks");
    cmd->add_option("--skip-frac", sf.skip_frac, "suffix fraction exempt from the prune test");
    cmd->add_option("--guess", sf.guess, "known lower bound used to warm-start pruning");
}

pmq::SolverConfig to_solver_config(const SolverFlags& sf) {
    pmq::SolverConfig cfg;
    cfg.threads = sf.threads;
    cfg.parallel_depth = sf.depth;
    cfg.skip_fraction = sf.skip_frac;
    cfg.guess = sf.guess;
    return cfg;
}

std::string solver_echo(const SolverFlags& sf) {
    return strf("guess=%lld threads=%d depth=%d skip_frac=%g",
                static_cast<long long>(sf.guess), pmq::resolve_threads(to_solver_config(sf)),
                sf.depth, sf.skip_frac);
}

// ---------------------------------------------------------------- lnorm --

struct LnormOpts {
    std::string matrix;
    int k = 2;
    bool exact = false, bruteforce = false, seesaw = false, local = false;
    bool witness = false, suffix_table = false;
    int restarts = 8;
    std::uint64_t seed = 0;
    SolverFlags sf;
};

int cmd_lnorm(const LnormOpts& o) {
    const pmq::WitnessMatrix M = pmq::load_matrix(o.matrix);
    const char* mode = o.local ? "local" : o.bruteforce ? "bruteforce" : o.seesaw ? "seesaw" : "exact";
    log_line(strf("lnorm matrix=%s n=%d m=%d k=%d mode=%s restarts=%d seed=%llu ", o.matrix.c_str(),
                  M.rows(), M.cols(), o.k, mode, o.restarts,
                  static_cast<unsigned long long>(o.seed)) +
             solver_echo(o.sf));

    if (o.local) {
        const auto [value, v] = pmq::local_bound_witness(M);
        std::printf("%lld\n", static_cast<long long>(value));
        if (o.witness) {
            for (std::size_t i = 0; i < v.size(); ++i)
                std::printf("%s%d", i ? " " : "", static_cast<int>(v[i]));
            std::printf("\n");
        }
        return 0;
    }
    if (o.bruteforce) {
        std::printf("%lld\n", static_cast<long long>(pmq::lk_bruteforce(M, o.k)));
        return 0;
    }
    if (o.seesaw) {
        if (o.k != 2) throw pmq::Error("the see-saw heuristic only handles k = 2");
        const pmq::SeesawReport rep = pmq::seesaw_l2(M, o.restarts, o.seed);
        log_line(strf("seesaw iterations=%lld restart=%d", rep.iterations, rep.restarts_used));
        std::printf("%lld\n", static_cast<long long>(std::llround(rep.value)));
        return 0;
    }
    const pmq::SolverConfig cfg = to_solver_config(o.sf);
    if (o.suffix_table) {
        for (const std::int64_t v : pmq::lk_suffix_table(M, o.k, cfg))
            std::printf("%lld\n", static_cast<long long>(v));
        return 0;
    }
    const pmq::SolveResult res = pmq::lk_branch_bound(M, o.k, cfg);
    if (res.guess_dominated) log_line("guess dominated: no assignment reached it, value echoes the guess");
    std::printf("%lld\n", static_cast<long long>(res.value));
    if (o.witness && res.witness) {
        const auto& g = res.witness->groups;
        for (std::size_t i = 0; i < g.size(); ++i) std::printf("%s%d", i ? " " : "", g[i]);
        std::printf("\n");
    }
    return 0;
}

// --------------------------------------------------------------- seesaw --

struct SeesawOpts {
    std::string matrix, emit_correlation;
    int restarts = 8;
    std::uint64_t seed = 0;
};

int cmd_seesaw(const SeesawOpts& o) {
    const pmq::WitnessMatrix M = pmq::load_matrix(o.matrix);
    log_line(strf("seesaw matrix=%s n=%d m=%d restarts=%d seed=%llu", o.matrix.c_str(), M.rows(),
                  M.cols(), o.restarts, static_cast<unsigned long long>(o.seed)));
    const pmq::SeesawReport rep = pmq::seesaw_l2(M, o.restarts, o.seed);
    log_line(strf("iterations=%lld winning_restart=%d", rep.iterations, rep.restarts_used));
    std::printf("%lld\n", static_cast<long long>(std::llround(rep.value)));
    if (!o.emit_correlation.empty())
        pmq::save_real_matrix(pmq::strategy_correlation(rep.strategy), o.emit_correlation);
    return 0;
}

// ------------------------------------------------------------------ qlb --

struct QlbOpts {
    std::string matrix, vectors;
    int restarts = 10;
    long long iters = 10000;
    double tol = 1e-10;
    std::uint64_t seed = 0;
};

int cmd_qlb(const QlbOpts& o) {
    const pmq::WitnessMatrix M = pmq::load_matrix(o.matrix);
    log_line(strf("qlb matrix=%s n=%d m=%d vectors=%s restarts=%d iters=%lld tol=%g seed=%llu",
                  o.matrix.c_str(), M.rows(), M.cols(),
                  o.vectors.empty() ? "(random)" : o.vectors.c_str(), o.restarts, o.iters, o.tol,
                  static_cast<unsigned long long>(o.seed)));
    pmq::AlternateResult best;
    if (!o.vectors.empty()) {
        const pmq::BlochConfig init = config_from_vectors(pmq::load_vectors(o.vectors), M.rows(), M.cols());
        best = pmq::q_lowerbound_alternate(M, init, o.iters, o.tol);
    } else {
        best.value = -HUGE_VAL;
        for (int r = 0; r < o.restarts; ++r) {
            pmq::AlternateResult res = pmq::q_lowerbound_alternate(
                M, pmq::derive_seed(o.seed, static_cast<std::uint64_t>(r)), o.iters, o.tol);
            if (res.value > best.value) best = std::move(res);
        }
    }
    log_line(strf("alternation iterations=%lld", best.iterations));
    std::printf("%.12g\n", best.value);
    return 0;
}

// ---------------------------------------------------------------- gisin --

struct GisinOpts {
    std::string pairs, a, b, grid, out;
    long long samples = 1000000;
    std::uint64_t seed = 0;
    bool csv = false;
};

void print_pair_report(int index, const pmq::Vec3& a, const pmq::Vec3& b, const pmq::SimReport& r,
                       bool csv) {
    const double ab = pmq::dot(a, b);
    if (csv) {
        std::printf("%d,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", index, ab, r.e_coarse,
                    (ab + 1) / 2, r.e_detected, r.detect_rate, r.se_coarse, r.se_detected,
                    r.se_detect);
    } else {
        std::printf("pair %d: a.b=%.6f coarse=%.6f (expect %.6f) detected=%.6f (expect %.6f) rate=%.6f\n",
                    index, ab, r.e_coarse, (ab + 1) / 2, r.e_detected, ab, r.detect_rate);
    }
}

int cmd_gisin(const GisinOpts& o) {
    const int modes = int(!o.pairs.empty()) + int(!o.a.empty() || !o.b.empty()) + int(!o.grid.empty());
    if (modes != 1) {
        std::fprintf(stderr, "gisin: pick exactly one of --pairs, --a/--b, --grid\n");
        return 1;
    }
    log_line(strf("gisin samples=%lld seed=%llu mode=%s", o.samples,
                  static_cast<unsigned long long>(o.seed),
                  !o.pairs.empty() ? "pairs" : !o.grid.empty() ? "grid" : "single"));

    if (!o.grid.empty()) {
        const std::vector<pmq::Vec3> vs = pmq::load_vectors(o.grid);
        const int n = static_cast<int>(vs.size());
        const pmq::BlochConfig cfg = config_from_vectors(vs, n, n);
        const pmq::RealMatrix R = pmq::gg_matrix(cfg, o.samples, o.seed);
        if (o.out.empty()) throw pmq::Error("grid mode needs --out for the estimated matrix");
        pmq::save_real_matrix(R, o.out);
        log_line("wrote " + o.out);
        return 0;
    }
    if (!o.pairs.empty()) {
        int count = 0;
        if (std::sscanf(o.pairs.c_str(), "random:%d", &count) != 1 || count <= 0)
            throw pmq::ParseError("--pairs expects random:<count>");
        std::mt19937_64 rng(pmq::derive_seed(o.seed, 0));
        if (o.csv)
            std::printf("pair,ab,e_coarse,coarse_expected,e_detected,detect_rate,se_coarse,se_detected,se_detect\n");
        for (int i = 0; i < count; ++i) {
            const pmq::Vec3 a = pmq::random_unit(rng);
            const pmq::Vec3 b = pmq::random_unit(rng);
            const pmq::SimReport rep =
                pmq::simulate_gg(a, b, o.samples, pmq::derive_seed(o.seed, static_cast<std::uint64_t>(i) + 1));
            print_pair_report(i, a, b, rep, o.csv);
        }
        return 0;
    }
    if (o.a.empty() || o.b.empty()) throw pmq::Error("single mode needs both --a and --b");
    const pmq::Vec3 a = pmq::normalized(parse_vec3(o.a));
    const pmq::Vec3 b = pmq::normalized(parse_vec3(o.b));
    const pmq::SimReport r = pmq::simulate_gg(a, b, o.samples, o.seed);
    std::printf("n_samples %lld\nn_detected %lld\ndetect_rate %.12g\ne_detected %.12g\ne_coarse %.12g\n"
                "se_detect %.12g\nse_detected %.12g\nse_coarse %.12g\n",
                r.n_samples, r.n_detected, r.detect_rate, r.e_detected, r.e_coarse, r.se_detect,
                r.se_detected, r.se_coarse);
    return 0;
}

// -------------------------------------------------------------- certify --

struct CertifyOpts {
    std::string matrix, vectors, out;
    std::uint64_t seed = 0;
    bool bisect = false;
    double tol = 1e-6;
    SolverFlags sf;
};

int cmd_certify(const CertifyOpts& o) {
    const pmq::WitnessMatrix M = pmq::load_matrix(o.matrix);
    log_line(strf("certify matrix=%s n=%d m=%d vectors=%s seed=%llu bisect=%d tol=%g ",
                  o.matrix.c_str(), M.rows(), M.cols(),
                  o.vectors.empty() ? "(auto)" : o.vectors.c_str(),
                  static_cast<unsigned long long>(o.seed), int(o.bisect), o.tol) +
             solver_echo(o.sf));
    std::optional<pmq::BlochConfig> init;
    if (!o.vectors.empty())
        init = config_from_vectors(pmq::load_vectors(o.vectors), M.rows(), M.cols());
    const pmq::SolverConfig cfg = to_solver_config(o.sf);
    const pmq::Certificate cert = pmq::certify_witness(M, init, cfg, o.seed);

    std::string report = pmq::certificate_report(cert);
    std::string kv = pmq::certificate_keyvalue(cert);
    if (o.bisect) {
        if (cert.margin_ok && cert.kd_defined) {
            const double eta = pmq::eta_bisect(M, cert.config, o.tol, cfg, cert.L2_exact);
            report += strf("  eta bisected         %.12g\n", eta);
            kv += strf("eta_bisect %.12g\n", eta);
        } else {
            log_line("bisection skipped: no strict violation to bracket");
        }
    }
    std::fputs(report.c_str(), stdout);
    if (!o.out.empty()) {
        write_text(o.out, kv);
        log_line("wrote " + o.out);
    }
    if (!cert.margin_ok) {
        log_line("certification failed: q does not exceed L2 by more than the error bound");
        return 4;
    }
    return 0;
}

// -------------------------------------------------------------- gilbert --

struct GilbertOpts {
    std::string vectors, target_matrix, out, out_int, log;
    double eta = 1.0;
    double eps = 1e-6;
    long long imax = 200000;
    int buffer = 40;
    int oracle_restarts = 20;
    std::int64_t scale = 1000;
    std::uint64_t seed = 0;
    bool track_weights = false;
};

int cmd_gilbert(const GilbertOpts& o) {
    if (o.vectors.empty() == o.target_matrix.empty()) {
        std::fprintf(stderr, "gilbert: pick exactly one of --vectors or --target-matrix\n");
        return 1;
    }
    pmq::RealMatrix target;
    if (!o.target_matrix.empty()) {
        target = pmq::load_real_matrix(o.target_matrix);
    } else {
        const std::vector<pmq::Vec3> vs = pmq::load_vectors(o.vectors);
        const int n = static_cast<int>(vs.size());
        target = pmq::noisy_family(pmq::correlation_matrix(config_from_vectors(vs, n, n)), o.eta);
    }
    log_line(strf("gilbert target=%s eta=%g n=%d m=%d eps=%g imax=%lld buffer=%d oracle_restarts=%d "
                  "seed=%llu scale=%lld track_weights=%d",
                  o.target_matrix.empty() ? o.vectors.c_str() : o.target_matrix.c_str(), o.eta,
                  target.rows(), target.cols(), o.eps, o.imax, o.buffer, o.oracle_restarts,
                  static_cast<unsigned long long>(o.seed), static_cast<long long>(o.scale),
                  int(o.track_weights)));

    pmq::GilbertConfig gc;
    gc.epsilon = o.eps;
    gc.i_max = o.imax;
    gc.buffer_size = o.buffer;
    gc.oracle_restarts = o.oracle_restarts;
    gc.seed = o.seed;
    gc.track_weights = o.track_weights;
    const pmq::GilbertResult res = pmq::run_gilbert(target, gc);

    std::printf("final_dist %.12g\niterations %lld\nconverged %d\n", res.final_dist,
                res.state.iterations, int(res.final_dist <= gc.epsilon));
    if (o.track_weights) {
        double wsum = 0;
        for (const double w : res.state.ledger.weights) wsum += w;
        std::printf("ledger_size %zu\nweight_sum %.12g\n", res.state.ledger.weights.size(), wsum);
    }
    if (!o.out.empty()) {
        pmq::save_real_matrix(res.residual, o.out);
        log_line("wrote " + o.out);
    }
    if (!o.out_int.empty()) {
        pmq::save_matrix(pmq::integerize(res.residual, o.scale), o.out_int);
        log_line("wrote " + o.out_int);
    }
    if (!o.log.empty()) {
        std::string csv = "iteration,dist\n";
        for (std::size_t i = 0; i < res.state.dist_history.size(); ++i)
            csv += strf("%zu,%.12g\n", i + 1, res.state.dist_history[i]);
        write_text(o.log, csv);
    }
    return 0;
}

// ------------------------------------------------------------------ gen --

struct GenOpts {
    int family = 0;
    int packing = 0;
    int iters = 2000;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_gen(const GenOpts& o) {
    if ((o.family > 0) == (o.packing > 0)) {
        std::fprintf(stderr, "gen: pick exactly one of --family or --packing\n");
        return 1;
    }
    if (o.family > 0) {
        log_line(strf("gen family=%d out=%s", o.family, o.out.c_str()));
        pmq::save_matrix(pmq::gen_family(o.family), o.out);
    } else {
        log_line(strf("gen packing=%d iters=%d seed=%llu out=%s", o.packing, o.iters,
                      static_cast<unsigned long long>(o.seed), o.out.c_str()));
        const std::vector<pmq::Vec3> vs = pmq::gen_packing(o.packing, o.seed, o.iters);
        log_line(strf("min line angle %.6f rad", pmq::min_line_angle(vs)));
        pmq::save_vectors(vs, o.out);
    }
    log_line("wrote " + o.out);
    return 0;
}

// ------------------------------------------------------------ integerize --

struct IntegerizeOpts {
    std::string input, out;
    std::int64_t scale = 1000;
};

int cmd_integerize(const IntegerizeOpts& o) {
    const pmq::RealMatrix R = pmq::load_real_matrix(o.input);
    log_line(strf("integerize input=%s n=%d m=%d scale=%lld out=%s", o.input.c_str(), R.rows(),
                  R.cols(), static_cast<long long>(o.scale), o.out.c_str()));
    pmq::save_matrix(pmq::integerize(R, o.scale), o.out);
    log_line("wrote " + o.out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-bit witness toolkit: exact classical bounds, qubit values, certification"};
    app.require_subcommand(1);

    LnormOpts lnorm;
    CLI::App* c_lnorm = app.add_subcommand("lnorm", "classical bounds L_k(M) and L(M)");
    c_lnorm->add_option("matrix", lnorm.matrix, "witness matrix file")->required();
    c_lnorm->add_option("--k", lnorm.k, "number of messages");
    auto* f_exact = c_lnorm->add_flag("--exact", lnorm.exact, "branch and bound (default)");
    auto* f_brute = c_lnorm->add_flag("--bruteforce", lnorm.bruteforce, "enumerate all assignments");
    auto* f_seesaw = c_lnorm->add_flag("--seesaw", lnorm.seesaw, "heuristic lower bound (k = 2)");
    auto* f_local = c_lnorm->add_flag("--local", lnorm.local, "local bound L(M) instead of L_k");
    f_exact->excludes(f_brute)->excludes(f_seesaw)->excludes(f_local);
    f_brute->excludes(f_seesaw)->excludes(f_local);
    f_seesaw->excludes(f_local);
    c_lnorm->add_flag("--witness", lnorm.witness, "also print the maximizing assignment");
    c_lnorm->add_flag("--suffix-table", lnorm.suffix_table, "print L_k of every row suffix");
    c_lnorm->add_option("--restarts", lnorm.restarts, "see-saw restarts");
    c_lnorm->add_option("--seed", lnorm.seed, "see-saw seed");
    add_solver_flags(c_lnorm, lnorm.sf);

    SeesawOpts seesaw;
    CLI::App* c_seesaw = app.add_subcommand("seesaw", "see-saw heuristic lower bound on L_2");
    c_seesaw->add_option("matrix", seesaw.matrix, "witness matrix file")->required();
    c_seesaw->add_option("--restarts", seesaw.restarts, "independent restarts");
    c_seesaw->add_option("--seed", seesaw.seed, "restart seed");
    c_seesaw->add_option("--emit-correlation", seesaw.emit_correlation,
                         "write the winning strategy's correlation matrix");

    QlbOpts qlb;
    CLI::App* c_qlb = app.add_subcommand("qlb", "achievable qubit value by alternating ascent");
    c_qlb->add_option("matrix", qlb.matrix, "witness matrix file")->required();
    c_qlb->add_option("--vectors", qlb.vectors, "initial unit vectors (rows+cols, or rows if square)");
    c_qlb->add_option("--restarts", qlb.restarts, "random restarts when no vectors are given");
    c_qlb->add_option("--iters", qlb.iters, "alternation iteration cap");
    c_qlb->add_option("--tol", qlb.tol, "absolute improvement stop threshold");
    c_qlb->add_option("--seed", qlb.seed, "restart seed");

    GisinOpts gisin;
    CLI::App* c_gisin = app.add_subcommand("gisin", "Monte Carlo of the one-bit detection protocol");
    c_gisin->add_option("--samples", gisin.samples, "rounds per pair");
    c_gisin->add_option("--seed", gisin.seed, "master seed");
    c_gisin->add_option("--pairs", gisin.pairs, "random:<count> seeded random vector pairs");
    c_gisin->add_option("--a", gisin.a, "preparation vector x,y,z");
    c_gisin->add_option("--b", gisin.b, "measurement vector x,y,z");
    c_gisin->add_option("--grid", gisin.grid, "vector file; estimate every pairwise expectation");
    c_gisin->add_option("--out", gisin.out, "output matrix file (grid mode)");
    c_gisin->add_flag("--csv", gisin.csv, "CSV output (pairs mode)");

    CertifyOpts certify;
    CLI::App* c_certify = app.add_subcommand("certify", "exact-bound certificate for one witness");
    c_certify->add_option("--matrix", certify.matrix, "witness matrix file")->required();
    c_certify->add_option("--vectors", certify.vectors, "qubit configuration (rows+cols, or rows if square)");
    c_certify->add_option("--seed", certify.seed, "alternation restart seed");
    c_certify->add_flag("--bisect", certify.bisect, "also bisect the critical detection efficiency");
    c_certify->add_option("--tol", certify.tol, "bisection tolerance");
    c_certify->add_option("--out", certify.out, "write the machine-readable certificate here");
    add_solver_flags(c_certify, certify.sf);

    GilbertOpts gilbert;
    CLI::App* c_gilbert = app.add_subcommand("gilbert", "distance from a target to the one-bit polytope");
    c_gilbert->add_option("--vectors", gilbert.vectors, "unit vectors defining the target correlations");
    c_gilbert->add_option("--eta", gilbert.eta, "detection efficiency applied to the vector target");
    c_gilbert->add_option("--target-matrix", gilbert.target_matrix, "explicit real target matrix");
    c_gilbert->add_option("--eps", gilbert.eps, "convergence distance");
    c_gilbert->add_option("--imax", gilbert.imax, "iteration cap");
    c_gilbert->add_option("--buffer", gilbert.buffer, "projection buffer size");
    c_gilbert->add_option("--oracle-restarts", gilbert.oracle_restarts, "see-saw restarts per oracle call");
    c_gilbert->add_option("--seed", gilbert.seed, "oracle seed");
    c_gilbert->add_option("--scale", gilbert.scale, "integerization scale for --out-int");
    c_gilbert->add_option("--out", gilbert.out, "write the residual (real matrix)");
    c_gilbert->add_option("--out-int", gilbert.out_int, "write the integerized residual witness");
    c_gilbert->add_option("--log", gilbert.log, "write per-iteration distances as CSV");
    c_gilbert->add_flag("--track-weights", gilbert.track_weights, "maintain the convex-combination ledger");

    GenOpts gen;
    CLI::App* c_gen = app.add_subcommand("gen", "generate example inputs");
    c_gen->add_option("--family", gen.family, "k: the k x 2^(k-1) sign-pattern family");
    c_gen->add_option("--packing", gen.packing, "n: a line packing of n unit vectors");
    c_gen->add_option("--iters", gen.iters, "packing repulsion sweeps");
    c_gen->add_option("--seed", gen.seed, "packing seed");
    c_gen->add_option("--out", gen.out, "output file")->required();

    IntegerizeOpts integerize;
    CLI::App* c_integerize = app.add_subcommand("integerize", "scale and truncate a real matrix");
    c_integerize->add_option("input", integerize.input, "real matrix file")->required();
    c_integerize->add_option("--scale", integerize.scale, "multiplier before truncation");
    c_integerize->add_option("--out", integerize.out, "output witness file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (c_lnorm->parsed()) return cmd_lnorm(lnorm);
        if (c_seesaw->parsed()) return cmd_seesaw(seesaw);
        if (c_qlb->parsed()) return cmd_qlb(qlb);
        if (c_gisin->parsed()) return cmd_gisin(gisin);
        if (c_certify->parsed()) return cmd_certify(certify);
        if (c_gilbert->parsed()) return cmd_gilbert(gilbert);
        if (c_gen->parsed()) return cmd_gen(gen);
        if (c_integerize->parsed()) return cmd_integerize(integerize);
    } catch (const pmq::SizeCapError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const pmq::NoViolationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}
