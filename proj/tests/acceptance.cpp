// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails. Criterion 9 needs the externally published 70x70 dataset;
// point PMQ_W70 at the witness file and PMQ_SLOANE70 at the vector file to
// enable it, otherwise it reports SKIP.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "pmq/bloch.hpp"
#include "pmq/certify.hpp"
#include "pmq/errors.hpp"
#include "pmq/gilbert.hpp"
#include "pmq/gisin.hpp"
#include "pmq/matrix.hpp"
#include "pmq/norms.hpp"
#include "pmq/rng.hpp"
#include "pmq/seesaw.hpp"

using namespace pmq;

namespace {

int failures = 0;

void report(int index, const char* name, bool ok, const std::string& detail = "") {
    std::printf("criterion %2d %-4s %s%s%s\n", index, ok ? "PASS" : "FAIL", name,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void report_skip(int index, const char* name, const std::string& why) {
    std::printf("criterion %2d SKIP %s -- %s\n", index, name, why.c_str());
    std::fflush(stdout);
}

const double kRoot2 = std::sqrt(2.0);

BlochConfig doubled_chsh_optimal() {
    BlochConfig cfg;
    cfg.a = {{1 / kRoot2, 0, 1 / kRoot2},
             {-1 / kRoot2, 0, 1 / kRoot2},
             {-1 / kRoot2, 0, -1 / kRoot2},
             {1 / kRoot2, 0, -1 / kRoot2}};
    cfg.b = {{0, 0, 1}, {1, 0, 0}};
    return cfg;
}

// The shared random corpus for criteria 3 and 4: 200 seeded matrices with
// n, m <= 10 and entries in [-9, 9].
WitnessMatrix corpus_matrix(int index) {
    std::mt19937_64 rng(derive_seed(0xacce97, static_cast<std::uint64_t>(index)));
    const int n = 1 + static_cast<int>(rng() % 10);
    const int m = 1 + static_cast<int>(rng() % 10);
    std::vector<std::int64_t> e(static_cast<std::size_t>(n) * m);
    for (auto& v : e) v = static_cast<std::int64_t>(rng() % 19) - 9;
    return WitnessMatrix(n, m, std::move(e));
}

// --------------------------------------------------------------------------

void criterion_1_golden() {
    bool ok = local_bound_bruteforce(testutil::chsh()) == 2;
    ok = ok && lk_branch_bound(testutil::chsh(), 2).value == 4;
    const WitnessMatrix ext = testutil::make(3, 2, {1, 1, 1, -1, -1, 0});
    ok = ok && lk_branch_bound(ext, 2).value == 3;
    ok = ok && lk_branch_bound(make_doubled(testutil::chsh()), 2).value == 4;
    report(1, "exact golden values", ok);
}

void criterion_2_family() {
    bool ok = true;
    std::string detail;
    for (int k = 1; k <= 5; ++k) {
        const WitnessMatrix M = gen_family(k);
        const std::int64_t local = k * testutil::binom(k - 1, (k - 1) / 2);
        const std::int64_t lk = static_cast<std::int64_t>(k) << (k - 1);
        const std::int64_t got_local = local_bound_bruteforce(M);
        const std::int64_t got_lk = k == 1 ? lk_bruteforce(M, 1) : lk_branch_bound(M, k).value;
        if (got_local != local || got_lk != lk) {
            ok = false;
            detail = "k=" + std::to_string(k) + " got L=" + std::to_string(got_local) +
                     " L_k=" + std::to_string(got_lk);
        }
    }
    report(2, "family formulas k=1..5", ok, detail);
}

void criterion_3_oracle_equivalence() {
    int mismatches = 0;
    for (int i = 0; i < 200; ++i) {
        const WitnessMatrix M = corpus_matrix(i);
        if (lk_branch_bound(M, 2).value != lk_bruteforce(M, 2)) ++mismatches;
        if (M.rows() <= 8 && lk_branch_bound(M, 3).value != lk_bruteforce(M, 3)) ++mismatches;
    }
    report(3, "oracle equivalence on 200 random matrices", mismatches == 0,
           mismatches ? std::to_string(mismatches) + " mismatches" : "");
}

void criterion_4_norm_lemmas() {
    int violations = 0;
    for (int i = 0; i < 200; ++i) {
        const WitnessMatrix M = corpus_matrix(i);
        const std::int64_t l = local_bound_bruteforce(M);
        const std::int64_t l2 = lk_bruteforce(M, 2);
        const std::int64_t l3 = lk_bruteforce(M, 3);
        if (!(l <= l2 && l2 <= l3 && l3 <= 3 * l)) ++violations;
        for (std::int64_t t = -3; t <= 3; ++t)
            if (lk_bruteforce(testutil::scale(M, t), 2) != std::llabs(t) * l2) ++violations;
        if (lk_branch_bound(make_doubled(M), 2).value != 2 * l) ++violations;
        const std::int64_t cut = cut_norm_bruteforce(M);
        if (!(cut <= l2 && l2 <= 8 * cut)) ++violations;
    }
    // Triangle inequality and concatenation on 100 shape-matched pairs.
    for (int i = 0; i < 100; ++i) {
        const WitnessMatrix A = testutil::random_matrix(6, 6, -9, 9, derive_seed(0x7a1, i));
        const WitnessMatrix B = testutil::random_matrix(6, 6, -9, 9, derive_seed(0x7b2, i));
        const std::int64_t la = lk_bruteforce(A, 2);
        const std::int64_t lb = lk_bruteforce(B, 2);
        if (lk_bruteforce(testutil::add(A, B), 2) > la + lb) ++violations;
        if (lk_bruteforce(testutil::stack_rows(A, B), 2) > la + lb) ++violations;
    }
    report(4, "norm lemma property suite", violations == 0,
           violations ? std::to_string(violations) + " violations" : "");
}

void criterion_5_determinism() {
    const int hw = resolve_threads(SolverConfig{});
    int mismatches = 0;
    for (int i = 0; i < 20; ++i) {
        const WitnessMatrix M = testutil::random_matrix(20, 20, -9, 9, derive_seed(0xde7e, i));
        SolverConfig ref_cfg;
        ref_cfg.threads = 1;
        ref_cfg.parallel_depth = 0;
        const std::int64_t reference = lk_branch_bound(M, 2, ref_cfg).value;
        for (const int threads : {1, 2, hw}) {
            for (const int depth : {0, 3, 6}) {
                SolverConfig cfg;
                cfg.threads = threads;
                cfg.parallel_depth = depth;
                if (lk_branch_bound(M, 2, cfg).value != reference) ++mismatches;
            }
        }
    }
    report(5, "value determinism across threads and depths", mismatches == 0,
           mismatches ? std::to_string(mismatches) + " mismatches" : "");
}

void criterion_6_gisin_monte_carlo() {
    std::mt19937_64 rng(derive_seed(0x6151, 0));
    int violations = 0;
    std::string detail;
    for (int i = 0; i < 20; ++i) {
        const Vec3 a = random_unit(rng);
        const Vec3 b = random_unit(rng);
        const double ab = dot(a, b);
        const SimReport r = simulate_gg(a, b, 1000000, derive_seed(0x6151, i + 1));
        const bool ok = std::abs(r.e_coarse - (ab + 1) / 2) < 0.005 &&
                        std::abs(r.e_detected - ab) < 0.01 && r.detect_rate >= 0.497 &&
                        r.detect_rate <= 0.503;
        if (!ok) {
            ++violations;
            detail = "pair " + std::to_string(i);
        }
    }
    report(6, "protocol Monte Carlo tolerances", violations == 0, detail);
}

void criterion_7_certificate_closed_form() {
    const WitnessMatrix D = make_doubled(testutil::chsh());
    const Certificate cert = certify_witness(D);
    bool ok = std::abs(cert.ratio_KD - kRoot2) < 1e-6;
    ok = ok && std::abs(cert.eta_certified - 0.707107) < 1e-5;
    const RealMatrix E = correlation_matrix(doubled_chsh_optimal());
    ok = ok && check_violation(D, noisy_family(E, 0.75), cert.L2_exact).violated;
    ok = ok && !check_violation(D, noisy_family(E, 0.70), cert.L2_exact).violated;
    report(7, "doubled 2x2 certificate closed forms", ok,
           "ratio_KD=" + std::to_string(cert.ratio_KD) +
               " eta=" + std::to_string(cert.eta_certified));
}

void criterion_8_gilbert_pilot() {
    const std::vector<Vec3> vs = gen_packing(20, 1);
    BlochConfig cfg;
    cfg.a = vs;
    cfg.b = vs;
    const RealMatrix target = noisy_family(correlation_matrix(cfg), 0.80);

    GilbertConfig gc;
    gc.seed = 8;
    gc.i_max = 2000;
    gc.epsilon = 1e-6;
    const GilbertResult res = run_gilbert(target, gc);

    bool monotone = true;
    for (std::size_t i = 1; i < res.state.dist_history.size(); ++i)
        monotone = monotone && res.state.dist_history[i] <= res.state.dist_history[i - 1] + 1e-12;

    const WitnessMatrix W = integerize(res.residual, 1000);
    SolverConfig sc;
    sc.guess = std::max<std::int64_t>(std::llround(seesaw_l2(W, 8, 1).value), 0);
    const std::int64_t l2 = lk_branch_bound(W, 2, sc).value;
    const ViolationReport vr = check_violation(W, target, l2);

    const bool ok = monotone && res.final_dist > 0 && vr.violated && vr.margin > 0;
    report(8, "separation pilot on a 20-line packing", ok,
           "dist=" + std::to_string(res.final_dist) + " margin=" + std::to_string(vr.margin));
}

void criterion_9_published_dataset() {
    const char* w70 = std::getenv("PMQ_W70");
    const char* sloane = std::getenv("PMQ_SLOANE70");
    if (!w70 || !sloane) {
        report_skip(9, "published 70x70 dataset", "set PMQ_W70 and PMQ_SLOANE70 to enable");
        return;
    }
    try {
        WitnessMatrix M = [&] {
            try {
                return load_matrix(w70);
            } catch (const ParseError&) {
                return load_matrix(w70, 70, 70); // headerless grid fallback
            }
        }();
        const std::vector<Vec3> vs = load_vectors(sloane);
        BlochConfig cfg;
        cfg.a = vs;
        cfg.b = vs;

        const std::int64_t S = sum_S(M);
        SolverConfig sc;
        sc.guess = std::max<std::int64_t>(std::llround(seesaw_l2(M, 30, 3).value), 0);
        const std::int64_t l2 = lk_branch_bound(M, 2, sc).value;
        const Certificate cert = certify_witness(M, cfg, SolverConfig{}, 0);

        double q_raw = 0;
        const RealMatrix E = correlation_matrix(cfg);
        for (int x = 0; x < M.rows(); ++x)
            for (int y = 0; y < M.cols(); ++y)
                q_raw += static_cast<double>(M.at(x, y)) * E.at(x, y);

        bool ok = l2 == 412667 && S == 194369;
        ok = ok && std::abs(q_raw - 5.3672235e5) < 0.5;
        ok = ok && cert.ratio_KD > 1.5682 && cert.eta_certified <= 0.6378;
        report(9, "published 70x70 dataset", ok,
               "L2=" + std::to_string(l2) + " S=" + std::to_string(S) +
                   " ratio_KD=" + std::to_string(cert.ratio_KD));
    } catch (const std::exception& e) {
        report(9, "published 70x70 dataset", false, e.what());
    }
}

void criterion_10_performance_smoke() {
    std::mt19937_64 rng(derive_seed(0x40f0, 0));
    std::vector<std::int64_t> e(1600);
    for (auto& v : e) v = (rng() & 1) ? 1 : -1;
    const WitnessMatrix M(40, 40, std::move(e));

    const auto start = std::chrono::steady_clock::now();
    SolverConfig cfg;
    cfg.guess = std::max<std::int64_t>(std::llround(seesaw_l2(M, 30, 7).value), 0);
    const SolveResult res = lk_branch_bound(M, 2, cfg);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const bool ok = seconds < 600.0 && res.value > 0;
    report(10, "40x40 exact bound under ten minutes", ok,
           "L2=" + std::to_string(res.value) + " in " + std::to_string(seconds) + "s");
}

} // namespace

int main() {
    criterion_1_golden();
    criterion_2_family();
    criterion_3_oracle_equivalence();
    criterion_4_norm_lemmas();
    criterion_5_determinism();
    criterion_6_gisin_monte_carlo();
    criterion_7_certificate_closed_form();
    criterion_8_gilbert_pilot();
    criterion_9_published_dataset();
    criterion_10_performance_smoke();
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
