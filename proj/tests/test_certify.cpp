#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <string>

#include "helpers.hpp"
#include "pmq/bloch.hpp"
#include "pmq/certify.hpp"
#include "pmq/errors.hpp"
#include "pmq/seesaw.hpp"

using namespace pmq;
using testutil::chsh;

namespace {

const double kRoot2 = std::sqrt(2.0);

BlochConfig chsh_optimal() {
    BlochConfig cfg;
    cfg.a = {{1 / kRoot2, 0, 1 / kRoot2}, {-1 / kRoot2, 0, 1 / kRoot2}};
    cfg.b = {{0, 0, 1}, {1, 0, 0}};
    return cfg;
}

BlochConfig doubled_chsh_optimal() {
    BlochConfig cfg = chsh_optimal();
    cfg.a.push_back({-1 / kRoot2, 0, -1 / kRoot2});
    cfg.a.push_back({1 / kRoot2, 0, -1 / kRoot2});
    return cfg;
}

} // namespace

TEST_CASE("doubled 2x2 certificate hits the closed forms") {
    const WitnessMatrix D = make_doubled(chsh());
    const Certificate cert = certify_witness(D);

    CHECK(cert.L2_exact == 4);
    CHECK(cert.S == 0);
    CHECK(cert.q_lb == doctest::Approx(4 * kRoot2).epsilon(1e-9));
    CHECK(cert.kd_defined);
    CHECK(cert.ratio_KD == doctest::Approx(kRoot2).epsilon(1e-6));
    CHECK(cert.ratio_KPM == doctest::Approx(kRoot2).epsilon(1e-6));
    CHECK(std::abs(cert.eta_certified - 0.707107) < 1e-5);
    CHECK(cert.p_certified == doctest::Approx(1 / kRoot2).epsilon(1e-6));
    CHECK(cert.margin_ok);
    CHECK(cert.q_int == 5); // floor(4*sqrt(2) - err)
    CHECK(cert.q_err > 0);
    CHECK(cert.q_err < 1e-9);
    CHECK(cert.alternation_iterations >= 1);

    // The identities the numbers must satisfy exactly.
    CHECK(cert.eta_certified == doctest::Approx(1.0 / cert.ratio_KD).epsilon(1e-12));
    CHECK(cert.p_certified == doctest::Approx(1.0 / cert.ratio_KPM).epsilon(1e-12));
}

TEST_CASE("explicit configurations are honored and renormalized") {
    const WitnessMatrix D = make_doubled(chsh());
    BlochConfig init = doubled_chsh_optimal();
    for (auto& v : init.a) v = 1.0000000001 * v; // tiny drift: must be renormalized, not rejected
    const Certificate cert = certify_witness(D, init);
    CHECK(cert.q_lb == doctest::Approx(4 * kRoot2).epsilon(1e-12));
    CHECK(cert.margin_ok);
}

TEST_CASE("plain 2x2 witness has no one-bit advantage") {
    const Certificate cert = certify_witness(chsh());
    CHECK(cert.L2_exact == 4);
    CHECK(cert.S == 2);
    CHECK(cert.q_lb == doctest::Approx(2 * kRoot2).epsilon(1e-6));
    CHECK_FALSE(cert.margin_ok);
    CHECK(cert.ratio_KD == doctest::Approx((2 * kRoot2 - 2) / 2).epsilon(1e-6));
    CHECK(cert.ratio_KD < 1.0);

    CHECK_THROWS_AS(eta_bisect(chsh(), cert.config, 1e-6, SolverConfig{}, cert.L2_exact),
                    NoViolationError);
}

TEST_CASE("violation check on the noisy doubled family") {
    const WitnessMatrix D = make_doubled(chsh());
    const RealMatrix E = correlation_matrix(doubled_chsh_optimal());

    const ViolationReport at75 = check_violation(D, noisy_family(E, 0.75), 4);
    CHECK(at75.violated);
    CHECK(at75.lhs == doctest::Approx(0.75 * 4 * kRoot2).epsilon(1e-12));
    CHECK(at75.margin > 0.2);

    const ViolationReport at70 = check_violation(D, noisy_family(E, 0.70), 4);
    CHECK_FALSE(at70.violated);
    CHECK(at70.lhs == doctest::Approx(0.70 * 4 * kRoot2).epsilon(1e-12));

    // A strategy's own correlation sits exactly on the bound: not strict.
    const WitnessMatrix M = testutil::random_matrix(5, 4, -9, 9, 12);
    const SeesawReport rep = seesaw_l2(M, 8, 0);
    const ViolationReport own =
        check_violation(M, strategy_correlation(rep.strategy), std::llround(rep.value));
    CHECK_FALSE(own.violated);
    CHECK(own.lhs == doctest::Approx(rep.value).epsilon(1e-12));

    RealMatrix wrong(2, 2);
    CHECK_THROWS_AS(check_violation(D, wrong, 4), Error);
}

TEST_CASE("bisection brackets the critical efficiency") {
    const WitnessMatrix D = make_doubled(chsh());
    const double eta = eta_bisect(D, doubled_chsh_optimal(), 1e-7, SolverConfig{}, 4);
    CHECK(eta == doctest::Approx(1 / kRoot2).epsilon(1e-5));

    // Against the closed form (L2 - S) / (q - S).
    const Certificate cert = certify_witness(D);
    CHECK(std::abs(eta - cert.eta_certified) < 1e-5);

    CHECK_THROWS_AS(eta_bisect(D, doubled_chsh_optimal(), 0.0, SolverConfig{}, 4), Error);
}

TEST_CASE("doubling identity links the certificate to the local bound") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const WitnessMatrix M = testutil::random_matrix(4, 4, -9, 9, seed * 23);
        const Certificate cert = certify_witness(make_doubled(M), std::nullopt, SolverConfig{}, seed);
        CHECK(cert.L2_exact == 2 * local_bound_bruteforce(M));
        CHECK(cert.S == 0);
        // Achievability never exceeds the absolute ceiling.
        std::int64_t abs_sum = 0;
        for (const std::int64_t v : M.entries()) abs_sum += std::abs(v);
        CHECK(cert.q_lb <= 2.0 * static_cast<double>(abs_sum) + 1e-9);
    }
}

TEST_CASE("degenerate witnesses") {
    // All-ones: the qubit value, one-bit bound, and entry sum coincide.
    const WitnessMatrix ones = testutil::make(2, 2, {1, 1, 1, 1});
    const Certificate cert = certify_witness(ones);
    CHECK(cert.L2_exact == 4);
    CHECK(cert.S == 4);
    CHECK_FALSE(cert.kd_defined);
    CHECK_FALSE(cert.margin_ok);
    CHECK(std::isnan(cert.ratio_KD));
    CHECK(cert.q_lb == doctest::Approx(4.0).epsilon(1e-9));

    // A dominated guess cannot be certified.
    SolverConfig cfg;
    cfg.guess = 100;
    CHECK_THROWS_AS(certify_witness(chsh(), std::nullopt, cfg), Error);
}

TEST_CASE("reports carry the documented keys and rational forms") {
    const Certificate cert = certify_witness(make_doubled(chsh()));
    const std::string kv = certificate_keyvalue(cert);
    for (const char* key : {"rows ", "cols ", "L2 4", "S 0", "q_lb ", "q_err ", "q_int 5",
                            "ratio_kpm ", "ratio_kd ", "eta_certified ", "p_certified ",
                            "margin_ok 1", "kd_defined 1", "kpm_rational 5/4", "kd_rational 5/4",
                            "alternation_iterations "})
        CHECK(kv.find(key) != std::string::npos);

    const std::string report = certificate_report(cert);
    CHECK(report.find("4 x 2 witness") != std::string::npos);
    CHECK(report.find("L2 exact") != std::string::npos);
    CHECK(report.find("0.6377") != std::string::npos); // reference comparison line

    const Certificate flat = certify_witness(testutil::make(2, 2, {1, 1, 1, 1}));
    const std::string kv2 = certificate_keyvalue(flat);
    CHECK(kv2.find("kd_defined 0") != std::string::npos);
    CHECK(kv2.find("ratio_kd nan") != std::string::npos);
    CHECK(certificate_report(flat).find("undefined") != std::string::npos);
}
