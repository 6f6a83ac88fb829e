#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "pmq/bloch.hpp"
#include "pmq/matrix.hpp"
#include "pmq/norms.hpp"

namespace pmq {

/// Published reference values, used only for comparison lines in reports:
/// the known window for the qubit/one-bit ratio constant (tied to the rank-3
/// Grothendieck constant), the window for the detection-ratio constant, and
/// the best known upper bound on the critical detection efficiency.
struct ReferenceBounds {
    double kg3_lower = 1.4367;
    double kg3_upper = 1.4546;
    double kd_lower = 1.5682;
    double kd_upper = 2.0;
    double eta_crit_upper = 0.6377;
};

/// Everything the pipeline establishes about one witness matrix. q_lb comes
/// with a certified upper bound q_err on its absolute floating-point
/// evaluation error; every strict claim subtracts that bound first.
struct Certificate {
    int n = 0, m = 0;          // witness dimensions
    std::int64_t L2_exact = 0; // exact one-bit bound (branch and bound, k = 2)
    std::int64_t S = 0;        // entry sum
    double q_lb = 0.0;         // qubit value attained by `config`
    double q_err = 0.0;        // certified bound on the rounding error in q_lb
    std::int64_t q_int = 0;    // floor(q_lb - q_err): an integer the qubit value provably exceeds

    double ratio_KPM = std::numeric_limits<double>::quiet_NaN();      // q_lb / L2
    double ratio_KD = std::numeric_limits<double>::quiet_NaN();       // (q_lb - S) / (L2 - S)
    double eta_certified = std::numeric_limits<double>::quiet_NaN();  // (L2 - S) / (q_lb - S)
    double p_certified = std::numeric_limits<double>::quiet_NaN();    // L2 / q_lb
    bool kd_defined = false; // false when L2 = S (detection ratio undefined)
    bool margin_ok = false;  // q_lb - q_err > L2 strictly

    BlochConfig config; // the maximizing configuration found
    long long alternation_iterations = 0;
};

struct ViolationReport {
    bool violated = false;  // lhs exceeds the bound by more than the error
    double lhs = 0.0;       // sum M_{x,y} E_{x,y}, compensated
    double err_bound = 0.0; // certified rounding-error bound on lhs
    double margin = 0.0;    // lhs - L2 - err_bound
};

/// Full pipeline on one witness: exact L_2 (k = 2 branch and bound), the
/// entry sum, and an achievable qubit value from alternating maximization.
/// With no initial configuration the alternation starts from the exact local
/// bound witness embedded on one axis (rows <= 30) plus ten seeded random
/// restarts; the best value wins. Throws when the exact solve is dominated
/// by its guess, since no certificate can be issued without the exact bound.
Certificate certify_witness(const WitnessMatrix& M,
                            const std::optional<BlochConfig>& init = std::nullopt,
                            const SolverConfig& solver_cfg = {}, std::uint64_t seed = 0);

/// Strict test of sum M.E > L2 with worst-case rounding subtracted.
ViolationReport check_violation(const WitnessMatrix& M, const RealMatrix& E_eta,
                                std::int64_t L2_exact);

/// Smallest detection efficiency (within tol) at which the noisy family of
/// the given configuration still violates the one-bit bound, found by
/// bisection on check_violation. Pass L2_exact when already known to skip
/// the exact solve. Throws NoViolationError when even eta = 1 fails.
double eta_bisect(const WitnessMatrix& M, const BlochConfig& cfg, double tol = 1e-6,
                  const SolverConfig& solver_cfg = {},
                  std::optional<std::int64_t> L2_exact = std::nullopt);

/// Human-readable certificate, with comparison lines against the published
/// reference values.
std::string certificate_report(const Certificate& c, const ReferenceBounds& ref = {});

/// Machine-readable "key value" lines: integers as decimals, reals with 12
/// significant digits ("nan" when undefined), booleans as 0/1, plus the
/// exact rational forms (q_int - S)/(L2 - S) and q_int/L2.
std::string certificate_keyvalue(const Certificate& c);

} // namespace pmq
