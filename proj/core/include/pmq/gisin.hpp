#pragma once

#include <cstdint>

#include "pmq/bloch.hpp"
#include "pmq/matrix.hpp"

namespace pmq {

/// One round of the one-bit protocol: shared direction lambda, Alice's
/// message c = sign(a.lambda), Bob's raw outcome b in {-1, 0, +1} where 0
/// means "no detection" (later coarse-grained to +1).
struct ProtocolSample {
    Vec3 lambda;
    int c = 0;
    int b = 0;
};

/// Pure protocol step for a given lambda and detection draw u in [0, 1):
/// detected iff u < |b_vec.lambda|, and then b = sign(c * (b_vec.lambda)).
/// sign(0) = +1 throughout.
ProtocolSample gg_sample(const Vec3& a, const Vec3& b_vec, const Vec3& lambda, double u);

struct SimReport {
    long long n_samples = 0;
    long long n_detected = 0;
    std::int64_t sum_b = 0; // sum of b over detected rounds

    double detect_rate = 0;
    double e_detected = 0; // mean outcome conditioned on detection -> a.b
    double e_coarse = 0;   // mean after mapping b=0 to +1 -> (a.b+1)/2
    double se_detect = 0;
    double se_detected = 0;
    double se_coarse = 0;
};

/// Monte Carlo estimate of the protocol statistics. Samples are drawn in
/// fixed chunks of 65536 rounds, each chunk re-seeded from (seed, chunk), so
/// the report is reproducible and independent of how chunks are scheduled.
SimReport simulate_gg(const Vec3& a, const Vec3& b_vec, long long n_samples, std::uint64_t seed);

/// Coarse-grained expectation estimate for every (a_x, b_y) pair of the
/// configuration; entry (x, y) uses its own stream seed derived from
/// (seed, x*m + y).
RealMatrix gg_matrix(const BlochConfig& cfg, long long n_samples, std::uint64_t seed);

} // namespace pmq
