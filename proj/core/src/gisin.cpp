#include "pmq/gisin.hpp"

#include <cmath>

#include "pmq/rng.hpp"

namespace pmq {
namespace {

constexpr long long kChunk = 1 << 16;

inline int sign_pos(double v) { return v >= 0.0 ? 1 : -1; }

} // namespace

ProtocolSample gg_sample(const Vec3& a, const Vec3& b_vec, const Vec3& lambda, double u) {
    ProtocolSample s;
    s.lambda = lambda;
    s.c = sign_pos(dot(a, lambda));
    const double bl = dot(b_vec, lambda);
    s.b = (u < std::abs(bl)) ? sign_pos(s.c * bl) : 0;
    return s;
}

SimReport simulate_gg(const Vec3& a, const Vec3& b_vec, long long n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw Error("sample count must be positive");
    SimReport rep;
    rep.n_samples = n_samples;
    for (long long base = 0; base < n_samples; base += kChunk) {
        const long long count = std::min(kChunk, n_samples - base);
        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(base / kChunk)));
        for (long long s = 0; s < count; ++s) {
            const Vec3 lambda = random_unit(rng);
            const double u = uniform01(rng);
            const ProtocolSample ps = gg_sample(a, b_vec, lambda, u);
            if (ps.b != 0) {
                ++rep.n_detected;
                rep.sum_b += ps.b;
            }
        }
    }
    const double n = static_cast<double>(n_samples);
    const std::int64_t coarse_sum = rep.sum_b + (n_samples - rep.n_detected); // b=0 -> +1
    rep.detect_rate = static_cast<double>(rep.n_detected) / n;
    rep.e_detected =
        rep.n_detected > 0 ? static_cast<double>(rep.sum_b) / static_cast<double>(rep.n_detected) : 0.0;
    rep.e_coarse = static_cast<double>(coarse_sum) / n;
    rep.se_detect = std::sqrt(std::max(rep.detect_rate * (1.0 - rep.detect_rate), 0.0) / n);
    rep.se_detected =
        rep.n_detected > 0
            ? std::sqrt(std::max(1.0 - rep.e_detected * rep.e_detected, 0.0) /
                        static_cast<double>(rep.n_detected))
            : 0.0;
    rep.se_coarse = std::sqrt(std::max(1.0 - rep.e_coarse * rep.e_coarse, 0.0) / n);
    return rep;
}

RealMatrix gg_matrix(const BlochConfig& cfg, long long n_samples, std::uint64_t seed) {
    validate_config(cfg);
    const int n = static_cast<int>(cfg.a.size());
    const int m = static_cast<int>(cfg.b.size());
    RealMatrix E(n, m);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < m; ++y) {
            const std::uint64_t stream = static_cast<std::uint64_t>(x) * m + y;
            const SimReport rep = simulate_gg(cfg.a[static_cast<std::size_t>(x)],
                                              cfg.b[static_cast<std::size_t>(y)], n_samples,
                                              derive_seed(seed, 0xc0ffee ^ stream));
            E.at(x, y) = rep.e_coarse;
        }
    }
    return E;
}

} // namespace pmq
