#pragma once

// Shared fixtures for the unit and acceptance suites: tiny matrix builders,
// the seeded random corpus, and integer reference identities.

#include <cstdint>
#include <random>
#include <vector>

#include "pmq/matrix.hpp"

namespace testutil {

inline pmq::WitnessMatrix make(int n, int m, std::vector<std::int64_t> e) {
    return pmq::WitnessMatrix(n, m, std::move(e));
}

/// The 2 x 2 sign-pattern matrix [[1, 1], [1, -1]].
inline pmq::WitnessMatrix chsh() { return make(2, 2, {1, 1, 1, -1}); }

/// Seeded random witness with entries uniform in [lo, hi].
inline pmq::WitnessMatrix random_matrix(int n, int m, std::int64_t lo, std::int64_t hi,
                                        std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> dist(lo, hi);
    std::vector<std::int64_t> e(static_cast<std::size_t>(n) * m);
    for (auto& v : e) v = dist(rng);
    return pmq::WitnessMatrix(n, m, std::move(e));
}

/// Rows of A followed by rows of B (same column count).
inline pmq::WitnessMatrix stack_rows(const pmq::WitnessMatrix& A, const pmq::WitnessMatrix& B) {
    std::vector<std::int64_t> e(A.entries().begin(), A.entries().end());
    e.insert(e.end(), B.entries().begin(), B.entries().end());
    return pmq::WitnessMatrix(A.rows() + B.rows(), A.cols(), std::move(e));
}

inline pmq::WitnessMatrix add(const pmq::WitnessMatrix& A, const pmq::WitnessMatrix& B) {
    std::vector<std::int64_t> e(A.entries().begin(), A.entries().end());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += B.entries()[i];
    return pmq::WitnessMatrix(A.rows(), A.cols(), std::move(e));
}

inline pmq::WitnessMatrix scale(const pmq::WitnessMatrix& A, std::int64_t t) {
    std::vector<std::int64_t> e(A.entries().begin(), A.entries().end());
    for (auto& v : e) v *= t;
    return pmq::WitnessMatrix(A.rows(), A.cols(), std::move(e));
}

inline std::int64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace testutil
