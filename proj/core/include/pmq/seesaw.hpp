#pragma once

#include <cstdint>
#include <vector>

#include "pmq/matrix.hpp"

namespace pmq {

/// Deterministic one-bit protocol: Alice announces a bit a_x per preparation,
/// Bob answers b_plus[y] on +1 and b_minus[y] on -1. All entries are +/-1.
struct OneBitStrategy {
    std::vector<std::int8_t> a;
    std::vector<std::int8_t> b_plus;
    std::vector<std::int8_t> b_minus;
};

struct SeesawReport {
    double value = 0.0; // objective at `strategy`; integral for integer input
    OneBitStrategy strategy;
    long long iterations = 0; // summed over restarts
    int restarts_used = 0;
};

/// Alternating ascent on the one-bit objective: optimal Bob replies for the
/// current a, then optimal a for those replies, until the value repeats.
/// Restart r re-seeds the generator (mt19937_64) with seed + r; the best
/// value wins, ties broken by the lowest restart index. Always a lower
/// bound on L_2(M).
SeesawReport seesaw_l2(const WitnessMatrix& M, int restarts, std::uint64_t seed);
SeesawReport seesaw_l2(const RealMatrix& M, int restarts, std::uint64_t seed);

/// Correlation matrix of a deterministic strategy: row x is b_plus when
/// a_x = +1 and b_minus when a_x = -1.
RealMatrix strategy_correlation(const OneBitStrategy& s);

/// Exact integer objective of a strategy on an integer witness.
std::int64_t strategy_objective(const WitnessMatrix& M, const OneBitStrategy& s);
double strategy_objective(const RealMatrix& M, const OneBitStrategy& s);

} // namespace pmq
