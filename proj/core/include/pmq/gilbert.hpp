#pragma once

#include <cstdint>
#include <vector>

#include "pmq/matrix.hpp"
#include "pmq/seesaw.hpp"

namespace pmq {

struct GilbertConfig {
    double epsilon = 1e-6;      // stop once dist <= epsilon
    long long i_max = 200000;   // hard iteration cap
    int buffer_size = 40;       // most recent oracle points kept for projection
    int oracle_restarts = 20;   // see-saw restarts per oracle call
    std::uint64_t seed = 0;
    bool track_weights = false; // maintain the convex-combination ledger
};

/// The current iterate written as an explicit convex combination of
/// deterministic strategy correlations (only maintained under
/// track_weights; weights are non-negative and sum to 1).
struct VertexLedger {
    std::vector<RealMatrix> vertices;
    std::vector<double> weights;
};

struct GilbertState {
    RealMatrix iterate;                     // E^(i), a point of the one-bit polytope
    std::vector<RealMatrix> buffer;         // sliding window of oracle correlations
    std::vector<std::size_t> buffer_vertex; // ledger slot of each buffer entry
    std::vector<double> dist_history;       // distance to target after each projection
    long long iterations = 0;
    VertexLedger ledger;
};

struct GilbertResult {
    RealMatrix residual; // M = target - final iterate; candidate witness if dist > 0
    double final_dist = 0;
    GilbertState state;
};

/// Heuristic overlap maximizer over deterministic one-bit correlations:
/// a see-saw ascent on the residual (the exact maximum would be L_2).
OneBitStrategy gilbert_oracle(const RealMatrix& residual, const GilbertConfig& cfg);

/// One buffered projection step: push new_point into the buffer, then move
/// the iterate to the closest point (Frobenius distance to target) of the
/// convex hull of {iterate} union buffer. The distance never increases.
void gilbert_project(GilbertState& state, const RealMatrix& target, const RealMatrix& new_point,
                     const GilbertConfig& cfg);

/// Full search for a witness separating the target from the one-bit
/// polytope: alternate oracle calls and buffered projections until the
/// distance drops to epsilon (target inside) or the cap is hit (the
/// remaining residual is the candidate witness).
GilbertResult run_gilbert(const RealMatrix& target, const GilbertConfig& cfg = {});

namespace detail {
/// min ||sum_j mu_j X_j - T||^2 over the unit simplex, given the Gram matrix
/// G_jk = <X_j, X_k> and h_j = <X_j, T>. Active-set method; the returned
/// weights are non-negative and sum to 1.
std::vector<double> solve_simplex_lsq(const std::vector<std::vector<double>>& G,
                                      const std::vector<double>& h);
} // namespace detail

} // namespace pmq
