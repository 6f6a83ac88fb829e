#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pmq/matrix.hpp"

namespace pmq {

/// Partition of the n rows into k message groups. Group indices are 0-based
/// here; a canonical assignment has the first occurrences of the group
/// indices appearing in increasing order 0, 1, 2, ...
struct GroupAssignment {
    int k = 0;
    std::vector<int> groups; // length n, values in [0, k)

    bool canonical() const;
};

/// Objective of an assignment: sum over groups of the Manhattan norm of the
/// group's row sum. L_k(M) is the maximum of this over all assignments.
std::int64_t evaluate_assignment(const WitnessMatrix& M, const GroupAssignment& w);

/// Canonicalize by relabeling groups in order of first occurrence.
GroupAssignment canonicalize(const GroupAssignment& w);

struct SolverConfig {
    int threads = 0;             // <= 0: PMQ_THREADS env or hardware concurrency
    int parallel_depth = 3;      // tree depth at which subtrees become tasks
    double skip_fraction = 0.75; // suffixes with >= this fraction of the rows skip the prune test
    std::int64_t guess = 0;      // caller's guessed L_k; sound when <= L_k(M)
};

struct SolveResult {
    std::int64_t value = 0;
    std::optional<GroupAssignment> witness;
    bool guess_dominated = false; // value is the guess and nothing attained it
};

/// Local bound L(M) = max over v in {-1,+1}^n of ||vM||_1, by enumeration.
/// Capped at n <= 30.
std::int64_t local_bound_bruteforce(const WitnessMatrix& M);

/// Local bound together with a maximizing sign vector (v_0 fixed to +1; the
/// first maximizer in Gray-code order). Same n <= 30 cap.
std::pair<std::int64_t, std::vector<std::int8_t>> local_bound_witness(const WitnessMatrix& M);

/// L_k(M) by exhaustive enumeration of all k^n group assignments.
/// Capped at k^n <= 1e8. Independent of the branch-and-bound path.
std::int64_t lk_bruteforce(const WitnessMatrix& M, int k);

/// Cut norm C(M) = max over a in {0,1}^n, b in {0,1}^m of |sum M a b|.
/// The absolute value makes the inequality C <= L <= 4C hold for every sign
/// pattern (an all-negative matrix has no positive submatrix sum).
/// Capped at 2^(n+m) <= 2^26.
std::int64_t cut_norm_bruteforce(const WitnessMatrix& M);

/// Exact L_k(M) by branch and bound over canonical prefixes with suffix-table
/// pruning. Returns the exact value whenever cfg.guess <= L_k(M); a guess
/// above L_k(M) is returned as-is with guess_dominated set. The value is
/// deterministic across thread counts and parallel depths.
SolveResult lk_branch_bound(const WitnessMatrix& M, int k, const SolverConfig& cfg = {});

/// L_k of every row suffix: entry i (0-based) is L_k of rows i..n-1, so
/// entry 0 is L_k(M) and entry n-1 is the Manhattan norm of the last row.
std::vector<std::int64_t> lk_suffix_table(const WitnessMatrix& M, int k,
                                          const SolverConfig& cfg = {});

/// Thread count the solver would actually use for this config.
int resolve_threads(const SolverConfig& cfg);

} // namespace pmq
