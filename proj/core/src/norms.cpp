#include "pmq/norms.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <mutex>
#include <thread>

#include "pmq/seesaw.hpp"

namespace pmq {
namespace {

// Poison for suffix-table entries that are never built; large enough that an
// accidental read can only fail to prune, never prune wrongly.
constexpr std::int64_t kUnknown = std::numeric_limits<std::int64_t>::max() / 4;

std::int64_t manhattan(const std::int64_t* v, int m) {
    std::int64_t s = 0;
    for (int y = 0; y < m; ++y) s += std::abs(v[y]);
    return s;
}

// Largest remaining-row count at which the suffix bound is still consulted:
// the test only runs for suffixes shorter than `frac` of the solve's rows.
int prune_test_limit(double frac, int nr) {
    if (frac <= 0.0) return -1;
    const double cut = frac * nr;
    int lim = static_cast<int>(std::ceil(cut)) - 1;
    return std::min(lim, nr);
}

struct Task {
    std::vector<std::int64_t> sums;  // k*m running group sums
    std::vector<std::int64_t> norms; // k cached group norms
    std::vector<std::int8_t> assign; // group of each handled row
    std::int64_t total = 0;
    int used = 0; // groups opened so far
    int next = 0; // first unhandled row
};

// Exact L_k over row suffixes of one witness, sharing a bottom-up table of
// suffix values used as pruning bounds.
class LkEngine {
public:
    LkEngine(const WitnessMatrix& M, int k, const SolverConfig& cfg)
        : M_(M), n_(M.rows()), m_(M.cols()), k_(k), cfg_(cfg),
          threads_(resolve_threads(cfg)), suffix_(static_cast<std::size_t>(n_) + 1, kUnknown) {
        suffix_[static_cast<std::size_t>(n_)] = 0;
    }

    std::int64_t suffix_value(int i) const { return suffix_[static_cast<std::size_t>(i)]; }

    // Build table entries for rows n-1 down to `down_to`, each an exact solve
    // of the corresponding suffix (deeper entries are already in place).
    void build_table(int down_to) {
        for (int i = n_ - 1; i >= down_to; --i)
            suffix_[static_cast<std::size_t>(i)] = solve_range(i, false, 0).value;
    }

    // L_k of rows [base, n). The incumbent starts at max(guess, warm) - 1,
    // where warm is a deterministic see-saw value, so the search spends its
    // time proving optimality rather than discovering it. Keeping the start
    // one below the warm value means the first optimal leaf in canonical DFS
    // order is still the one recorded as witness.
    SolveResult solve_range(int base, bool want_witness, std::int64_t guess) {
        const int nr = n_ - base;
        test_limit_ = prune_test_limit(cfg_.skip_fraction, nr);

        std::int64_t warm = 0;
        if (nr > 2) warm = warm_value(base);
        const std::int64_t c0 = std::max(guess, warm) - 1;

        Shared sh;
        sh.incumbent.store(c0, std::memory_order_relaxed);
        sh.best = c0;
        sh.want_witness = want_witness;

        Task root;
        root.sums.assign(static_cast<std::size_t>(k_) * m_, 0);
        root.norms.assign(static_cast<std::size_t>(k_), 0);
        root.assign.assign(static_cast<std::size_t>(n_), 0);
        root.next = base;

        if (threads_ > 1 && cfg_.parallel_depth > 0 && nr >= cfg_.parallel_depth + 4) {
            std::vector<Task> tasks;
            collect(root, base + cfg_.parallel_depth, sh, tasks);
            run_pool(tasks, sh);
        } else {
            dfs(root, sh);
        }

        SolveResult res;
        if (sh.witness_found) {
            res.value = sh.best;
            if (want_witness) {
                GroupAssignment w;
                w.k = k_;
                w.groups.assign(sh.best_assign.begin() + base, sh.best_assign.end());
                res.witness = std::move(w);
            }
        } else {
            // Nothing beat the incumbent floor: only possible when the guess
            // dominates the true value (the warm strategy itself is a leaf).
            res.value = guess;
            res.guess_dominated = true;
        }
        return res;
    }

private:
    struct Shared {
        std::atomic<std::int64_t> incumbent{0};
        std::mutex mu;
        std::int64_t best = 0;
        bool witness_found = false;
        bool want_witness = false;
        std::vector<std::int8_t> best_assign;
    };

    const std::int64_t* row(int i) const { return M_.entries().data() + static_cast<std::size_t>(i) * m_; }

    // Exact objective of the best see-saw strategy, mapped onto two groups.
    std::int64_t warm_value(int base) {
        const int nr = n_ - base;
        std::vector<std::int64_t> rows(M_.entries().begin() + static_cast<std::size_t>(base) * m_,
                                       M_.entries().end());
        WitnessMatrix sub(nr, m_, std::move(rows));
        const SeesawReport rep = seesaw_l2(sub, 8, 0x9e3779b97f4a7c15ull);
        GroupAssignment w;
        w.k = k_;
        w.groups.resize(static_cast<std::size_t>(nr));
        for (int x = 0; x < nr; ++x) w.groups[static_cast<std::size_t>(x)] = rep.strategy.a[x] > 0 ? 0 : 1;
        return evaluate_assignment(sub, canonicalize(w));
    }

    void on_leaf(const Task& t, Shared& sh) const {
        const std::int64_t T = t.total;
        if (T <= sh.incumbent.load(std::memory_order_relaxed)) return;
        std::lock_guard<std::mutex> lock(sh.mu);
        if (T <= sh.best) return;
        sh.best = T;
        sh.witness_found = true;
        if (sh.want_witness) sh.best_assign = t.assign;
        sh.incumbent.store(T, std::memory_order_relaxed);
    }

    bool pruned(const Task& t, const Shared& sh) const {
        const int remaining = n_ - t.next;
        return remaining <= test_limit_ &&
               t.total + suffix_[static_cast<std::size_t>(t.next)] <=
                   sh.incumbent.load(std::memory_order_relaxed);
    }

    void dfs(Task& t, Shared& sh) const {
        if (t.next == n_) {
            on_leaf(t, sh);
            return;
        }
        if (pruned(t, sh)) return;
        const int i = t.next;
        const std::int64_t* v = row(i);
        const int limit = std::min(t.used + 1, k_);
        ++t.next;
        for (int g = 0; g < limit; ++g) {
            std::int64_t* sg = t.sums.data() + static_cast<std::size_t>(g) * m_;
            std::int64_t nn = 0;
            for (int y = 0; y < m_; ++y) {
                sg[y] += v[y];
                nn += std::abs(sg[y]);
            }
            const std::int64_t old = t.norms[static_cast<std::size_t>(g)];
            t.norms[static_cast<std::size_t>(g)] = nn;
            t.total += nn - old;
            t.assign[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(g);
            const int old_used = t.used;
            if (g == t.used) ++t.used;

            dfs(t, sh);

            t.used = old_used;
            t.total -= nn - old;
            t.norms[static_cast<std::size_t>(g)] = old;
            for (int y = 0; y < m_; ++y) sg[y] -= v[y];
        }
        --t.next;
    }

    // Enumerate canonical prefixes down to row `split_row`; each becomes an
    // independent task. Complete leaves met on the way are scored directly.
    void collect(Task& t, int split_row, Shared& sh, std::vector<Task>& out) const {
        if (t.next == n_) {
            on_leaf(t, sh);
            return;
        }
        if (t.next >= split_row) {
            out.push_back(t);
            return;
        }
        if (pruned(t, sh)) return;
        const int i = t.next;
        const std::int64_t* v = row(i);
        const int limit = std::min(t.used + 1, k_);
        ++t.next;
        for (int g = 0; g < limit; ++g) {
            std::int64_t* sg = t.sums.data() + static_cast<std::size_t>(g) * m_;
            std::int64_t nn = 0;
            for (int y = 0; y < m_; ++y) {
                sg[y] += v[y];
                nn += std::abs(sg[y]);
            }
            const std::int64_t old = t.norms[static_cast<std::size_t>(g)];
            t.norms[static_cast<std::size_t>(g)] = nn;
            t.total += nn - old;
            t.assign[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(g);
            const int old_used = t.used;
            if (g == t.used) ++t.used;

            collect(t, split_row, sh, out);

            t.used = old_used;
            t.total -= nn - old;
            t.norms[static_cast<std::size_t>(g)] = old;
            for (int y = 0; y < m_; ++y) sg[y] -= v[y];
        }
        --t.next;
    }

    void run_pool(std::vector<Task>& tasks, Shared& sh) const {
        std::atomic<std::size_t> cursor{0};
        auto worker = [&] {
            for (;;) {
                const std::size_t idx = cursor.fetch_add(1, std::memory_order_relaxed);
                if (idx >= tasks.size()) return;
                dfs(tasks[idx], sh);
            }
        };
        const int nthreads = std::min<int>(threads_, static_cast<int>(tasks.size()));
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(std::max(nthreads - 1, 0)));
        for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    }

    const WitnessMatrix& M_;
    int n_, m_, k_;
    SolverConfig cfg_;
    int threads_;
    int test_limit_ = -1;
    std::vector<std::int64_t> suffix_;
};

void check_group_count(int k) {
    if (k < 1) throw Error("group count must be positive");
    if (k > 127) throw Error("group count capped at 127");
}

} // namespace

bool GroupAssignment::canonical() const {
    int seen = 0;
    for (const int g : groups) {
        if (g < 0 || g >= k) return false;
        if (g > seen) return false;
        if (g == seen) ++seen;
    }
    return true;
}

GroupAssignment canonicalize(const GroupAssignment& w) {
    check_group_count(w.k);
    GroupAssignment out;
    out.k = w.k;
    out.groups.resize(w.groups.size());
    std::vector<int> relabel(static_cast<std::size_t>(w.k), -1);
    int next = 0;
    for (std::size_t i = 0; i < w.groups.size(); ++i) {
        const int g = w.groups[i];
        if (g < 0 || g >= w.k) throw Error("group index out of range");
        if (relabel[static_cast<std::size_t>(g)] < 0) relabel[static_cast<std::size_t>(g)] = next++;
        out.groups[i] = relabel[static_cast<std::size_t>(g)];
    }
    return out;
}

std::int64_t evaluate_assignment(const WitnessMatrix& M, const GroupAssignment& w) {
    check_group_count(w.k);
    if (static_cast<int>(w.groups.size()) != M.rows())
        throw Error("assignment length does not match the witness");
    const int m = M.cols();
    std::vector<std::int64_t> sums(static_cast<std::size_t>(w.k) * m, 0);
    for (int x = 0; x < M.rows(); ++x) {
        const int g = w.groups[static_cast<std::size_t>(x)];
        if (g < 0 || g >= w.k) throw Error("group index out of range");
        const auto row = M.row(x);
        std::int64_t* sg = sums.data() + static_cast<std::size_t>(g) * m;
        for (int y = 0; y < m; ++y) sg[y] += row[y];
    }
    std::int64_t total = 0;
    for (int g = 0; g < w.k; ++g) total += manhattan(sums.data() + static_cast<std::size_t>(g) * m, m);
    return total;
}

std::pair<std::int64_t, std::vector<std::int8_t>> local_bound_witness(const WitnessMatrix& M) {
    const int n = M.rows();
    if (n > 30) throw SizeCapError("local bound enumeration is capped at 30 rows");
    const int m = M.cols();
    // Fix v_0 = +1 (global sign flip leaves |vM| unchanged) and walk the rest
    // of the cube in Gray-code order, updating the running combination.
    std::vector<std::int64_t> w(static_cast<std::size_t>(m), 0);
    std::vector<std::int8_t> v(static_cast<std::size_t>(n), 1);
    for (int x = 0; x < n; ++x) {
        const auto row = M.row(x);
        for (int y = 0; y < m; ++y) w[static_cast<std::size_t>(y)] += row[y];
    }
    std::int64_t best = manhattan(w.data(), m);
    std::vector<std::int8_t> best_v = v;
    const std::uint64_t steps = n > 1 ? (std::uint64_t{1} << (n - 1)) : 1;
    for (std::uint64_t g = 1; g < steps; ++g) {
        const int j = std::countr_zero(g) + 1;
        v[static_cast<std::size_t>(j)] = static_cast<std::int8_t>(-v[static_cast<std::size_t>(j)]);
        const auto row = M.row(j);
        const std::int64_t f = 2 * v[static_cast<std::size_t>(j)];
        for (int y = 0; y < m; ++y) w[static_cast<std::size_t>(y)] += f * row[y];
        const std::int64_t val = manhattan(w.data(), m);
        if (val > best) {
            best = val;
            best_v = v;
        }
    }
    return {best, std::move(best_v)};
}

std::int64_t local_bound_bruteforce(const WitnessMatrix& M) {
    return local_bound_witness(M).first;
}

namespace {

void lk_enumerate(const WitnessMatrix& M, int k, int i, std::vector<std::int64_t>& sums,
                  std::vector<std::int64_t>& norms, std::int64_t total, std::int64_t& best) {
    if (i == M.rows()) {
        best = std::max(best, total);
        return;
    }
    const int m = M.cols();
    const auto row = M.row(i);
    for (int g = 0; g < k; ++g) {
        std::int64_t* sg = sums.data() + static_cast<std::size_t>(g) * m;
        std::int64_t nn = 0;
        for (int y = 0; y < m; ++y) {
            sg[y] += row[y];
            nn += std::abs(sg[y]);
        }
        const std::int64_t old = norms[static_cast<std::size_t>(g)];
        norms[static_cast<std::size_t>(g)] = nn;
        lk_enumerate(M, k, i + 1, sums, norms, total + nn - old, best);
        norms[static_cast<std::size_t>(g)] = old;
        for (int y = 0; y < m; ++y) sg[y] -= row[y];
    }
}

} // namespace

std::int64_t lk_bruteforce(const WitnessMatrix& M, int k) {
    check_group_count(k);
    double work = 1.0;
    for (int i = 0; i < M.rows(); ++i) work *= k;
    if (work > 1e8) throw SizeCapError("plain L_k enumeration is capped at k^n <= 1e8");
    std::vector<std::int64_t> sums(static_cast<std::size_t>(k) * M.cols(), 0);
    std::vector<std::int64_t> norms(static_cast<std::size_t>(k), 0);
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    lk_enumerate(M, k, 0, sums, norms, 0, best);
    return best;
}

std::int64_t cut_norm_bruteforce(const WitnessMatrix& M) {
    const int n = M.rows();
    const int m = M.cols();
    if (n + m > 26) throw SizeCapError("cut norm enumeration is capped at 2^(n+m) <= 2^26");
    // For each row subset keep the column sums; the best column subset for
    // |sum| is then either the positive part or the negative part, whichever
    // is larger in magnitude. Row subsets advance in Gray-code order.
    std::vector<std::int64_t> w(static_cast<std::size_t>(m), 0);
    std::vector<std::int8_t> in(static_cast<std::size_t>(n), 0);
    std::int64_t best = 0; // empty selection
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t g = 1; g < subsets; ++g) {
        const int j = std::countr_zero(g);
        const auto row = M.row(j);
        const std::int64_t f = in[static_cast<std::size_t>(j)] ? -1 : 1;
        in[static_cast<std::size_t>(j)] = static_cast<std::int8_t>(!in[static_cast<std::size_t>(j)]);
        for (int y = 0; y < m; ++y) w[static_cast<std::size_t>(y)] += f * row[y];
        std::int64_t pos = 0, neg = 0;
        for (int y = 0; y < m; ++y) {
            const std::int64_t wy = w[static_cast<std::size_t>(y)];
            if (wy > 0) pos += wy;
            else neg -= wy;
        }
        best = std::max({best, pos, neg});
    }
    return best;
}

SolveResult lk_branch_bound(const WitnessMatrix& M, int k, const SolverConfig& cfg) {
    check_group_count(k);
    if (k < 2) throw Error("branch-and-bound solves k >= 2; k = 1 is the plain matrix norm");
    if (cfg.skip_fraction < 0.0 || cfg.skip_fraction > 1.0)
        throw Error("skip fraction must lie in [0, 1]");
    if (cfg.guess < 0) throw Error("guess must be non-negative");
    if (M.rows() > 127) throw SizeCapError("branch-and-bound is capped at 127 rows");
    LkEngine eng(M, k, cfg);
    const int lim = prune_test_limit(cfg.skip_fraction, M.rows());
    if (lim >= 1) eng.build_table(M.rows() - lim);
    return eng.solve_range(0, true, cfg.guess);
}

std::vector<std::int64_t> lk_suffix_table(const WitnessMatrix& M, int k, const SolverConfig& cfg) {
    check_group_count(k);
    if (k < 2) throw Error("branch-and-bound solves k >= 2; k = 1 is the plain matrix norm");
    if (cfg.skip_fraction < 0.0 || cfg.skip_fraction > 1.0)
        throw Error("skip fraction must lie in [0, 1]");
    if (M.rows() > 127) throw SizeCapError("branch-and-bound is capped at 127 rows");
    LkEngine eng(M, k, cfg);
    eng.build_table(0);
    std::vector<std::int64_t> out(static_cast<std::size_t>(M.rows()));
    for (int i = 0; i < M.rows(); ++i) out[static_cast<std::size_t>(i)] = eng.suffix_value(i);
    return out;
}

int resolve_threads(const SolverConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("PMQ_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0 && v <= 4096) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

} // namespace pmq
