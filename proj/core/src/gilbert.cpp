#include "pmq/gilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pmq/rng.hpp"

namespace pmq {
namespace {

double frob_dot(const RealMatrix& A, const RealMatrix& B) {
    double s = 0;
    const auto a = A.entries();
    const auto b = B.entries();
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double frob_dist(const RealMatrix& A, const RealMatrix& B) {
    double s = 0;
    const auto a = A.entries();
    const auto b = B.entries();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

bool same_matrix(const RealMatrix& A, const RealMatrix& B) {
    const auto a = A.entries();
    const auto b = B.entries();
    return A.rows() == B.rows() && A.cols() == B.cols() && std::equal(a.begin(), a.end(), b.begin());
}

// Dense solve of A z = rhs (k x k, row-major) by Gaussian elimination with
// partial pivoting; false on a vanishing pivot.
bool solve_dense(std::vector<double> A, std::vector<double> rhs, int k, std::vector<double>& out) {
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(A[static_cast<std::size_t>(r) * k + col]) >
                std::abs(A[static_cast<std::size_t>(piv) * k + col]))
                piv = r;
        if (std::abs(A[static_cast<std::size_t>(piv) * k + col]) < 1e-300) return false;
        if (piv != col) {
            for (int c = col; c < k; ++c)
                std::swap(A[static_cast<std::size_t>(piv) * k + c],
                          A[static_cast<std::size_t>(col) * k + c]);
            std::swap(rhs[static_cast<std::size_t>(piv)], rhs[static_cast<std::size_t>(col)]);
        }
        const double d = A[static_cast<std::size_t>(col) * k + col];
        for (int r = col + 1; r < k; ++r) {
            const double f = A[static_cast<std::size_t>(r) * k + col] / d;
            if (f == 0.0) continue;
            for (int c = col; c < k; ++c)
                A[static_cast<std::size_t>(r) * k + c] -= f * A[static_cast<std::size_t>(col) * k + c];
            rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
        }
    }
    out.assign(static_cast<std::size_t>(k), 0.0);
    for (int r = k - 1; r >= 0; --r) {
        double s = rhs[static_cast<std::size_t>(r)];
        for (int c = r + 1; c < k; ++c) s -= A[static_cast<std::size_t>(r) * k + c] * out[static_cast<std::size_t>(c)];
        out[static_cast<std::size_t>(r)] = s / A[static_cast<std::size_t>(r) * k + r];
    }
    return true;
}

} // namespace

namespace detail {

std::vector<double> solve_simplex_lsq(const std::vector<std::vector<double>>& G,
                                      const std::vector<double>& h) {
    const int p = static_cast<int>(G.size());
    if (p == 0) return {};
    std::vector<double> mu(static_cast<std::size_t>(p), 0.0);
    mu[0] = 1.0;
    if (p == 1) return mu;

    double scale = 1.0;
    for (int j = 0; j < p; ++j) scale = std::max(scale, std::abs(G[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)]));

    std::vector<char> free_(static_cast<std::size_t>(p), 0);
    free_[0] = 1;
    const int max_pass = 6 * p + 30;
    for (int pass = 0; pass < max_pass; ++pass) {
        std::vector<int> idx;
        for (int j = 0; j < p; ++j)
            if (free_[static_cast<std::size_t>(j)]) idx.push_back(j);
        const int k = static_cast<int>(idx.size());

        // Equality-constrained least squares on the support:
        // [G_WW 1; 1^T 0] [z; nu] = [h_W; 1].
        std::vector<double> A(static_cast<std::size_t>(k + 1) * (k + 1), 0.0);
        std::vector<double> rhs(static_cast<std::size_t>(k + 1), 0.0);
        for (int r = 0; r < k; ++r) {
            for (int c = 0; c < k; ++c)
                A[static_cast<std::size_t>(r) * (k + 1) + c] =
                    G[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])]
                     [static_cast<std::size_t>(idx[static_cast<std::size_t>(c)])];
            A[static_cast<std::size_t>(r) * (k + 1) + k] = 1.0;
            A[static_cast<std::size_t>(k) * (k + 1) + r] = 1.0;
            rhs[static_cast<std::size_t>(r)] = h[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])];
        }
        rhs[static_cast<std::size_t>(k)] = 1.0;

        std::vector<double> sol;
        bool ok = solve_dense(A, rhs, k + 1, sol);
        if (!ok) {
            // Duplicate points make the Gram singular; a whisper of ridge
            // splits the weight among them without moving the combination.
            for (int r = 0; r < k; ++r) A[static_cast<std::size_t>(r) * (k + 1) + r] += 1e-10 * scale;
            ok = solve_dense(A, rhs, k + 1, sol);
            if (!ok) break;
        }
        const double nu = sol[static_cast<std::size_t>(k)];

        double zmin = 0.0;
        for (int r = 0; r < k; ++r) zmin = std::min(zmin, sol[static_cast<std::size_t>(r)]);
        if (zmin >= -1e-12) {
            std::fill(mu.begin(), mu.end(), 0.0);
            for (int r = 0; r < k; ++r)
                mu[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])] =
                    std::max(sol[static_cast<std::size_t>(r)], 0.0);
            // Optimal unless some held-out point has negative reduced cost.
            int enter = -1;
            double worst = -1e-9 * scale;
            for (int j = 0; j < p; ++j) {
                if (free_[static_cast<std::size_t>(j)]) continue;
                double g = -h[static_cast<std::size_t>(j)];
                for (int c = 0; c < p; ++c)
                    g += G[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)] * mu[static_cast<std::size_t>(c)];
                const double lam = g + nu;
                if (lam < worst) {
                    worst = lam;
                    enter = j;
                }
            }
            if (enter < 0) break;
            free_[static_cast<std::size_t>(enter)] = 1;
        } else {
            // Step from the current feasible weights toward the solution
            // until the first coordinate hits zero; drop it from the support.
            double alpha = 1.0;
            int blocker = -1;
            for (int r = 0; r < k; ++r) {
                const double z = sol[static_cast<std::size_t>(r)];
                if (z < 0.0) {
                    const double cur = mu[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])];
                    const double a = cur / (cur - z);
                    if (a < alpha) {
                        alpha = a;
                        blocker = idx[static_cast<std::size_t>(r)];
                    }
                }
            }
            for (int r = 0; r < k; ++r) {
                const std::size_t j = static_cast<std::size_t>(idx[static_cast<std::size_t>(r)]);
                mu[j] = std::max(mu[j] + alpha * (sol[static_cast<std::size_t>(r)] - mu[j]), 0.0);
            }
            if (blocker >= 0) {
                mu[static_cast<std::size_t>(blocker)] = 0.0;
                free_[static_cast<std::size_t>(blocker)] = 0;
            }
        }
    }

    double total = 0.0;
    for (double& w : mu) {
        w = std::max(w, 0.0);
        total += w;
    }
    if (total <= 0.0) {
        std::fill(mu.begin(), mu.end(), 0.0);
        mu[0] = 1.0;
    } else {
        for (double& w : mu) w /= total;
    }
    return mu;
}

} // namespace detail

OneBitStrategy gilbert_oracle(const RealMatrix& residual, const GilbertConfig& cfg) {
    return seesaw_l2(residual, cfg.oracle_restarts, cfg.seed).strategy;
}

void gilbert_project(GilbertState& state, const RealMatrix& target, const RealMatrix& new_point,
                     const GilbertConfig& cfg) {
    if (new_point.rows() != target.rows() || new_point.cols() != target.cols() ||
        state.iterate.rows() != target.rows() || state.iterate.cols() != target.cols())
        throw Error("projection shapes do not agree");
    const bool track = cfg.track_weights;

    bool present = false;
    for (const RealMatrix& b : state.buffer)
        if (same_matrix(b, new_point)) {
            present = true;
            break;
        }
    if (!present) {
        state.buffer.push_back(new_point);
        std::size_t slot = 0;
        if (track) {
            state.ledger.vertices.push_back(new_point);
            state.ledger.weights.push_back(0.0);
            slot = state.ledger.vertices.size() - 1;
        }
        state.buffer_vertex.push_back(slot);
        if (static_cast<int>(state.buffer.size()) > std::max(cfg.buffer_size, 1)) {
            state.buffer.erase(state.buffer.begin());
            state.buffer_vertex.erase(state.buffer_vertex.begin());
        }
    }

    // Hull points: slot 0 is the iterate, then the buffer.
    const int p = 1 + static_cast<int>(state.buffer.size());
    auto point = [&](int j) -> const RealMatrix& {
        return j == 0 ? state.iterate : state.buffer[static_cast<std::size_t>(j - 1)];
    };
    std::vector<std::vector<double>> G(static_cast<std::size_t>(p),
                                       std::vector<double>(static_cast<std::size_t>(p), 0.0));
    std::vector<double> h(static_cast<std::size_t>(p), 0.0);
    for (int j = 0; j < p; ++j) {
        h[static_cast<std::size_t>(j)] = frob_dot(point(j), target);
        for (int l = j; l < p; ++l)
            G[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] =
                G[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)] = frob_dot(point(j), point(l));
    }

    // Candidate weight vectors: the active-set solution, the classic
    // two-point segment step toward the newest point, and standing still.
    std::vector<std::vector<double>> candidates;
    candidates.push_back(detail::solve_simplex_lsq(G, h));

    int newest = -1;
    for (int j = 1; j < p; ++j)
        if (same_matrix(point(j), new_point)) newest = j;
    if (newest > 0) {
        const double g00 = G[0][0];
        const double gnn = G[static_cast<std::size_t>(newest)][static_cast<std::size_t>(newest)];
        const double g0n = G[0][static_cast<std::size_t>(newest)];
        const double denom = g00 + gnn - 2.0 * g0n;
        double t = 0.0;
        if (denom > 0.0)
            t = std::clamp((h[static_cast<std::size_t>(newest)] - h[0] + g00 - g0n) / denom, 0.0, 1.0);
        std::vector<double> seg(static_cast<std::size_t>(p), 0.0);
        seg[0] = 1.0 - t;
        seg[static_cast<std::size_t>(newest)] = t;
        candidates.push_back(std::move(seg));
    }
    {
        std::vector<double> keep(static_cast<std::size_t>(p), 0.0);
        keep[0] = 1.0;
        candidates.push_back(std::move(keep));
    }

    const int n = target.rows(), m = target.cols();
    double best_dist = std::numeric_limits<double>::infinity();
    RealMatrix best(n, m);
    std::vector<double> best_mu;
    for (const auto& mu : candidates) {
        RealMatrix C(n, m);
        auto ce = C.entries();
        for (int j = 0; j < p; ++j) {
            const double w = mu[static_cast<std::size_t>(j)];
            if (w == 0.0) continue;
            const auto pe = point(j).entries();
            for (std::size_t i = 0; i < ce.size(); ++i) ce[i] += w * pe[i];
        }
        const double d = frob_dist(target, C);
        if (d < best_dist) {
            best_dist = d;
            best = std::move(C);
            best_mu = mu;
        }
    }

    if (track) {
        for (double& w : state.ledger.weights) w *= best_mu[0];
        for (int j = 1; j < p; ++j)
            state.ledger.weights[state.buffer_vertex[static_cast<std::size_t>(j - 1)]] +=
                best_mu[static_cast<std::size_t>(j)];
    }
    state.iterate = std::move(best);
    state.dist_history.push_back(best_dist);
}

GilbertResult run_gilbert(const RealMatrix& target, const GilbertConfig& cfg) {
    if (!(cfg.epsilon > 0.0)) throw Error("epsilon must be positive");
    if (cfg.i_max < 0) throw Error("iteration cap must be non-negative");
    if (cfg.buffer_size < 1) throw Error("buffer size must be positive");
    if (cfg.oracle_restarts < 1) throw Error("oracle needs at least one restart");

    const int n = target.rows(), m = target.cols();
    GilbertResult res;
    GilbertState& st = res.state;
    st.iterate = RealMatrix(n, m);
    if (cfg.track_weights) {
        // The zero start is the midpoint of the all-(+1) and all-(-1)
        // strategies, which seeds the ledger with an honest decomposition.
        RealMatrix plus(n, m), minus(n, m);
        for (auto& v : plus.entries()) v = 1.0;
        for (auto& v : minus.entries()) v = -1.0;
        st.ledger.vertices = {std::move(plus), std::move(minus)};
        st.ledger.weights = {0.5, 0.5};
    }

    double dist = frob_dist(target, st.iterate);
    for (long long i = 0; i < cfg.i_max && dist > cfg.epsilon; ++i) {
        RealMatrix residual(n, m);
        {
            auto re = residual.entries();
            const auto te = target.entries();
            const auto ie = st.iterate.entries();
            for (std::size_t j = 0; j < re.size(); ++j) re[j] = te[j] - ie[j];
        }
        GilbertConfig oracle_cfg = cfg;
        oracle_cfg.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
        const OneBitStrategy s = gilbert_oracle(residual, oracle_cfg);
        gilbert_project(st, target, strategy_correlation(s), cfg);
        dist = st.dist_history.back();
        ++st.iterations;
    }

    res.final_dist = dist;
    res.residual = RealMatrix(n, m);
    {
        auto re = res.residual.entries();
        const auto te = target.entries();
        const auto ie = st.iterate.entries();
        for (std::size_t j = 0; j < re.size(); ++j) re[j] = te[j] - ie[j];
    }
    return res;
}

} // namespace pmq
