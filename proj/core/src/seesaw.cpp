#include "pmq/seesaw.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>

namespace pmq {
namespace {

constexpr long long kMaxIterations = 10000;

bool converged(std::int64_t l, std::int64_t prev) { return l == prev; }
bool converged(double l, double prev) {
    return std::abs(l - prev) <= 1e-12 * std::max(1.0, std::abs(l));
}

// One ascent from a random Alice assignment. T is int64 or double; the
// update rules only ever compare sums against zero, so both share the code.
template <typename T>
T ascend(const T* data, int n, int m, std::mt19937_64& rng, OneBitStrategy& out,
         long long& iterations) {
    std::vector<std::int8_t> a(n), bp(m), bm(m);
    for (int x = 0; x < n; ++x) a[x] = (rng() >> 63) ? std::int8_t{-1} : std::int8_t{1};

    T value = std::numeric_limits<T>::lowest();
    for (long long it = 0; it < kMaxIterations; ++it) {
        // Optimal Bob replies for the current a: sign of the group column sum,
        // with sign(0) = +1 (also covers an empty group).
        for (int y = 0; y < m; ++y) {
            T sp = 0, sm = 0;
            for (int x = 0; x < n; ++x) {
                const T v = data[static_cast<std::size_t>(x) * m + y];
                if (a[x] > 0)
                    sp += v;
                else
                    sm += v;
            }
            bp[y] = sp >= 0 ? 1 : -1;
            bm[y] = sm >= 0 ? 1 : -1;
        }
        // Optimal a for those replies; ties go to +1.
        T l = 0;
        for (int x = 0; x < n; ++x) {
            const T* row = data + static_cast<std::size_t>(x) * m;
            T sp = 0, sm = 0;
            for (int y = 0; y < m; ++y) {
                sp += row[y] * bp[y];
                sm += row[y] * bm[y];
            }
            a[x] = sp >= sm ? 1 : -1;
            l += sp >= sm ? sp : sm;
        }
        ++iterations;
        const bool done = converged(l, value);
        value = l;
        if (done) break;
    }
    out.a = std::move(a);
    out.b_plus = std::move(bp);
    out.b_minus = std::move(bm);
    return value;
}

template <typename T>
SeesawReport run(const T* data, int n, int m, int restarts, std::uint64_t seed) {
    if (restarts < 1) throw Error("seesaw requires at least one restart");
    SeesawReport rep;
    T best = std::numeric_limits<T>::lowest();
    for (int r = 0; r < restarts; ++r) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(r));
        OneBitStrategy s;
        const T v = ascend(data, n, m, rng, s, rep.iterations);
        if (v > best) {
            best = v;
            rep.strategy = std::move(s);
        }
    }
    rep.value = static_cast<double>(best);
    rep.restarts_used = restarts;
    return rep;
}

} // namespace

SeesawReport seesaw_l2(const WitnessMatrix& M, int restarts, std::uint64_t seed) {
    return run(M.entries().data(), M.rows(), M.cols(), restarts, seed);
}

SeesawReport seesaw_l2(const RealMatrix& M, int restarts, std::uint64_t seed) {
    return run(M.entries().data(), M.rows(), M.cols(), restarts, seed);
}

RealMatrix strategy_correlation(const OneBitStrategy& s) {
    const int n = static_cast<int>(s.a.size());
    const int m = static_cast<int>(s.b_plus.size());
    if (s.b_minus.size() != s.b_plus.size()) throw Error("strategy reply sizes differ");
    RealMatrix E(n, m);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < m; ++y)
            E.at(x, y) = static_cast<double>(s.a[x] > 0 ? s.b_plus[y] : s.b_minus[y]);
    return E;
}

std::int64_t strategy_objective(const WitnessMatrix& M, const OneBitStrategy& s) {
    if (static_cast<int>(s.a.size()) != M.rows() ||
        static_cast<int>(s.b_plus.size()) != M.cols() ||
        static_cast<int>(s.b_minus.size()) != M.cols())
        throw Error("strategy shape does not match the witness");
    std::int64_t total = 0;
    for (int x = 0; x < M.rows(); ++x) {
        const auto row = M.row(x);
        const std::int8_t* b = s.a[x] > 0 ? s.b_plus.data() : s.b_minus.data();
        for (int y = 0; y < M.cols(); ++y) total += row[y] * b[y];
    }
    return total;
}

double strategy_objective(const RealMatrix& M, const OneBitStrategy& s) {
    if (static_cast<int>(s.a.size()) != M.rows() ||
        static_cast<int>(s.b_plus.size()) != M.cols() ||
        static_cast<int>(s.b_minus.size()) != M.cols())
        throw Error("strategy shape does not match the witness");
    double total = 0;
    for (int x = 0; x < M.rows(); ++x) {
        const double* row = M.entries().data() + static_cast<std::size_t>(x) * M.cols();
        const std::int8_t* b = s.a[x] > 0 ? s.b_plus.data() : s.b_minus.data();
        for (int y = 0; y < M.cols(); ++y) total += row[y] * b[y];
    }
    return total;
}

} // namespace pmq
