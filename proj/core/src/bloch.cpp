#include "pmq/bloch.hpp"

#include <cstdio>
#include <fstream>

#include "pmq/rng.hpp"
#include "textio.hpp"

namespace pmq {

Vec3 normalized(const Vec3& v) {
    const double n = norm(v);
    if (n == 0.0) throw Error("cannot normalize the zero vector");
    return (1.0 / n) * v;
}

void validate_config(const BlochConfig& cfg) {
    if (cfg.a.empty() || cfg.b.empty()) throw Error("configuration has an empty vector set");
    for (const auto* side : {&cfg.a, &cfg.b}) {
        for (const Vec3& v : *side) {
            if (std::abs(norm(v) - 1.0) > 1e-9) {
                throw Error("configuration vector is not unit length");
            }
        }
    }
}

RealMatrix correlation_matrix(const BlochConfig& cfg) {
    validate_config(cfg);
    const int n = static_cast<int>(cfg.a.size());
    const int m = static_cast<int>(cfg.b.size());
    RealMatrix E(n, m);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < m; ++y) E.at(x, y) = dot(cfg.a[static_cast<std::size_t>(x)],
                                                     cfg.b[static_cast<std::size_t>(y)]);
    return E;
}

RealMatrix noisy_family(const RealMatrix& E, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw Error("eta must lie in [0, 1]");
    RealMatrix out(E.rows(), E.cols());
    for (int x = 0; x < E.rows(); ++x)
        for (int y = 0; y < E.cols(); ++y) out.at(x, y) = eta * E.at(x, y) + (1.0 - eta);
    return out;
}

double config_value(const WitnessMatrix& M, const BlochConfig& cfg) {
    if (static_cast<int>(cfg.a.size()) != M.rows() || static_cast<int>(cfg.b.size()) != M.cols())
        throw Error("configuration shape does not match the witness");
    double total = 0.0;
    for (int x = 0; x < M.rows(); ++x) {
        const auto row = M.row(x);
        for (int y = 0; y < M.cols(); ++y)
            total += static_cast<double>(row[y]) * dot(cfg.a[static_cast<std::size_t>(x)],
                                                       cfg.b[static_cast<std::size_t>(y)]);
    }
    return total;
}

AlternateResult q_lowerbound_alternate(const WitnessMatrix& M, const BlochConfig& init,
                                       long long max_iter, double tol) {
    if (max_iter < 1) throw Error("max_iter must be at least 1");
    if (!(tol > 0.0)) throw Error("tol must be positive");
    validate_config(init);
    if (static_cast<int>(init.a.size()) != M.rows() || static_cast<int>(init.b.size()) != M.cols())
        throw Error("configuration shape does not match the witness");

    const int n = M.rows(), m = M.cols();
    BlochConfig cfg = init;
    AlternateResult res;
    res.value = config_value(M, cfg);
    for (long long it = 0; it < max_iter; ++it) {
        for (int y = 0; y < m; ++y) {
            Vec3 r{};
            for (int x = 0; x < n; ++x) r = r + static_cast<double>(M.at(x, y)) * cfg.a[static_cast<std::size_t>(x)];
            if (norm(r) > 0.0) cfg.b[static_cast<std::size_t>(y)] = normalized(r);
        }
        for (int x = 0; x < n; ++x) {
            Vec3 r{};
            const auto row = M.row(x);
            for (int y = 0; y < m; ++y) r = r + static_cast<double>(row[y]) * cfg.b[static_cast<std::size_t>(y)];
            if (norm(r) > 0.0) cfg.a[static_cast<std::size_t>(x)] = normalized(r);
        }
        ++res.iterations;
        const double v = config_value(M, cfg);
        const bool done = v - res.value < tol;
        res.value = v;
        if (done) break;
    }
    res.config = std::move(cfg);
    return res;
}

AlternateResult q_lowerbound_alternate(const WitnessMatrix& M, std::uint64_t seed,
                                       long long max_iter, double tol) {
    std::mt19937_64 rng(seed);
    BlochConfig cfg;
    cfg.a.reserve(static_cast<std::size_t>(M.rows()));
    cfg.b.reserve(static_cast<std::size_t>(M.cols()));
    for (int x = 0; x < M.rows(); ++x) cfg.a.push_back(random_unit(rng));
    for (int y = 0; y < M.cols(); ++y) cfg.b.push_back(random_unit(rng));
    return q_lowerbound_alternate(M, cfg, max_iter, tol);
}

std::vector<Vec3> gen_packing(int n, std::uint64_t seed, int iters) {
    if (n < 1) throw Error("packing size must be positive");
    if (n == 1) return {Vec3{0, 0, 1}};
    std::mt19937_64 rng(seed);
    std::vector<Vec3> vs;
    vs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) vs.push_back(random_unit(rng));

    // Line repulsion: push each vector away from the others' lines, with a
    // geometrically decaying step so the sweep contracts onto a packing.
    // Only the tangential part of the gradient is applied, and each move is
    // length-capped: a near-coincident pair then separates step by step,
    // whereas a raw blow-up step would fling one vector across the origin
    // onto the other's own line.
    const double step0 = 0.5 / n;
    const double max_move = 0.3;
    for (int it = 0; it < iters; ++it) {
        const double step = step0 * std::pow(0.02, static_cast<double>(it) / iters);
        for (int i = 0; i < n; ++i) {
            Vec3& vi = vs[static_cast<std::size_t>(i)];
            Vec3 g{};
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const double c = dot(vi, vs[static_cast<std::size_t>(j)]);
                const double d = 1.0 - c * c;
                g = g + (2.0 * c / (d * d + 1e-12)) * vs[static_cast<std::size_t>(j)];
            }
            Vec3 move = step * (g - dot(g, vi) * vi);
            const double len = norm(move);
            if (len > max_move) move = (max_move / len) * move;
            vi = normalized(vi - move);
        }
    }
    return vs;
}

double min_line_angle(const std::vector<Vec3>& vs) {
    double max_cos = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            max_cos = std::max(max_cos, std::abs(dot(vs[i], vs[j])));
    return std::acos(std::min(max_cos, 1.0));
}

std::vector<Vec3> load_vectors(const std::string& path, int* renormalized) {
    const auto lines = detail::read_lines(path);
    std::size_t i = 0;
    while (i < lines.size() && detail::blank(lines[i])) ++i;
    if (i == lines.size()) throw ParseError(path + ": empty file");
    const auto head = detail::tokens_of(lines[i]);
    if (head.size() != 1) throw ParseError(path + ": header must be the vector count");
    const std::int64_t n = detail::parse_int64(head[0], "in header");
    if (n < 1 || n > 1'000'000) throw ParseError(path + ": unreasonable vector count");
    ++i;

    std::vector<Vec3> vs;
    vs.reserve(static_cast<std::size_t>(n));
    int fixed = 0;
    for (; i < lines.size() && static_cast<std::int64_t>(vs.size()) < n; ++i) {
        if (detail::blank(lines[i])) continue;
        const auto toks = detail::tokens_of(lines[i]);
        if (toks.size() != 3) {
            throw ParseError(path + ": vector " + std::to_string(vs.size() + 1) +
                             " must have 3 coordinates");
        }
        const std::string where = "at vector " + std::to_string(vs.size() + 1);
        Vec3 v{detail::parse_double(toks[0], where), detail::parse_double(toks[1], where),
               detail::parse_double(toks[2], where)};
        const double dev = std::abs(norm(v) - 1.0);
        if (dev > 1e-6) {
            throw ParseError(path + ": vector " + std::to_string(vs.size() + 1) +
                             " is not unit length (deviation " + std::to_string(dev) + ")");
        }
        if (dev > 1e-12) ++fixed;
        vs.push_back(normalized(v));
    }
    if (static_cast<std::int64_t>(vs.size()) != n) {
        throw ParseError(path + ": expected " + std::to_string(n) + " vectors, found " +
                         std::to_string(vs.size()));
    }
    for (; i < lines.size(); ++i) {
        if (!detail::blank(lines[i])) throw ParseError(path + ": trailing content");
    }
    if (renormalized) *renormalized = fixed;
    return vs;
}

void save_vectors(const std::vector<Vec3>& vs, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    out << vs.size() << '\n';
    char buf[96];
    for (const Vec3& v : vs) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g", v.x, v.y, v.z);
        out << buf << '\n';
    }
    if (!out) throw ParseError("write failed: " + path);
}

Vec3 random_unit(std::mt19937_64& rng) {
    for (;;) {
        const Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
        const double n = norm(v);
        if (n > 1e-12) return (1.0 / n) * v;
    }
}

} // namespace pmq
