#include "pmq/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "textio.hpp"

namespace pmq {

namespace {

void check_dims(int n, int m) {
    if (n < 1 || m < 1) {
        throw ParseError("matrix dimensions must be positive, got " + std::to_string(n) + " x " +
                         std::to_string(m));
    }
}

// The norms in this toolkit never exceed n*m*max|entry|; requiring that
// product to fit keeps all of them overflow-free in int64.
void check_budget(int n, int m, std::int64_t max_abs) {
    if (max_abs == 0) return;
    const std::int64_t cells = static_cast<std::int64_t>(n) * m;
    if (max_abs > std::numeric_limits<std::int64_t>::max() / cells) {
        throw OverflowError("n*m*max|entry| exceeds the 64-bit budget");
    }
}

// Shared grid reader. header == true consumes an "n m" first line; otherwise
// rows/cols give the expected shape.
template <typename T, typename ParseFn>
std::vector<T> read_grid(const std::string& path, bool header, int& rows, int& cols, ParseFn parse) {
    const auto lines = detail::read_lines(path);
    std::size_t i = 0;
    while (i < lines.size() && detail::blank(lines[i])) ++i;

    if (header) {
        if (i == lines.size()) throw ParseError(path + ": empty file");
        const auto head = detail::tokens_of(lines[i]);
        if (head.size() != 2) {
            throw ParseError(path + ": header must be 'n m', got '" + lines[i] + "'");
        }
        const std::int64_t n = detail::parse_int64(head[0], "in header");
        const std::int64_t m = detail::parse_int64(head[1], "in header");
        if (n < 1 || m < 1 || n > 1'000'000 || m > 1'000'000) {
            throw ParseError(path + ": unreasonable header dimensions");
        }
        rows = static_cast<int>(n);
        cols = static_cast<int>(m);
        ++i;
    }
    check_dims(rows, cols);

    std::vector<T> entries;
    entries.reserve(static_cast<std::size_t>(rows) * cols);
    int row = 0;
    for (; i < lines.size() && row < rows; ++i) {
        if (detail::blank(lines[i])) continue;
        const auto toks = detail::tokens_of(lines[i]);
        if (static_cast<int>(toks.size()) != cols) {
            throw ParseError(path + ": row " + std::to_string(row + 1) + " has " +
                             std::to_string(toks.size()) + " entries, expected " +
                             std::to_string(cols));
        }
        for (const auto& t : toks) {
            entries.push_back(parse(t, "at row " + std::to_string(row + 1)));
        }
        ++row;
    }
    if (row != rows) {
        throw ParseError(path + ": expected " + std::to_string(rows) + " rows, found " +
                         std::to_string(row));
    }
    for (; i < lines.size(); ++i) {
        if (!detail::blank(lines[i])) {
            throw ParseError(path + ": trailing content after row " + std::to_string(rows));
        }
    }
    return entries;
}

} // namespace

WitnessMatrix::WitnessMatrix(int rows, int cols, std::vector<std::int64_t> entries)
    : n_(rows), m_(cols), a_(std::move(entries)) {
    check_dims(n_, m_);
    if (a_.size() != static_cast<std::size_t>(n_) * m_) {
        throw ParseError("entry count does not match dimensions");
    }
    for (std::int64_t v : a_) {
        const std::int64_t av = v < 0 ? -v : v; // INT64_MIN rejected below via budget
        if (v == std::numeric_limits<std::int64_t>::min()) {
            throw OverflowError("entry equals INT64_MIN");
        }
        if (av > max_abs_) max_abs_ = av;
    }
    check_budget(n_, m_, max_abs_);
}

RealMatrix::RealMatrix(int rows, int cols)
    : n_(rows), m_(cols), a_(static_cast<std::size_t>(rows) * cols, 0.0) {
    check_dims(rows, cols);
}

RealMatrix::RealMatrix(int rows, int cols, std::vector<double> entries)
    : n_(rows), m_(cols), a_(std::move(entries)) {
    check_dims(n_, m_);
    if (a_.size() != static_cast<std::size_t>(n_) * m_) {
        throw ParseError("entry count does not match dimensions");
    }
    for (double v : a_) {
        if (!std::isfinite(v)) throw ParseError("non-finite entry in real matrix");
    }
}

WitnessMatrix load_matrix(const std::string& path) {
    int n = 0, m = 0;
    auto entries = read_grid<std::int64_t>(path, true, n, m, detail::parse_int64);
    return WitnessMatrix(n, m, std::move(entries));
}

WitnessMatrix load_matrix(const std::string& path, int rows, int cols) {
    auto entries = read_grid<std::int64_t>(path, false, rows, cols, detail::parse_int64);
    return WitnessMatrix(rows, cols, std::move(entries));
}

RealMatrix load_real_matrix(const std::string& path) {
    int n = 0, m = 0;
    auto entries = read_grid<double>(path, true, n, m, detail::parse_double);
    return RealMatrix(n, m, std::move(entries));
}

RealMatrix load_real_matrix(const std::string& path, int rows, int cols) {
    auto entries = read_grid<double>(path, false, rows, cols, detail::parse_double);
    return RealMatrix(rows, cols, std::move(entries));
}

void save_matrix(const WitnessMatrix& M, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    out << M.rows() << ' ' << M.cols() << '\n';
    for (int x = 0; x < M.rows(); ++x) {
        for (int y = 0; y < M.cols(); ++y) {
            if (y) out << ' ';
            out << M.at(x, y);
        }
        out << '\n';
    }
    if (!out) throw ParseError("write failed: " + path);
}

void save_real_matrix(const RealMatrix& R, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    out << R.rows() << ' ' << R.cols() << '\n';
    char buf[64];
    for (int x = 0; x < R.rows(); ++x) {
        for (int y = 0; y < R.cols(); ++y) {
            if (y) out << ' ';
            std::snprintf(buf, sizeof buf, "%.17g", R.at(x, y));
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw ParseError("write failed: " + path);
}

std::int64_t sum_S(const WitnessMatrix& M) {
    std::int64_t s = 0;
    for (std::int64_t v : M.entries()) s += v;
    return s;
}

WitnessMatrix make_doubled(const WitnessMatrix& M) {
    std::vector<std::int64_t> e;
    e.reserve(2 * M.entries().size());
    e.insert(e.end(), M.entries().begin(), M.entries().end());
    for (std::int64_t v : M.entries()) e.push_back(-v);
    return WitnessMatrix(2 * M.rows(), M.cols(), std::move(e));
}

WitnessMatrix gen_family(int k) {
    if (k < 1 || k > 20) {
        throw SizeCapError("family index must be in [1, 20], got " + std::to_string(k));
    }
    const int cols = 1 << (k - 1);
    std::vector<std::int64_t> e(static_cast<std::size_t>(k) * cols);
    for (int i = 0; i < k; ++i) {
        const int block = 1 << (k - 1 - i); // run length of equal signs in row i
        for (int j = 0; j < cols; ++j) {
            e[static_cast<std::size_t>(i) * cols + j] = ((j / block) % 2 == 0) ? 1 : -1;
        }
    }
    return WitnessMatrix(k, cols, std::move(e));
}

WitnessMatrix integerize(const RealMatrix& R, std::int64_t scale) {
    if (scale < 1) throw ParseError("scale must be a positive integer");
    std::vector<std::int64_t> e;
    e.reserve(R.entries().size());
    // 2^62 leaves room for the trunc result to be representable exactly.
    const double cap = 9.2e18;
    for (double v : R.entries()) {
        const double scaled = static_cast<double>(scale) * v;
        if (std::fabs(scaled) >= cap) {
            throw OverflowError("scaled entry out of 64-bit range");
        }
        e.push_back(static_cast<std::int64_t>(std::trunc(scaled)));
    }
    return WitnessMatrix(R.rows(), R.cols(), std::move(e));
}

} // namespace pmq
