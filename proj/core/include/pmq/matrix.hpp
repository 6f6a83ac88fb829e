#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pmq/errors.hpp"

namespace pmq {

/// Integer witness matrix M. Rows index preparations, columns index
/// measurement settings. Entries are kept integral so every norm in the
/// toolkit can be evaluated in exact 64-bit arithmetic; construction
/// rejects matrices for which n*m*max|entry| would overflow.
class WitnessMatrix {
public:
    WitnessMatrix(int rows, int cols, std::vector<std::int64_t> entries);

    int rows() const { return n_; }
    int cols() const { return m_; }

    std::int64_t at(int x, int y) const { return a_[static_cast<std::size_t>(x) * m_ + y]; }
    std::span<const std::int64_t> row(int x) const {
        return {a_.data() + static_cast<std::size_t>(x) * m_, static_cast<std::size_t>(m_)};
    }
    std::span<const std::int64_t> entries() const { return a_; }

    std::int64_t max_abs() const { return max_abs_; }

private:
    int n_ = 0;
    int m_ = 0;
    std::int64_t max_abs_ = 0;
    std::vector<std::int64_t> a_;
};

/// Dense real matrix; holds correlation data such as E_{x,y} and the
/// residuals produced by the Gilbert search. All entries must be finite.
class RealMatrix {
public:
    RealMatrix() = default;
    RealMatrix(int rows, int cols); // zero-filled
    RealMatrix(int rows, int cols, std::vector<double> entries);

    int rows() const { return n_; }
    int cols() const { return m_; }

    double at(int x, int y) const { return a_[static_cast<std::size_t>(x) * m_ + y]; }
    double& at(int x, int y) { return a_[static_cast<std::size_t>(x) * m_ + y]; }
    std::span<const double> entries() const { return a_; }
    std::span<double> entries() { return a_; }

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<double> a_;
};

/// Reads a witness matrix from the text format: header line "n m", then n
/// lines of m signed decimal integers. LF or CRLF both accepted.
WitnessMatrix load_matrix(const std::string& path);

/// Headerless variant: the file holds an n x m grid and the dimensions come
/// from the caller (for external datasets whose layout has no header).
WitnessMatrix load_matrix(const std::string& path, int rows, int cols);

RealMatrix load_real_matrix(const std::string& path);
RealMatrix load_real_matrix(const std::string& path, int rows, int cols);

void save_matrix(const WitnessMatrix& M, const std::string& path);
void save_real_matrix(const RealMatrix& R, const std::string& path);

/// Sum of all entries, S(M).
std::int64_t sum_S(const WitnessMatrix& M);

/// The 2n x m stacked matrix with rows M_x followed by rows -M_x.
WitnessMatrix make_doubled(const WitnessMatrix& M);

/// The k x 2^(k-1) sign-pattern family: entry (i, j) = (-1)^floor(j / 2^(k-1-i))
/// with 0-based i, j. k = 2 is the CHSH matrix. Capped at k <= 20.
WitnessMatrix gen_family(int k);

/// Entry-wise trunc(scale * R) toward zero.
WitnessMatrix integerize(const RealMatrix& R, std::int64_t scale);

} // namespace pmq
