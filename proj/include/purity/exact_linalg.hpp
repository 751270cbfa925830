#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace purity {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

// "p/q" or "p"; throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& x);

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_columns(const std::vector<RationalVector>& cols, std::size_t rows);
    static RationalMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RationalVector row(std::size_t r) const;
    RationalVector column(std::size_t c) const;
    std::vector<RationalVector> columns() const;

    RationalMatrix transpose() const;
    RationalMatrix operator*(const RationalMatrix& other) const;
    RationalVector operator*(const RationalVector& v) const;
    RationalMatrix operator+(const RationalMatrix& other) const;
    RationalMatrix operator-(const RationalMatrix& other) const;
    RationalMatrix scaled(const Rational& s) const;
    bool operator==(const RationalMatrix& other) const;

    bool is_zero() const;
    bool is_symmetric() const;

    // Block placement; the block must fit.
    void set_block(std::size_t r0, std::size_t c0, const RationalMatrix& block);
    RationalMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

RationalMatrix hstack(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix vstack(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix kronecker(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix power(const RationalMatrix& m, int e);

struct RankKernel {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;  // leftmost independent columns, ascending
    std::vector<RationalVector> kernel;       // basis of the right null space
};

RankKernel rank_kernel(const RationalMatrix& m);
std::size_t rank(const RationalMatrix& m);
std::vector<std::size_t> pivot_columns(const RationalMatrix& m);

// Throws std::domain_error when singular.
RationalMatrix inverse(const RationalMatrix& m);
Rational determinant(const RationalMatrix& m);

struct Inertia {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
    long signature() const { return long(positive) - long(negative); }
    bool operator==(const Inertia&) const = default;
};

// Symmetric congruence diagonalization; throws std::invalid_argument if not symmetric.
Inertia symmetric_signature(const RationalMatrix& g);
bool is_positive_definite(const RationalMatrix& g);

// Subspaces of Q^d are held as matrices whose columns span them.
RationalMatrix column_basis(const RationalMatrix& span);
std::size_t subspace_dim(const RationalMatrix& span);
RationalMatrix subspace_sum(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix subspace_intersection(const RationalMatrix& a, const RationalMatrix& b);
bool subspace_contains(const RationalMatrix& outer, const RationalMatrix& inner);
RationalMatrix kernel_basis(const RationalMatrix& m, std::size_t ambient_cols);
// Columns of `ext` extending a basis of `base` to one of `base + ext`.
RationalMatrix complement_in(const RationalMatrix& base, const RationalMatrix& ext);

}  // namespace purity
