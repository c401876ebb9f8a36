#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "echinf/integer.hpp"

namespace echinf {

// Dense row-major integer matrix. at() is bounds checked; operator() is not.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows);
    static IntMatrix from_columns(std::size_t rows, const std::vector<std::vector<Integer>>& columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Integer& at(std::size_t r, std::size_t c);
    const Integer& at(std::size_t r, std::size_t c) const;
    Integer& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    bool is_zero() const;
    std::vector<Integer> column(std::size_t c) const;
    std::vector<Integer> apply(const std::vector<Integer>& v) const;
    IntMatrix transpose() const;

    // Horizontal concatenation [this | other].
    IntMatrix hconcat(const IntMatrix& other) const;
    IntMatrix select_rows(std::size_t begin, std::size_t end) const;
    IntMatrix select_cols(std::size_t begin, std::size_t end) const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    // row[dst] += factor * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator+(const IntMatrix& rhs) const;
    IntMatrix operator-(const IntMatrix& rhs) const;
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

struct Term {
    std::uint32_t index;
    Integer coef;
    friend bool operator==(const Term&, const Term&) = default;
};

// Sparse vector sorted by index with no zero coefficients.
using Chain = std::vector<Term>;

Chain make_chain(std::vector<Term> terms);
// acc += factor * other
void add_scaled(Chain& acc, const Chain& other, const Integer& factor);
Chain scaled(const Chain& c, const Integer& factor);
Integer coefficient(const Chain& c, std::uint32_t index);
std::vector<Integer> to_dense(const Chain& c, std::size_t n);
Chain from_dense(const std::vector<Integer>& v);

struct Triplet {
    std::uint32_t row;
    std::uint32_t col;
    Integer value;
};

// Compressed sparse column matrix.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols);

    // Duplicate entries are summed; resulting zeros are dropped.
    static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);
    static SparseMatrix from_columns(std::size_t rows, const std::vector<Chain>& columns);
    static SparseMatrix from_dense(const IntMatrix& m);
    static SparseMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t nnz() const noexcept { return terms_.size(); }

    std::span<const Term> column(std::size_t c) const;
    Chain column_chain(std::size_t c) const;
    Integer at(std::size_t r, std::size_t c) const;

    Chain apply(const Chain& v) const;
    SparseMatrix operator*(const SparseMatrix& rhs) const;
    SparseMatrix operator-(const SparseMatrix& rhs) const;
    SparseMatrix operator+(const SparseMatrix& rhs) const;
    SparseMatrix scaled(const Integer& factor) const;
    SparseMatrix transpose() const;
    bool is_zero() const noexcept { return terms_.empty(); }

    IntMatrix to_dense() const;
    // Dense block with the given row and column index lists.
    IntMatrix block(std::span<const std::uint32_t> rows, std::span<const std::uint32_t> cols) const;

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> col_ptr_{0};
    std::vector<Term> terms_;
};

}  // namespace echinf
