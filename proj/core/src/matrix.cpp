#include "echinf/matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace echinf {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long long>> rows)
{
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    IntMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c)
            throw std::invalid_argument("ragged matrix literal");
        std::size_t j = 0;
        for (long long v : row)
            m(i, j++) = v;
        ++i;
    }
    return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<std::vector<Integer>>& columns)
{
    IntMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows)
            throw std::invalid_argument("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i)
            m(i, j) = columns[j][i];
    }
    return m;
}

Integer& IntMatrix::at(std::size_t r, std::size_t c)
{
    if (r >= rows_ || c >= cols_)
        throw std::out_of_range("matrix index (" + std::to_string(r) + "," + std::to_string(c) + ") outside " +
                                std::to_string(rows_) + "x" + std::to_string(cols_));
    return (*this)(r, c);
}

const Integer& IntMatrix::at(std::size_t r, std::size_t c) const
{
    return const_cast<IntMatrix*>(this)->at(r, c);
}

bool IntMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

std::vector<Integer> IntMatrix::column(std::size_t c) const
{
    if (c >= cols_)
        throw std::out_of_range("column index out of range");
    std::vector<Integer> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        out[i] = (*this)(i, c);
    return out;
}

std::vector<Integer> IntMatrix::apply(const std::vector<Integer>& v) const
{
    if (v.size() != cols_)
        throw std::invalid_argument("vector length does not match matrix columns");
    std::vector<Integer> out(rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
        if (v[j] == 0)
            continue;
        for (std::size_t i = 0; i < rows_; ++i)
            if ((*this)(i, j) != 0)
                out[i] += (*this)(i, j) * v[j];
    }
    return out;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& other) const
{
    if (other.rows_ != rows_)
        throw std::invalid_argument("hconcat row mismatch");
    IntMatrix m(rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j)
            m(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < other.cols_; ++j)
            m(i, cols_ + j) = other(i, j);
    }
    return m;
}

IntMatrix IntMatrix::select_rows(std::size_t begin, std::size_t end) const
{
    if (begin > end || end > rows_)
        throw std::out_of_range("row range out of bounds");
    IntMatrix m(end - begin, cols_);
    for (std::size_t i = begin; i < end; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(i - begin, j) = (*this)(i, j);
    return m;
}

IntMatrix IntMatrix::select_cols(std::size_t begin, std::size_t end) const
{
    if (begin > end || end > cols_)
        throw std::out_of_range("column range out of bounds");
    IntMatrix m(rows_, end - begin);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = begin; j < end; ++j)
            m(i, j - begin) = (*this)(i, j);
    return m;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor)
{
    if (factor == 0)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(src, j) != 0)
            (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor)
{
    if (factor == 0)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        if ((*this)(i, src) != 0)
            (*this)(i, dst) += factor * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r)
{
    for (std::size_t j = 0; j < cols_; ++j)
        (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c)
{
    for (std::size_t i = 0; i < rows_; ++i)
        (*this)(i, c) = -(*this)(i, c);
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("matrix product dimension mismatch");
    IntMatrix m(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer& a = (*this)(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                if (rhs(k, j) != 0)
                    m(i, j) += a * rhs(k, j);
        }
    return m;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix sum dimension mismatch");
    IntMatrix m = *this;
    for (std::size_t k = 0; k < data_.size(); ++k)
        m.data_[k] += rhs.data_[k];
    return m;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix difference dimension mismatch");
    IntMatrix m = *this;
    for (std::size_t k = 0; k < data_.size(); ++k)
        m.data_[k] -= rhs.data_[k];
    return m;
}

Chain make_chain(std::vector<Term> terms)
{
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
    Chain out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && out.back().index == t.index)
            out.back().coef += t.coef;
        else {
            if (!out.empty() && out.back().coef == 0)
                out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().coef == 0)
        out.pop_back();
    return out;
}

void add_scaled(Chain& acc, const Chain& other, const Integer& factor)
{
    if (factor == 0 || other.empty())
        return;
    Chain out;
    out.reserve(acc.size() + other.size());
    std::size_t i = 0, j = 0;
    while (i < acc.size() || j < other.size()) {
        if (j == other.size() || (i < acc.size() && acc[i].index < other[j].index)) {
            out.push_back(std::move(acc[i++]));
        } else if (i == acc.size() || other[j].index < acc[i].index) {
            out.push_back(Term{other[j].index, other[j].coef * factor});
            ++j;
        } else {
            Integer c = acc[i].coef + other[j].coef * factor;
            if (c != 0)
                out.push_back(Term{acc[i].index, std::move(c)});
            ++i;
            ++j;
        }
    }
    acc = std::move(out);
}

Chain scaled(const Chain& c, const Integer& factor)
{
    if (factor == 0)
        return {};
    Chain out = c;
    for (auto& t : out)
        t.coef *= factor;
    return out;
}

Integer coefficient(const Chain& c, std::uint32_t index)
{
    auto it = std::lower_bound(c.begin(), c.end(), index, [](const Term& t, std::uint32_t i) { return t.index < i; });
    if (it != c.end() && it->index == index)
        return it->coef;
    return 0;
}

std::vector<Integer> to_dense(const Chain& c, std::size_t n)
{
    std::vector<Integer> v(n);
    for (const auto& t : c) {
        if (t.index >= n)
            throw std::out_of_range("chain index outside dense range");
        v[t.index] = t.coef;
    }
    return v;
}

Chain from_dense(const std::vector<Integer>& v)
{
    Chain out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            out.push_back(Term{static_cast<std::uint32_t>(i), v[i]});
    return out;
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), col_ptr_(cols + 1, 0) {}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets)
{
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    SparseMatrix m(rows, cols);
    m.terms_.reserve(triplets.size());
    std::size_t k = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        while (k < triplets.size() && triplets[k].col == c) {
            if (triplets[k].row >= rows)
                throw std::out_of_range("triplet row out of range");
            Integer v = triplets[k].value;
            std::uint32_t r = triplets[k].row;
            ++k;
            while (k < triplets.size() && triplets[k].col == c && triplets[k].row == r)
                v += triplets[k++].value;
            if (v != 0)
                m.terms_.push_back(Term{r, std::move(v)});
        }
        m.col_ptr_[c + 1] = m.terms_.size();
    }
    if (k != triplets.size())
        throw std::out_of_range("triplet column out of range");
    return m;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, const std::vector<Chain>& columns)
{
    SparseMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        for (const auto& t : columns[c]) {
            if (t.index >= rows)
                throw std::out_of_range("column entry row out of range");
            if (t.coef != 0)
                m.terms_.push_back(t);
        }
        m.col_ptr_[c + 1] = m.terms_.size();
    }
    return m;
}

SparseMatrix SparseMatrix::from_dense(const IntMatrix& d)
{
    SparseMatrix m(d.rows(), d.cols());
    for (std::size_t c = 0; c < d.cols(); ++c) {
        for (std::size_t r = 0; r < d.rows(); ++r)
            if (d(r, c) != 0)
                m.terms_.push_back(Term{static_cast<std::uint32_t>(r), d(r, c)});
        m.col_ptr_[c + 1] = m.terms_.size();
    }
    return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n)
{
    SparseMatrix m(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        m.terms_.push_back(Term{static_cast<std::uint32_t>(c), 1});
        m.col_ptr_[c + 1] = c + 1;
    }
    return m;
}

std::span<const Term> SparseMatrix::column(std::size_t c) const
{
    if (c >= cols_)
        throw std::out_of_range("sparse column index out of range");
    return {terms_.data() + col_ptr_[c], terms_.data() + col_ptr_[c + 1]};
}

Chain SparseMatrix::column_chain(std::size_t c) const
{
    auto s = column(c);
    return Chain(s.begin(), s.end());
}

Integer SparseMatrix::at(std::size_t r, std::size_t c) const
{
    if (r >= rows_)
        throw std::out_of_range("sparse row index out of range");
    auto s = column(c);
    auto it = std::lower_bound(s.begin(), s.end(), r, [](const Term& t, std::size_t i) { return t.index < i; });
    if (it != s.end() && it->index == r)
        return it->coef;
    return 0;
}

Chain SparseMatrix::apply(const Chain& v) const
{
    std::vector<Term> acc;
    for (const auto& t : v) {
        for (const auto& e : column(t.index))
            acc.push_back(Term{e.index, e.coef * t.coef});
    }
    return make_chain(std::move(acc));
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("sparse product dimension mismatch");
    std::vector<Chain> cols(rhs.cols_);
    for (std::size_t c = 0; c < rhs.cols_; ++c)
        cols[c] = apply(rhs.column_chain(c));
    return from_columns(rows_, cols);
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& rhs) const
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("sparse sum dimension mismatch");
    std::vector<Chain> cols(cols_);
    for (std::size_t c = 0; c < cols_; ++c) {
        cols[c] = column_chain(c);
        add_scaled(cols[c], rhs.column_chain(c), 1);
    }
    return from_columns(rows_, cols);
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& rhs) const
{
    return *this + rhs.scaled(-1);
}

SparseMatrix SparseMatrix::scaled(const Integer& factor) const
{
    if (factor == 0)
        return SparseMatrix(rows_, cols_);
    SparseMatrix m = *this;
    for (auto& t : m.terms_)
        t.coef *= factor;
    return m;
}

SparseMatrix SparseMatrix::transpose() const
{
    std::vector<Triplet> trip;
    trip.reserve(terms_.size());
    for (std::size_t c = 0; c < cols_; ++c)
        for (const auto& t : column(c))
            trip.push_back(Triplet{static_cast<std::uint32_t>(c), t.index, t.coef});
    return from_triplets(cols_, rows_, std::move(trip));
}

IntMatrix SparseMatrix::to_dense() const
{
    IntMatrix m(rows_, cols_);
    for (std::size_t c = 0; c < cols_; ++c)
        for (const auto& t : column(c))
            m(t.index, c) = t.coef;
    return m;
}

IntMatrix SparseMatrix::block(std::span<const std::uint32_t> rows, std::span<const std::uint32_t> cols) const
{
    std::vector<std::int64_t> row_pos(rows_, -1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] >= rows_)
            throw std::out_of_range("block row out of range");
        row_pos[rows[i]] = static_cast<std::int64_t>(i);
    }
    IntMatrix m(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& t : column(cols[j]))
            if (row_pos[t.index] >= 0)
                m(static_cast<std::size_t>(row_pos[t.index]), j) = t.coef;
    return m;
}

}  // namespace echinf
