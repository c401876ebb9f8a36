#include "echinf/snf.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace echinf {

std::size_t SNFResult::rank() const
{
    std::size_t r = 0;
    while (r < d.size() && d[r] != 0)
        ++r;
    return r;
}

namespace {

class Reducer {
public:
    Reducer(const IntMatrix& a, const SNFOptions& opt) : m_(a), opt_(opt)
    {
        if (opt.left)
            left_ = IntMatrix::identity(a.rows());
        if (opt.left_inverse)
            left_inv_ = IntMatrix::identity(a.rows());
        if (opt.right)
            right_ = IntMatrix::identity(a.cols());
        if (opt.right_inverse)
            right_inv_ = IntMatrix::identity(a.cols());
    }

    SNFResult run()
    {
        std::size_t n = std::min(m_.rows(), m_.cols());
        std::size_t t = 0;
        for (; t < n; ++t) {
            auto pivot = min_entry(t);
            if (!pivot)
                break;
            swap_rows(t, pivot->first);
            swap_cols(t, pivot->second);
            while (!clear_column(t) || !clear_row(t)) {
            }
        }
        // Diagonal now; make each entry divide the next.
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t j = i + 1; j < t; ++j)
                while (m_(j, j) % m_(i, i) != 0)
                    gcd_pair(i, j);
        for (std::size_t i = 0; i < t; ++i)
            if (m_(i, i) < 0)
                negate_row(i);
        SNFResult res;
        res.d.resize(n);
        for (std::size_t i = 0; i < t; ++i)
            res.d[i] = m_(i, i);
        res.left = std::move(left_);
        res.right = std::move(right_);
        res.left_inverse = std::move(left_inv_);
        res.right_inverse = std::move(right_inv_);
        return res;
    }

private:
    std::optional<std::pair<std::size_t, std::size_t>> min_entry(std::size_t t) const
    {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        Integer best_abs;
        for (std::size_t i = t; i < m_.rows(); ++i)
            for (std::size_t j = t; j < m_.cols(); ++j) {
                const Integer& v = m_(i, j);
                if (v == 0)
                    continue;
                Integer a = abs_value(v);
                if (!best || a < best_abs) {
                    best = {i, j};
                    best_abs = std::move(a);
                    if (best_abs == 1)
                        return best;
                }
            }
        return best;
    }

    // Quotient rounded to the nearest integer, so remainders are at most |b|/2.
    static Integer nearest_quotient(const Integer& a, const Integer& b)
    {
        Integer q = a / b;
        Integer r = a - q * b;
        Integer twice = abs_value(r) * 2;
        if (twice > abs_value(b))
            q += ((r < 0) == (b < 0)) ? 1 : -1;
        return q;
    }

    // Reduces the column below the pivot by it. If remainders are left, the
    // smallest one becomes the pivot and false is returned.
    bool clear_column(std::size_t t)
    {
        std::optional<std::size_t> smallest;
        for (std::size_t i = t + 1; i < m_.rows(); ++i) {
            if (m_(i, t) == 0)
                continue;
            add_row(i, t, -nearest_quotient(m_(i, t), m_(t, t)));
            if (m_(i, t) != 0 && (!smallest || abs_value(m_(i, t)) < abs_value(m_(*smallest, t))))
                smallest = i;
        }
        if (!smallest)
            return true;
        swap_rows(t, *smallest);
        return false;
    }

    bool clear_row(std::size_t t)
    {
        std::optional<std::size_t> smallest;
        for (std::size_t j = t + 1; j < m_.cols(); ++j) {
            if (m_(t, j) == 0)
                continue;
            add_col(j, t, -nearest_quotient(m_(t, j), m_(t, t)));
            if (m_(t, j) != 0 && (!smallest || abs_value(m_(t, j)) < abs_value(m_(t, *smallest))))
                smallest = j;
        }
        if (!smallest)
            return true;
        swap_cols(t, *smallest);
        return false;
    }

    // Diagonal entries a at (i, i) and b at (j, j) become gcd and lcm. Rows and
    // columns i, j are zero elsewhere, so the work stays in that 2x2 block.
    void gcd_pair(std::size_t i, std::size_t j)
    {
        add_row(i, j, 1);
        while (m_(i, j) != 0 || m_(j, i) != 0) {
            while (m_(j, i) != 0) {
                Integer q = m_(j, i) / m_(i, i);
                add_row(j, i, -q);
                if (m_(j, i) != 0)
                    swap_rows(i, j);
            }
            while (m_(i, j) != 0) {
                Integer q = m_(i, j) / m_(i, i);
                add_col(j, i, -q);
                if (m_(i, j) != 0)
                    swap_cols(i, j);
            }
        }
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        m_.swap_rows(a, b);
        if (opt_.left)
            left_.swap_rows(a, b);
        if (opt_.left_inverse)
            left_inv_.swap_cols(a, b);
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        m_.swap_cols(a, b);
        if (opt_.right)
            right_.swap_cols(a, b);
        if (opt_.right_inverse)
            right_inv_.swap_rows(a, b);
    }

    // row[dst] += f * row[src]
    void add_row(std::size_t dst, std::size_t src, const Integer& f)
    {
        if (f == 0)
            return;
        m_.add_row_multiple(dst, src, f);
        if (opt_.left)
            left_.add_row_multiple(dst, src, f);
        if (opt_.left_inverse)
            left_inv_.add_col_multiple(src, dst, -f);
    }

    // col[dst] += f * col[src]
    void add_col(std::size_t dst, std::size_t src, const Integer& f)
    {
        if (f == 0)
            return;
        m_.add_col_multiple(dst, src, f);
        if (opt_.right)
            right_.add_col_multiple(dst, src, f);
        if (opt_.right_inverse)
            right_inv_.add_row_multiple(src, dst, -f);
    }

    void negate_row(std::size_t r)
    {
        m_.negate_row(r);
        if (opt_.left)
            left_.negate_row(r);
        if (opt_.left_inverse)
            left_inv_.negate_col(r);
    }

    IntMatrix m_;
    SNFOptions opt_;
    IntMatrix left_, left_inv_, right_, right_inv_;
};

}  // namespace

SNFResult smith_normal_form(const IntMatrix& a, const SNFOptions& options)
{
    // Zero rows and columns are split off first; the transforms of the nonzero
    // block are then embedded with the permutation that moves them to the front.
    std::vector<std::size_t> rows, zero_rows, cols, zero_cols;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        bool nz = false;
        for (std::size_t j = 0; j < a.cols() && !nz; ++j)
            nz = a(i, j) != 0;
        (nz ? rows : zero_rows).push_back(i);
    }
    for (std::size_t j = 0; j < a.cols(); ++j) {
        bool nz = false;
        for (std::size_t i : rows) {
            if (a(i, j) != 0) {
                nz = true;
                break;
            }
        }
        (nz ? cols : zero_cols).push_back(j);
    }
    if (zero_rows.empty() && zero_cols.empty())
        return Reducer(a, options).run();

    IntMatrix block(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            block(i, j) = a(rows[i], cols[j]);
    SNFResult s = Reducer(block, options).run();

    SNFResult res;
    res.d.assign(std::min(a.rows(), a.cols()), Integer(0));
    for (std::size_t i = 0; i < s.d.size(); ++i)
        res.d[i] = s.d[i];
    std::size_t nr = rows.size(), nc = cols.size();
    if (options.left) {
        res.left = IntMatrix(a.rows(), a.rows());
        for (std::size_t x = 0; x < nr; ++x)
            for (std::size_t y = 0; y < nr; ++y)
                res.left(x, rows[y]) = s.left(x, y);
        for (std::size_t q = 0; q < zero_rows.size(); ++q)
            res.left(nr + q, zero_rows[q]) = 1;
    }
    if (options.left_inverse) {
        res.left_inverse = IntMatrix(a.rows(), a.rows());
        for (std::size_t y = 0; y < nr; ++y)
            for (std::size_t x = 0; x < nr; ++x)
                res.left_inverse(rows[y], x) = s.left_inverse(y, x);
        for (std::size_t q = 0; q < zero_rows.size(); ++q)
            res.left_inverse(zero_rows[q], nr + q) = 1;
    }
    if (options.right) {
        res.right = IntMatrix(a.cols(), a.cols());
        for (std::size_t y = 0; y < nc; ++y)
            for (std::size_t x = 0; x < nc; ++x)
                res.right(cols[y], x) = s.right(y, x);
        for (std::size_t q = 0; q < zero_cols.size(); ++q)
            res.right(zero_cols[q], nc + q) = 1;
    }
    if (options.right_inverse) {
        res.right_inverse = IntMatrix(a.cols(), a.cols());
        for (std::size_t x = 0; x < nc; ++x)
            for (std::size_t y = 0; y < nc; ++y)
                res.right_inverse(x, cols[y]) = s.right_inverse(x, y);
        for (std::size_t q = 0; q < zero_cols.size(); ++q)
            res.right_inverse(nc + q, zero_cols[q]) = 1;
    }
    return res;
}

}  // namespace echinf
