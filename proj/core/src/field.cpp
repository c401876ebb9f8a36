#include "echinf/field.hpp"

#include <stdexcept>
#include <tuple>
#include <utility>
#include <string>
#include <vector>

#include "echinf/errors.hpp"

namespace echinf {

bool is_prime(std::uint32_t p)
{
    if (p < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p)
{
    std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
    }
    if (r != 1)
        throw std::domain_error("element not invertible mod " + std::to_string(p));
    return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

std::size_t rank_mod_p(const IntMatrix& m, std::uint32_t p)
{
    if (!is_prime(p))
        throw std::invalid_argument("characteristic must be prime");
    std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::uint64_t> a(rows * cols);
    Integer pp(p);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            a[i * cols + j] = static_cast<std::uint64_t>(floor_mod(m(i, j), pp));
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv * cols + c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        if (piv != rank)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(a[piv * cols + j], a[rank * cols + j]);
        std::uint64_t inv = inverse_mod(static_cast<std::uint32_t>(a[rank * cols + c]), p);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            std::uint64_t f = a[i * cols + c] * inv % p;
            if (f == 0)
                continue;
            for (std::size_t j = c; j < cols; ++j)
                a[i * cols + j] = (a[i * cols + j] + (p - f) * a[rank * cols + j]) % p;
        }
        ++rank;
    }
    return rank;
}

std::size_t rank_rational(const IntMatrix& input)
{
    IntMatrix m = input;
    std::size_t rows = m.rows(), cols = m.cols();
    Integer prev = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m(piv, c) == 0)
            ++piv;
        if (piv == rows)
            continue;
        m.swap_rows(piv, rank);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                m(i, j) = (m(rank, c) * m(i, j) - m(i, c) * m(rank, j)) / prev;
            m(i, c) = 0;
        }
        prev = m(rank, c);
        ++rank;
    }
    return rank;
}

std::size_t field_homology_pair(const IntMatrix& d_in, const IntMatrix& d_out, std::uint32_t characteristic)
{
    if (d_out.cols() != d_in.rows())
        throw std::invalid_argument("composable pair dimension mismatch");
    IntMatrix comp = d_out * d_in;
    for (std::size_t j = 0; j < comp.cols(); ++j)
        for (std::size_t i = 0; i < comp.rows(); ++i)
            if (comp(i, j) != 0)
                throw CompositionNonzero(j, "d_out * d_in is nonzero on basis element " + std::to_string(j));
    std::size_t m = d_in.rows();
    if (characteristic == 0)
        return m - rank_rational(d_out) - rank_rational(d_in);
    return m - rank_mod_p(d_out, characteristic) - rank_mod_p(d_in, characteristic);
}

}  // namespace echinf
