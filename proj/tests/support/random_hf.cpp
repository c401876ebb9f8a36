#include "random_hf.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace echinf::testing {

namespace {

// Polynomial in T with integer coefficients, keyed by exponent.
using Poly = std::map<std::int64_t, Integer>;
using PolyMatrix = std::vector<std::vector<Poly>>;  // [row][col], acts on columns

void add_to(Poly& acc, const Poly& p, const Integer& scale = 1)
{
    for (const auto& [k, c] : p) {
        Integer v = acc[k] + scale * c;
        if (v == 0)
            acc.erase(k);
        else
            acc[k] = v;
    }
}

Poly times(const Poly& a, const Poly& b)
{
    Poly out;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b)
            add_to(out, Poly{{i + j, x * y}});
    return out;
}

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b)
{
    std::size_t n = a.size();
    PolyMatrix out(n, std::vector<Poly>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[r][k].empty())
                continue;
            for (std::size_t c = 0; c < n; ++c)
                if (!b[k][c].empty())
                    add_to(out[r][c], times(a[r][k], b[k][c]));
        }
    return out;
}

PolyMatrix elementary(std::size_t n, std::size_t row, std::size_t col, std::int64_t power, const Integer& a)
{
    PolyMatrix m(n, std::vector<Poly>(n));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i][0] = 1;
    m[row][col][power] = a;
    return m;
}

std::int64_t max_power(const PolyMatrix& m)
{
    std::int64_t k = 0;
    for (const auto& row : m)
        for (const auto& p : row)
            if (!p.empty())
                k = std::max(k, p.rbegin()->first);
    return k;
}

std::vector<HFEntry> entries(const PolyMatrix& m)
{
    std::vector<HFEntry> out;
    for (std::size_t c = 0; c < m.size(); ++c)
        for (std::size_t r = 0; r < m.size(); ++r)
            for (const auto& [k, v] : m[r][c])
                out.push_back({static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(r), k, v});
    return out;
}

}  // namespace

HFData random_hf(std::mt19937_64& rng, const RandomHFOptions& opt)
{
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto coefficient = [&]() -> Integer {
        static const int choices[] = {1, 1, 1, -1, -1, 2, -2, 3};
        return choices[uniform(0, 7)];
    };
    // Lift offset that is invisible mod p.
    auto wrap = [&]() -> std::int64_t { return opt.modulus > 0 ? opt.modulus * uniform(-1, 1) : 0; };

    HFData hf;
    hf.modulus = opt.modulus;
    int target = uniform(1, opt.max_generators);
    std::size_t n = 0;
    std::vector<std::tuple<std::size_t, std::size_t, std::int64_t, Integer>> d_edges;
    std::vector<std::tuple<std::size_t, std::size_t, std::int64_t, Integer>> e_edges;
    auto add = [&](std::int64_t grading) {
        hf.names.push_back("g" + std::to_string(n));
        hf.gradings.push_back(grading);
        return n++;
    };
    while (static_cast<int>(n) < target) {
        int room = target - static_cast<int>(n);
        int kind = uniform(0, 9);
        std::int64_t gx = uniform(-3, 3);
        if (opt.h1 && room >= 4 && kind >= 8) {
            // x -> c T^k y and x' -> c T^k y' with eps: x -> x', y -> -y'
            std::int64_t k = uniform(0, opt.max_t_power), j = uniform(0, opt.max_t_power);
            Integer c = coefficient();
            auto x = add(gx), y = add(gx - 1 + 2 * k + wrap());
            auto x2 = add(gx - 1 + 2 * j + wrap()), y2 = add(hf.gradings[x2] - 1 + 2 * k + wrap());
            d_edges.emplace_back(x, y, k, c);
            d_edges.emplace_back(x2, y2, k, c);
            e_edges.emplace_back(x, x2, j, 1);
            e_edges.emplace_back(y, y2, j, -1);
        } else if (opt.h1 && room >= 2 && kind >= 6) {
            // two cycles with eps: w -> c T^j z
            std::int64_t j = uniform(0, opt.max_t_power);
            auto w = add(gx), z = add(gx - 1 + 2 * j + wrap());
            e_edges.emplace_back(w, z, j, coefficient());
        } else if (room >= 2 && kind >= 2) {
            std::int64_t k = uniform(0, opt.max_t_power);
            auto x = add(gx), y = add(gx - 1 + 2 * k + wrap());
            d_edges.emplace_back(x, y, k, coefficient());
        } else {
            add(gx);
        }
    }

    PolyMatrix d(n, std::vector<Poly>(n)), eps(n, std::vector<Poly>(n));
    for (auto& [from, to, k, c] : d_edges)
        d[to][from][k] = c;
    for (auto& [from, to, k, c] : e_edges)
        eps[to][from][k] = c;

    // x -> x + a T^j z needs grading(z) = grading(x) + 2j on the nose.
    for (int step = 0, tries = 0; step < 3 && tries < 20 && n >= 2; ++tries) {
        std::size_t x = uniform(0, static_cast<int>(n) - 1), z = uniform(0, static_cast<int>(n) - 1);
        if (x == z || (hf.gradings[z] - hf.gradings[x]) % 2 != 0)
            continue;
        std::int64_t j = (hf.gradings[z] - hf.gradings[x]) / 2;
        if (j < 0 || j > 1)
            continue;
        Integer a = uniform(0, 1) ? 1 : -1;
        PolyMatrix phi = elementary(n, z, x, j, a), phi_inv = elementary(n, z, x, j, -a);
        PolyMatrix d2 = multiply(phi_inv, multiply(d, phi)), e2 = multiply(phi_inv, multiply(eps, phi));
        if (max_power(d2) > opt.max_t_power || max_power(e2) > opt.max_t_power)
            continue;
        d = std::move(d2);
        eps = std::move(e2);
        ++step;
    }

    hf.differential = entries(d);
    auto e = entries(eps);
    if (!e.empty())
        hf.h1_actions.push_back({"eps", std::move(e)});
    hf.description = "random instance";
    auto v = validate(hf);
    if (!v.ok)
        throw std::logic_error("random_hf produced an invalid complex: " + v.violation);
    return hf;
}

}  // namespace echinf::testing
