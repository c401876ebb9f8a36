#include "echinf/exact_sequence.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "echinf/errors.hpp"

namespace echinf {

std::string part_name(LesPart p)
{
    switch (p) {
    case LesPart::sub:
        return "sub";
    case LesPart::total:
        return "total";
    case LesPart::quotient:
        return "quotient";
    }
    return "?";
}

std::size_t LesRow::index_of(LesPart part, GradingKey key) const
{
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].part == part && nodes[i].key == key)
            return i;
    throw std::out_of_range("no such node in the exact row");
}

std::string LesRow::node_name(std::size_t i) const
{
    return "H_" + std::to_string(nodes.at(i).key) + "(" + part_name(nodes[i].part) + ")";
}

std::optional<std::size_t> LesRow::first_inexact() const
{
    std::size_t n = nodes.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!cyclic && (i == 0 || i + 1 == n))
            continue;
        std::size_t prev = (i + n - 1) % n;
        if (!is_exact(maps[prev], maps[i], nodes[prev].group, nodes[i].group, nodes[(i + 1) % n].group, rational))
            return i;
    }
    return std::nullopt;
}

IntMatrix connecting_map(const ShortExactSequence& s, const ComplexHomology& sub, const ComplexHomology& quotient,
                         GradingKey n)
{
    const FinAbGroup& src = quotient.group(n);
    GradingKey tk = s.sub.shift_key(n, -1);
    const FinAbGroup& tgt = sub.group(tk);
    std::vector<std::int64_t> sub_pos(s.total.size(), -1);
    for (std::size_t k = 0; k < s.sub_cells.size(); ++k)
        sub_pos[s.sub_cells[k]] = static_cast<std::int64_t>(k);
    const Coefficients& coeff = sub.coefficients();
    IntMatrix out(tgt.dimension(), src.dimension());
    for (std::size_t j = 0; j < src.dimension(); ++j) {
        Chain lifted;
        for (const auto& t : src.generators[j])
            lifted.push_back(Term{s.quotient_cells[t.index], t.coef});
        lifted = make_chain(std::move(lifted));
        Chain boundary = s.total.differential().apply(lifted);
        Chain restricted;
        for (auto& t : boundary) {
            Integer c = t.coef;
            if (coeff.kind == Coefficients::Kind::prime)
                c = floor_mod(c, Integer(coeff.p));
            if (c == 0)
                continue;
            if (sub_pos[t.index] < 0)
                throw ExactnessFailure(j, "boundary of a lifted quotient cycle leaves the subcomplex");
            restricted.push_back(Term{static_cast<std::uint32_t>(sub_pos[t.index]), c});
        }
        restricted = make_chain(std::move(restricted));
        auto c = sub.coordinates(tk, restricted);
        for (std::size_t i = 0; i < c.size(); ++i)
            out(i, j) = c[i];
    }
    return out;
}

LesRow long_exact_sequence(const ShortExactSequence& s, const ComplexHomology& sub, const ComplexHomology& total,
                           const ComplexHomology& quotient, bool verify)
{
    LesRow row;
    row.rational = total.rational();
    std::int64_t p = s.total.modulus();
    std::vector<GradingKey> keys;
    if (p > 0) {
        for (std::int64_t k = p - 1; k >= 0; --k)
            keys.push_back(k);
        row.cyclic = true;
    } else {
        auto ks = s.total.keys();
        if (!ks.empty())
            for (std::int64_t k = ks.back(); k >= ks.front(); --k)
                keys.push_back(k);
    }
    const ComplexHomology* homs[3] = {&sub, &total, &quotient};
    const LesPart parts[3] = {LesPart::sub, LesPart::total, LesPart::quotient};
    if (!row.cyclic && !keys.empty())
        row.nodes.push_back(LesNode{LesPart::quotient, keys.front() + 1, FinAbGroup{}});
    for (GradingKey k : keys)
        for (int q = 0; q < 3; ++q)
            row.nodes.push_back(LesNode{parts[q], k, homs[q]->group(k)});
    if (!row.cyclic && !keys.empty())
        row.nodes.push_back(LesNode{LesPart::sub, keys.back() - 1, FinAbGroup{}});

    std::size_t n = row.nodes.size();
    std::size_t count = row.cyclic ? n : (n == 0 ? 0 : n - 1);
    for (std::size_t i = 0; i < count; ++i) {
        const LesNode& a = row.nodes[i];
        const LesNode& b = row.nodes[(i + 1) % n];
        IntMatrix m;
        bool pad = !row.cyclic && (i == 0 || i + 2 == n);
        if (pad)
            m = IntMatrix(b.group.dimension(), a.group.dimension());
        else if (a.part == LesPart::sub)
            m = sub.induced(s.inclusion, total, a.key);
        else if (a.part == LesPart::total)
            m = total.induced(s.projection, quotient, a.key);
        else
            m = connecting_map(s, sub, quotient, a.key);
        row.maps.push_back(std::move(m));
    }
    if (!row.cyclic && n > 0)
        row.maps.push_back(IntMatrix(row.nodes.front().group.dimension(), row.nodes.back().group.dimension()));
    if (verify)
        if (auto bad = row.first_inexact())
            throw ExactnessFailure(*bad, "long exact sequence fails to be exact at " + row.node_name(*bad));
    return row;
}

}  // namespace echinf
