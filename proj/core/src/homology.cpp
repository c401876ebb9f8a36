#include "echinf/homology.hpp"

#include <algorithm>
#include <stdexcept>

#include "echinf/errors.hpp"
#include "echinf/field.hpp"

namespace echinf {

Coefficients Coefficients::prime(std::uint32_t p)
{
    if (!is_prime(p))
        throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    return {Kind::prime, p};
}

Coefficients Coefficients::parse(const std::string& text)
{
    if (text == "z" || text == "Z")
        return integers();
    if (text == "q" || text == "Q")
        return rationals();
    if (text.size() >= 2 && (text[0] == 'f' || text[0] == 'F')) {
        std::string digits = text.substr(1);
        if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit) && digits.size() < 10)
            return prime(static_cast<std::uint32_t>(std::stoul(digits)));
    }
    throw std::invalid_argument("unknown coefficient ring '" + text + "' (expected z, q or f<p>)");
}

std::string Coefficients::name() const
{
    switch (kind) {
    case Kind::integers:
        return "z";
    case Kind::rationals:
        return "q";
    case Kind::prime:
        return "f" + std::to_string(p);
    }
    return "?";
}

ComplexHomology::ComplexHomology(const GradedComplex& c, Coefficients coeff, std::span<const MatchedPair> seed)
    : c_(c), coeff_(coeff), red_(reduce(c, seed, coeff.kind == Coefficients::Kind::prime ? coeff.p : 0)),
      keys_(c.keys())
{
    const GradedComplex& r = red_.reduced();
    std::map<GradingKey, std::vector<std::uint32_t>> cells;
    for (std::uint32_t i = 0; i < r.size(); ++i)
        cells[r.key(i)].push_back(i);
    slot_pos_.assign(r.size(), 0);
    for (auto& [k, list] : cells) {
        for (std::uint32_t j = 0; j < list.size(); ++j)
            slot_pos_[list[j]] = j;
        Slot s;
        s.cells = list;
        if (coeff_.kind == Coefficients::Kind::prime) {
            s.group.torsion.assign(list.size(), Integer(coeff_.p));
            for (std::size_t j = 0; j < list.size(); ++j)
                s.group.generators.push_back(red_.lift(Chain{Term{list[j], 1}}));
        } else {
            static const std::vector<std::uint32_t> none;
            auto below = cells.find(r.shift_key(k, -1));
            auto above = cells.find(r.shift_key(k, 1));
            const auto& lo = below == cells.end() ? none : below->second;
            const auto& hi = above == cells.end() ? none : above->second;
            IntMatrix d_out = r.differential().block(lo, list);
            IntMatrix d_in = r.differential().block(list, hi);
            s.pair = std::make_unique<PairHomology>(d_in, d_out);
            const FinAbGroup& g = s.pair->group();
            std::size_t first = coeff_.rational() ? g.torsion.size() : 0;
            if (!coeff_.rational())
                s.group.torsion = g.torsion;
            s.group.free_rank = g.free_rank;
            for (std::size_t j = first; j < g.dimension(); ++j) {
                Chain local;
                for (const auto& t : g.generators[j])
                    local.push_back(Term{list[t.index], t.coef});
                local = make_chain(std::move(local));
                s.group.generators.push_back(red_.lift(local));
            }
        }
        slots_.emplace(k, std::move(s));
    }
}

const ComplexHomology::Slot* ComplexHomology::slot(GradingKey k) const
{
    auto it = slots_.find(k);
    return it == slots_.end() ? nullptr : &it->second;
}

const FinAbGroup& ComplexHomology::group(GradingKey k) const
{
    const Slot* s = slot(k);
    return s == nullptr ? empty_ : s->group;
}

bool ComplexHomology::is_cycle(const Chain& z) const
{
    Chain dz = c_.differential().apply(z);
    if (coeff_.kind != Coefficients::Kind::prime)
        return dz.empty();
    Integer p(coeff_.p);
    return std::all_of(dz.begin(), dz.end(), [&](const Term& t) { return t.coef % p == 0; });
}

std::vector<Integer> ComplexHomology::coordinates(GradingKey k, const Chain& cycle) const
{
    for (const auto& t : cycle)
        if (t.index >= c_.size() || c_.key(t.index) != k)
            throw std::invalid_argument("chain has a term outside grading slot " + std::to_string(k));
    if (!is_cycle(cycle))
        throw std::invalid_argument("chain is not a cycle");
    const Slot* s = slot(k);
    if (s == nullptr)
        return {};
    Chain red = red_.project(cycle);
    std::vector<Integer> local(s->cells.size());
    for (const auto& t : red)
        local[slot_pos_[t.index]] = t.coef;
    if (coeff_.kind == Coefficients::Kind::prime)
        return local;
    auto coords = s->pair->coordinates(local);
    if (coeff_.rational())
        coords.erase(coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(s->pair->group().torsion.size()));
    return coords;
}

IntMatrix ComplexHomology::induced(const SparseMatrix& f, const ComplexHomology& target, GradingKey k,
                                   std::int64_t degree) const
{
    if (f.cols() != c_.size() || f.rows() != target.c_.size())
        throw std::invalid_argument("map shape does not match the complexes");
    const FinAbGroup& src = group(k);
    GradingKey tk = target.c_.key_of(k + degree);
    const FinAbGroup& tgt = target.group(tk);
    IntMatrix out(tgt.dimension(), src.dimension());
    for (std::size_t j = 0; j < src.dimension(); ++j) {
        Chain image = f.apply(src.generators[j]);
        if (!target.is_cycle(image))
            throw NotChainMap(src.generators[j].empty() ? 0 : src.generators[j].front().index,
                              "map sends a homology generator to a non-cycle");
        if (coeff_.kind == Coefficients::Kind::prime) {
            Integer p(coeff_.p);
            Chain reduced;
            for (auto& t : image)
                if (floor_mod(t.coef, p) != 0)
                    reduced.push_back(Term{t.index, floor_mod(t.coef, p)});
            image = std::move(reduced);
        }
        auto c = target.coordinates(tk, image);
        for (std::size_t i = 0; i < c.size(); ++i)
            out(i, j) = c[i];
    }
    return out;
}

void require_chain_map(const SparseMatrix& f, const GradedComplex& from, const GradedComplex& to, int sign)
{
    if (auto w = chain_map_violation(f, from, to, sign))
        throw NotChainMap(*w, "chain map condition fails on " + from.label_string(*w));
}

}  // namespace echinf
