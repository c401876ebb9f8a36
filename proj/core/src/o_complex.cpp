#include "echinf/o_complex.hpp"

#include <cstdlib>
#include <stdexcept>

namespace echinf {

int o_weight(std::int32_t o)
{
    switch (o) {
    case o_zero:
        return 0;
    case o_plus:
    case o_minus:
        return 1;
    case o_both:
        return 2;
    }
    throw std::invalid_argument("invalid o-code " + std::to_string(o));
}

std::int64_t o_norm(const OLabel& x)
{
    return std::llabs(static_cast<long long>(x.m)) + 2 * o_weight(x.o);
}

std::string o_label_string(const OLabel& x)
{
    std::string o;
    switch (x.o) {
    case o_zero:
        o = "0";
        break;
    case o_plus:
        o = "+1";
        break;
    case o_minus:
        o = "-1";
        break;
    default:
        o = "{1,-1}";
    }
    return "(" + std::to_string(x.m) + "," + o + ")";
}

const std::vector<OMutation>& all_mutations()
{
    static const std::vector<OMutation> all{OMutation::drop_plus_next,  OMutation::flip_plus_next,
                                            OMutation::drop_minus_prev, OMutation::flip_minus_prev,
                                            OMutation::drop_both_shift, OMutation::flip_both_plus};
    return all;
}

std::string mutation_name(OMutation m)
{
    switch (m) {
    case OMutation::none:
        return "none";
    case OMutation::drop_plus_next:
        return "drop-plus-next";
    case OMutation::flip_plus_next:
        return "flip-plus-next";
    case OMutation::drop_minus_prev:
        return "drop-minus-prev";
    case OMutation::flip_minus_prev:
        return "flip-minus-prev";
    case OMutation::drop_both_shift:
        return "drop-both-shift";
    case OMutation::flip_both_plus:
        return "flip-both-plus";
    }
    return "?";
}

OMutation parse_mutation(const std::string& name)
{
    if (name == "none")
        return OMutation::none;
    for (OMutation m : all_mutations())
        if (mutation_name(m) == name)
            return m;
    throw std::invalid_argument("unknown mutation '" + name + "'");
}

std::vector<OTerm> boundary_star(const OLabel& x, OMutation mut)
{
    std::int32_t m = x.m;
    switch (x.o) {
    case o_zero:
        return {};
    case o_plus: {
        std::vector<OTerm> t{{{m, o_zero}, 1}};
        if (mut != OMutation::drop_plus_next)
            t.push_back({{m + 1, o_zero}, mut == OMutation::flip_plus_next ? -1 : 1});
        return t;
    }
    case o_minus: {
        std::vector<OTerm> t{{{m, o_zero}, 1}};
        if (mut != OMutation::drop_minus_prev)
            t.push_back({{m - 1, o_zero}, mut == OMutation::flip_minus_prev ? -1 : 1});
        return t;
    }
    case o_both: {
        std::vector<OTerm> t{{{m, o_minus}, 1}, {{m, o_plus}, mut == OMutation::flip_both_plus ? 1 : -1}};
        if (mut != OMutation::drop_both_shift)
            t.push_back({{m + 1, o_minus}, 1});
        t.push_back({{m - 1, o_plus}, -1});
        return t;
    }
    }
    throw std::invalid_argument("invalid o-code " + std::to_string(x.o));
}

std::size_t o_window_size(std::int64_t L)
{
    auto f = [](std::int64_t k) -> std::int64_t { return k > 0 ? 2 * k - 1 : 0; };
    return static_cast<std::size_t>(f(L) + 2 * f(L - 2) + f(L - 4));
}

GradedComplex o_window(std::int64_t L, OMutation mutation)
{
    if (L < 1)
        throw std::invalid_argument("window size L must be at least 1");
    GradedComplex c(0, 2);
    static const std::int32_t order[4] = {o_zero, o_plus, o_minus, o_both};
    auto bound = static_cast<std::int32_t>(L);
    for (std::int32_t m = -bound; m <= bound; ++m)
        for (std::int32_t o : order) {
            OLabel x{m, o};
            if (o_norm(x) < L)
                c.add_cell({m, o}, o_weight(o));
        }
    std::vector<Chain> cols(c.size());
    for (std::uint32_t i = 0; i < c.size(); ++i) {
        auto l = c.label(i);
        std::vector<Term> terms;
        for (const auto& t : boundary_star(OLabel{l[0], l[1]}, mutation)) {
            auto j = c.find(std::vector<std::int32_t>{t.label.m, t.label.o});
            if (!j)
                throw std::logic_error("boundary leaves the window at " + o_label_string(t.label));
            terms.push_back(Term{*j, t.coef});
        }
        cols[i] = make_chain(std::move(terms));
    }
    c.set_differential(SparseMatrix::from_columns(c.size(), cols));
    c.set_formatter([](std::span<const std::int32_t> l) { return o_label_string(OLabel{l[0], l[1]}); });
    return c;
}

std::optional<OLabel> canonical_partner(const OLabel& x)
{
    std::int32_t m = x.m;
    switch (x.o) {
    case o_zero:
        if (m >= 1)
            return OLabel{m, o_minus};
        if (m <= -1)
            return OLabel{m, o_plus};
        return std::nullopt;
    case o_plus:
        if (m >= 1)
            return OLabel{m, o_both};
        if (m <= -1)
            return OLabel{m, o_zero};
        return std::nullopt;
    case o_minus:
        return m >= 1 ? OLabel{m, o_zero} : OLabel{m, o_both};
    case o_both:
        return m >= 1 ? OLabel{m, o_plus} : OLabel{m, o_minus};
    }
    throw std::invalid_argument("invalid o-code");
}

bool is_core(const OLabel& x)
{
    return x.m == 0 && (x.o == o_zero || x.o == o_plus);
}

std::vector<MatchedPair> canonical_o_matching(const GradedComplex& w)
{
    std::vector<MatchedPair> pairs;
    for (std::uint32_t i = 0; i < w.size(); ++i) {
        auto l = w.label(i);
        OLabel x{l[0], l[1]};
        auto partner = canonical_partner(x);
        if (!partner || o_weight(partner->o) < o_weight(x.o))
            continue;
        if (auto j = w.find(std::vector<std::int32_t>{partner->m, partner->o}))
            pairs.push_back(MatchedPair{*j, i});
    }
    return pairs;
}

SparseMatrix o_inclusion(const GradedComplex& from, const GradedComplex& to)
{
    return label_map(from, to, [](std::span<const std::int32_t>, Label&) { return 1; });
}

OLimit limit_homology(std::int64_t L_max, OMutation mutation)
{
    if (L_max < 1)
        throw std::invalid_argument("L_max must be at least 1");
    OLimit res;
    res.L_max = L_max;
    std::vector<GradedComplex> windows;
    for (std::int64_t L = 1; L <= L_max; ++L) {
        windows.push_back(o_window(L, mutation));
        auto check = verify_complex(windows.back());
        if (!check.ok()) {
            res.complex_check = check;
            res.failing_window = L;
            return res;
        }
    }
    std::vector<ComplexHomology> homs;
    homs.reserve(windows.size());
    for (const auto& w : windows)
        homs.emplace_back(w);
    for (std::int64_t L = 1; L <= L_max; ++L) {
        OWindowHomology wh{L, {}};
        for (GradingKey k = 0; k <= 2; ++k)
            wh.groups.push_back(homs[L - 1].group(k));
        res.windows.push_back(std::move(wh));
    }
    std::vector<SparseMatrix> incl;
    for (std::size_t j = 0; j + 1 < windows.size(); ++j)
        incl.push_back(o_inclusion(windows[j], windows[j + 1]));

    res.stable = true;
    const ComplexHomology& top = homs.back();
    for (GradingKey k = 0; k <= 2; ++k) {
        std::vector<FinAbGroup> groups;
        std::vector<IntMatrix> maps;
        for (std::size_t j = 0; j < homs.size(); ++j) {
            groups.push_back(homs[j].group(k));
            if (j + 1 < homs.size())
                maps.push_back(homs[j].induced(incl[j], homs[j + 1], k));
        }
        ColimitResult c = directed_colimit(groups, maps);
        res.colimit.push_back(c.group);
        std::vector<Chain> gens;
        if (c.stable) {
            res.stable_level = std::max(res.stable_level, c.stable_level);
            const FinAbGroup& g = top.group(k);
            for (std::size_t col = 0; col < c.basis.cols(); ++col) {
                Chain z;
                for (std::size_t r = 0; r < g.dimension(); ++r)
                    add_scaled(z, g.generators[r], c.basis(r, col));
                gens.push_back(std::move(z));
            }
        } else {
            res.stable = false;
        }
        res.generators.push_back(std::move(gens));
    }
    res.top = windows.back();
    return res;
}

}  // namespace echinf
